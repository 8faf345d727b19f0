"""Reduction systems on free algebras: normal forms, ambiguity analysis, and
confluence certification.

A rule rewrites a fixed nonempty word (lhs) to a polynomial all of whose words
are strictly smaller in the length-graded lexicographic order; a system is a
finite ordered list of such rules over one alphabet and ring.  The deterministic
reduction strategy is leftmost occurrence, then lowest rule index; a seeded
randomized strategy exists solely for confluence property tests.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .freealg import Alphabet, FreePoly, MonomialOrder, format_word
from .linalg import SpanBasis, coords_field, coords_sort_key, coords_to_poly, poly_coords

DEFAULT_FUEL = 10**6

OVERLAP = "overlap"
INCLUSION = "inclusion"


class FuelExhausted(RuntimeError):
    """Raised when a reduction exceeds its fuel; never silently truncated."""


@dataclass(frozen=True)
class Rule:
    """Rewrite directive lhs -> rhs with every rhs word strictly below lhs."""

    lhs: tuple
    rhs: FreePoly

    def __repr__(self):
        from .freealg import format_poly

        return f"<Rule {format_word(self.lhs)} -> {format_poly(self.rhs)}>"


class ReductionSystem:
    """Alphabet, coefficient ring, and an ordered list of reduction rules."""

    def __init__(self, alphabet, ring, rules):
        self.alphabet = alphabet
        self.ring = ring
        self.order = MonomialOrder(alphabet)
        checked = []
        for idx, rule in enumerate(rules):
            lhs = tuple(rule.lhs)
            if not lhs:
                raise ValueError(f"rule {idx}: empty left-hand side")
            alphabet.check_word(lhs)
            rhs = rule.rhs
            if rhs.alphabet != alphabet or rhs.ring != ring:
                raise ValueError(f"rule {idx}: rhs alphabet/ring mismatch")
            lkey = self.order.key(lhs)
            for w in rhs.words():
                if not self.order.key(w) < lkey:
                    raise ValueError(
                        f"rule {idx}: rhs word {format_word(w)} is not below "
                        f"lhs {format_word(lhs)}"
                    )
            checked.append(Rule(lhs, rhs))
        self.rules = tuple(checked)

    def __repr__(self):
        return (
            f"<ReductionSystem {self.ring.label}, "
            f"alphabet {'.'.join(self.alphabet.symbols)}, {len(self.rules)} rules>"
        )

    def find_matches(self, w):
        """All (pos, rule_index) occurrences in w, leftmost then lowest index."""
        out = []
        for pos in range(len(w)):
            for idx, rule in enumerate(self.rules):
                n = len(rule.lhs)
                if w[pos : pos + n] == rule.lhs:
                    out.append((pos, idx))
        return out

    def first_match(self, w):
        for pos in range(len(w)):
            for idx, rule in enumerate(self.rules):
                n = len(rule.lhs)
                if w[pos : pos + n] == rule.lhs:
                    return (pos, idx)
        return None

    def is_irreducible_word(self, w):
        return self.first_match(w) is None


def reduce_at(w, pos, rule, alphabet, ring):
    """Apply rule.lhs -> rule.rhs at position pos of word w."""
    n = len(rule.lhs)
    if tuple(w[pos : pos + n]) != rule.lhs:
        raise ValueError(
            f"rule lhs {format_word(rule.lhs)} does not occur at {pos} "
            f"in {format_word(w)}"
        )
    prefix = tuple(w[:pos])
    suffix = tuple(w[pos + n :])
    out = {}
    for rw, c in rule.rhs.terms.items():
        out[prefix + rw + suffix] = c
    return FreePoly(alphabet, ring, out)


def normal_form(p, sys, fuel=DEFAULT_FUEL, strategy="leftmost", rng=None, trace=None):
    """Reduce p until no word contains a rule lhs.

    The deterministic strategy rewrites the leftmost occurrence with the lowest
    rule index, always working on the currently largest pending word; for
    order-compatible systems termination is guaranteed and fuel is a safety
    net only.  strategy="random" picks a uniformly random occurrence (rng
    required) and is meant for confluence property tests.
    """
    if fuel <= 0:
        raise ValueError("fuel must be positive")
    if strategy == "random" and rng is None:
        raise ValueError("random strategy needs an rng")
    ring = sys.ring
    order = sys.order

    def negkey(w):
        n, idx = order.key(w)
        return (-n, tuple(-i for i in idx))

    pending = {w: c for w, c in p.terms.items()}
    heap = [(negkey(w), w) for w in pending]
    heapq.heapify(heap)
    done = {}
    budget = fuel
    while heap:
        _, w = heapq.heappop(heap)
        c = pending.pop(w, None)
        if c is None or ring.is_zero(c):
            continue
        if strategy == "leftmost":
            match = sys.first_match(w)
        else:
            matches = sys.find_matches(w)
            match = rng.choice(matches) if matches else None
        if match is None:
            s = ring.add(done.get(w, ring.zero), c)
            if ring.is_zero(s):
                done.pop(w, None)
            else:
                done[w] = s
            continue
        budget -= 1
        if budget < 0:
            raise FuelExhausted(
                f"normal_form exceeded {fuel} reductions (word {format_word(w)})"
            )
        pos, idx = match
        if trace is not None:
            trace.append((w, pos, idx))
        rule = sys.rules[idx]
        prefix, suffix = w[:pos], w[pos + len(rule.lhs) :]
        for rw, rc in rule.rhs.terms.items():
            nw = prefix + rw + suffix
            add = ring.mul(c, rc)
            if nw in pending:
                s = ring.add(pending[nw], add)
                if ring.is_zero(s):
                    pending.pop(nw, None)
                else:
                    pending[nw] = s
            else:
                pending[nw] = add
                heapq.heappush(heap, (negkey(nw), nw))
    return FreePoly._raw(sys.alphabet, ring, done)


@dataclass(frozen=True)
class Ambiguity:
    """A word reducible two ways: overlapping or nested lhs occurrences."""

    kind: str  # "overlap" | "inclusion"
    i: int
    j: int
    word: tuple
    pos_i: int
    pos_j: int

    def __repr__(self):
        return (
            f"<Ambiguity {self.kind} rules ({self.i},{self.j}) "
            f"witness {format_word(self.word)}>"
        )


def find_ambiguities(sys):
    """Complete, deterministically ordered list of overlap and inclusion
    ambiguities among the rule left-hand sides.

    Overlaps: a nonempty proper suffix of lhs_i equals a nonempty proper
    prefix of lhs_j (ordered pairs, self-overlaps included).  Inclusions:
    lhs_j occurs as a factor of lhs_i (i != j; equal lhs pairs reported once).
    """
    out = []
    rules = sys.rules
    for i, ri in enumerate(rules):
        for j, rj in enumerate(rules):
            li, lj = ri.lhs, rj.lhs
            for k in range(1, min(len(li), len(lj))):
                if li[-k:] == lj[:k]:
                    witness = li + lj[k:]
                    out.append(
                        Ambiguity(OVERLAP, i, j, witness, 0, len(li) - k)
                    )
    for i, ri in enumerate(rules):
        for j, rj in enumerate(rules):
            if i == j:
                continue
            li, lj = ri.lhs, rj.lhs
            if len(lj) > len(li):
                continue
            if len(lj) == len(li) and (li != lj or i > j):
                continue
            for pos in range(len(li) - len(lj) + 1):
                if li[pos : pos + len(lj)] == lj:
                    if len(lj) == len(li) and pos == 0 and li == lj:
                        out.append(Ambiguity(INCLUSION, i, j, li, 0, 0))
                        break
                    out.append(Ambiguity(INCLUSION, i, j, li, 0, pos))
    return out


RESOLVABLE = "resolvable"
UNRESOLVABLE = "unresolvable"
FUEL_EXHAUSTED = "fuel-exhausted"


@dataclass(frozen=True)
class AmbiguityVerdict:
    ambiguity: Ambiguity
    status: str
    left_nf: FreePoly | None = None
    right_nf: FreePoly | None = None


@dataclass(frozen=True)
class DiamondReport:
    entries: tuple
    overall: str

    @property
    def resolvable(self):
        return self.overall == RESOLVABLE

    def failures(self):
        return [e for e in self.entries if e.status == UNRESOLVABLE]


def check_diamond(sys, fuel=DEFAULT_FUEL):
    """Reduce every ambiguity witness both ways and compare normal forms."""
    entries = []
    for amb in find_ambiguities(sys):
        ri = sys.rules[amb.i]
        rj = sys.rules[amb.j]
        left = reduce_at(amb.word, amb.pos_i, ri, sys.alphabet, sys.ring)
        right = reduce_at(amb.word, amb.pos_j, rj, sys.alphabet, sys.ring)
        try:
            left_nf = normal_form(left, sys, fuel=fuel)
            right_nf = normal_form(right, sys, fuel=fuel)
        except FuelExhausted:
            entries.append(AmbiguityVerdict(amb, FUEL_EXHAUSTED))
            continue
        if left_nf == right_nf:
            entries.append(AmbiguityVerdict(amb, RESOLVABLE, left_nf, right_nf))
        else:
            entries.append(AmbiguityVerdict(amb, UNRESOLVABLE, left_nf, right_nf))
    if any(e.status == UNRESOLVABLE for e in entries):
        overall = UNRESOLVABLE
    elif any(e.status == FUEL_EXHAUSTED for e in entries):
        overall = FUEL_EXHAUSTED
    else:
        overall = RESOLVABLE
    return DiamondReport(tuple(entries), overall)


def irreducible_words(sys, max_len):
    """All words of length <= max_len with no lhs factor, in monomial order.

    For confluent order-compatible systems this is the module basis of the
    presented algebra up to that length.
    """
    symbols = sys.alphabet.symbols
    lhs_set = {r.lhs for r in sys.rules}
    max_lhs = max((len(l) for l in lhs_set), default=0)
    out = [()]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for s in symbols:
                nw = w + (s,)
                # w is irreducible, so only suffixes ending at the new symbol
                # can introduce a lhs occurrence
                tail_ok = True
                for k in range(1, min(max_lhs, len(nw)) + 1):
                    if nw[-k:] in lhs_set:
                        tail_ok = False
                        break
                if tail_ok:
                    nxt.append(nw)
        out.extend(nxt)
        layer = nxt
    return out


class SubalgebraSpan:
    """Row-reduced basis over the base field of the span of normal forms of
    generator products up to a degree."""

    def __init__(self, sys, degree):
        self.sys = sys
        self.degree = degree
        self.field = coords_field(sys.ring)
        self.key = coords_sort_key(sys.alphabet, sys.ring)
        self.basis = SpanBasis(self.field, sort_key=self.key)

    @property
    def dimension(self):
        return self.basis.dimension

    def contains(self, p):
        return self.basis.contains(poly_coords(p))

    def basis_polys(self):
        return [
            coords_to_poly(row, self.sys.alphabet, self.sys.ring)
            for row in self.basis.rows()
        ]


def subalgebra_span(gens, sys, degree, fuel=DEFAULT_FUEL):
    """Span of normal forms of all products of 1..degree generators.

    Only defined over field-like coefficient rings (Q, Z/p, or Q[t,...]
    flattened over Q); each layer is replaced by its span basis before
    extending, which keeps the enumeration linear in the quotient dimension.
    """
    span = SubalgebraSpan(sys, degree)
    gen_nfs = [normal_form(g, sys, fuel=fuel) for g in gens]
    layer = []
    for g in gen_nfs:
        if span.basis.add(poly_coords(g)) is not None:
            layer.append(g)
    for _ in range(1, degree):
        nxt = []
        for p in layer:
            for g in gen_nfs:
                q = normal_form(p * g, sys, fuel=fuel)
                if span.basis.add(poly_coords(q)) is not None:
                    nxt.append(q)
        if not nxt:
            break
        layer = nxt
    return span
