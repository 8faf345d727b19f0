"""Word-combinatorics certificates: isolated subsemigroups, unique
factorization, and degree-truncated ideal-extension checks.

Isolation and the ideal extension property are semi-decidable; every positive
verdict carries the bound it was exhaustively checked to.  All linear algebra
is exact Gaussian elimination over the coefficient field with first-nonzero
pivoting.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .freealg import Alphabet, FreePoly, format_word
from .linalg import (
    SpanBasis,
    coords_field,
    coords_sort_key,
    coords_to_poly,
    poly_coords,
    span_intersection,
)


class WordFamily:
    """Finite set of nonempty words generating a subsemigroup of the free
    semigroup on the alphabet."""

    def __init__(self, alphabet, words):
        self.alphabet = alphabet
        seen = []
        for w in words:
            w = tuple(w)
            if not w:
                raise ValueError("family words must be nonempty")
            alphabet.check_word(w)
            if w not in seen:
                seen.append(w)
        self.words = tuple(seen)

    def __iter__(self):
        return iter(self.words)

    def __len__(self):
        return len(self.words)

    def max_word_len(self):
        return max(len(w) for w in self.words)

    def is_member(self, w):
        """Dynamic programming over prefixes: w in the generated subsemigroup."""
        if not w:
            return False
        n = len(w)
        reach = [False] * (n + 1)
        reach[0] = True
        for i in range(1, n + 1):
            for fw in self.words:
                k = len(fw)
                if k <= i and reach[i - k] and w[i - k : i] == fw:
                    reach[i] = True
                    break
        return reach[n]


@dataclass(frozen=True)
class IsolationVerdict:
    isolated: bool
    bound: int
    witness: tuple | None = None  # (t, s, t')

    @property
    def verdict(self):
        return "isolated-up-to-bound" if self.isolated else "not-isolated"


def is_isolated(family, bound):
    """Exhaustively search products t.s.t' of length <= bound with s in the
    subsemigroup: isolation demands t and t' land in the subsemigroup or are
    empty whenever the whole product does."""
    if bound < family.max_word_len():
        raise ValueError("bound must be at least the longest family word")
    symbols = family.alphabet.symbols
    member = {(): False}
    words_by_len = [[()]]
    for n in range(1, bound + 1):
        layer = [w + (s,) for w in words_by_len[n - 1] for s in symbols]
        words_by_len.append(layer)
        for w in layer:
            member[w] = family.is_member(w)
    for n in range(1, bound + 1):
        for w in words_by_len[n]:
            if not member[w]:
                continue
            for i in range(n):
                for j in range(i + 1, n + 1):
                    s = w[i:j]
                    if not member[s]:
                        continue
                    t, t2 = w[:i], w[j:]
                    if (t and not member[t]) or (t2 and not member[t2]):
                        return IsolationVerdict(False, bound, (t, s, t2))
    return IsolationVerdict(True, bound)


@dataclass(frozen=True)
class Factorization:
    indices: tuple  # n-values of the family words, in order

    def __iter__(self):
        return iter(self.indices)


def xy_family_word(n, f):
    return ("x",) + ("y",) * n + ("x",) * f(n)


def factorize_xy_family(w, f, count):
    """Factor w over the family x.y^n.x^f(n) (1 <= n <= count) by breaking
    before every occurrence of the pattern x.y; None if w is not a product
    of family words."""
    w = tuple(w)
    if not w:
        return None
    breaks = [
        i for i in range(len(w) - 1) if w[i] == "x" and w[i + 1] == "y"
    ]
    if not breaks or breaks[0] != 0:
        return None
    breaks.append(len(w))
    indices = []
    for a, b in zip(breaks, breaks[1:]):
        seg = w[a:b]
        # segment must be x y^n x^f(n)
        n = 0
        i = 1
        while i < len(seg) and seg[i] == "y":
            n += 1
            i += 1
        if n < 1 or n > count:
            return None
        tail = seg[i:]
        if any(s != "x" for s in tail) or len(tail) != f(n):
            return None
        indices.append(n)
    return Factorization(tuple(indices))


@dataclass(frozen=True)
class UniquenessVerdict:
    unique: bool
    bound: int
    counterexample: tuple | None = None  # (word, indices1, indices2)


def unique_factorization_check(family, bound):
    """Enumerate all products of family words of total length <= bound and
    report the first word reachable by two distinct index sequences."""
    first_seq = {(): ()}
    queue = [()]
    while queue:
        nxt = []
        for w in queue:
            for idx, fw in enumerate(family.words):
                nw = w + fw
                if len(nw) > bound:
                    continue
                seq = first_seq[w] + (idx,)
                if nw in first_seq:
                    if first_seq[nw] != seq:
                        return UniquenessVerdict(False, bound, (nw, first_seq[nw], seq))
                else:
                    first_seq[nw] = seq
                    nxt.append(nw)
        queue = nxt
    return UniquenessVerdict(True, bound)


@dataclass(frozen=True)
class IdealExtVerdict:
    holds: bool
    degree: int
    witness: FreePoly | None = None

    @property
    def verdict(self):
        return "holds-up-to-degree" if self.holds else "fails"


def _products_up_to(gens, degree, alphabet, ring, max_rows):
    """All products of 1..degree generator polynomials whose every word has
    length <= degree; exact, no truncation of individual products."""
    out = []
    layer = [g for g in gens if not g.is_zero and g.max_word_len() <= degree]
    out.extend(layer)
    for _ in range(1, degree):
        nxt = []
        for p in layer:
            for g in gens:
                q = p * g
                if q.is_zero:
                    continue
                if q.min_word_len() > degree:
                    continue
                if q.max_word_len() <= degree:
                    nxt.append(q)
                    if len(out) + len(nxt) > max_rows:
                        raise RuntimeError(
                            f"resource limit: more than {max_rows} subalgebra products"
                        )
        out.extend(nxt)
        if not nxt:
            break
        layer = nxt
    return out


def _ambient_words_up_to(alphabet, length):
    out = [()]
    layer = [()]
    for _ in range(length):
        layer = [w + (s,) for w in layer for s in alphabet.symbols]
        out.extend(layer)
    return out


class IdealExtensionSpans:
    """The three truncated spans the ideal-extension check compares."""

    def __init__(self, sub_gens, ideal_gens, alphabet, unital, degree, ring=None,
                 max_rows=200_000, pivot_descending=True):
        if ring is None:
            ring = (list(sub_gens) + list(ideal_gens))[0].ring
        if ring.kind == "Q[...]":
            raise ValueError("check_ideal_extension needs a field coefficient ring")
        self.ring = ring
        self.alphabet = alphabet
        self.degree = degree
        self.field = coords_field(ring)
        self.key = coords_sort_key(alphabet, ring, descending=pivot_descending)
        key = self.key
        field = self.field

        sub_products = _products_up_to(sub_gens, degree, alphabet, ring, max_rows)
        one = FreePoly.one(alphabet, ring)

        self.sub_span = SpanBasis(field, sort_key=key)
        for p in sub_products:
            self.sub_span.add(poly_coords(p))
        if unital:
            self.sub_span.add(poly_coords(one))

        multipliers = [one] + sub_products
        self.inner_span = SpanBasis(field, sort_key=key)
        n_rows = 0
        for g in ideal_gens:
            gmax = g.max_word_len()
            for a in multipliers:
                if a.max_word_len() + gmax > degree:
                    continue
                ag = a * g
                for b in multipliers:
                    if ag.max_word_len() + b.max_word_len() > degree:
                        continue
                    q = ag * b
                    if not q.is_zero and q.max_word_len() <= degree:
                        n_rows += 1
                        if n_rows > max_rows:
                            raise RuntimeError(
                                "resource limit: inner ideal span too large"
                            )
                        self.inner_span.add(poly_coords(q))

        self.ambient_rows = []
        for g in ideal_gens:
            room = degree - g.max_word_len()
            if room < 0:
                continue
            words = _ambient_words_up_to(alphabet, room)
            for u in words:
                for v in words:
                    if len(u) + len(v) > room:
                        continue
                    q = FreePoly.from_word(alphabet, ring, u) * g
                    q = q * FreePoly.from_word(alphabet, ring, v)
                    if not q.is_zero:
                        self.ambient_rows.append(poly_coords(q))
                        if len(self.ambient_rows) > max_rows:
                            raise RuntimeError(
                                "resource limit: ambient ideal span too large"
                            )
        self.ambient_span = SpanBasis(field, sort_key=key)
        for row in self.ambient_rows:
            self.ambient_span.add(dict(row))

    def trace_basis(self):
        """Basis of (ambient ideal span) ∩ (subalgebra span)."""
        return span_intersection(
            self.field,
            self.ambient_rows,
            [dict(r) for r in self.sub_span.rows()],
            sort_key=self.key,
        )


def check_ideal_extension(
    sub_gens,
    ideal_gens,
    alphabet,
    unital,
    degree,
    ring=None,
    max_rows=200_000,
    pivot_descending=True,
    preferred_witnesses=(),
):
    """Compare the ideal generated inside the subalgebra with the trace of the
    ambient ideal, both truncated at the given word-length degree.

    Fails with a witness exactly when some element of the ambient ideal span
    lies in the subalgebra span but outside the inner ideal span at this
    degree.  preferred_witnesses are polynomials to try first when choosing
    the reported witness.
    """
    spans = IdealExtensionSpans(
        sub_gens, ideal_gens, alphabet, unital, degree, ring=ring,
        max_rows=max_rows, pivot_descending=pivot_descending,
    )
    failing = None
    for row in spans.trace_basis():
        if not spans.inner_span.contains(row):
            failing = row
            break
    if failing is None:
        return IdealExtVerdict(True, degree)
    for cand in preferred_witnesses:
        coords = poly_coords(cand)
        if (
            spans.ambient_span.contains(coords)
            and spans.sub_span.contains(coords)
            and not spans.inner_span.contains(coords)
        ):
            return IdealExtVerdict(False, degree, cand)
    witness = coords_to_poly(failing, alphabet, spans.ring)
    return IdealExtVerdict(False, degree, witness)
