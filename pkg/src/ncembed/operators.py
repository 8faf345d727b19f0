"""Shift-operator realizations on truncated direct sums and two-element
generation of matrix rings, cross-validated against the rewriting engine.

All operator identities are exact rational matrix identities; the truncation
maps the last block to zero and every correctness statement is restricted to
the stated headroom.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .freealg import FreePoly
from .linalg import (
    SpanBasis,
    identity_matrix,
    mat_eq,
    mat_mul,
    zero_matrix,
)
from .rewrite import DEFAULT_FUEL, normal_form


class TruncatedDirectSum:
    """N blocks of a fixed d-dimensional module with an algebra action given
    by one exact matrix per basis symbol (the presented relations are
    checked)."""

    def __init__(self, nblocks, dim, pres=None, action=None):
        self.nblocks = nblocks
        self.dim = dim
        self.pres = pres
        self.action = dict(action or {})
        if pres is not None:
            for b in pres.basis:
                if b not in self.action:
                    raise ValueError(f"missing action matrix for {b!r}")
            self._check_relations()

    def _check_relations(self):
        pres = self.pres
        eye = identity_matrix(self.dim)
        for b in pres.basis:
            for b2 in pres.basis:
                lhs = mat_mul(self.action[b], self.action[b2])
                rhs = self.matrix_of(pres.table[(b, b2)])
                if not mat_eq(lhs, rhs):
                    raise ValueError(f"action violates the product ({b}, {b2})")

    def matrix_of(self, poly):
        """Action matrix of a presentation element."""
        out = zero_matrix(self.dim, self.dim)
        for w, c in poly.terms.items():
            m = identity_matrix(self.dim) if not w else self.action[w[0]]
            for i in range(self.dim):
                for j in range(self.dim):
                    out[i][j] += c * m[i][j]
        return out


def regular_action(pres):
    """Left-multiplication matrices on the module basis [1] + B (needs a
    unital presentation)."""
    if not pres.unital:
        raise ValueError("regular representation needs a unital presentation")
    dim = 1 + len(pres.basis)
    basis_elems = [pres.unit()] + [pres.symbol(b) for b in pres.basis]
    action = {}
    for b in pres.basis:
        pb = pres.symbol(b)
        cols = []
        for e in basis_elems:
            prod = pres.mul(pb, e)
            col = [prod.constant_coeff()] + [
                prod.coeff((b2,)) for b2 in pres.basis
            ]
            cols.append(col)
        action[b] = [[cols[j][i] for j in range(dim)] for i in range(dim)]
    return dim, action


def _embed_block0(mat, nblocks, dim):
    out = zero_matrix(nblocks * dim, nblocks * dim)
    for i in range(dim):
        for j in range(dim):
            out[i][j] = mat[i][j]
    return out


def build_shift_operators(nblocks, dim, s_mats):
    """x, y, z on the truncated sum: z keeps only block 0, y shifts block i to
    block i+1 (the last block dies), and x collects block i through the i-th
    given matrix back into block 0."""
    m = len(s_mats) - 1
    if m >= nblocks:
        raise ValueError("need more blocks than given matrices (headroom)")
    n = nblocks * dim
    z = zero_matrix(n, n)
    for i in range(dim):
        z[i][i] = 1
    y = zero_matrix(n, n)
    for b in range(nblocks - 1):
        for i in range(dim):
            y[(b + 1) * dim + i][b * dim + i] = 1
    x = zero_matrix(n, n)
    for b, s in enumerate(s_mats):
        for i in range(dim):
            for j in range(dim):
                x[i][b * dim + j] = s[i][j]
    return x, y, z


@dataclass(frozen=True)
class RelationVerdict:
    ok: bool
    failing_index: int | None = None
    failing_entry: tuple | None = None


def check_relations(x, y, z, s_mats, nblocks, dim):
    """Exact identity x y^i z = (include at block 0) s_i (project block 0)
    for every given matrix, no tolerance."""
    n = nblocks * dim
    acc = z
    for i, s in enumerate(s_mats):
        if i > 0:
            acc = mat_mul(y, acc)
        prod = mat_mul(x, acc)
        want = _embed_block0(s, nblocks, dim)
        for r in range(n):
            for c in range(n):
                if prod[r][c] != want[r][c]:
                    return RelationVerdict(False, i, (r, c))
    return RelationVerdict(True)


class ShiftRealization:
    """Operators for every system symbol: x, y, z as shift operators and each
    basis symbol as its action matrix sandwiched against block 0."""

    def __init__(self, pres, gens, nblocks):
        self.pres = pres
        self.nblocks = nblocks
        dim, action = regular_action(pres)
        self.dim = dim
        self.s_mats = [
            TruncatedDirectSum(nblocks, dim, pres, action).matrix_of(g)
            for g in gens
        ]
        x, y, z = build_shift_operators(nblocks, dim, self.s_mats)
        self.ops = {"x": x, "y": y, "z": z}
        for b in pres.basis:
            self.ops[b] = _embed_block0(action[b], nblocks, dim)
        self._empty = _embed_block0(identity_matrix(dim), nblocks, dim)
        self._cache = {(): self._empty}

    def word_operator(self, w):
        """Product of symbol operators; the empty word maps to the block-0
        sandwich of the identity so that rule substitution is exact."""
        w = tuple(w)
        if w in self._cache:
            return self._cache[w]
        head = self.word_operator(w[:-1]) if len(w) > 1 else self.ops[w[0]]
        out = head if len(w) == 1 else mat_mul(head, self.ops[w[-1]])
        self._cache[w] = out
        return out

    def poly_operator(self, p):
        n = self.nblocks * self.dim
        out = zero_matrix(n, n)
        for w, c in p.terms.items():
            m = self.word_operator(w)
            for i in range(n):
                for j in range(n):
                    if m[i][j]:
                        out[i][j] += c * m[i][j]
        return out


@dataclass(frozen=True)
class CrossValidateVerdict:
    ok: bool
    pairs_checked: int
    equal_nf_pairs: int
    counterexample: tuple | None = None


def cross_validate(sys, realization, degree, samples=500, seed=0, pairs=None,
                   fuel=DEFAULT_FUEL):
    """For sampled word pairs with equal normal forms, the operator products
    must agree on the headroom blocks (indices up to N - 1 - degree)."""
    headroom = realization.nblocks - 1 - degree
    if headroom < 0:
        raise ValueError("insufficient headroom for this degree")
    if pairs is None:
        rng = random.Random(seed)
        symbols = sys.alphabet.symbols
        words = [()]
        layer = [()]
        for _ in range(degree):
            layer = [w + (s,) for w in layer for s in symbols]
            words.extend(layer)
        pairs = [
            (rng.choice(words), rng.choice(words)) for _ in range(samples)
        ]
    d = realization.dim
    limit = (headroom + 1) * d
    equal_nf = 0
    for w1, w2 in pairs:
        p1 = FreePoly.from_word(sys.alphabet, sys.ring, w1)
        p2 = FreePoly.from_word(sys.alphabet, sys.ring, w2)
        if normal_form(p1, sys, fuel=fuel) != normal_form(p2, sys, fuel=fuel):
            continue
        equal_nf += 1
        m1 = realization.word_operator(w1)
        m2 = realization.word_operator(w2)
        for i in range(limit):
            for j in range(limit):
                if m1[i][j] != m2[i][j]:
                    return CrossValidateVerdict(
                        False, len(pairs), equal_nf, (w1, w2, (i, j))
                    )
    return CrossValidateVerdict(True, len(pairs), equal_nf)


@dataclass(frozen=True)
class TwoGenReport:
    p_matrix: list
    q_matrix: list
    dims_by_degree: list
    full_dimension: int
    full_at_degree: int | None

    @property
    def reached_full(self):
        return self.full_at_degree is not None


def matrix_two_generators(pres, gens, degree):
    """The (n+2)x(n+2) matrices over the presented algebra: one cyclic
    coordinate permutation and one with first two rows (0, r_1, ..., r_n, 0)
    and (1, 0, ..., 0); reports the growth of the span of their products."""
    if not pres.ring.is_field:
        raise ValueError("matrix_two_generators needs a field coefficient ring")
    n = len(gens)
    size = n + 2
    ring = pres.ring
    zero = FreePoly.zero(pres.alphabet, ring)
    one = pres.unit()

    def scalar_mat(fill):
        return [[fill for _ in range(size)] for _ in range(size)]

    p_mat = scalar_mat(zero)
    for i in range(size):
        p_mat[(i + 1) % size][i] = one
    q_mat = scalar_mat(zero)
    for j, r in enumerate(gens, start=1):
        q_mat[0][j] = r
    q_mat[1][0] = one

    def pres_mat_mul(a, b):
        out = scalar_mat(zero)
        for i in range(size):
            for k in range(size):
                if a[i][k].is_zero:
                    continue
                for j in range(size):
                    if not b[k][j].is_zero:
                        out[i][j] = out[i][j] + pres.mul(a[i][k], b[k][j])
        return out

    def flatten(mat):
        coords = {}
        for i in range(size):
            for j in range(size):
                for w, c in mat[i][j].terms.items():
                    coords[(i, j, w)] = c
        return coords

    dim_target = size * size * pres.dim
    span = SpanBasis(ring, sort_key=lambda k: (k[0], k[1], len(k[2]), k[2]))
    eye = scalar_mat(zero)
    for i in range(size):
        eye[i][i] = one
    span.add(flatten(eye))
    dims = [span.dimension]
    full_at = 0 if span.dimension == dim_target else None
    layer = [eye]
    for d in range(1, degree + 1):
        nxt = []
        for mat in layer:
            for g in (p_mat, q_mat):
                prod = pres_mat_mul(mat, g)
                nxt.append(prod)
                span.add(flatten(prod))
        layer = nxt
        dims.append(span.dimension)
        if full_at is None and span.dimension == dim_target:
            full_at = d
    return TwoGenReport(p_mat, q_mat, dims, dim_target, full_at)
