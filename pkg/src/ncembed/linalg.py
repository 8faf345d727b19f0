"""Exact linear algebra: sparse row reduction over a field and small dense
integer/rational matrix helpers.

Rows are sparse dicts keyed by arbitrary hashable coordinates; the pivot of a
row is its first nonzero coordinate in the supplied column order
(first-nonzero pivoting).  A reversed column order gives the independent
re-verification path.
"""

from __future__ import annotations

from fractions import Fraction

from .freealg import MonomialOrder


class SpanBasis:
    """Incrementally row-reduced basis of a span over a field CoeffRing."""

    def __init__(self, field, sort_key=None):
        if not field.is_field:
            raise ValueError(f"{field.label} is not a field")
        self.field = field
        self.sort_key = sort_key if sort_key is not None else (lambda k: k)
        self.pivots = {}  # pivot key -> row (dict, pivot coeff 1)
        self._order = []  # pivot keys in insertion order

    @property
    def dimension(self):
        return len(self.pivots)

    def reduce(self, vec):
        """Residual of vec after eliminating all existing pivots."""
        field = self.field
        work = {k: c for k, c in vec.items() if not field.is_zero(c)}
        while True:
            hit = None
            for k in work:
                if k in self.pivots:
                    hit = k if hit is None else min(hit, k, key=self.sort_key)
            if hit is None:
                return work
            c = work[hit]
            row = self.pivots[hit]
            for k2, c2 in row.items():
                s = field.sub(work.get(k2, field.zero), field.mul(c, c2))
                if field.is_zero(s):
                    work.pop(k2, None)
                else:
                    work[k2] = s

    def add(self, vec):
        """Insert vec; return the new pivot key, or None if dependent."""
        res = self.reduce(vec)
        if not res:
            return None
        pivot = min(res, key=self.sort_key)
        inv = self.field.invert(res[pivot])
        row = {k: self.field.mul(inv, c) for k, c in res.items()}
        self.pivots[pivot] = row
        self._order.append(pivot)
        return pivot

    def contains(self, vec):
        return not self.reduce(vec)

    def rows(self):
        """Stored rows sorted by pivot column order."""
        return [
            self.pivots[k] for k in sorted(self.pivots, key=self.sort_key)
        ]


def span_intersection(field, rows_a, rows_b, sort_key=None):
    """Basis of span(rows_a) ∩ span(rows_b) by the two-block echelon trick.

    Rows (a | a) for the first span and (b | 0) for the second; echelon rows
    whose pivot falls in the right block have zero left block and their right
    halves span the intersection.
    """
    base_key = sort_key if sort_key is not None else (lambda k: k)
    combined = SpanBasis(field, sort_key=lambda t: (t[0], base_key(t[1])))
    for row in rows_a:
        vec = {}
        for k, c in row.items():
            vec[(0, k)] = c
            vec[(1, k)] = c
        combined.add(vec)
    out = []
    for row in rows_b:
        vec = {(0, k): c for k, c in row.items()}
        pivot = combined.add(vec)
        if pivot is not None and pivot[0] == 1:
            out.append(
                {k: c for (block, k), c in combined.pivots[pivot].items() if block == 1}
            )
    return out


# -- FreePoly coordinate flattening -----------------------------------------


def poly_coords(p):
    """Flatten a FreePoly to field coordinates.

    Over Q and Z/p the keys are words; over Q[t,...] the keys are
    (word, exponent-tuple) pairs and the field is Q.
    """
    if p.ring.kind == "Q[...]":
        out = {}
        for w, c in p.terms.items():
            for exps, frac in c.terms.items():
                out[(w, exps)] = frac
        return out
    return dict(p.terms)


def coords_field(ring):
    """Field the flattened coordinates live over."""
    from .rings import CoeffRing

    if ring.kind == "Q[...]":
        return CoeffRing.rationals()
    if not ring.is_field:
        raise ValueError(f"{ring.label} is not a field")
    return ring


def coords_sort_key(alphabet, ring, descending=True):
    """Column order for flattened coordinates: monomial order on words,
    largest first by default (first-nonzero pivoting on the leading word)."""
    order = MonomialOrder(alphabet)

    def wkey(w):
        n, idx = order.key(w)
        if descending:
            return (-n, tuple(-i for i in idx))
        return (n, idx)

    if ring.kind == "Q[...]":

        def key(k):
            w, exps = k
            deg = sum(exps)
            if descending:
                return (wkey(w), -deg, tuple(-e for e in exps))
            return (wkey(w), deg, exps)

        return key
    return wkey


def coords_to_poly(coords, alphabet, ring):
    """Inverse of poly_coords."""
    from .freealg import FreePoly
    from .rings import QPoly

    if ring.kind == "Q[...]":
        terms = {}
        for (w, exps), frac in coords.items():
            terms.setdefault(w, {})[exps] = frac
        return FreePoly(
            alphabet, ring, {w: QPoly(ring.vars, t) for w, t in terms.items()}
        )
    return FreePoly(alphabet, ring, coords)


# -- dense matrices ----------------------------------------------------------


def identity_matrix(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zero_matrix(m, n):
    return [[0] * n for _ in range(m)]


def mat_mul(a, b):
    m, k = len(a), len(b)
    n = len(b[0]) if b else 0
    out = [[0] * n for _ in range(m)]
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            c = ai[t]
            if c:
                bt = b[t]
                for j in range(n):
                    if bt[j]:
                        oi[j] += c * bt[j]
    return out

def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b):
    if len(a) != len(b):
        return False
    return all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )


def mat_inverse(mat):
    """Exact inverse over Fractions; raises ValueError if singular."""
    n = len(mat)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def det(mat):
    """Exact determinant (fraction-free Bareiss over Fractions)."""
    n = len(mat)
    if n == 0:
        return 1
    a = [[Fraction(x) for x in row] for row in mat]
    sign = 1
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot_row is None:
            return 0
        if pivot_row != col:
            a[col], a[pivot_row] = a[pivot_row], a[col]
            sign = -sign
        for r in range(col + 1, n):
            factor = a[r][col] / a[col][col]
            for c in range(col, n):
                a[r][c] -= factor * a[col][c]
    result = Fraction(sign)
    for i in range(n):
        result *= a[i][i]
    if result.denominator == 1:
        return int(result)
    return result
