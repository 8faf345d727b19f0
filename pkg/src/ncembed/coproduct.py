"""Coproducts of augmented finite-dimensional algebras over Q with
alternating-word normal forms, the x.M.x tensor subalgebra, growth counting,
and bounded ideal-extension experiments.

The first factor carries the module retraction determined by its basis (the
unit coordinate); the second factor carries a designated surjection onto
Q[x]/(x^3) whose lift and its square, together with the kernel, decompose the
factor.  Elements of the coproduct are Q-combinations of words strictly
alternating between the two factors' complement bases.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .freealg import FreePoly
from .linalg import SpanBasis, mat_inverse, span_intersection
from .rings import CoeffRing

LEFT, RIGHT = 0, 1
KIND_M1 = "m1"
KIND_X = "x"
KIND_X2 = "x2"
KIND_M2 = "m2"


def _coords(pres, poly):
    """Coordinates of a presentation element over [eps] + basis."""
    out = [Fraction(0)] * (1 + len(pres.basis))
    for w, c in poly.terms.items():
        if len(w) == 0:
            out[0] = Fraction(c)
        else:
            out[1 + pres.basis.index(w[0])] = Fraction(c)
    return out


class DecomposedAlgebra:
    """A unital presentation over Q together with the complement-basis data
    the coproduct normal form needs.

    role "left": complement basis is the presentation basis itself and the
    retraction onto Q is the unit coordinate.  role "right": psi maps basis
    symbols to polynomials in the class of x modulo x^3; the designated lift,
    its square, and a kernel basis decompose the algebra.
    """

    def __init__(self, pres, role, psi=None, lift=None):
        if pres.ring != CoeffRing.rationals():
            raise ValueError("coproduct factors must be presented over Q")
        if not pres.unital:
            raise ValueError("coproduct factors must be unital")
        self.pres = pres
        self.role = role
        dim = 1 + len(pres.basis)
        if role == "left":
            self.mnames = tuple(pres.basis)
            self.kinds = (KIND_M1,) * len(self.mnames)
            # complement basis vectors are the basis symbols themselves
            basis_vecs = [self._symbol_vec(i) for i in range(len(pres.basis))]
        elif role == "right":
            if psi is None or lift is None:
                raise ValueError("right factor needs psi and a designated lift")
            self.psi = {b: tuple(Fraction(c) for c in psi[b]) for b in pres.basis}
            for b in pres.basis:
                if b not in self.psi:
                    raise ValueError(f"psi is missing basis symbol {b!r}")
            if lift not in pres.basis or self.psi[lift] != (0, 1, 0):
                raise ValueError("the lift must be a basis symbol with psi = x")
            self.lift = lift
            self._check_psi_hom()
            basis_vecs, names, kinds = self._right_decomposition()
            self.mnames = tuple(names)
            self.kinds = tuple(kinds)
        else:
            raise ValueError(f"unknown role {role!r}")
        self.mdim = len(self.mnames)
        # change of basis [eps | complement vectors] and its inverse
        cols = [[Fraction(0)] * dim for _ in range(dim)]
        cols[0][0] = Fraction(1)
        for k, vec in enumerate(basis_vecs):
            for i in range(dim):
                cols[k + 1][i] = vec[i]
        change = [[cols[j][i] for j in range(dim)] for i in range(dim)]
        self._from_derived = change
        self._to_derived = mat_inverse(change)
        self._mtable = {}
        for i in range(self.mdim):
            for j in range(self.mdim):
                prod = self._mul_vectors(basis_vecs[i], basis_vecs[j])
                derived = self._apply(self._to_derived, prod)
                eps = derived[0]
                mpart = {
                    k: derived[k + 1]
                    for k in range(self.mdim)
                    if derived[k + 1]
                }
                self._mtable[(i, j)] = (eps, mpart)

    def _symbol_vec(self, i):
        dim = 1 + len(self.pres.basis)
        v = [Fraction(0)] * dim
        v[i + 1] = Fraction(1)
        return v

    def _mul_vectors(self, a, b):
        pres = self.pres
        pa = self._vec_to_poly(a)
        pb = self._vec_to_poly(b)
        return _coords(pres, pres.mul(pa, pb))

    def _vec_to_poly(self, v):
        terms = {(): v[0]}
        for i, b in enumerate(self.pres.basis):
            terms[(b,)] = v[i + 1]
        return FreePoly(self.pres.alphabet, self.pres.ring, terms)

    @staticmethod
    def _apply(mat, vec):
        return [sum(r * c for r, c in zip(row, vec)) for row in mat]

    def _psi_of_vec(self, v):
        out = [v[0], Fraction(0), Fraction(0)]
        for i, b in enumerate(self.pres.basis):
            c = v[i + 1]
            if c:
                pb = self.psi[b]
                for k in range(3):
                    out[k] += c * pb[k]
        return tuple(out)

    def _check_psi_hom(self):
        pres = self.pres
        for b in pres.basis:
            for b2 in pres.basis:
                prod = _coords(pres, pres.table[(b, b2)])
                lhs = self._psi_of_vec(prod)
                pa, pb = self.psi[b], self.psi[b2]
                conv = [Fraction(0)] * 3
                for i in range(3):
                    for j in range(3):
                        if i + j < 3:
                            conv[i + j] += pa[i] * pb[j]
                if lhs != tuple(conv):
                    raise ValueError(
                        f"psi is not an algebra map at ({b}, {b2})"
                    )

    def _right_decomposition(self):
        pres = self.pres
        dim = 1 + len(pres.basis)
        lift_vec = self._symbol_vec(pres.basis.index(self.lift))
        square_vec = self._mul_vectors(lift_vec, lift_vec)
        # kernel of psi on the presentation module, nice basis from the
        # reduced row echelon form of the 3 constraint rows
        constraints = [[Fraction(0)] * dim for _ in range(3)]
        constraints[0][0] = Fraction(1)
        for i, b in enumerate(pres.basis):
            for k in range(3):
                constraints[k][i + 1] = self.psi[b][k]
        pivots = []
        rowi = 0
        for col in range(dim):
            pr = next(
                (r for r in range(rowi, 3) if constraints[r][col] != 0), None
            )
            if pr is None:
                continue
            constraints[rowi], constraints[pr] = constraints[pr], constraints[rowi]
            inv = 1 / constraints[rowi][col]
            constraints[rowi] = [x * inv for x in constraints[rowi]]
            for r in range(3):
                if r != rowi and constraints[r][col]:
                    f = constraints[r][col]
                    constraints[r] = [
                        x - f * y for x, y in zip(constraints[r], constraints[rowi])
                    ]
            pivots.append(col)
            rowi += 1
            if rowi == 3:
                break
        if rowi < 3:
            raise ValueError("psi is not surjective onto Q[x]/(x^3)")
        kernel = []
        kernel_names = []
        for col in range(dim):
            if col in pivots:
                continue
            vec = [Fraction(0)] * dim
            vec[col] = Fraction(1)
            for r, pc in enumerate(pivots):
                vec[pc] = -constraints[r][col]
            kernel.append(vec)
            if all(vec[i] == 0 for i in range(dim) if i != col) and col > 0:
                kernel_names.append(pres.basis[col - 1])
            else:
                kernel_names.append(f"m2_{len(kernel_names)}")
        # name the square by its symbol when the table gives a single one
        nz = [i for i, c in enumerate(square_vec) if c]
        if len(nz) == 1 and nz[0] > 0 and square_vec[nz[0]] == 1:
            square_name = self.pres.basis[nz[0] - 1]
        else:
            square_name = f"{self.lift}^2"
        vecs = [lift_vec, square_vec] + kernel
        names = [self.lift, square_name] + kernel_names
        kinds = [KIND_X, KIND_X2] + [KIND_M2] * len(kernel)
        return vecs, names, kinds

    def mtable(self, i, j):
        return self._mtable[(i, j)]

    @property
    def mdim_m1(self):
        return sum(1 for k in self.kinds if k == KIND_M1)


class Coproduct:
    """The coproduct of a left and a right decomposed factor with alternating
    word arithmetic."""

    def __init__(self, left, right):
        if left.role != "left" or right.role != "right":
            raise ValueError("expected a left-role and a right-role factor")
        self.factors = (left, right)

    def factor(self, f):
        return self.factors[f]

    def one(self):
        return CoproductElement(self, {(): Fraction(1)})

    def letter(self, f, idx, coeff=1):
        return CoproductElement(self, {((f, idx),): Fraction(coeff)})

    def element(self, parts):
        return CoproductElement(self, parts)

    def format_word(self, word):
        if not word:
            return "1"
        return ".".join(self.factors[f].mnames[i] for f, i in word)

    def word_shape(self, word):
        return tuple(self.factors[f].kinds[i] for f, i in word)

    def mul_words(self, w1, w2):
        if not w1:
            return {w2: Fraction(1)}
        if not w2:
            return {w1: Fraction(1)}
        (f1, i1) = w1[-1]
        (f2, i2) = w2[0]
        if f1 != f2:
            return {w1 + w2: Fraction(1)}
        eps, mpart = self.factors[f1].mtable(i1, i2)
        out = {}
        for idx, c in mpart.items():
            word = w1[:-1] + ((f1, idx),) + w2[1:]
            out[word] = out.get(word, Fraction(0)) + c
        if eps:
            for word, c in self.mul_words(w1[:-1], w2[1:]).items():
                out[word] = out.get(word, Fraction(0)) + eps * c
        return {w: c for w, c in out.items() if c}

    def basis_words(self, max_len):
        """All alternating words of length <= max_len, shortest first."""
        out = [()]
        layer = [()]
        for _ in range(max_len):
            nxt = []
            for w in layer:
                for f in (LEFT, RIGHT):
                    if w and w[-1][0] == f:
                        continue
                    for i in range(self.factors[f].mdim):
                        nxt.append(w + ((f, i),))
            out.extend(nxt)
            layer = nxt
        return out


class CoproductElement:
    """Finite Q-combination of alternating words."""

    def __init__(self, pair, parts=()):
        self.pair = pair
        clean = {}
        items = parts.items() if isinstance(parts, dict) else parts
        for w, c in items:
            c = Fraction(c)
            w = tuple(w)
            if w in clean:
                c = clean[w] + c
            if c:
                clean[w] = c
            else:
                clean.pop(w, None)
        self.parts = clean

    @property
    def is_zero(self):
        return not self.parts

    def __add__(self, other):
        merged = dict(self.parts)
        for w, c in other.parts.items():
            s = merged.get(w, Fraction(0)) + c
            if s:
                merged[w] = s
            else:
                merged.pop(w, None)
        return CoproductElement(self.pair, merged)

    def __neg__(self):
        return CoproductElement(self.pair, {w: -c for w, c in self.parts.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return CoproductElement(self.pair, {})
        return CoproductElement(self.pair, {w: c * v for w, v in self.parts.items()})

    def __mul__(self, other):
        if not isinstance(other, CoproductElement):
            return self.scale(other)
        out = {}
        for w1, c1 in self.parts.items():
            for w2, c2 in other.parts.items():
                for w, c in self.pair.mul_words(w1, w2).items():
                    s = out.get(w, Fraction(0)) + c1 * c2 * c
                    if s:
                        out[w] = s
                    else:
                        out.pop(w, None)
        return CoproductElement(self.pair, out)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return (
            isinstance(other, CoproductElement)
            and self.pair is other.pair
            and self.parts == other.parts
        )

    def max_word_len(self):
        return max((len(w) for w in self.parts), default=0)

    def __repr__(self):
        ws = sorted(self.parts, key=lambda w: (len(w), w))
        return "<CoproductElement " + " + ".join(
            f"{self.parts[w]}*{self.pair.format_word(w)}" for w in ws
        ) + ">" if ws else "<CoproductElement 0>"


def coproduct_mul(u, v):
    """Product in the coproduct: concatenate and straighten same-factor
    junctions through the factor tables."""
    return u * v


def alternating_word_count(d1, d2, n):
    """Number of alternating words of length <= n when the factors have
    complement dimensions d1 and d2 (two-state recursion over the last
    factor)."""
    if d1 < 1 or d2 < 1:
        raise ValueError("dimensions must be at least 1")
    total = 1
    end_left, end_right = 0, 0
    for k in range(1, n + 1):
        if k == 1:
            end_left, end_right = d1, d2
        else:
            end_left, end_right = d1 * end_right, d2 * end_left
        total += end_left + end_right
    return total


@dataclass(frozen=True)
class TensorSubalgebraReport:
    dims: dict
    expected: dict
    shapes_ok: bool
    words: dict

    @property
    def ok(self):
        return self.shapes_ok and all(
            self.dims[d] == self.expected[d] for d in self.dims
        )


def tensor_subalgebra(left_factor, right_factor, degree):
    """Graded basis of the subalgebra generated by the x.m.x elements inside
    the coproduct: the degree-d piece must be spanned by the (dim M1)^d words
    x m x^2 m ... x^2 m x."""
    pair = Coproduct(left_factor, right_factor)
    x_idx = right_factor.kinds.index(KIND_X)
    x2_idx = right_factor.kinds.index(KIND_X2)
    m = left_factor.mdim
    gens = [
        pair.element(
            {((RIGHT, x_idx), (LEFT, i), (RIGHT, x_idx)): Fraction(1)}
        )
        for i in range(m)
    ]
    dims = {}
    expected = {}
    words = {}
    shapes_ok = True
    layer = gens
    for d in range(1, degree + 1):
        if d > 1:
            layer = [p * g for p in layer for g in gens]
        seen = set()
        for p in layer:
            if len(p.parts) != 1:
                shapes_ok = False
            for w, c in p.parts.items():
                if c != 1:
                    shapes_ok = False
                shape = pair.word_shape(w)
                want = (KIND_X,) + (KIND_M1, KIND_X2) * (d - 1) + (KIND_M1, KIND_X)
                if shape != want:
                    shapes_ok = False
                seen.add(w)
        dims[d] = len(seen)
        expected[d] = m**d
        words[d] = sorted(seen)
    return TensorSubalgebraReport(dims, expected, shapes_ok, words)


@dataclass(frozen=True)
class ClosureVerdict:
    samples: int
    ok: bool
    failures: tuple


def _merge_shapes(pair, s1, s2):
    """Predicted summand shapes of a product of a shape-s1 by a shape-s2
    element."""
    if not s1:
        return {s2}
    if not s2:
        return {s1}
    a, b = s1[-1], s2[0]
    factor_a = LEFT if a == KIND_M1 else RIGHT
    factor_b = LEFT if b == KIND_M1 else RIGHT
    if factor_a != factor_b:
        return {s1 + s2}
    if factor_a == RIGHT:
        merged = KIND_X2 if (a, b) == (KIND_X, KIND_X) else KIND_M2
        return {s1[:-1] + (merged,) + s2[1:]}
    # M1 against M1: the straightened part plus the contraction
    out = {s1[:-1] + (KIND_M1,) + s2[1:]}
    out |= _merge_shapes(pair, s1[:-1], s2[1:])
    return out


def summand_closure_check(left_factor, right_factor, samples, degree, seed=0):
    """Randomized check that products of summand-pure elements stay in the
    predicted one or two summands."""
    pair = Coproduct(left_factor, right_factor)
    rng = random.Random(seed)
    kind_indices = {LEFT: {}, RIGHT: {}}
    for f, factor in ((LEFT, left_factor), (RIGHT, right_factor)):
        for i, k in enumerate(factor.kinds):
            kind_indices[f].setdefault(k, []).append(i)

    def random_shape():
        length = rng.randint(0, degree)
        shape = []
        factor = rng.choice((LEFT, RIGHT))
        for _ in range(length):
            if factor == LEFT:
                shape.append(KIND_M1)
            else:
                shape.append(rng.choice((KIND_X, KIND_X2, KIND_M2))
                             if kind_indices[RIGHT].get(KIND_M2)
                             else rng.choice((KIND_X, KIND_X2)))
            factor = 1 - factor
        return tuple(shape)

    def random_pure(shape):
        parts = {}
        for _ in range(rng.randint(1, 2)):
            word = []
            factor = None
            for k in shape:
                f = LEFT if k == KIND_M1 else RIGHT
                word.append((f, rng.choice(kind_indices[f][k])))
            coeff = Fraction(rng.randint(1, 5))
            w = tuple(word)
            parts[w] = parts.get(w, Fraction(0)) + coeff
        return pair.element(parts)

    failures = []
    for s in range(samples):
        s1, s2 = random_shape(), random_shape()
        u, v = random_pure(s1), random_pure(s2)
        predicted = _merge_shapes(pair, s1, s2)
        prod = u * v
        got = {pair.word_shape(w) for w in prod.parts}
        if not got <= predicted:
            failures.append((s1, s2, tuple(sorted(got - predicted))))
    return ClosureVerdict(samples, not failures, tuple(failures))


@dataclass(frozen=True)
class CoproductIdealVerdict:
    holds: bool
    gen_degree: int
    word_bound: int
    witness_words: tuple | None = None


def check_ideal_extension_in_coproduct(
    left_factor, right_factor, ideal_gens, gen_degree, word_bound=None
):
    """Bounded shadow of the ideal extension property of the x.M.x subalgebra
    inside the coproduct: the span of the ambient ideal meeting the subalgebra
    span must stay inside the inner ideal span, all truncated by word length."""
    pair = ideal_gens[0].pair if ideal_gens else Coproduct(left_factor, right_factor)
    if word_bound is None:
        word_bound = 2 * gen_degree + 1
    field = CoeffRing.rationals()

    def key(w):
        return (-len(w), w)

    x_idx = right_factor.kinds.index(KIND_X)
    m = left_factor.mdim
    gens = [
        pair.element({((RIGHT, x_idx), (LEFT, i), (RIGHT, x_idx)): Fraction(1)})
        for i in range(m)
    ]
    products = []
    layer = list(gens)
    products.extend(layer)
    for _ in range(1, gen_degree):
        layer = [p * g for p in layer for g in gens]
        products.extend(layer)
    products = [p for p in products if p.max_word_len() <= word_bound]

    sub_rows = [dict(p.parts) for p in products]
    sub_span = SpanBasis(field, sort_key=key)
    for row in sub_rows:
        sub_span.add(dict(row))

    one = pair.one()
    multipliers = [one] + products
    inner_span = SpanBasis(field, sort_key=key)
    for g in ideal_gens:
        for a in multipliers:
            ag = a * g
            if ag.max_word_len() > word_bound:
                continue
            for b in multipliers:
                q = ag * b
                if not q.is_zero and q.max_word_len() <= word_bound:
                    inner_span.add(dict(q.parts))

    ambient_rows = []
    for g in ideal_gens:
        room = word_bound - g.max_word_len()
        if room < 0:
            continue
        words = [w for w in pair.basis_words(room)]
        for uw in words:
            for vw in words:
                if len(uw) + len(vw) > room:
                    continue
                u = pair.element({uw: Fraction(1)})
                v = pair.element({vw: Fraction(1)})
                q = u * g * v
                if not q.is_zero and q.max_word_len() <= word_bound:
                    ambient_rows.append(dict(q.parts))

    trace = span_intersection(
        field, ambient_rows, [dict(r) for r in sub_span.rows()], sort_key=key
    )
    for row in trace:
        if not inner_span.contains(row):
            return CoproductIdealVerdict(
                False, gen_degree, word_bound,
                tuple(pair.format_word(w) for w in sorted(row, key=key)),
            )
    return CoproductIdealVerdict(True, gen_degree, word_bound)
