"""Bimodule constructions over Z computed concretely: Smith normal form,
finitely generated abelian groups, tensor powers of a Z-algebra, the grading
by words over {x, y, z}, reduction maps collapsing x.y^n.z factors, and the
two-algebra variant with a single x.z rule.

Coefficients are Z throughout; fields enter only as presentations with
trivial relations.  Everything is exact integer arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .linalg import identity_matrix


def smith_normal_form(mat):
    """U, D, V with U*mat*V = D diagonal, U and V unimodular, and the diagonal
    a divisibility chain d1 | d2 | ...; pivoting always picks the smallest
    nonzero absolute value."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    d = [list(map(int, row)) for row in mat]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_op(i, j, q):  # row i -= q * row j
        d[i] = [a - q * b for a, b in zip(d[i], d[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_op(i, j, q):  # col i -= q * col j
        for r in range(rows):
            d[r][i] -= q * d[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in range(rows):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def negate_row(i):
        d[i] = [-a for a in d[i]]
        u[i] = [-a for a in u[i]]

    t = 0
    while t < min(rows, cols):
        pivot = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                a = abs(d[i][j])
                if a and (best is None or a < best):
                    best = a
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    row_op(i, t, q)
                    if d[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    col_op(j, t, q)
                    if d[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if d[t][t] < 0:
            negate_row(t)
        t += 1
    # enforce the divisibility chain
    changed = True
    while changed:
        changed = False
        for i in range(min(rows, cols) - 1):
            a, b = d[i][i], d[i + 1][i + 1]
            if a and b % a != 0:
                # fold entry (i+1, i+1) into position (i, i)
                col_op(i, i + 1, -1)  # col i += col (i+1)
                q = d[i + 1][i] // d[i][i]
                row_op(i + 1, i, q)
                if d[i + 1][i]:
                    swap_rows(i, i + 1)
                # re-clear the 2x2 block
                while d[i][i + 1] or d[i + 1][i]:
                    if d[i][i + 1]:
                        q = d[i][i + 1] // d[i][i]
                        col_op(i + 1, i, q)
                        if d[i][i + 1]:
                            swap_cols(i, i + 1)
                    if d[i + 1][i]:
                        q = d[i + 1][i] // d[i][i]
                        row_op(i + 1, i, q)
                        if d[i + 1][i]:
                            swap_rows(i, i + 1)
                if d[i][i] < 0:
                    negate_row(i)
                if d[i + 1][i + 1] < 0:
                    negate_row(i + 1)
                changed = True
    return u, d, v


class FgAbGroup:
    """Finitely generated abelian group Z^g / (row space of the relation
    matrix), with cached invariant factors."""

    def __init__(self, ngens, relations=()):
        self.ngens = ngens
        rels = [list(map(int, row)) for row in relations]
        for row in rels:
            if len(row) != ngens:
                raise ValueError("relation row has wrong length")
        self.relations = rels
        if rels:
            u, d, v = smith_normal_form(rels)
            self._vt = [[v[j][i] for j in range(ngens)] for i in range(ngens)]
            self._diag = [
                d[i][i] for i in range(min(len(rels), ngens))
            ]
        else:
            self._vt = identity_matrix(ngens)
            self._diag = []
        self.invariant_factors = [x for x in self._diag if x not in (0, 1)]
        rank = sum(1 for x in self._diag if x != 0)
        self.free_rank = ngens - rank

    def recompute_invariants(self):
        """Fresh SNF run; must agree with the cached data."""
        if not self.relations:
            return [], self.ngens
        _, d, _ = smith_normal_form(self.relations)
        diag = [d[i][i] for i in range(min(len(self.relations), self.ngens))]
        factors = [x for x in diag if x not in (0, 1)]
        rank = sum(1 for x in diag if x != 0)
        return factors, self.ngens - rank

    def zero(self):
        return (0,) * self.ngens

    def reduce(self, vec):
        """Canonical coordinates: SNF basis with torsion reduced."""
        if len(vec) != self.ngens:
            raise ValueError("vector has wrong length")
        y = [
            sum(self._vt[i][j] * vec[j] for j in range(self.ngens))
            for i in range(self.ngens)
        ]
        for i, di in enumerate(self._diag):
            if di:
                y[i] %= di
        return tuple(y)

    def is_zero(self, vec):
        return all(c == 0 for c in self.reduce(vec))

    def equal(self, a, b):
        return self.is_zero(self.sub(a, b))

    @staticmethod
    def add(a, b):
        return tuple(x + y for x, y in zip(a, b))

    @staticmethod
    def sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    @staticmethod
    def scale(c, a):
        return tuple(c * x for x in a)

    def label(self):
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}" if self.free_rank > 1 else "Z")
        parts.extend(f"Z/{m}" for m in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"<FgAbGroup {self.label()} on {self.ngens} generators>"


class TensorProductGroup:
    """Presentation of M (x) N with generator pairs in row-major order."""

    def __init__(self, m, n):
        self.left = m
        self.right = n
        ngens = m.ngens * n.ngens
        rels = []
        for row in m.relations:
            for j in range(n.ngens):
                rel = [0] * ngens
                for i, c in enumerate(row):
                    rel[i * n.ngens + j] = c
                rels.append(rel)
        for row in n.relations:
            for i in range(m.ngens):
                rel = [0] * ngens
                for j, c in enumerate(row):
                    rel[i * n.ngens + j] = c
                rels.append(rel)
        self.group = FgAbGroup(ngens, rels)

    def pair_index(self, i, j):
        return i * self.right.ngens + j

    def pure(self, vec_m, vec_n):
        """Image of the pure tensor of two coordinate vectors."""
        out = [0] * self.group.ngens
        for i, a in enumerate(vec_m):
            if a:
                for j, b in enumerate(vec_n):
                    if b:
                        out[self.pair_index(i, j)] += a * b
        return tuple(out)


def tensor_product(m, n):
    return TensorProductGroup(m, n)


class ZAlgebra:
    """Z-algebra on an FgAbGroup: unit vector plus structure constants for
    generator pairs, with bilinearity on relations and associativity on
    generator triples verified by brute force."""

    def __init__(self, module, unit, products, check=True):
        self.module = module
        self.unit = tuple(map(int, unit))
        g = module.ngens
        self.products = {}
        for i in range(g):
            for j in range(g):
                if (i, j) not in products:
                    raise ValueError(f"missing product for generator pair ({i}, {j})")
                self.products[(i, j)] = tuple(map(int, products[(i, j)]))
        if check:
            self._check_bilinear()
            self._check_unit_and_assoc()

    @property
    def ngens(self):
        return self.module.ngens

    def gen(self, i):
        return tuple(1 if j == i else 0 for j in range(self.ngens))

    def mul(self, a, b):
        out = [0] * self.ngens
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        p = self.products[(i, j)]
                        c = ca * cb
                        for k, pk in enumerate(p):
                            if pk:
                                out[k] += c * pk
        return tuple(out)

    def _check_bilinear(self):
        mod = self.module
        for row in mod.relations:
            for j in range(self.ngens):
                left = [0] * self.ngens
                right = [0] * self.ngens
                for i, c in enumerate(row):
                    if c:
                        p = self.products[(i, j)]
                        q = self.products[(j, i)]
                        for k in range(self.ngens):
                            left[k] += c * p[k]
                            right[k] += c * q[k]
                if not mod.is_zero(tuple(left)) or not mod.is_zero(tuple(right)):
                    raise ValueError(
                        "structure constants are not well defined on the relations"
                    )

    def _check_unit_and_assoc(self):
        mod = self.module
        for i in range(self.ngens):
            gi = self.gen(i)
            if not mod.equal(self.mul(self.unit, gi), gi) or not mod.equal(
                self.mul(gi, self.unit), gi
            ):
                raise ValueError("unit laws fail")
        for i in range(self.ngens):
            for j in range(self.ngens):
                for k in range(self.ngens):
                    left = self.mul(self.products[(i, j)], self.gen(k))
                    right = self.mul(self.gen(i), self.products[(j, k)])
                    if not mod.equal(left, right):
                        raise ValueError(
                            f"associativity fails at generators ({i}, {j}, {k})"
                        )

    def prod_chain(self, vecs):
        out = self.unit
        for v in vecs:
            out = self.mul(out, v)
        return out

    def __repr__(self):
        return f"<ZAlgebra on {self.module.label()}>"


class TensorPower:
    """n-fold tensor power of the algebra's module, generators indexed by
    tuples of algebra generators."""

    def __init__(self, algebra, n):
        self.algebra = algebra
        self.n = n
        g = algebra.ngens
        self.tuples = list(itertools.product(range(g), repeat=n))
        self.index = {t: i for i, t in enumerate(self.tuples)}
        rels = []
        base = algebra.module.relations
        for pos in range(n):
            for row in base:
                others = [range(g)] * (n - 1)
                for ctx in itertools.product(*others):
                    rel = [0] * len(self.tuples)
                    for i, c in enumerate(row):
                        if c:
                            t = ctx[:pos] + (i,) + ctx[pos:]
                            rel[self.index[t]] += c
                    rels.append(rel)
        self.group = FgAbGroup(len(self.tuples), rels)

    def pure_of_vectors(self, vecs):
        """Coordinates of v1 (x) ... (x) vn given algebra coordinate vectors."""
        if len(vecs) != self.n:
            raise ValueError("wrong number of tensor factors")
        out = [0] * len(self.tuples)
        for t in self.tuples:
            c = 1
            for pos, i in enumerate(t):
                c *= vecs[pos][i]
                if not c:
                    break
            if c:
                out[self.index[t]] += c
        return tuple(out)


def graded_component(algebra, word, _cache={}):
    """Tensor power attached to a grading word: one algebra factor per gap,
    so a word of length n gets the (n+1)-fold power."""
    key = (id(algebra), len(word))
    if key not in _cache:
        _cache[key] = TensorPower(algebra, len(word) + 1)
    return _cache[key]


class ZModuleMap:
    """Map between FgAbGroups given by images of the source generators;
    relations of the source must map to zero (checked)."""

    def __init__(self, source, target, images, check=True):
        self.source = source
        self.target = target
        self.images = [tuple(map(int, im)) for im in images]
        if len(self.images) != source.ngens:
            raise ValueError("need one image per source generator")
        if check:
            for row in source.relations:
                acc = [0] * target.ngens
                for i, c in enumerate(row):
                    if c:
                        im = self.images[i]
                        for k in range(target.ngens):
                            acc[k] += c * im[k]
                if not target.is_zero(tuple(acc)):
                    raise ValueError("map is not well defined on the relations")

    def apply(self, vec):
        out = [0] * self.target.ngens
        for i, c in enumerate(vec):
            if c:
                im = self.images[i]
                for k in range(self.target.ngens):
                    out[k] += c * im[k]
        return tuple(out)


def reduction_map(algebra, s_vec, n, term_order="standard"):
    """Bimodule map from the x.y^n.z component to the empty-word component:
    the pure tensor a0 (x) ... (x) a_{n+2} goes to the product of its factors
    with s inserted before the last one ("standard"), or right after the
    first one ("s_first")."""
    source = graded_component(algebra, ("x",) + ("y",) * n + ("z",))
    target = graded_component(algebra, ())
    images = []
    for t in source.tuples:
        gens = [algebra.gen(i) for i in t]
        if term_order == "standard":
            chain = gens[:-1] + [tuple(s_vec)] + [gens[-1]]
        elif term_order == "s_first":
            chain = [gens[0], tuple(s_vec)] + gens[1:]
        else:
            raise ValueError(f"unknown term order {term_order!r}")
        images.append(algebra.prod_chain(chain))
    return ZModuleMap(source.group, target.group, images)


class GradedElement:
    """Finite map from grading words to elements of the attached tensor
    powers; zero components are dropped."""

    def __init__(self, algebra, parts=()):
        self.algebra = algebra
        clean = {}
        items = parts.items() if isinstance(parts, dict) else parts
        for word, vec in items:
            word = tuple(word)
            comp = graded_component(algebra, word)
            vec = tuple(map(int, vec))
            if len(vec) != comp.group.ngens:
                raise ValueError(f"component at {word} has wrong dimension")
            if word in clean:
                vec = tuple(a + b for a, b in zip(clean[word], vec))
            if comp.group.is_zero(vec):
                clean.pop(word, None)
            else:
                clean[word] = vec
        self.parts = clean

    @classmethod
    def embed_scalar(cls, algebra, vec):
        return cls(algebra, {(): tuple(vec)})

    @classmethod
    def generator_word(cls, algebra, word):
        """The word with the algebra unit in every slot."""
        comp = graded_component(algebra, word)
        vec = comp.pure_of_vectors([algebra.unit] * (len(word) + 1))
        return cls(algebra, {tuple(word): vec})

    @classmethod
    def pure(cls, algebra, word, slot_vectors):
        comp = graded_component(algebra, word)
        return cls(algebra, {tuple(word): comp.pure_of_vectors(slot_vectors)})

    @property
    def is_zero(self):
        return not self.parts

    def __add__(self, other):
        out = dict(self.parts)
        merged = list(out.items()) + list(other.parts.items())
        return GradedElement(self.algebra, merged)

    def __neg__(self):
        return GradedElement(
            self.algebra,
            {w: tuple(-c for c in v) for w, v in self.parts.items()},
        )

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return GradedElement(
            self.algebra,
            {w: tuple(c * x for x in v) for w, v in self.parts.items()},
        )

    def __mul__(self, other):
        """Tensor-ring product: concatenate words and multiply the two
        boundary slots inside the algebra."""
        alg = self.algebra
        acc = {}
        for w1, v1 in self.parts.items():
            comp1 = graded_component(alg, w1)
            for w2, v2 in other.parts.items():
                comp2 = graded_component(alg, w2)
                word = w1 + w2
                comp = graded_component(alg, word)
                out = acc.setdefault(word, [0] * comp.group.ngens)
                for t1 in comp1.tuples:
                    c1 = v1[comp1.index[t1]]
                    if not c1:
                        continue
                    for t2 in comp2.tuples:
                        c2 = v2[comp2.index[t2]]
                        if not c2:
                            continue
                        junction = alg.products[(t1[-1], t2[0])]
                        c = c1 * c2
                        for k, pk in enumerate(junction):
                            if pk:
                                t = t1[:-1] + (k,) + t2[1:]
                                out[comp.index[t]] += c * pk
        return GradedElement(alg, {w: tuple(v) for w, v in acc.items()})

    def __eq__(self, other):
        if not isinstance(other, GradedElement) or other.algebra is not self.algebra:
            return NotImplemented
        return (self - other).is_zero

    def act_left(self, vec):
        """Multiply the leftmost slot by an algebra element."""
        return self._act(vec, left=True)

    def act_right(self, vec):
        return self._act(vec, left=False)

    def _act(self, vec, left):
        alg = self.algebra
        out = {}
        for w, v in self.parts.items():
            comp = graded_component(alg, w)
            acc = [0] * comp.group.ngens
            for t in comp.tuples:
                c = v[comp.index[t]]
                if not c:
                    continue
                if left:
                    edge = alg.mul(vec, alg.gen(t[0]))
                    for k, pk in enumerate(edge):
                        if pk:
                            acc[comp.index[(k,) + t[1:]]] += c * pk
                else:
                    edge = alg.mul(alg.gen(t[-1]), vec)
                    for k, pk in enumerate(edge):
                        if pk:
                            acc[comp.index[t[:-1] + (k,)]] += c * pk
            out[w] = tuple(acc)
        return GradedElement(alg, out)

    def __repr__(self):
        ws = sorted(self.parts, key=lambda w: (len(w), w))
        return f"<GradedElement on words {[''.join(w) or '1' for w in ws]}>"


def _find_occurrences(word, patterns):
    """(position, pattern_index) pairs, leftmost position first."""
    out = []
    for pos in range(len(word)):
        for pi, pat in enumerate(patterns):
            if word[pos : pos + len(pat)] == pat:
                out.append((pos, pi))
    return out


def reduce_graded(elem, maps, fuel=10**6, pick=None):
    """Rewrite components whose word contains a pattern factor by applying
    the attached reduction map at that factor; terminates because total word
    length strictly decreases.

    maps is a list of (pattern_word, ZModuleMap) pairs; pick, if given,
    selects among the found (word, position, pattern_index) occurrences (used
    to verify order independence).
    """
    from .rewrite import FuelExhausted

    alg = elem.algebra
    patterns = [tuple(p) for p, _ in maps]
    budget = fuel
    current = elem
    while True:
        occs = []
        for w in sorted(current.parts, key=lambda w: (len(w), w)):
            for pos, pi in _find_occurrences(w, patterns):
                occs.append((w, pos, pi))
        if not occs:
            return current
        budget -= 1
        if budget < 0:
            raise FuelExhausted("reduce_graded ran out of fuel")
        w, pos, pi = pick(occs) if pick is not None else occs[0]
        pat = patterns[pi]
        the_map = maps[pi][1]
        comp = graded_component(alg, w)
        vec = current.parts[w]
        new_word = w[:pos] + w[pos + len(pat) :]
        new_comp = graded_component(alg, new_word)
        acc = [0] * new_comp.group.ngens
        sub_comp = graded_component(alg, pat)
        for t in comp.tuples:
            c = vec[comp.index[t]]
            if not c:
                continue
            mid = t[pos : pos + len(pat) + 1]
            image = the_map.images[sub_comp.index[mid]]
            for k, ik in enumerate(image):
                if ik:
                    nt = t[:pos] + (k,) + t[pos + len(pat) + 1 :]
                    acc[new_comp.index[nt]] += c * ik
        rest = {w2: v2 for w2, v2 in current.parts.items() if w2 != w}
        current = GradedElement(alg, rest) + GradedElement(
            alg, {new_word: tuple(acc)}
        )


class PairEmbedding:
    """Two algebras inside one ring: the combined algebra is the tensor
    product, a twisting endomorphism moves transported elements onto the
    base's generating set, and the single grading rule x.z -> (twist) makes
    x.a.z evaluate the transport map."""

    def __init__(self, base, transport, algebra, tensor, theta, rule_map,
                 gen_map_images, retraction, image_generates, generation_degree):
        self.base = base
        self.transport = transport
        self.algebra = algebra
        self.tensor = tensor
        self.theta = theta
        self.rule_map = rule_map
        self.gen_map_images = gen_map_images
        self.retraction = retraction
        self.image_generates = image_generates
        self.generation_degree = generation_degree

    def gen_map(self, vec):
        """The module map on transport coordinates (phi)."""
        out = [0] * self.base.ngens
        for j, c in enumerate(vec):
            if c:
                im = self.gen_map_images[j]
                for k in range(self.base.ngens):
                    out[k] += c * im[k]
        return tuple(out)

    def embed_base(self, vec):
        return self.tensor.pure(vec, self.transport.unit)

    def embed_transport(self, vec):
        return self.tensor.pure(self.base.unit, vec)

    def xaz(self, transport_vec):
        """The graded element x.a.z with a riding in the middle slot."""
        mid = self.embed_transport(transport_vec)
        return GradedElement.pure(
            self.algebra, ("x", "z"), [self.algebra.unit, mid, self.algebra.unit]
        )

    def reduce(self, elem, fuel=10**6, pick=None):
        return reduce_graded(elem, [(("x", "z"), self.rule_map)], fuel=fuel, pick=pick)


def build_pair_embedding(base, transport, gen_map_images, retraction,
                         generation_degree=4):
    """Assemble the tensor-product algebra, the twisting endomorphism, and the
    single x.z reduction rule realizing the transport map.

    gen_map_images gives the module map on transport generators (values are
    base coordinate vectors); retraction is an integer functional on base
    generators retracting the unit (value 1 on the unit element).
    """
    if retraction is None:
        raise ValueError("the scalar retraction of the base algebra is required")
    retraction = tuple(map(int, retraction))
    if len(retraction) != base.ngens:
        raise ValueError("retraction has wrong length")
    for row in base.module.relations:
        if sum(c * r for c, r in zip(row, retraction)) != 0:
            raise ValueError("retraction is not well defined on the relations")
    if sum(c * r for c, r in zip(base.unit, retraction)) != 1:
        raise ValueError("retraction must send the unit to 1")

    gen_map_images = [tuple(map(int, v)) for v in gen_map_images]
    if len(gen_map_images) != transport.ngens:
        raise ValueError("need one image per transport generator")
    # well-definedness of the transport map on relations
    ZModuleMap(transport.module, base.module, gen_map_images)

    tensor = tensor_product(base.module, transport.module)
    g0, g1 = base.ngens, transport.ngens
    products = {}
    for i in range(g0):
        for j in range(g1):
            for k in range(g0):
                for l in range(g1):
                    p = tensor.pure(base.products[(i, k)], transport.products[(j, l)])
                    products[(tensor.pair_index(i, j), tensor.pair_index(k, l))] = p
    unit = tensor.pure(base.unit, transport.unit)
    algebra = ZAlgebra(tensor.group, unit, products)

    theta_images = []
    for i in range(g0):
        for j in range(g1):
            scaled = FgAbGroup.scale(
                retraction[i], tensor.pure(gen_map_images[j], transport.unit)
            )
            theta_images.append(scaled)
    theta = ZModuleMap(tensor.group, tensor.group, theta_images)

    source = graded_component(algebra, ("x", "z"))
    images = []
    for t in source.tuples:
        mid = theta.images[t[1]]
        prod = algebra.mul(algebra.mul(algebra.gen(t[0]), mid), algebra.gen(t[2]))
        images.append(prod)
    rule_map = ZModuleMap(source.group, graded_component(algebra, ()).group, images)

    image_generates = _spans_module(
        base, [base.unit] + list(gen_map_images), generation_degree
    )
    return PairEmbedding(
        base, transport, algebra, tensor, theta, rule_map,
        gen_map_images, retraction, image_generates, generation_degree,
    )


def _spans_module(algebra, seed_vectors, degree):
    """Do products of <= degree seed vectors span the whole module over Z?"""
    vectors = list(seed_vectors)
    layer = list(seed_vectors)
    for _ in range(1, degree):
        layer = [algebra.mul(a, b) for a in layer for b in seed_vectors]
        vectors.extend(layer)
    rows = [list(v) for v in vectors] + [list(r) for r in algebra.module.relations]
    _, d, _ = smith_normal_form(rows)
    diag = [d[i][i] for i in range(min(len(rows), algebra.ngens))]
    return len(diag) == algebra.ngens and all(x == 1 for x in diag)
