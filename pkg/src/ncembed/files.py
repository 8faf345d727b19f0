"""Text file formats.

System files (.ncalg)::

    # comment
    ring Q
    alphabet x y z t
    rule t.t -> 2
    rule x.z -> t

Algebra files (.alg)::

    ring Q
    basis t
    unital true
    table t.t -> 2
    gen 0 -> t
    aug t -> 0            # optional augmentation values
    psi c -> x^2          # optional second-factor data for coproducts
    lift x -> c

Z-algebra files for the bimodule demo (.zalg)::

    zgens e u
    zrel 0 2              # one relation row per line
    zmul e.e -> e
    zunit e
    zs 0 -> u             # the reduction targets s_0, s_1, ...

Loading canonical output of the dump functions reproduces it byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .embed import AlgebraPresentation
from .freealg import Alphabet, FreePoly, ParseError, format_poly, format_word, parse_poly
from .rewrite import ReductionSystem, Rule
from .rings import CoeffRing
from .tensorring import FgAbGroup, ZAlgebra

_PSI_RING = CoeffRing.polynomials("x")
_EMPTY = Alphabet([])


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _split_arrow(line, lineno):
    if "->" not in line:
        raise ParseError("expected '->'", line=lineno)
    lhs, rhs = line.split("->", 1)
    return lhs.strip(), rhs.strip()


def load_system(text):
    ring = None
    alphabet = None
    rules = []
    for lineno, line in _lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "ring":
                ring = CoeffRing.parse(rest)
            elif key == "alphabet":
                symbols = rest.split()
                alphabet = Alphabet(symbols)
            elif key == "rule":
                if ring is None or alphabet is None:
                    raise ParseError(
                        "rule before ring/alphabet declarations", line=lineno
                    )
                lhs_text, rhs_text = _split_arrow(rest, lineno)
                lhs = alphabet.word(lhs_text)
                rhs = parse_poly(rhs_text, alphabet, ring)
                rules.append(Rule(lhs, rhs))
            else:
                raise ParseError(f"unknown directive {key!r}", line=lineno)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from exc
    if ring is None:
        raise ParseError("missing ring line", line=0)
    if alphabet is None:
        raise ParseError("missing alphabet line", line=0)
    try:
        return ReductionSystem(alphabet, ring, rules)
    except ValueError as exc:
        raise ParseError(str(exc), line=0) from exc


def dump_system(sys):
    out = [f"ring {sys.ring.label}"]
    out.append("alphabet " + " ".join(sys.alphabet.symbols))
    for rule in sys.rules:
        out.append(f"rule {format_word(rule.lhs)} -> {format_poly(rule.rhs)}")
    return "\n".join(out) + "\n"


@dataclass
class AlgebraFile:
    presentation: AlgebraPresentation
    gens: list = field(default_factory=list)
    psi: dict | None = None
    lift: str | None = None


def load_algebra(text):
    ring = None
    basis = None
    unital = True
    table_lines = []
    gen_lines = []
    aug_lines = []
    psi_lines = []
    lift = None
    for lineno, line in _lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if key == "ring":
                ring = CoeffRing.parse(rest)
            elif key == "basis":
                basis = tuple(rest.split())
            elif key == "unital":
                if rest not in ("true", "false"):
                    raise ParseError("unital must be true or false", line=lineno)
                unital = rest == "true"
            elif key == "table":
                table_lines.append((lineno, rest))
            elif key == "gen":
                gen_lines.append((lineno, rest))
            elif key == "aug":
                aug_lines.append((lineno, rest))
            elif key == "psi":
                psi_lines.append((lineno, rest))
            elif key == "lift":
                lhs, rhs = _split_arrow(rest, lineno)
                if lhs != "x":
                    raise ParseError("lift line must read 'lift x -> <symbol>'",
                                     line=lineno)
                lift = rhs
            else:
                raise ParseError(f"unknown directive {key!r}", line=lineno)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from exc
    if ring is None:
        raise ParseError("missing ring line", line=0)
    if basis is None:
        raise ParseError("missing basis line", line=0)
    alphabet = Alphabet(basis)
    table = {}
    for lineno, rest in table_lines:
        lhs_text, rhs_text = _split_arrow(rest, lineno)
        try:
            pair = alphabet.word(lhs_text)
            if len(pair) != 2:
                raise ParseError("table keys are pairs b.b'", line=lineno)
            table[(pair[0], pair[1])] = parse_poly(rhs_text, alphabet, ring)
        except ParseError:
            raise
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from exc
    gens = [None] * len(gen_lines)
    for lineno, rest in gen_lines:
        lhs_text, rhs_text = _split_arrow(rest, lineno)
        try:
            idx = int(lhs_text)
        except ValueError:
            raise ParseError("gen index must be an integer", line=lineno) from None
        if idx < 0 or idx >= len(gen_lines) or gens[idx] is not None:
            raise ParseError(
                f"gen indices must be 0..{len(gen_lines) - 1} without repeats",
                line=lineno,
            )
        try:
            gens[idx] = parse_poly(rhs_text, alphabet, ring)
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from exc
    augmentation = None
    if aug_lines:
        augmentation = {}
        for lineno, rest in aug_lines:
            lhs_text, rhs_text = _split_arrow(rest, lineno)
            if lhs_text not in alphabet:
                raise ParseError(f"unknown basis symbol {lhs_text!r}", line=lineno)
            try:
                scalar_poly = parse_poly(rhs_text, _EMPTY, ring)
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from exc
            augmentation[lhs_text] = scalar_poly.constant_coeff()
    psi = None
    if psi_lines:
        psi = {}
        for lineno, rest in psi_lines:
            lhs_text, rhs_text = _split_arrow(rest, lineno)
            if lhs_text not in alphabet:
                raise ParseError(f"unknown basis symbol {lhs_text!r}", line=lineno)
            try:
                poly = parse_poly(rhs_text, _EMPTY, _PSI_RING)
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from exc
            coeffs = [0, 0, 0]
            for exps, c in poly.constant_coeff().terms.items():
                if exps[0] > 2:
                    raise ParseError("psi values live modulo x^3", line=lineno)
                coeffs[exps[0]] = c
            psi[lhs_text] = tuple(coeffs)
        for b in basis:
            psi.setdefault(b, (0, 0, 0))
    try:
        pres = AlgebraPresentation(ring, basis, table, unital=unital,
                                   augmentation=augmentation)
    except ValueError as exc:
        raise ParseError(str(exc), line=0) from exc
    return AlgebraFile(pres, [g for g in gens], psi, lift)


def dump_algebra(data):
    pres = data.presentation
    out = [f"ring {pres.ring.label}"]
    out.append("basis " + " ".join(pres.basis))
    out.append(f"unital {'true' if pres.unital else 'false'}")
    for b in pres.basis:
        for b2 in pres.basis:
            out.append(
                f"table {b}.{b2} -> {format_poly(pres.table[(b, b2)])}"
            )
    for i, g in enumerate(data.gens):
        out.append(f"gen {i} -> {format_poly(g)}")
    if pres.augmentation is not None:
        for b in pres.basis:
            if b in pres.augmentation:
                scalar = FreePoly.from_scalar(_EMPTY, pres.ring, pres.augmentation[b])
                out.append(f"aug {b} -> {format_poly(scalar)}")
    if data.psi is not None:
        from .rings import QPoly

        for b in pres.basis:
            terms = {(e,): c for e, c in enumerate(data.psi[b]) if c}
            poly = FreePoly(_EMPTY, _PSI_RING, {(): QPoly(("x",), terms)})
            out.append(f"psi {b} -> {format_poly(poly)}")
    if data.lift is not None:
        out.append(f"lift x -> {data.lift}")
    return "\n".join(out) + "\n"


@dataclass
class ZAlgebraFile:
    algebra: ZAlgebra
    names: tuple
    s_list: list


def load_zalgebra(text):
    names = None
    rel_rows = []
    mul_lines = []
    unit_line = None
    s_lines = []
    for lineno, line in _lines(text):
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key == "zgens":
            names = tuple(rest.split())
        elif key == "zrel":
            try:
                rel_rows.append([int(v) for v in rest.split()])
            except ValueError:
                raise ParseError("relation rows are integers", line=lineno) from None
        elif key == "zmul":
            mul_lines.append((lineno, rest))
        elif key == "zunit":
            unit_line = (lineno, rest)
        elif key == "zs":
            s_lines.append((lineno, rest))
        else:
            raise ParseError(f"unknown directive {key!r}", line=lineno)
    if names is None:
        raise ParseError("missing zgens line", line=0)
    if unit_line is None:
        raise ParseError("missing zunit line", line=0)
    alphabet = Alphabet(names)
    ring = CoeffRing.integers()

    def combo(text, lineno):
        try:
            poly = parse_poly(text, alphabet, ring)
        except ValueError as exc:
            raise ParseError(str(exc), line=lineno) from exc
        vec = [0] * len(names)
        for w, c in poly.terms.items():
            if len(w) != 1:
                raise ParseError(
                    "combinations use the generators linearly", line=lineno
                )
            vec[names.index(w[0])] += c
        return tuple(vec)

    for row in rel_rows:
        if len(row) != len(names):
            raise ParseError("relation row has wrong length", line=0)
    module = FgAbGroup(len(names), rel_rows)
    products = {}
    for lineno, rest in mul_lines:
        lhs_text, rhs_text = _split_arrow(rest, lineno)
        pair = alphabet.word(lhs_text)
        if len(pair) != 2:
            raise ParseError("zmul keys are pairs g.g'", line=lineno)
        i, j = names.index(pair[0]), names.index(pair[1])
        products[(i, j)] = combo(rhs_text, lineno)
    unit = combo(unit_line[1], unit_line[0])
    s_list = [None] * len(s_lines)
    for lineno, rest in s_lines:
        lhs_text, rhs_text = _split_arrow(rest, lineno)
        try:
            idx = int(lhs_text)
        except ValueError:
            raise ParseError("zs index must be an integer", line=lineno) from None
        if idx < 0 or idx >= len(s_lines) or s_list[idx] is not None:
            raise ParseError(
                f"zs indices must be 0..{len(s_lines) - 1} without repeats",
                line=lineno,
            )
        s_list[idx] = combo(rhs_text, lineno)
    try:
        algebra = ZAlgebra(module, unit, products)
    except ValueError as exc:
        raise ParseError(str(exc), line=0) from exc
    return ZAlgebraFile(algebra, names, s_list)
