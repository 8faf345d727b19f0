"""Words over a finite alphabet and exact noncommutative polynomials.

A word is a tuple of symbol names; the empty tuple is the multiplicative
identity.  A FreePoly is a finite map word -> nonzero scalar over one of the
rings in :mod:`ncembed.rings`.  Polynomials are immutable after construction
and two mathematically equal polynomials always compare equal.

Text grammar (shared with the CLI file formats)::

    poly   := [sign] term (sign term)*
    term   := factor ('*' factor)*        -- at most one word factor
    factor := rational | indeterminate ['^' digits] | word
    word   := symbol ('.' symbol)*        -- '1' denotes the empty word
    rational := digits ['/' digits]

Examples: ``2*x.y + 1``, ``-1/3*x``, ``t*x - t^2`` (the last over Q[t]).
"""

from __future__ import annotations

import re
from fractions import Fraction

from .rings import CoeffRing, QPoly

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_']*")


class ParseError(ValueError):
    """Syntax or symbol error, carrying a character position."""

    def __init__(self, message, pos=None, line=None):
        self.pos = pos
        self.line = line
        where = ""
        if line is not None:
            where = f" (line {line})"
        elif pos is not None:
            where = f" (at position {pos})"
        super().__init__(message + where)


class Alphabet:
    """Ordered list of distinct printable symbols; the order is total and
    fixed, and it is what the monomial order refines."""

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols):
        self.symbols = tuple(symbols)
        self._index = {}
        for i, s in enumerate(self.symbols):
            if not _NAME_RE.fullmatch(s):
                raise ValueError(f"bad symbol {s!r}")
            if s in self._index:
                raise ValueError(f"duplicate symbol {s!r}")
            self._index[s] = i

    def index(self, symbol):
        try:
            return self._index[symbol]
        except KeyError:
            raise ValueError(f"symbol {symbol!r} is not in the alphabet") from None

    def __contains__(self, symbol):
        return symbol in self._index

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r})"

    def word(self, text):
        return word_from_text(text, self)

    def check_word(self, w):
        for s in w:
            if s not in self._index:
                raise ValueError(f"symbol {s!r} is not in the alphabet")


def word_from_text(text, alphabet):
    """Parse a dotted word; '1' is the empty word."""
    text = text.strip()
    if text == "1":
        return ()
    parts = text.split(".")
    w = []
    for p in parts:
        p = p.strip()
        if p not in alphabet:
            raise ParseError(f"symbol {p!r} is not in the alphabet")
        w.append(p)
    return tuple(w)


def format_word(w):
    return ".".join(w) if w else "1"


class MonomialOrder:
    """Length-graded lexicographic order induced by the alphabet order.

    Total, compatible with concatenation on both sides, and well-founded;
    the one built-in kind.
    """

    __slots__ = ("alphabet",)

    def __init__(self, alphabet):
        self.alphabet = alphabet

    def key(self, w):
        return (len(w), tuple(self.alphabet.index(s) for s in w))

    def lt(self, u, w):
        return self.key(u) < self.key(w)

    def sort_words(self, words, reverse=False):
        return sorted(words, key=self.key, reverse=reverse)


class FreePoly:
    """Finite formal sum of scalar-weighted words over an alphabet."""

    __slots__ = ("alphabet", "ring", "terms")

    def __init__(self, alphabet, ring, terms=()):
        self.alphabet = alphabet
        self.ring = ring
        clean = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for w, c in items:
            w = tuple(w)
            alphabet.check_word(w)
            c = ring.coerce(c)
            if w in clean:
                c = ring.add(clean[w], c)
            if ring.is_zero(c):
                clean.pop(w, None)
            else:
                clean[w] = c
        self.terms = clean

    @classmethod
    def _raw(cls, alphabet, ring, terms):
        # internal fast path: terms already canonical (no zeros, valid words)
        p = object.__new__(cls)
        p.alphabet = alphabet
        p.ring = ring
        p.terms = terms
        return p

    # -- constructors ---------------------------------------------------------

    @classmethod
    def zero(cls, alphabet, ring):
        return cls._raw(alphabet, ring, {})

    @classmethod
    def one(cls, alphabet, ring):
        return cls._raw(alphabet, ring, {(): ring.one})

    @classmethod
    def from_word(cls, alphabet, ring, w, coeff=1):
        return cls(alphabet, ring, {tuple(w): coeff})

    @classmethod
    def from_scalar(cls, alphabet, ring, c):
        return cls(alphabet, ring, {(): c})

    # -- queries ---------------------------------------------------------------

    @property
    def is_zero(self):
        return not self.terms

    def words(self):
        return self.terms.keys()

    def coeff(self, w):
        return self.terms.get(tuple(w), self.ring.zero)

    def constant_coeff(self):
        return self.terms.get((), self.ring.zero)

    def min_word_len(self):
        return min((len(w) for w in self.terms), default=0)

    def max_word_len(self):
        return max((len(w) for w in self.terms), default=0)

    def max_word(self, order=None):
        if not self.terms:
            return None
        order = order or MonomialOrder(self.alphabet)
        return max(self.terms, key=order.key)

    # -- arithmetic -------------------------------------------------------------

    def _check_compat(self, other):
        if self.alphabet != other.alphabet:
            raise ValueError("polynomials over different alphabets")
        if self.ring != other.ring:
            raise ValueError("polynomials over different coefficient rings")

    def __add__(self, other):
        if not isinstance(other, FreePoly):
            return NotImplemented
        self._check_compat(other)
        ring = self.ring
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = ring.add(out.get(w, ring.zero), c)
            if ring.is_zero(s):
                out.pop(w, None)
            else:
                out[w] = s
        return FreePoly._raw(self.alphabet, ring, out)

    def __neg__(self):
        ring = self.ring
        return FreePoly._raw(
            self.alphabet, ring, {w: ring.neg(c) for w, c in self.terms.items()}
        )

    def __sub__(self, other):
        if not isinstance(other, FreePoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FreePoly):
            self._check_compat(other)
            ring = self.ring
            out = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    c = ring.mul(c1, c2)
                    s = ring.add(out.get(w, ring.zero), c)
                    if ring.is_zero(s):
                        out.pop(w, None)
                    else:
                        out[w] = s
            return FreePoly._raw(self.alphabet, ring, out)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c):
        ring = self.ring
        c = ring.coerce(c)
        if ring.is_zero(c):
            return FreePoly.zero(self.alphabet, ring)
        out = {}
        for w, v in self.terms.items():
            s = ring.mul(c, v)
            if not ring.is_zero(s):
                out[w] = s
        return FreePoly._raw(self.alphabet, ring, out)

    def __eq__(self, other):
        return (
            isinstance(other, FreePoly)
            and self.alphabet == other.alphabet
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __repr__(self):
        return f"<FreePoly {format_poly(self)}>"


def poly_add(p, q):
    """Coefficientwise sum (same alphabet and ring)."""
    return p + q


def poly_mul(p, q):
    """Bilinear extension of word concatenation."""
    return p * q


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_']*)"
    r"|(?P<op>[\^\.\*\+\-]))"
)


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == m.start():
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", pos=pos)
            break
        if m.group("num"):
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name"), m.start("name")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


def parse_poly(text, alphabet, ring):
    """Parse polynomial text into canonical form; parse∘format is identity."""
    if ring.kind == "Q[...]":
        clash = set(ring.vars) & set(alphabet.symbols)
        if clash:
            raise ValueError(
                f"names {sorted(clash)} are both alphabet symbols and indeterminates"
            )
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty polynomial", pos=0)
    result = FreePoly.zero(alphabet, ring)
    i = 0
    first = True
    while i < len(tokens):
        sign = 1
        kind, val, pos = tokens[i]
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' before {val!r}", pos=pos)
        first = False
        coeff = ring.one
        word = None
        expect_factor = True
        while expect_factor:
            if i >= len(tokens):
                raise ParseError("unexpected end of input", pos=len(text))
            kind, val, pos = tokens[i]
            if kind == "num":
                if "/" in val:
                    num, den = val.split("/")
                    if int(den) == 0:
                        raise ParseError("zero denominator", pos=pos)
                    coeff = ring.mul(coeff, ring.coerce(Fraction(int(num), int(den))))
                else:
                    coeff = ring.mul(coeff, ring.coerce(int(val)))
                i += 1
            elif kind == "name":
                if val in alphabet:
                    if word is not None:
                        raise ParseError("more than one word in a term", pos=pos)
                    syms = [val]
                    i += 1
                    while (
                        i + 1 < len(tokens)
                        and tokens[i][0] == "op"
                        and tokens[i][1] == "."
                    ):
                        nkind, nval, npos = tokens[i + 1]
                        if nkind != "name" or nval not in alphabet:
                            raise ParseError(
                                f"symbol {nval!r} is not in the alphabet", pos=npos
                            )
                        syms.append(nval)
                        i += 2
                    word = tuple(syms)
                elif ring.kind == "Q[...]" and val in ring.vars:
                    power = 1
                    i += 1
                    if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "^":
                        if i + 1 >= len(tokens) or tokens[i + 1][0] != "num":
                            raise ParseError("expected exponent after '^'", pos=pos)
                        power = int(tokens[i + 1][1])
                        i += 2
                    coeff = ring.mul(coeff, ring.variable(val, power))
                else:
                    raise ParseError(f"unknown symbol {val!r}", pos=pos)
            else:
                raise ParseError(f"unexpected {val!r}", pos=pos)
            expect_factor = False
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                expect_factor = True
        if sign < 0:
            coeff = ring.neg(coeff)
        w = word if word is not None else ()
        result = result + FreePoly(alphabet, ring, {w: coeff})
    return result


# -- formatting --------------------------------------------------------------


def _format_term(rational, var_powers, word):
    """Pieces of one term; rational is a nonnegative Fraction/int magnitude."""
    pieces = []
    if rational != 1 or (not var_powers and not word):
        pieces.append(str(rational))
    for name, e in var_powers:
        pieces.append(name if e == 1 else f"{name}^{e}")
    if word:
        pieces.append(".".join(word))
    return "*".join(pieces) if pieces else "1"


def format_poly(p):
    """Deterministic text form: words descending in the monomial order."""
    if p.is_zero:
        return "0"
    order = MonomialOrder(p.alphabet)
    ring = p.ring
    entries = []  # (term_text, is_negative)
    for w in sorted(p.terms, key=order.key, reverse=True):
        c = p.terms[w]
        if ring.kind == "Q[...]":
            for exps, frac in c.sorted_terms():
                neg = frac < 0
                vps = [
                    (name, e) for name, e in zip(ring.vars, exps) if e > 0
                ]
                entries.append((_format_term(abs(frac), vps, w), neg))
        elif ring.kind == "Z/m":
            entries.append((_format_term(c, [], w), False))
        else:
            entries.append((_format_term(abs(c), [], w), c < 0))
    out = []
    for i, (text, neg) in enumerate(entries):
        if i == 0:
            out.append(("-" if neg else "") + text)
        else:
            out.append((" - " if neg else " + ") + text)
    return "".join(out)
