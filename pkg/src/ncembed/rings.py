"""Exact coefficient rings: Q, Z, Z/m, and multivariate polynomials Q[t1,...,tk].

All arithmetic is exact; floating point is never used.  The four ring kinds
are a closed enumeration so that canonical forms stay simple: Fractions in
lowest terms, representatives in [0, m), polynomial term maps with no zero
coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_']*$")


class QPoly:
    """Commutative polynomial over Q in named indeterminates.

    Terms are a map exponent-tuple -> Fraction with no zero values; two
    mathematically equal elements always compare equal.
    """

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        clean = {}
        for exps, c in terms.items():
            c = Fraction(c)
            if c:
                exps = tuple(int(e) for e in exps)
                if len(exps) != len(self.vars):
                    raise ValueError("exponent tuple has wrong length")
                if any(e < 0 for e in exps):
                    raise ValueError("negative exponent")
                clean[exps] = c
        self.terms = clean

    @classmethod
    def const(cls, vars, value):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): Fraction(value)})

    @classmethod
    def var(cls, vars, name, power=1):
        vars = tuple(vars)
        exps = [0] * len(vars)
        exps[vars.index(name)] = power
        return cls(vars, {tuple(exps): Fraction(1)})

    def is_zero(self):
        return not self.terms

    def _check(self, other):
        if not isinstance(other, QPoly) or other.vars != self.vars:
            raise ValueError("mixed polynomial rings")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, Fraction(0)) + c
        return QPoly(self.vars, out)

    def __neg__(self):
        return QPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return QPoly(self.vars, out)

    def __eq__(self, other):
        return (
            isinstance(other, QPoly)
            and self.vars == other.vars
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        """Terms in descending graded-lex order (the formatting order)."""
        return sorted(
            self.terms.items(), key=lambda it: (sum(it[0]), it[0]), reverse=True
        )

    def __repr__(self):
        return f"QPoly({self.vars!r}, {self.terms!r})"


_Q, _Z, _ZMOD, _POLY = "Q", "Z", "Z/m", "Q[...]"


class CoeffRing:
    """One of the four supported coefficient rings."""

    __slots__ = ("kind", "modulus", "vars")

    def __init__(self, kind, modulus=None, vars=()):
        self.kind = kind
        self.modulus = modulus
        self.vars = tuple(vars)
        if kind == _ZMOD:
            if modulus is None or modulus < 2:
                raise ValueError("modulus must be >= 2")
        if kind == _POLY:
            if not self.vars:
                raise ValueError("polynomial ring needs at least one indeterminate")
            seen = set()
            for v in self.vars:
                if not _NAME_RE.match(v):
                    raise ValueError(f"bad indeterminate name {v!r}")
                if v in seen:
                    raise ValueError(f"duplicate indeterminate {v!r}")
                seen.add(v)

    @classmethod
    def rationals(cls):
        return cls(_Q)

    @classmethod
    def integers(cls):
        return cls(_Z)

    @classmethod
    def mod(cls, m):
        return cls(_ZMOD, modulus=int(m))

    @classmethod
    def polynomials(cls, *names):
        return cls(_POLY, vars=names)

    @classmethod
    def parse(cls, text):
        """Parse a ring label: Q | Z | Z/m | Q[t,...]."""
        text = text.strip()
        if text == "Q":
            return cls.rationals()
        if text == "Z":
            return cls.integers()
        m = re.fullmatch(r"Z/(\d+)", text)
        if m:
            return cls.mod(int(m.group(1)))
        m = re.fullmatch(r"Q\[([^\]]*)\]", text)
        if m:
            names = [v.strip() for v in m.group(1).split(",") if v.strip()]
            return cls.polynomials(*names)
        raise ValueError(f"unrecognized ring {text!r}")

    @property
    def label(self):
        if self.kind == _Q:
            return "Q"
        if self.kind == _Z:
            return "Z"
        if self.kind == _ZMOD:
            return f"Z/{self.modulus}"
        return "Q[" + ",".join(self.vars) + "]"

    def __eq__(self, other):
        return (
            isinstance(other, CoeffRing)
            and self.kind == other.kind
            and self.modulus == other.modulus
            and self.vars == other.vars
        )

    def __hash__(self):
        return hash((self.kind, self.modulus, self.vars))

    def __repr__(self):
        return f"CoeffRing({self.label})"

    # -- element construction ------------------------------------------------

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def coerce(self, value):
        """Coerce an int, Fraction, or same-ring scalar into canonical form."""
        if self.kind == _Q:
            if isinstance(value, (int, Fraction)):
                return Fraction(value)
        elif self.kind == _Z:
            if isinstance(value, int):
                return value
            if isinstance(value, Fraction) and value.denominator == 1:
                return int(value)
        elif self.kind == _ZMOD:
            if isinstance(value, int):
                return value % self.modulus
            if isinstance(value, Fraction):
                num = value.numerator % self.modulus
                den = value.denominator % self.modulus
                if gcd(value.denominator, self.modulus) != 1:
                    raise ValueError(
                        f"denominator {value.denominator} not invertible mod {self.modulus}"
                    )
                return num * pow(den, -1, self.modulus) % self.modulus
        else:
            if isinstance(value, QPoly):
                if value.vars != self.vars:
                    raise ValueError("polynomial from a different ring")
                return value
            if isinstance(value, (int, Fraction)):
                return QPoly.const(self.vars, value)
        raise ValueError(f"cannot coerce {value!r} into {self.label}")

    def variable(self, name, power=1):
        if self.kind != _POLY:
            raise ValueError(f"{self.label} has no indeterminates")
        if name not in self.vars:
            raise ValueError(f"unknown indeterminate {name!r}")
        return QPoly.var(self.vars, name, power)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a, b):
        if self.kind == _ZMOD:
            return (a + b) % self.modulus
        return a + b

    def sub(self, a, b):
        if self.kind == _ZMOD:
            return (a - b) % self.modulus
        return a - b

    def neg(self, a):
        if self.kind == _ZMOD:
            return (-a) % self.modulus
        return -a

    def mul(self, a, b):
        if self.kind == _ZMOD:
            return (a * b) % self.modulus
        return a * b

    def is_zero(self, a):
        if self.kind == _POLY:
            return a.is_zero()
        return a == 0

    @property
    def is_field(self):
        if self.kind == _Q:
            return True
        if self.kind == _ZMOD:
            return _is_prime(self.modulus)
        return False

    def invert(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverting zero")
        if self.kind == _Q:
            return 1 / Fraction(a)
        if self.kind == _ZMOD:
            return pow(a, -1, self.modulus)
        raise ValueError(f"{self.label} is not a field")

    def div(self, a, b):
        return self.mul(a, self.invert(b))


def _is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True
