"""Exact arithmetic in Q inside Q_p, 2x2 matrices, and the subgroups KZ and IZ.

Every number handled here is an exact rational; its p-adic nature only shows
up through valuations and reductions mod p. Matrices keep their entries as
``gmpy2.mpq`` rationals for speed, and :class:`PadicRational` is the
canonical ``unit * p**exponent`` view of a single entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import invert, mpq, remove

from .fields import GF, FqScalar

__all__ = [
    "PadicRational",
    "Mat2",
    "Gl2FpMat",
    "NotInSubgroupError",
    "lifts",
    "val",
    "valuation",
    "mat_mul",
    "mat_inv",
    "mat_det",
    "factor_KZ",
    "factor_IZ",
    "in_KZ",
    "in_IZ",
    "reduce_mod_p",
    "residue",
    "char_value",
    "alpha",
    "beta",
    "w",
    "identity",
    "scalar",
    "gl2_fp",
]


class NotInSubgroupError(ValueError):
    """Raised when a matrix does not lie in the requested subgroup (KZ, IZ, I)."""


def rational(x) -> mpq:
    """Coerce an int, Fraction, mpq or string like '3/4' to an exact rational."""
    if type(x) is mpq:
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


def valuation(x, p: int) -> float | int:
    """p-adic valuation of a rational; ``math.inf`` for zero."""
    x = rational(x)
    if not x:
        return math.inf
    return remove(x.numerator, p)[1] - remove(x.denominator, p)[1]


def _split(x, p: int) -> tuple[mpq, int]:
    x = rational(x)
    num, e1 = remove(x.numerator, p)
    den, e2 = remove(x.denominator, p)
    return mpq(num, den), e1 - e2


def residue(x, p: int) -> int:
    """Reduction mod p of a p-integral rational."""
    x = rational(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not p-integral for p={p}")
    return int(x.numerator * invert(x.denominator, p) % p)


@dataclass(frozen=True)
class PadicRational:
    """``mantissa * p**exponent`` with mantissa a p-adic unit (or zero).

    The mantissa is a rational whose numerator and denominator are prime to p;
    for elements of Z[1/p] it is an integer.
    """

    p: int
    mantissa: Fraction
    exponent: int

    def __post_init__(self):
        m = Fraction(self.mantissa)
        object.__setattr__(self, "mantissa", m)
        if m == 0:
            object.__setattr__(self, "exponent", 0)
        elif m.numerator % self.p == 0 or m.denominator % self.p == 0:
            unit, e = _split(m, self.p)
            object.__setattr__(self, "mantissa", Fraction(int(unit.numerator), int(unit.denominator)))
            object.__setattr__(self, "exponent", self.exponent + e)

    @classmethod
    def of(cls, x, p: int) -> PadicRational:
        x = rational(x)
        return cls(p, Fraction(int(x.numerator), int(x.denominator)), 0)

    @property
    def value(self) -> Fraction:
        return self.mantissa * Fraction(self.p) ** self.exponent

    def is_zero(self) -> bool:
        return self.mantissa == 0

    def _lift(self, other):
        if isinstance(other, PadicRational):
            if other.p != self.p:
                raise ValueError("mixing different primes")
            return other.value
        return Fraction(other)

    def __add__(self, other):
        return PadicRational.of(self.value + self._lift(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return PadicRational.of(self.value - self._lift(other), self.p)

    def __rsub__(self, other):
        return PadicRational.of(self._lift(other) - self.value, self.p)

    def __mul__(self, other):
        if isinstance(other, PadicRational):
            return PadicRational(self.p, self.mantissa * other.mantissa, self.exponent + other.exponent)
        return PadicRational.of(self.value * Fraction(other), self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PadicRational):
            if other.is_zero():
                raise ZeroDivisionError("division by zero")
            return PadicRational(self.p, self.mantissa / other.mantissa, self.exponent - other.exponent)
        return PadicRational.of(self.value / Fraction(other), self.p)

    def __neg__(self):
        return PadicRational(self.p, -self.mantissa, self.exponent)

    def __str__(self):
        if self.exponent == 0:
            return str(self.mantissa)
        return f"{self.mantissa}*{self.p}^{self.exponent}"


def val(x) -> float | int:
    """Valuation of a :class:`PadicRational`: its exponent, or ``inf`` for 0."""
    return math.inf if x.is_zero() else x.exponent


class Mat2:
    """An exact 2x2 matrix over Q, viewed inside M_2(Q_p)."""

    __slots__ = ("p", "a", "b", "c", "d")

    def __init__(self, p: int, a, b, c, d):
        self.p = p
        self.a = a if type(a) is mpq else rational(a)
        self.b = b if type(b) is mpq else rational(b)
        self.c = c if type(c) is mpq else rational(c)
        self.d = d if type(d) is mpq else rational(d)

    def entries(self) -> tuple[mpq, mpq, mpq, mpq]:
        return self.a, self.b, self.c, self.d

    def padic_entries(self) -> tuple[PadicRational, ...]:
        return tuple(PadicRational.of(x, self.p) for x in self.entries())

    def det(self) -> mpq:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, o: Mat2) -> Mat2:
        if o.p != self.p:
            raise ValueError("matrices over different primes")
        a, b, c, d = self.a, self.b, self.c, self.d
        return Mat2(
            self.p,
            a * o.a + b * o.c,
            a * o.b + b * o.d,
            c * o.a + d * o.c,
            c * o.b + d * o.d,
        )

    def scaled(self, s) -> Mat2:
        s = rational(s)
        return Mat2(self.p, self.a * s, self.b * s, self.c * s, self.d * s)

    def inv(self) -> Mat2:
        det = self.det()
        if det == 0:
            raise ZeroDivisionError("singular matrix")
        return Mat2(self.p, self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.p == other.p and self.entries() == other.entries()

    def __hash__(self):
        return hash((self.p,) + self.entries())

    def __repr__(self):
        return "Mat2(p=%d; %s %s; %s %s)" % ((self.p,) + tuple(str(x) for x in self.entries()))

    def to_json(self) -> list[list[str]]:
        return [[str(self.a), str(self.b)], [str(self.c), str(self.d)]]

    @classmethod
    def from_json(cls, data, p: int) -> Mat2:
        (a, b), (c, d) = data
        return cls(p, mpq(str(a)), mpq(str(b)), mpq(str(c)), mpq(str(d)))


def mat_mul(A: Mat2, B: Mat2) -> Mat2:
    return A @ B


def mat_inv(A: Mat2) -> Mat2:
    return A.inv()


def mat_det(A: Mat2) -> PadicRational:
    return PadicRational.of(A.det(), A.p)


def identity(p: int) -> Mat2:
    return Mat2(p, 1, 0, 0, 1)


def scalar(p: int, s) -> Mat2:
    return Mat2(p, s, 0, 0, s)


def alpha(p: int) -> Mat2:
    return Mat2(p, 1, 0, 0, p)


def beta(p: int) -> Mat2:
    return Mat2(p, 0, 1, p, 0)


def w(p: int) -> Mat2:
    return Mat2(p, 0, 1, 1, 0)


def lifts(p: int) -> range:
    """Lifts of F_p to Z_p used in every coset sum: the integers 0..p-1."""
    return range(p)



# -- subgroups ------------------------------------------------------------


def factor_KZ(g: Mat2) -> tuple[int, Mat2]:
    """Write g = p^m * u with u in GL_2(Z_p); raise NotInSubgroupError otherwise."""
    p = g.p
    det = g.det()
    if det == 0:
        raise ZeroDivisionError("singular matrix")
    vdet = valuation(det, p)
    if vdet % 2:
        raise NotInSubgroupError("odd determinant valuation")
    m = vdet // 2
    if min(valuation(x, p) for x in g.entries()) != m:
        raise NotInSubgroupError("entry valuations incompatible with KZ")
    return m, g.scaled(mpq(p) ** -m)


def factor_IZ(g: Mat2) -> tuple[int, Mat2]:
    """Write g = p^m * u with u in the Iwahori subgroup I."""
    m, u = factor_KZ(g)
    if valuation(u.c, g.p) < 1:
        raise NotInSubgroupError("lower-left entry is a unit")
    return m, u


def in_KZ(g: Mat2) -> bool:
    try:
        factor_KZ(g)
    except NotInSubgroupError:
        return False
    return True


def in_IZ(g: Mat2) -> bool:
    try:
        factor_IZ(g)
    except NotInSubgroupError:
        return False
    return True


@dataclass(frozen=True)
class Gl2FpMat:
    """An invertible 2x2 matrix over F_p, entries stored as residues 0..p-1."""

    p: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        p = self.p
        for name in "abcd":
            object.__setattr__(self, name, getattr(self, name) % p)
        if (self.a * self.d - self.b * self.c) % p == 0:
            raise ValueError("matrix is not invertible mod p")

    def __matmul__(self, o: Gl2FpMat) -> Gl2FpMat:
        a, b, c, d = self.a, self.b, self.c, self.d
        return Gl2FpMat(self.p, a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d)

    def det(self) -> int:
        return (self.a * self.d - self.b * self.c) % self.p

    def inv(self) -> Gl2FpMat:
        di = pow(self.det(), -1, self.p)
        return Gl2FpMat(self.p, self.d * di, -self.b * di, -self.c * di, self.a * di)

    def tuple(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def is_upper_triangular(self) -> bool:
        return self.c == 0


def gl2_fp(p: int) -> list[Gl2FpMat]:
    """All elements of GL_2(F_p), in lexicographic order of entries."""
    out = []
    for a in range(p):
        for b in range(p):
            for c in range(p):
                for d in range(p):
                    if (a * d - b * c) % p:
                        out.append(Gl2FpMat(p, a, b, c, d))
    return out


def reduce_mod_p(u: Mat2) -> Gl2FpMat:
    """Entrywise reduction of u in GL_2(Z_p)."""
    p = u.p
    try:
        entries = [residue(x, p) for x in u.entries()]
    except ValueError as exc:
        raise NotInSubgroupError(str(exc)) from None
    try:
        return Gl2FpMat(p, *entries)
    except ValueError:
        raise NotInSubgroupError("determinant is not a unit") from None


def char_value(u: Mat2, kind: str, r: int) -> FqScalar:
    """Value of d^r (kind 'd') or a^r (kind 'a') on u in I, as an element of F_p."""
    p = u.p
    if valuation(u.c, p) < 1:
        raise NotInSubgroupError("not in the Iwahori subgroup")
    if kind == "d":
        x = u.d
    elif kind == "a":
        x = u.a
    else:
        raise ValueError(f"unknown character kind {kind!r}")
    try:
        res = residue(x, p)
    except ValueError:
        raise NotInSubgroupError("not in the Iwahori subgroup") from None
    if res == 0:
        raise NotInSubgroupError("diagonal entry is not a unit")
    return FqScalar(GF(p), pow(res, r % (p - 1), p))
