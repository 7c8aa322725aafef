"""Finite fields F_q = F_p[x]/(f) and small linear algebra over them.

Elements are stored as a single integer encoding the coefficient vector
(c_0 + c_1 p + ... + c_{k-1} p^{k-1}); for k = 1 this is just the residue.
Multiplication in proper extensions goes through discrete log tables.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

__all__ = [
    "FiniteField",
    "FqScalar",
    "GF",
    "smallest_irreducible",
    "rank_mod_p",
    "solve_square",
    "inverse_matrix_mod_p",
]


def _poly_divmod_mod_p(num, den, p):
    # coefficient lists low -> high; den monic
    num = list(num)
    dq = len(den) - 1
    quot = [0] * max(len(num) - dq, 1)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i] % p
        if c:
            quot[i - dq] = c
            for j, d in enumerate(den):
                num[i - dq + j] = (num[i - dq + j] - c * d) % p
    return quot, [c % p for c in num[:dq]]


def _monic_polys(p, degree):
    for tail in itertools.product(range(p), repeat=degree):
        # tail is (c_{deg-1}, ..., c_0); product() yields lexicographic order
        yield list(reversed(tail)) + [1]


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible polynomial of degree k over F_p.

    Candidates x^k + c_{k-1}x^{k-1} + ... + c_0 are ordered lexicographically
    on (c_{k-1}, ..., c_0). Returned low -> high, leading 1 included.
    """
    if k < 1:
        raise ValueError("degree must be >= 1")
    for f in _monic_polys(p, k):
        if k == 1:
            return tuple(f)
        reducible = False
        for d in range(1, k // 2 + 1):
            for g in _monic_polys(p, d):
                if not any(_poly_divmod_mod_p(f, g, p)[1]):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class FiniteField:
    """The field with p^k elements. Use :func:`GF` to get the shared instance."""

    def __init__(self, p: int, k: int = 1):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = smallest_irreducible(p, k)
        self._log = self._exp = None
        if k > 1:
            self._build_log_tables()
        self.zero = FqScalar(self, 0)
        self.one = FqScalar(self, 1)

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __reduce__(self):
        return (GF, (self.p, self.k))

    # -- encoding -----------------------------------------------------------
    def encode(self, coeffs) -> int:
        p = self.p
        v = 0
        for c in reversed(list(coeffs)):
            v = v * p + c % p
        return v

    def decode(self, v: int) -> list[int]:
        p = self.p
        out = []
        for _ in range(self.k):
            v, c = divmod(v, p)
            out.append(c)
        return out

    def _mul_raw(self, x: int, y: int) -> int:
        p, k = self.p, self.k
        a, b = self.decode(x), self.decode(y)
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        _, rem = _poly_divmod_mod_p(prod, self.modulus, p)
        rem += [0] * (k - len(rem))
        return self.encode(rem)

    def _build_log_tables(self):
        q = self.q
        for g in range(2, q):
            exp = [1]
            x = 1
            for _ in range(q - 2):
                x = self._mul_raw(x, g)
                exp.append(x)
            if len(set(exp)) == q - 1:
                self._exp = exp
                self._log = {v: i for i, v in enumerate(exp)}
                return
        raise AssertionError("no primitive element")  # pragma: no cover

    # -- element construction ----------------------------------------------
    def __call__(self, x) -> FqScalar:
        if isinstance(x, FqScalar):
            if x.field is self:
                return x
            if x.field.p == self.p and x.field.k == 1:
                return FqScalar(self, x.v)
            raise ValueError(f"cannot coerce element of {x.field} into {self}")
        if isinstance(x, int):
            return FqScalar(self, x % self.p)
        return FqScalar(self, self.encode(x))

    def elements(self):
        return [FqScalar(self, v) for v in range(self.q)]

    def nonzero(self):
        return [FqScalar(self, v) for v in range(1, self.q)]

    def random(self, rng, nonzero: bool = False) -> FqScalar:
        lo = 1 if nonzero else 0
        return FqScalar(self, rng.randrange(lo, self.q))

    def is_prime_field(self) -> bool:
        return self.k == 1


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FiniteField:
    return FiniteField(p, k)


class FqScalar:
    __slots__ = ("field", "v")

    def __init__(self, field: FiniteField, v: int):
        self.field = field
        self.v = v

    @property
    def coeffs(self) -> list[int]:
        return self.field.decode(self.v)

    def _coerce(self, other):
        if isinstance(other, FqScalar):
            if other.field is self.field:
                return other.v
            return self.field(other).v
        if isinstance(other, int):
            return other % self.field.p
        return NotImplemented

    def _lifted(self, other):
        # a prime-field scalar meeting an extension scalar moves into the extension
        if isinstance(other, FqScalar) and other.field is not self.field and self.field.k == 1 < other.field.k:
            return other.field(self)
        return None

    def __add__(self, other):
        up = self._lifted(other)
        if up is not None:
            return up + other
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        if f.k == 1:
            return FqScalar(f, (self.v + o) % f.p)
        a, b = f.decode(self.v), f.decode(o)
        return FqScalar(f, f.encode([x + y for x, y in zip(a, b)]))

    __radd__ = __add__

    def __neg__(self):
        f = self.field
        if f.k == 1:
            return FqScalar(f, -self.v % f.p)
        return FqScalar(f, f.encode([-c for c in f.decode(self.v)]))

    def __sub__(self, other):
        up = self._lifted(other)
        if up is not None:
            return up - other
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-FqScalar(self.field, o))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        up = self._lifted(other)
        if up is not None:
            return up * other
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        f = self.field
        if f.k == 1:
            return FqScalar(f, self.v * o % f.p)
        if self.v == 0 or o == 0:
            return f.zero
        if o < f.p:
            return FqScalar(f, f.encode([c * o for c in f.decode(self.v)]))
        return FqScalar(f, f._exp[(f._log[self.v] + f._log[o]) % (f.q - 1)])

    __rmul__ = __mul__

    def inverse(self) -> FqScalar:
        f = self.field
        if self.v == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(f))
        if f.k == 1:
            return FqScalar(f, pow(self.v, -1, f.p))
        return FqScalar(f, f._exp[(-f._log[self.v]) % (f.q - 1)])

    def __truediv__(self, other):
        up = self._lifted(other)
        if up is not None:
            return up / other
        return self * self.field(other).inverse()

    def __pow__(self, n: int):
        f = self.field
        if n < 0:
            return self.inverse() ** (-n)
        if f.k == 1:
            return FqScalar(f, pow(self.v, n, f.p))
        if self.v == 0:
            return f.one if n == 0 else f.zero
        return FqScalar(f, f._exp[(f._log[self.v] * n) % (f.q - 1)])

    def __eq__(self, other):
        if isinstance(other, FqScalar):
            # constants encode identically in every extension of F_p
            return (
                self.field.p == other.field.p
                and self.v == other.v
                and (self.v < self.field.p or self.field.k == other.field.k)
            )
        if isinstance(other, int):
            return self.v == other % self.field.p
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        if self.field.k == 1:
            return str(self.v)
        return "F" + str(tuple(self.coeffs))

    def to_json(self) -> list[int]:
        return self.coeffs


# -- linear algebra -------------------------------------------------------


def rank_mod_p(rows, p: int) -> int:
    """Rank over F_p of sparse rows given as {column: value} dicts."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for row in rows:
        row = {c: v % p for c, v in row.items() if v % p}
        while row:
            col = min(row)
            if col in pivots:
                prow = pivots[col]
                factor = row[col]
                for c, v in prow.items():
                    nv = (row.get(c, 0) - factor * v) % p
                    if nv:
                        row[c] = nv
                    else:
                        row.pop(c, None)
            else:
                inv = pow(row[col], -1, p)
                pivots[col] = {c: v * inv % p for c, v in row.items()}
                rank += 1
                break
    return rank


def inverse_matrix_mod_p(m: list[list[int]], p: int) -> list[list[int]]:
    """Inverse of a square matrix over F_p; raises ValueError if singular."""
    n = len(m)
    a = [[x % p for x in row] + [int(i == j) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise ValueError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        inv = pow(a[col][col], -1, p)
        a[col] = [x * inv % p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def solve_square(m: list[list[FqScalar]], b: list[FqScalar]) -> list[FqScalar]:
    """Solve m x = b over F_q by Gauss-Jordan elimination."""
    n = len(m)
    a = [list(row) + [rhs] for row, rhs in zip(m, b)]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            raise ValueError("singular system")
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col].inverse()
        a[col] = [x * inv for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n] for row in a]
