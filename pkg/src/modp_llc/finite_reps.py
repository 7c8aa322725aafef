"""Representations of GL_2(F_p): V_r, the quotient V_r / V_r^*, and ind_B^G d^r.

Polynomials are coefficient vectors in the basis X^r, X^{r-1}Y, ..., Y^r
(index i holds the coefficient of X^{r-i} Y^i). A matrix (a b; c d) acts by
``(g.P)(X, Y) = P(aX + cY, bX + dY)``, which is a left action.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .fields import GF, FiniteField, FqScalar, inverse_matrix_mod_p, rank_mod_p, solve_square
from .padic import Gl2FpMat, gl2_fp

__all__ = [
    "VrElement",
    "QuotElement",
    "IndBChar",
    "QuotientSpace",
    "gl2_act",
    "action_matrix",
    "vstar_reduce",
    "quotient_space",
    "psi",
    "psi_inverse",
    "right_translate",
    "decompose_2p2",
    "embed_vp1",
    "v0_generator",
    "phi_generator",
    "orbit_span_dimension",
    "sum_powers",
    "bottom_row_reps",
]


@dataclass(frozen=True)
class VrElement:
    """A homogeneous polynomial of degree r over F_q."""

    r: int
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.r + 1:
            raise ValueError(f"expected {self.r + 1} coefficients, got {len(self.coeffs)}")

    @property
    def field(self) -> FiniteField:
        return self.coeffs[0].field

    @classmethod
    def zero(cls, field: FiniteField, r: int) -> VrElement:
        return cls(r, (field.zero,) * (r + 1))

    @classmethod
    def monomial(cls, field: FiniteField, r: int, y_degree: int, coeff=1) -> VrElement:
        """``coeff * X^{r - y_degree} Y^{y_degree}``."""
        c = [field.zero] * (r + 1)
        c[y_degree] = field(coeff)
        return cls(r, tuple(c))

    @classmethod
    def from_terms(cls, field: FiniteField, r: int, terms: dict) -> VrElement:
        """Build from ``{(x_degree, y_degree): coeff}``."""
        c = [field.zero] * (r + 1)
        for (i, j), v in terms.items():
            if i + j != r:
                raise ValueError(f"monomial X^{i}Y^{j} is not of degree {r}")
            c[j] = c[j] + field(v)
        return cls(r, tuple(c))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: VrElement) -> VrElement:
        if other.r != self.r:
            raise ValueError("degree mismatch")
        return VrElement(self.r, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: VrElement) -> VrElement:
        return self + (-other)

    def __neg__(self) -> VrElement:
        return VrElement(self.r, tuple(-x for x in self.coeffs))

    def scale(self, s) -> VrElement:
        return VrElement(self.r, tuple(x * s for x in self.coeffs))

    __rmul__ = scale

    def evaluate(self, x, y):
        r = self.r
        total = self.field.zero
        for i, c in enumerate(self.coeffs):
            if c:
                total = total + c * (x ** (r - i)) * (y**i)
        return total

    def over(self, field: FiniteField) -> VrElement:
        return VrElement(self.r, tuple(field(c) for c in self.coeffs))

    def to_json(self) -> dict:
        return {"r": self.r, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data, field: FiniteField) -> VrElement:
        coeffs = tuple(field(c) if isinstance(c, int) else field(list(c)) for c in data["coeffs"])
        return cls(int(data["r"]), coeffs)

    def __str__(self):
        terms = []
        r = self.r
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*X^{r - i}Y^{i}")
        return " + ".join(terms) or "0"


@lru_cache(maxsize=None)
def _binomial_row(p: int, n: int) -> tuple[int, ...]:
    return tuple(comb(n, k) % p for k in range(n + 1))


def _poly_mul(u, v, p):
    out = [0] * (len(u) + len(v) - 1)
    for i, x in enumerate(u):
        if x:
            for j, y in enumerate(v):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def _linear_power(s: int, t: int, n: int, p: int) -> list[int]:
    # (sX + tY)^n, indexed by Y-degree
    row = _binomial_row(p, n)
    return [row[k] * pow(s, n - k, p) * pow(t, k, p) % p for k in range(n + 1)]


@lru_cache(maxsize=None)
def action_matrix(p: int, r: int, g: tuple[int, int, int, int]) -> tuple[tuple[int, ...], ...]:
    """Matrix over F_p of P -> g.P on V_r; column j is the image of X^{r-j}Y^j."""
    a, b, c, d = g
    cols = []
    for j in range(r + 1):
        cols.append(_poly_mul(_linear_power(a, c, r - j, p), _linear_power(b, d, j, p), p))
    return tuple(tuple(cols[j][i] for j in range(r + 1)) for i in range(r + 1))


def _apply_int_matrix(m, vec):
    field = vec[0].field
    out = []
    for row in m:
        acc = field.zero
        for x, v in zip(row, vec):
            if x and v:
                acc = acc + v * x
        out.append(acc)
    return tuple(out)


def gl2_act(g: Gl2FpMat, P: VrElement) -> VrElement:
    """The left action ``P(X, Y) -> P(aX + cY, bX + dY)``."""
    m = action_matrix(g.p, P.r, g.tuple())
    return VrElement(P.r, _apply_int_matrix(m, P.coeffs))


# -- the quotient V_r / V_r^* ---------------------------------------------


@dataclass(frozen=True)
class QuotElement:
    """A class in V_r / V_r^*, stored as its reduced coefficient vector."""

    r: int
    coeffs: tuple

    @property
    def field(self) -> FiniteField:
        return self.coeffs[0].field

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: QuotElement) -> QuotElement:
        if other.r != self.r:
            raise ValueError("degree mismatch")
        return QuotElement(self.r, tuple(x + y for x, y in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> QuotElement:
        return QuotElement(self.r, tuple(-x for x in self.coeffs))

    def __sub__(self, other: QuotElement) -> QuotElement:
        return self + (-other)

    def scale(self, s) -> QuotElement:
        return QuotElement(self.r, tuple(x * s for x in self.coeffs))

    __rmul__ = scale

    def lift(self) -> VrElement:
        return VrElement(self.r, self.coeffs)

    def over(self, field: FiniteField) -> QuotElement:
        return QuotElement(self.r, tuple(field(c) for c in self.coeffs))

    def to_json(self) -> dict:
        return {"r": self.r, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data, field: FiniteField, p: int) -> QuotElement:
        return vstar_reduce(VrElement.from_json(data, field), p)


class QuotientSpace:
    """Echelon data for V_r^* = theta * V_{r-p-1}, theta = X^p Y - X Y^p.

    When r < p + 1 the subspace is zero; that is the case r = 2p - 2 for p = 2.
    """

    def __init__(self, p: int, r: int):
        self.p, self.r = p, r
        rows = []
        for i in range(max(r - p, 0)):
            row = [0] * (r + 1)
            # theta * X^{r-p-1-i} Y^i = X^{r-i-1} Y^{i+1} - X^{r-p-i} Y^{p+i}
            row[i + 1] += 1
            row[p + i] -= 1
            rows.append([x % p for x in row])
        self.basis = self._rref(rows)
        self.pivots = [next(j for j, x in enumerate(row) if x) for row in self.basis]
        self.free = [j for j in range(r + 1) if j not in self.pivots]

    def _rref(self, rows):
        p = self.p
        rows = [list(r) for r in rows]
        out = []
        col = 0
        ncols = self.r + 1
        while rows and col < ncols:
            piv = next((k for k, row in enumerate(rows) if row[col]), None)
            if piv is None:
                col += 1
                continue
            row = rows.pop(piv)
            inv = pow(row[col], -1, p)
            row = [x * inv % p for x in row]
            rows = [[(x - other[col] * y) % p for x, y in zip(other, row)] for other in rows]
            out = [[(x - o[col] * y) % p for x, y in zip(o, row)] for o in out]
            out.append(row)
            col += 1
        return out

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, P: VrElement) -> QuotElement:
        if P.r != self.r:
            raise ValueError("degree mismatch")
        c = list(P.coeffs)
        for row, j in zip(self.basis, self.pivots):
            f = c[j]
            if f:
                c = [x - f * y if y else x for x, y in zip(c, row)]
        return QuotElement(self.r, tuple(c))


@lru_cache(maxsize=None)
def quotient_space(p: int, r: int) -> QuotientSpace:
    return QuotientSpace(p, r)


def _check_quotient_degree(p, r):
    if r < p + 1 and r != 2 * p - 2:
        raise ValueError(f"quotient needs r >= p + 1 (or r = 2p - 2), got r={r}, p={p}")


def vstar_reduce(P: VrElement, p: int) -> QuotElement:
    """Canonical representative of P modulo V_r^*."""
    _check_quotient_degree(p, P.r)
    return quotient_space(p, P.r).reduce(P)


def quot_act(g: Gl2FpMat, x: QuotElement) -> QuotElement:
    return vstar_reduce(gl2_act(g, x.lift()), g.p)


# -- ind_B^G d^r ----------------------------------------------------------


def bottom_row_reps(p: int) -> list[tuple[int, int]]:
    """Representatives of B(F_p) \\ GL_2(F_p) by bottom row: (0, 1), then (1, t)."""
    return [(0, 1)] + [(1, t) for t in range(p)]


@dataclass(frozen=True)
class IndBChar:
    """f: GL_2(F_p) -> F_q with f(bg) = d(b)^r f(g), stored at the bottom-row reps."""

    p: int
    r: int
    values: tuple

    def __call__(self, g: Gl2FpMat):
        return self.at_row(g.c, g.d)

    def at_row(self, c: int, d: int):
        p = self.p
        c, d = c % p, d % p
        if c == 0:
            s, idx = d, 0
        else:
            s, idx = c, 1 + d * pow(c, -1, p) % p
        return self.values[idx] * pow(s, self.r % (p - 1), p)

    def is_zero(self) -> bool:
        return not any(self.values)


def right_translate(g: Gl2FpMat, f: IndBChar) -> IndBChar:
    """(g.f)(h) = f(hg)."""
    p = f.p
    vals = []
    for c, d in bottom_row_reps(p):
        vals.append(f.at_row(c * g.a + d * g.c, c * g.b + d * g.d))
    return IndBChar(p, f.r, tuple(vals))


def psi(P: VrElement, p: int) -> IndBChar:
    """psi_P(g) = P(c, d), recorded at the bottom-row representatives."""
    _check_quotient_degree(p, P.r)
    vals = [P.evaluate(c, d) for c, d in bottom_row_reps(p)]
    return IndBChar(p, P.r, tuple(vals))


def psi_inverse(f: IndBChar, field: FiniteField | None = None) -> QuotElement:
    """The unique class in V_{2p-2} / V^* with psi equal to f."""
    p, r = f.p, f.r
    if r != 2 * p - 2:
        raise ValueError("psi_inverse is implemented for r = 2p - 2")
    field = field or f.values[0].field
    qs = quotient_space(p, r)
    reps = bottom_row_reps(p)
    # column j: psi of the free monomial X^{r - j} Y^j
    m = [[field(pow(c, r - j, p) * pow(d, j, p)) for j in qs.free] for c, d in reps]
    sol = solve_square(m, [field(v) for v in f.values])
    coeffs = [field.zero] * (r + 1)
    for j, s in zip(qs.free, sol):
        coeffs[j] = s
    return QuotElement(r, tuple(coeffs))


# -- V_{2p-2}/V^* = V_{p-1} + V_0 -----------------------------------------


def phi_generator(field: FiniteField) -> VrElement:
    """Y^{2p-2} - X^{p-1} Y^{p-1}."""
    p = field.p
    r = 2 * p - 2
    return VrElement.from_terms(field, r, {(0, r): 1, (p - 1, p - 1): -1})


def v0_generator(field: FiniteField) -> VrElement:
    """X^{2p-2} - X^{p-1} Y^{p-1} + Y^{2p-2}."""
    p = field.p
    r = 2 * p - 2
    terms = {(r, 0): 1, (0, r): 1}
    terms[(p - 1, p - 1)] = terms.get((p - 1, p - 1), 0) - 1
    return VrElement.from_terms(field, r, terms)


class _Splitting:
    """Precomputed coordinates for V_{2p-2}/V^* = iota(V_{p-1}) + F_p e_0."""

    def __init__(self, p: int):
        self.p = p
        r = 2 * p - 2
        qs = quotient_space(p, r)
        self.free = qs.free
        Fp = GF(p)

        def coords(vec):
            red = qs.reduce(VrElement(r, tuple(Fp(x) for x in vec)))
            return [red.coeffs[j].v for j in qs.free]

        # iota on V_{p-1} determined by (aX + cY)^{p-1} -> (aX + cY)^{2p-2}
        pairs = []
        for a in range(p):
            for c in range(p):
                if a or c:
                    src = _linear_power(a, c, p - 1, p)
                    dst = coords(_linear_power(a, c, r, p))
                    pairs.append((src, dst))
        chosen = []
        for src, dst in pairs:
            if rank_mod_p([dict(enumerate(s)) for s, _ in chosen + [(src, dst)]], p) > len(chosen):
                chosen.append((src, dst))
            if len(chosen) == p:
                break
        assert len(chosen) == p, "orbit of X^{p-1} does not span V_{p-1}"
        # S: p x p with sources as columns; T: (p+1) x p with targets as columns
        S = [[chosen[j][0][i] for j in range(p)] for i in range(p)]
        T = [[chosen[j][1][i] for j in range(p)] for i in range(p + 1)]
        Sinv = inverse_matrix_mod_p(S, p)
        self.iota = [[sum(T[i][k] * Sinv[k][j] for k in range(p)) % p for j in range(p)] for i in range(p + 1)]
        for src, dst in pairs:
            img = [sum(self.iota[i][j] * src[j] for j in range(p)) % p for i in range(p + 1)]
            assert img == dst, "X^{p-1} -> X^{2p-2} does not extend equivariantly"
        e0 = [x.v for x in qs.reduce(v0_generator(Fp)).coeffs]
        self.e0 = [e0[j] for j in qs.free]
        # basis matrix B = [iota columns | e0], (p+1) x (p+1)
        B = [self.iota[i] + [self.e0[i]] for i in range(p + 1)]
        self.Binv = inverse_matrix_mod_p(B, p)  # raises if the sum is not direct


@lru_cache(maxsize=None)
def _splitting(p: int) -> _Splitting:
    return _Splitting(p)


def embed_vp1(y: VrElement, p: int) -> QuotElement:
    """iota: V_{p-1} -> V_{2p-2}/V^*, the equivariant map with X^{p-1} -> X^{2p-2}."""
    if y.r != p - 1:
        raise ValueError("expected an element of V_{p-1}")
    sp = _splitting(p)
    r = 2 * p - 2
    field = y.field
    coeffs = [field.zero] * (r + 1)
    for i, j in enumerate(sp.free):
        acc = field.zero
        for k, c in enumerate(y.coeffs):
            if sp.iota[i][k] and c:
                acc = acc + c * sp.iota[i][k]
        coeffs[j] = acc
    return QuotElement(r, tuple(coeffs))


def decompose_2p2(x: QuotElement, p: int) -> tuple[FqScalar, VrElement]:
    """Split x = a * e_0 + iota(y) with a in F_q and y in V_{p-1}; returns (a, y)."""
    if x.r != 2 * p - 2:
        raise ValueError("expected an element of V_{2p-2}/V^*")
    sp = _splitting(p)
    field = x.field
    vec = [x.coeffs[j] for j in sp.free]
    sol = []
    for row in sp.Binv:
        acc = field.zero
        for m, v in zip(row, vec):
            if m and v:
                acc = acc + v * m
        sol.append(acc)
    return sol[p], VrElement(p - 1, tuple(sol[:p]))


def orbit_span_dimension(P: VrElement, p: int, group=None) -> int:
    """Dimension of the span of {g.P mod V^*} over the given elements (default: all of GL_2(F_p))."""
    group = gl2_fp(p) if group is None else group
    rows = []
    for g in group:
        img = vstar_reduce(gl2_act(g, P), p)
        rows.append({j: c.v for j, c in enumerate(img.coeffs) if c})
    return rank_mod_p(rows, p)


def sum_powers(j: int, p: int) -> FqScalar:
    """sum_{i=0}^{p-1} i^j in F_p, for j >= 1."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return GF(p)(sum(pow(i, j, p) for i in range(p)))
