"""Compact inductions ind_{KZ}^G sigma and ind_{IZ}^G chi as finitely supported functions.

A spherical element is a map from tree vertices to values in V_r (or in
V_{2p-2}/V^*); the entry ``v -> P`` stands for ``[g_v, P]`` with g_v the
canonical matrix of the vertex. An Iwahori element maps oriented edges to
scalars; ``e -> c`` stands for ``[[coset_rep(e), c]]``. Normalizing an
arbitrary ``[g, v]`` moves the KZ (resp. IZ) part of g across the bracket.

Hecke operators are given on a generator at the identity and extended by
G-equivariance and linearity. Images of basis vectors are memoized per
(prime, operator, character); the memo is a pure function of its key.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from gmpy2 import mpq

from .fields import GF, FiniteField, FqScalar
from .finite_reps import QuotElement, VrElement, gl2_act, quot_act, vstar_reduce
from .padic import (
    rational,
    Gl2FpMat,
    Mat2,
    _split,
    alpha,
    beta,
    char_value,
    factor_IZ,
    factor_KZ,
    reduce_mod_p,
    residue,
    valuation,
)
from .tree import EdgeKey, VertexKey, edge_from_group, tree, vertex_normal_form

__all__ = [
    "Weight",
    "SphericalElement",
    "IwahoriElement",
    "SmoothCharSymbol",
    "normalize_spherical",
    "normalize_iwahori",
    "iwahori_indicator",
    "spherical_indicator",
    "act_g",
    "T_spherical",
    "T10",
    "T12",
    "Tm10",
    "twist_eta",
    "random_element",
    "clear_caches",
    "element_to_json",
    "element_from_json",
]


@dataclass(frozen=True)
class Weight:
    """``Weight("V", r)`` for V_r, or ``Weight("Q", 2p-2)`` for V_{2p-2}/V^*."""

    kind: str
    r: int

    def __post_init__(self):
        if self.kind not in ("V", "Q"):
            raise ValueError(f"unknown weight kind {self.kind!r}")

    def to_json(self) -> dict:
        return {"type": "V" if self.kind == "V" else "quotient", "r": self.r}

    @classmethod
    def from_json(cls, data) -> Weight:
        kind = {"V": "V", "quotient": "Q", "Q": "Q"}[data["type"]]
        return cls(kind, int(data["r"]))


def _promote(f1: FiniteField, f2: FiniteField) -> FiniteField:
    if f1 is f2:
        return f1
    if f1.p != f2.p:
        raise ValueError("coefficient fields over different primes")
    if f1.k == 1:
        return f2
    if f2.k == 1:
        return f1
    raise ValueError(f"incompatible coefficient fields {f1} and {f2}")


class _Element:
    __slots__ = ("p", "field", "support")

    def _params(self):
        raise NotImplementedError

    def _zero_value(self, v) -> bool:
        raise NotImplementedError

    def _with(self, support, field=None):
        raise NotImplementedError

    def _check(self, other):
        if type(other) is not type(self) or other.p != self.p or other._params() != self._params():
            raise ValueError("parameter mismatch between elements")

    def __add__(self, other):
        self._check(other)
        field = _promote(self.field, other.field)
        out = dict(self.support)
        for k, v in other.support.items():
            if k in out:
                s = out[k] + v
                if self._zero_value(s):
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = v
        return self._with(out, field)

    def __neg__(self):
        return self._with({k: -v for k, v in self.support.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        field = self.field
        if isinstance(s, FqScalar):
            field = _promote(field, s.field)
        out = {}
        for k, v in self.support.items():
            nv = v * s if isinstance(v, FqScalar) else v.scale(s)
            if not self._zero_value(nv):
                out[k] = nv
        return self._with(out, field)

    def __rmul__(self, s):
        return self.scale(s)

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.p == other.p and self._params() == other._params() and self.support == other.support

    def __hash__(self):
        return hash((self.p, self._params(), frozenset(self.support.items())))

    def is_zero(self) -> bool:
        return not self.support

    def __len__(self):
        return len(self.support)

    def keys(self):
        return sorted(self.support)


class SphericalElement(_Element):
    """An element of ind_{KZ}^G sigma, sigma = V_r or V_{2p-2}/V^*."""

    __slots__ = ("weight",)

    def __init__(self, p: int, weight: Weight, support=None, field: FiniteField | None = None):
        self.p = p
        self.weight = weight
        self.field = field or GF(p)
        self.support = {k: v for k, v in (support or {}).items() if not v.is_zero()}

    def _params(self):
        return self.weight

    def _zero_value(self, v):
        return v.is_zero()

    def _with(self, support, field=None):
        return SphericalElement(self.p, self.weight, support, field or self.field)

    def __repr__(self):
        body = ", ".join(f"{k.label()}: {v.coeffs}" for k, v in sorted(self.support.items()))
        return f"SphericalElement(p={self.p}, {self.weight}, {{{body}}})"

    def zero_value(self):
        if self.weight.kind == "V":
            return VrElement.zero(self.field, self.weight.r)
        return QuotElement(self.weight.r, (self.field.zero,) * (self.weight.r + 1))


class IwahoriElement(_Element):
    """An element of ind_{IZ}^G chi, chi = d^r or a^r (r taken mod p - 1)."""

    __slots__ = ("kind", "r")

    def __init__(self, p: int, kind: str, r: int, support=None, field: FiniteField | None = None):
        if kind not in ("d", "a"):
            raise ValueError(f"unknown character kind {kind!r}")
        self.p = p
        self.kind = kind
        self.r = r % (p - 1)
        self.field = field or GF(p)
        self.support = {k: v for k, v in (support or {}).items() if v}

    def _params(self):
        return (self.kind, self.r)

    def _zero_value(self, v):
        return not v

    def _with(self, support, field=None):
        return IwahoriElement(self.p, self.kind, self.r, support, field or self.field)

    def __repr__(self):
        body = ", ".join(f"{k.label()}: {v}" for k, v in sorted(self.support.items()))
        return f"IwahoriElement(p={self.p}, {self.kind}^{self.r}, {{{body}}})"

    @property
    def trivial_character(self) -> bool:
        return self.r == 0


# -- normalization ----------------------------------------------------------


def _vertex_part(g: Mat2) -> tuple[VertexKey, Gl2FpMat]:
    # g = g_v * k with k in KZ; return (v, k mod p) with the central power dropped
    v = vertex_normal_form(g)
    gv = tree(g.p).vertex_matrix(v)
    _, u = factor_KZ(gv.inv() @ g)
    return v, reduce_mod_p(u)


def _edge_part(g: Mat2, kind: str, r: int) -> tuple[EdgeKey, int]:
    e = edge_from_group(g)
    if r % (g.p - 1) == 0:
        return e, 1
    rep = tree(g.p).coset_rep(e)
    try:
        _, u = factor_IZ(rep.inv() @ g)
    except ValueError as exc:  # pragma: no cover - contract violation of coset_rep
        raise AssertionError(f"coset_rep({e}) is not in g IZ: {exc}") from exc
    return e, char_value(u, kind, r).v


def normalize_spherical(g: Mat2, v, field: FiniteField | None = None) -> SphericalElement:
    """The element [g, v] written on the canonical vertex matrix."""
    p = g.p
    key, kbar = _vertex_part(g)
    if isinstance(v, QuotElement):
        weight = Weight("Q", v.r)
        val = quot_act(kbar, v)
    else:
        weight = Weight("V", v.r)
        val = gl2_act(kbar, v)
    return SphericalElement(p, weight, {key: val}, field or v.field)


def normalize_iwahori(g: Mat2, c=1, kind: str = "d", r: int = 0, field: FiniteField | None = None) -> IwahoriElement:
    """The element [[g, c]] of ind_{IZ}^G chi written on the coset representative."""
    p = g.p
    field = field or (c.field if isinstance(c, FqScalar) else GF(p))
    e, chi = _edge_part(g, kind, r)
    return IwahoriElement(p, kind, r, {e: field(c) * chi}, field)


def iwahori_indicator(p: int, e: EdgeKey | None = None, kind: str = "d", r: int = 0, coeff=1, field=None) -> IwahoriElement:
    """``coeff`` times the indicator of the edge e (default: the base edge)."""
    field = field or GF(p)
    e = e or tree(p).base_edge
    return IwahoriElement(p, kind, r, {e: field(coeff)}, field)


def spherical_indicator(p: int, value, v: VertexKey | None = None) -> SphericalElement:
    """[g_v, value] at the vertex v (default: the base vertex)."""
    v = v or tree(p).base
    weight = Weight("Q", value.r) if isinstance(value, QuotElement) else Weight("V", value.r)
    return SphericalElement(p, weight, {v: value}, value.field)


# -- group action ----------------------------------------------------------


def act_g(g: Mat2, x):
    """Left translation h.[g', v] = [hg', v], renormalized."""
    p = x.p
    T = tree(p)
    if isinstance(x, IwahoriElement):
        acc = IwahoriElement(p, x.kind, x.r, field=x.field)
        out: dict = {}
        for e, c in x.support.items():
            e2, chi = _edge_part(g @ T.coset_rep(e), x.kind, x.r)
            out[e2] = out.get(e2, x.field.zero) + c * chi
        return acc._with(out)
    out = {}
    for v, val in x.support.items():
        key, kbar = _vertex_part(g @ T.vertex_matrix(v))
        nv = quot_act(kbar, val) if isinstance(val, QuotElement) else gl2_act(kbar, val)
        out[key] = out[key] + nv if key in out else nv
    return x._with(out)


# -- Iwahori-Hecke operators ------------------------------------------------

_columns: dict = {}


def _column(p: int, op: str, kind: str, r: int, e: EdgeKey):
    key = (p, op, kind, r, e)
    col = _columns.get(key)
    if col is not None:
        return col
    g = tree(p).coset_rep(e)
    if op == "T10":
        mats = [beta(p)]
    elif op == "T12":
        mats = [Mat2(p, 1, 0, p * lam, p) for lam in range(p)]
    elif op == "Tm10":
        mats = [Mat2(p, p, lam, 0, 1) for lam in range(p)]
    else:  # pragma: no cover
        raise ValueError(op)
    acc: dict = {}
    for m in mats:
        e2, chi = _edge_part(g @ m, kind, r)
        acc[e2] = (acc.get(e2, 0) + chi) % p
    col = tuple((k, v) for k, v in acc.items() if v)
    _columns[key] = col
    return col


def _apply_iwahori(op: str, x: IwahoriElement) -> IwahoriElement:
    out: dict = {}
    zero = x.field.zero
    for e, c in x.support.items():
        for e2, m in _column(x.p, op, x.kind, x.r, e):
            out[e2] = out.get(e2, zero) + c * m
    return x._with(out)


def T10(x: IwahoriElement) -> IwahoriElement:
    """[[g, 1]] -> [[g beta, 1]]; only for characters trivial on I."""
    if not x.trivial_character:
        raise ValueError("T10 is defined only when the character is trivial on I")
    return _apply_iwahori("T10", x)


def T12(x: IwahoriElement) -> IwahoriElement:
    """[[g, 1]] -> sum over lambda of [[g (1 0; p*lambda p), 1]]."""
    return _apply_iwahori("T12", x)


def Tm10(x: IwahoriElement) -> IwahoriElement:
    """[[g, 1]] -> sum over lambda of [[g (p lambda; 0 1), 1]]."""
    return _apply_iwahori("Tm10", x)


# -- spherical Hecke operator ------------------------------------------------

_sph_columns: dict = {}


def _spherical_column(p: int, v: VertexKey):
    col = _sph_columns.get((p, v))
    if col is None:
        g = tree(p).vertex_matrix(v)
        down = [_vertex_part(g @ Mat2(p, p, lam, 0, 1)) for lam in range(p)]
        up = _vertex_part(g @ alpha(p))
        col = _sph_columns[(p, v)] = (down, up)
    return col


def T_spherical(x: SphericalElement) -> SphericalElement:
    """T[id, P] = sum_lambda [(p lambda; 0 1), P(X, -lambda X)] + [alpha, P(0, Y)], extended equivariantly."""
    if x.weight.kind != "V":
        raise ValueError("the spherical Hecke operator is implemented on V_r weights")
    p, r = x.p, x.weight.r
    field = x.field
    out: dict = {}

    def add(key, val):
        out[key] = out[key] + val if key in out else val

    for v, P in x.support.items():
        down, up = _spherical_column(p, v)
        for lam, (key, kbar) in enumerate(down):
            # P(X, -lambda X) = (sum_j c_j (-lambda)^j) X^r
            s = field.zero
            for j, c in enumerate(P.coeffs):
                if c:
                    s = s + c * pow(-lam, j, p)
            if s:
                add(key, gl2_act(kbar, VrElement.monomial(field, r, 0, s)))
        top = P.coeffs[r]
        if top:
            key, kbar = up
            add(key, gl2_act(kbar, VrElement.monomial(field, r, r, top)))
    return x._with(out)


# -- twisting ------------------------------------------------------------


@dataclass(frozen=True)
class SmoothCharSymbol:
    """eta(x) = t^{v_p(x)} * (unit part of x mod p)^a, a character of Q_p^*."""

    t: FqScalar
    a: int

    def __post_init__(self):
        if not self.t:
            raise ValueError("t must be nonzero")
        object.__setattr__(self, "a", self.a % (self.t.field.p - 1))

    @property
    def p(self) -> int:
        return self.t.field.p

    @classmethod
    def trivial(cls, field: FiniteField) -> SmoothCharSymbol:
        return cls(field.one, 0)

    def __call__(self, x) -> FqScalar:
        unit, e = _split(rational(x), self.p)
        return self.t**e * pow(residue(unit, self.p), self.a, self.p)

    def __mul__(self, other: SmoothCharSymbol) -> SmoothCharSymbol:
        return SmoothCharSymbol(self.t * other.t, self.a + other.a)

    def inverse(self) -> SmoothCharSymbol:
        return SmoothCharSymbol(self.t.inverse(), -self.a)

    def is_trivial(self) -> bool:
        return self.t == 1 and self.a == 0

    def to_json(self) -> dict:
        return {"t": self.t.to_json(), "a": self.a}

    @classmethod
    def from_json(cls, data, field: FiniteField) -> SmoothCharSymbol:
        t = data["t"]
        return cls(field(t) if isinstance(t, int) else field(list(t)), int(data["a"]))


def twist_eta(x, eta: SmoothCharSymbol):
    """Rescale each term [g, v] by eta(det g), g the canonical matrix of its key."""
    T = tree(x.p)
    out = {}
    for k, v in x.support.items():
        g = T.coset_rep(k) if isinstance(k, EdgeKey) else T.vertex_matrix(k)
        s = eta(g.det())
        out[k] = v * s if isinstance(v, FqScalar) else v.scale(s)
    field = _promote(x.field, eta.t.field)
    return x._with(out, field)


# -- random elements --------------------------------------------------------


def random_element(
    p: int,
    kind: str = "iwahori",
    radius: int = 2,
    count: int = 3,
    seed: int = 0,
    *,
    char_kind: str = "d",
    r: int = 0,
    weight: Weight | None = None,
    field: FiniteField | None = None,
):
    """A reproducible random element supported in the ball of the given radius.

    Randomness comes from ``random.Random(seed)`` (Mersenne Twister).
    """
    rng = random.Random(seed)
    field = field or GF(p)
    T = tree(p)
    if kind == "iwahori":
        keys = T.edge_ball(radius)
        chosen = rng.sample(keys, min(count, len(keys)))
        support = {e: field.random(rng, nonzero=True) for e in chosen}
        return IwahoriElement(p, char_kind, r, support, field)
    if kind == "spherical":
        weight = weight or Weight("V", r)
        keys = T.ball(radius)
        chosen = rng.sample(keys, min(count, len(keys)))
        support = {}
        for v in chosen:
            coeffs = [field.random(rng) for _ in range(weight.r + 1)]
            coeffs[rng.randrange(weight.r + 1)] = field.random(rng, nonzero=True)
            P = VrElement(weight.r, tuple(coeffs))
            support[v] = vstar_reduce(P, p) if weight.kind == "Q" else P
        return SphericalElement(p, weight, support, field)
    raise ValueError(f"unknown element kind {kind!r}")


def random_group_element(p: int, rng: random.Random, spread: int = 2) -> Mat2:
    """A random invertible matrix with entries in Z[1/p] (plus a unit scalar)."""
    while True:
        ents = []
        for _ in range(4):
            num = rng.randint(-p**spread, p**spread)
            ents.append(mpq(num) * mpq(p) ** rng.randint(-spread, spread))
        g = Mat2(p, *ents)
        if g.det() != 0:
            return g


def random_iwahori_matrix(p: int, rng: random.Random, central: bool = True) -> Mat2:
    """A random element of IZ (or of I when ``central`` is false)."""
    while True:
        a, d = rng.randrange(1, p), rng.randrange(1, p)
        a += p * rng.randint(-3, 3)
        d += p * rng.randint(-3, 3)
        b = rng.randint(-p**2, p**2)
        c = p * rng.randint(-p**2, p**2)
        # a unit denominator keeps us honest about entries outside Z[1/p]
        u = rng.choice([1, 1, 2, 3, 5, 7])
        if u % p == 0:
            u = 1
        g = Mat2(p, mpq(a, u), b, c, d)
        if g.det() != 0 and valuation(g.det(), p) == 0:
            if central:
                g = g.scaled(mpq(p) ** rng.randint(-2, 2))
            return g


def random_kz_matrix(p: int, rng: random.Random, central: bool = True) -> Mat2:
    """A random element of KZ."""
    while True:
        ents = [rng.randint(-p**3, p**3) for _ in range(4)]
        g = Mat2(p, *ents)
        if g.det() != 0 and valuation(g.det(), p) == 0:
            if central:
                g = g.scaled(mpq(p) ** rng.randint(-2, 2))
            return g


def clear_caches() -> None:
    _columns.clear()
    _sph_columns.clear()


# -- JSON ------------------------------------------------------------------


def element_to_json(x) -> dict:
    """Serialize an element; keys and values use the tree and polynomial schemas."""
    out = {"p": x.p, "ext_degree": x.field.k}
    if isinstance(x, IwahoriElement):
        out["kind"] = "iwahori"
        out["char"] = {"kind": x.kind, "r": x.r}
        out["support"] = [{"key": e.to_json(), "value": c.to_json()} for e, c in sorted(x.support.items())]
    else:
        out["kind"] = "spherical"
        out["char"] = {"weight": x.weight.to_json()}
        out["support"] = [{"key": v.to_json(), "value": P.to_json()} for v, P in sorted(x.support.items())]
    return out


def element_from_json(data: dict):
    """Inverse of :func:`element_to_json`; raises ValueError on malformed input."""
    try:
        p = int(data["p"])
        field = GF(p, int(data.get("ext_degree", 1)))
        kind = data["kind"]
        char = data["char"]
        entries = data.get("support", [])
        if kind == "iwahori":
            support = {}
            for item in entries:
                e = EdgeKey.from_json(item["key"], p)
                if not tree(p).is_adjacent(e.origin, e.terminal):
                    raise ValueError(f"{e.label()} is not an edge")
                val = item["value"]
                support[e] = support.get(e, field.zero) + (field(val) if isinstance(val, int) else field(list(val)))
            return IwahoriElement(p, char["kind"], int(char["r"]), support, field)
        if kind == "spherical":
            weight = Weight.from_json(char["weight"])
            support = {}
            for item in entries:
                v = VertexKey.from_json(item["key"], p)
                if weight.kind == "V":
                    val = VrElement.from_json(item["value"], field)
                else:
                    val = QuotElement.from_json(item["value"], field, p)
                if val.r != weight.r:
                    raise ValueError("value degree does not match the weight")
                support[v] = support[v] + val if v in support else val
            return SphericalElement(p, weight, support, field)
    except (KeyError, TypeError, IndexError) as exc:
        raise ValueError(f"malformed element JSON: {exc}") from None
    raise ValueError(f"unknown element kind {data.get('kind')!r}")
