"""The Bruhat-Tits tree of SL_2(Q_p): vertices are G/KZ, oriented edges are G/IZ.

A vertex is keyed by the homothety class of the lattice spanned by the columns
of ``(p^n, a; 0, 1)`` where ``a = sum(d * p^i)`` is taken modulo ``p^n Z_p``,
so only digits with ``i < n`` survive. Every invertible matrix can be moved to
this shape by column operations over Z_p and a central scaling; see
:func:`vertex_normal_form`.

An oriented edge is the ordered pair of its endpoints. The base edge joins the
base vertex ``Z_p^2`` to ``alpha Z_p^2``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache

from gmpy2 import mpq

from .padic import Mat2, _split, alpha, identity, in_KZ, valuation

__all__ = [
    "VertexKey",
    "EdgeKey",
    "BruhatTitsTree",
    "tree",
    "vertex_normal_form",
    "lattice_equal",
    "edge_from_group",
    "reverse",
    "act_vertex",
    "act_edge",
    "to_dot",
]


@dataclass(frozen=True, order=True)
class VertexKey:
    n: int
    digits: tuple[tuple[int, int], ...] = ()

    def offset(self, p: int) -> mpq:
        return sum((mpq(d) * mpq(p) ** i for i, d in self.digits), mpq(0))

    def matrix(self, p: int) -> Mat2:
        """The canonical representative ``(p^n, a; 0, 1)`` of this class in G."""
        return Mat2(p, mpq(p) ** self.n, self.offset(p), 0, 1)

    def to_json(self) -> dict:
        return {"n": self.n, "digits": [list(x) for x in self.digits]}

    @classmethod
    def from_json(cls, data, p: int | None = None) -> VertexKey:
        digits = tuple((int(i), int(d)) for i, d in data.get("digits", []))
        key = cls(int(data["n"]), digits)
        exps = [i for i, _ in digits]
        if exps != sorted(set(exps)) or any(i >= key.n for i in exps):
            raise ValueError(f"malformed vertex key {data!r}")
        if any(not 0 < d < (p or d + 1) for _, d in digits):
            raise ValueError(f"digit out of range in {data!r}")
        return key

    def label(self) -> str:
        if not self.digits:
            return f"{self.n}"
        return f"{self.n}|" + ",".join(f"{d}@{i}" for i, d in self.digits)


@dataclass(frozen=True, order=True)
class EdgeKey:
    origin: VertexKey
    terminal: VertexKey

    def to_json(self) -> dict:
        return {"origin": self.origin.to_json(), "terminal": self.terminal.to_json()}

    @classmethod
    def from_json(cls, data, p: int | None = None) -> EdgeKey:
        return cls(VertexKey.from_json(data["origin"], p), VertexKey.from_json(data["terminal"], p))

    def label(self) -> str:
        return f"{self.origin.label()} -> {self.terminal.label()}"


BASE_VERTEX = VertexKey(0, ())


def _digits_mod(x: mpq, n: int, p: int) -> tuple[tuple[int, int], ...]:
    # p-adic digits of x at exponents < n
    if x == 0:
        return ()
    unit, k = _split(x, p)
    if k >= n:
        return ()
    modulus = p ** (n - k)
    y = int(unit.numerator) * pow(int(unit.denominator), -1, modulus) % modulus
    out = []
    i = k
    while y:
        y, dgt = divmod(y, p)
        if dgt:
            out.append((i, dgt))
        i += 1
    return tuple(out)


def vertex_normal_form(g: Mat2) -> VertexKey:
    """Key of the homothety class of the lattice ``g Z_p^2``.

    With the columns ordered so that the bottom-right entry d has the smaller
    valuation in the bottom row, one column operation over Z_p gives the basis
    ``(det/d, b; 0, d)``. Hence ``n = v(det) - 2 v(d)`` and ``a = b/d mod p^n``.
    """
    p = g.p
    a, b, c, d = g.a, g.b, g.c, g.d
    if c and (not d or valuation(c, p) < valuation(d, p)):
        b, d = a, c
    det = g.det()
    if det == 0:
        raise ZeroDivisionError("singular matrix")
    n = valuation(det, p) - 2 * valuation(d, p)
    return VertexKey(n, _digits_mod(b / d, n, p))


def lattice_equal(g: Mat2, h: Mat2) -> bool:
    """True iff g Z_p^2 and h Z_p^2 are homothetic, i.e. g^-1 h lies in KZ."""
    return in_KZ(g.inv() @ h)


def edge_from_group(g: Mat2) -> EdgeKey:
    return EdgeKey(vertex_normal_form(g), vertex_normal_form(g @ alpha(g.p)))


def reverse(e: EdgeKey) -> EdgeKey:
    return EdgeKey(e.terminal, e.origin)


def act_vertex(g: Mat2, v: VertexKey) -> VertexKey:
    return vertex_normal_form(g @ v.matrix(g.p))


def act_edge(g: Mat2, e: EdgeKey) -> EdgeKey:
    return EdgeKey(act_vertex(g, e.origin), act_vertex(g, e.terminal))


class BruhatTitsTree:
    """Neighbourhood structure, enumeration and coset sections for a fixed prime."""

    def __init__(self, p: int):
        self.p = p
        self.base = BASE_VERTEX
        self.base_edge = EdgeKey(BASE_VERTEX, VertexKey(-1, ()))
        self._down = [Mat2(p, p, lam, 0, 1) for lam in range(p)]
        self._alpha = alpha(p)
        self._rep_cache: dict[EdgeKey, Mat2] = {}
        self._vmat_cache: dict[VertexKey, Mat2] = {}
        self._ball_cache: dict[int, list[VertexKey]] = {}
        self._edge_ball_cache: dict[int, list[EdgeKey]] = {}
        self._nbr_cache: dict[VertexKey, tuple[VertexKey, ...]] = {}

    def __repr__(self):
        return f"BruhatTitsTree(p={self.p})"

    def vertex_matrix(self, v: VertexKey) -> Mat2:
        m = self._vmat_cache.get(v)
        if m is None:
            m = self._vmat_cache[v] = v.matrix(self.p)
        return m

    def neighbors(self, v: VertexKey) -> list[VertexKey]:
        """The p+1 adjacent vertices: p sublattice classes by lambda, then the last one."""
        cached = self._nbr_cache.get(v)
        if cached is None:
            g = self.vertex_matrix(v)
            out = [vertex_normal_form(g @ m) for m in self._down]
            out.append(vertex_normal_form(g @ self._alpha))
            cached = self._nbr_cache[v] = tuple(out)
        return list(cached)

    def is_adjacent(self, u: VertexKey, v: VertexKey) -> bool:
        return v in self.neighbors(u)

    def continuations(self, e: EdgeKey) -> list[EdgeKey]:
        """Edges leaving t(e), other than the reverse of e."""
        return [EdgeKey(e.terminal, u) for u in self.neighbors(e.terminal) if u != e.origin]

    def out_edges(self, v: VertexKey) -> list[EdgeKey]:
        return [EdgeKey(v, u) for u in self.neighbors(v)]

    def coset_rep(self, e: EdgeKey) -> Mat2:
        """A matrix g with edge_from_group(g) == e (a section of G -> G/IZ)."""
        rep = self._rep_cache.get(e)
        if rep is not None:
            return rep
        p = self.p
        g_o = self.vertex_matrix(e.origin)
        local = vertex_normal_form(g_o.inv() @ self.vertex_matrix(e.terminal))
        if local == VertexKey(-1, ()):
            rep = g_o
        elif local.n == 1 and all(i == 0 for i, _ in local.digits):
            lam = local.digits[0][1] if local.digits else 0
            rep = g_o @ Mat2(p, lam, 1, 1, 0)
        else:
            raise ValueError(f"{e} does not join adjacent vertices")
        self._rep_cache[e] = rep
        return rep

    def ball(self, radius: int) -> list[VertexKey]:
        """Vertices within distance ``radius`` of the base vertex, in BFS order."""
        if radius < 0:
            raise ValueError("radius must be >= 0")
        cached = self._ball_cache.get(radius)
        if cached is not None:
            return list(cached)
        seen = {self.base: 0}
        order = [self.base]
        queue = deque([self.base])
        while queue:
            v = queue.popleft()
            if seen[v] == radius:
                continue
            for u in self.neighbors(v):
                if u not in seen:
                    seen[u] = seen[v] + 1
                    order.append(u)
                    queue.append(u)
        self._ball_cache[radius] = order
        return list(order)

    def edge_ball(self, radius: int) -> list[EdgeKey]:
        """Oriented edges with both endpoints in ``ball(radius)``."""
        cached = self._edge_ball_cache.get(radius)
        if cached is None:
            verts = self.ball(radius)
            inside = set(verts)
            cached = [EdgeKey(v, u) for v in verts for u in self.neighbors(v) if u in inside]
            self._edge_ball_cache[radius] = cached
        return list(cached)

    def distance_from_base(self, v: VertexKey) -> int:
        # elementary divisors p^x | p^y of the canonical matrix give distance y - x
        a = self.vertex_matrix(v)
        vmin = min(valuation(x, self.p) for x in a.entries())
        return valuation(a.det(), self.p) - 2 * vmin

    # thin wrappers so a tree object exposes the whole surface
    vertex_normal_form = staticmethod(vertex_normal_form)
    edge_from_group = staticmethod(edge_from_group)
    reverse = staticmethod(reverse)
    act_vertex = staticmethod(act_vertex)
    act_edge = staticmethod(act_edge)

    def identity(self) -> Mat2:
        return identity(self.p)


@lru_cache(maxsize=None)
def tree(p: int) -> BruhatTitsTree:
    """The shared tree instance for the prime p."""
    return BruhatTitsTree(p)


def to_dot(
    vertices,
    edges=(),
    colored: dict | None = None,
    name: str = "tree",
    highlight: dict | None = None,
) -> str:
    """Graphviz rendering: ``edges`` are drawn undirected, ``colored`` maps
    oriented edges to a color and draws them as arrows instead."""
    colored = colored or {}
    highlight = highlight or {}
    lines = [f'digraph "{name}" {{', "  node [shape=point];"]
    for v in vertices:
        attrs = f'xlabel="{v.label()}"'
        if v in highlight:
            attrs += f", color={highlight[v]}"
        lines.append(f'  "{v.label()}" [{attrs}];')
    drawn = set()
    for e in colored:
        drawn.add(frozenset((e.origin, e.terminal)))
    for e in edges:
        pair = frozenset((e.origin, e.terminal))
        if pair in drawn:
            continue
        drawn.add(pair)
        lines.append(f'  "{e.origin.label()}" -> "{e.terminal.label()}" [dir=none, color=black];')
    for e, color in colored.items():
        lines.append(f'  "{e.origin.label()}" -> "{e.terminal.label()}" [color={color}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
