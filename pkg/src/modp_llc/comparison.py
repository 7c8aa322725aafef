"""Comparison maps between Iwahori and spherical inductions, and the verification suites.

Maps are defined on edge indicators and extended linearly; every one of them
is G-equivariant by construction, so its image on ``[[g, c]]`` is read off
from the canonical coset representative of the edge.

* ``phi``: ind_{IZ}^G 1 -> ind_{KZ}^G (V_{2p-2}/V^*), [[1, 1]] -> [1, Y^{2p-2} - X^{p-1}Y^{p-1}].
* ``psi_r``: ind_{IZ}^G d^r -> ind_{KZ}^G V_r, [[1, 1]] -> [beta, X^r].
* ``flip``: ind_{IZ}^G d^r -> ind_{IZ}^G a^r, [[g, 1]] -> [[g beta, 1]].
* ``theta``: the involution T10 of ind_{IZ}^G 1.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field as dc_field

from .fields import GF, FqScalar, rank_mod_p
from .finite_reps import (
    QuotElement,
    VrElement,
    decompose_2p2,
    embed_vp1,
    gl2_act,
    orbit_span_dimension,
    phi_generator,
    psi,
    psi_inverse,
    quot_act,
    right_translate,
    sum_powers,
    v0_generator,
    vstar_reduce,
)
from .inductions import (
    IwahoriElement,
    SphericalElement,
    Weight,
    T10,
    T12,
    T_spherical,
    Tm10,
    _vertex_part,
    act_g,
    element_to_json,
    iwahori_indicator,
    normalize_iwahori,
    random_element,
    random_group_element,
    random_iwahori_matrix,
    spherical_indicator,
)
from .padic import Mat2, beta, char_value, factor_IZ, gl2_fp, identity
from .tree import EdgeKey, reverse, tree

__all__ = [
    "phi",
    "psi_r",
    "theta",
    "flip",
    "project_V0",
    "project_Vp1",
    "CheckResult",
    "ComparisonReport",
    "SUITES",
    "verify_suite",
    "phi_ball_rank",
    "explore_kernel_image",
]

SCHEMA_VERSION = 1


# -- the maps ----------------------------------------------------------------


def _require_trivial(x: IwahoriElement):
    if x.kind != "d" or not x.trivial_character:
        raise ValueError("expected an element of ind_{IZ}^G with character trivial on I")


def _require_middle(x: IwahoriElement):
    if x.kind != "d":
        raise ValueError("expected a d^r element")
    if not 0 < x.r < x.p - 1:
        raise ValueError(f"r must satisfy 0 < r < p - 1, got r={x.r}")


_phi_cache: dict = {}


def _phi_column(p: int, e: EdgeKey):
    col = _phi_cache.get((p, e))
    if col is None:
        gen = vstar_reduce(phi_generator(GF(p)), p)
        v, kbar = _vertex_part(tree(p).coset_rep(e))
        col = _phi_cache[(p, e)] = (v, quot_act(kbar, gen))
    return col


def phi(x: IwahoriElement) -> SphericalElement:
    """[[g, c]] -> c [g, Y^{2p-2} - X^{p-1} Y^{p-1}] into ind_{KZ}^G (V_{2p-2}/V^*)."""
    _require_trivial(x)
    p = x.p
    out: dict = {}
    for e, c in x.support.items():
        v, val = _phi_column(p, e)
        val = val.scale(c)
        out[v] = out[v] + val if v in out else val
    return SphericalElement(p, Weight("Q", 2 * p - 2), out, x.field)


def _check_quotient(y: SphericalElement):
    if y.weight != Weight("Q", 2 * y.p - 2):
        raise ValueError("expected an element of ind_{KZ}^G (V_{2p-2}/V^*)")


def project_V0(y: SphericalElement) -> SphericalElement:
    """Vertexwise coefficient of e_0 = X^{2p-2} - X^{p-1}Y^{p-1} + Y^{2p-2}, as an element over V_0."""
    _check_quotient(y)
    out = {}
    for v, val in y.support.items():
        a, _ = decompose_2p2(val, y.p)
        out[v] = VrElement(0, (a,))
    return SphericalElement(y.p, Weight("V", 0), out, y.field)


def project_Vp1(y: SphericalElement) -> SphericalElement:
    """Vertexwise V_{p-1} component, pulled back along X^{p-1} -> X^{2p-2}."""
    _check_quotient(y)
    out = {}
    for v, val in y.support.items():
        out[v] = decompose_2p2(val, y.p)[1]
    return SphericalElement(y.p, Weight("V", y.p - 1), out, y.field)


def recombine(y0: SphericalElement, y1: SphericalElement) -> SphericalElement:
    """Inverse of the two projections: [g, a] + [g, P] -> [g, a e_0 + iota(P)]."""
    p = y0.p
    e0 = vstar_reduce(v0_generator(GF(p)), p)
    out: dict = {}
    for v, val in y0.support.items():
        out[v] = e0.scale(val.coeffs[0])
    for v, P in y1.support.items():
        img = embed_vp1(P, p)
        out[v] = out[v] + img if v in out else img
    return SphericalElement(p, Weight("Q", 2 * p - 2), out, _join_field(y0, y1))


def _join_field(a, b):
    return a.field if a.field.k >= b.field.k else b.field


_psi_cache: dict = {}


def _psi_column(p: int, r: int, e: EdgeKey):
    col = _psi_cache.get((p, r, e))
    if col is None:
        v, kbar = _vertex_part(tree(p).coset_rep(e) @ beta(p))
        col = _psi_cache[(p, r, e)] = (v, gl2_act(kbar, VrElement.monomial(GF(p), r, 0)))
    return col


def psi_r(x: IwahoriElement) -> SphericalElement:
    """[[g, c]] -> c [g beta, X^r] from ind_{IZ}^G d^r to ind_{KZ}^G V_r, 0 < r < p - 1."""
    _require_middle(x)
    p, r = x.p, x.r
    out: dict = {}
    for e, c in x.support.items():
        v, val = _psi_column(p, r, e)
        val = val.scale(c)
        out[v] = out[v] + val if v in out else val
    return SphericalElement(p, Weight("V", r), out, x.field)


def theta(x: IwahoriElement) -> IwahoriElement:
    """The order-two automorphism T10 of ind_{IZ}^G 1."""
    _require_trivial(x)
    return T10(x)


_flip_cache: dict = {}


def _flip_column(p: int, r: int, e: EdgeKey):
    col = _flip_cache.get((p, r, e))
    if col is None:
        img = normalize_iwahori(tree(p).coset_rep(e) @ beta(p), 1, "a", r)
        col = _flip_cache[(p, r, e)] = next(iter(img.support.items()))
    return col


def flip(x: IwahoriElement) -> IwahoriElement:
    """[[g, c]]_d -> [[g beta, c]]_a, for 0 < r < p - 1."""
    _require_middle(x)
    p, r = x.p, x.r
    out: dict = {}
    for e, c in x.support.items():
        e2, m = _flip_column(p, r, e)
        out[e2] = out.get(e2, x.field.zero) + c * m
    return IwahoriElement(p, "a", r, out, x.field)


def clear_caches() -> None:
    _phi_cache.clear()
    _psi_cache.clear()
    _flip_cache.clear()


# -- reports -------------------------------------------------------------


@dataclass
class CheckResult:
    check_id: str
    statement: str
    passed: bool
    trials: int = 0
    seed: int | None = None
    counterexample: dict | None = None

    def to_json(self) -> dict:
        out = {
            "id": self.check_id,
            "statement": self.statement,
            "passed": self.passed,
            "trials": self.trials,
        }
        if self.seed is not None:
            out["seed"] = self.seed
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class ComparisonReport:
    p: int
    suite: str
    checks: list[CheckResult] = dc_field(default_factory=list)
    seeds: list[int] = dc_field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def extend(self, other: ComparisonReport) -> None:
        self.checks.extend(other.checks)
        self.seeds.extend(s for s in other.seeds if s not in self.seeds)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "p": self.p,
            "suite": self.suite,
            "ok": self.ok,
            "seeds": self.seeds,
            "checks": [c.to_json() for c in self.checks],
        }

    def to_tap(self) -> str:
        lines = [f"# p={self.p} suite={self.suite}", f"1..{len(self.checks)}"]
        for i, c in enumerate(self.checks, 1):
            status = "ok" if c.passed else "not ok"
            lines.append(f"{status} {i} - {c.check_id}: {c.statement}")
            if not c.passed:
                lines.append(f"  # seed={c.seed}")
                if c.counterexample is not None:
                    lines.append("  # " + json.dumps(c.counterexample, sort_keys=True))
        return "\n".join(lines) + "\n"


# -- checking harness ---------------------------------------------------------


def _payload(x) -> dict:
    if isinstance(x, (IwahoriElement, SphericalElement)):
        return element_to_json(x)
    return {"value": repr(x)}


class _Checker:
    """Collects results; each trial gets a seed derived from the suite seed."""

    def __init__(self, report: ComparisonReport, seed: int):
        self.report = report
        self.seed = seed
        self._n = 0

    def trial_seed(self) -> int:
        self._n += 1
        return self.seed * 1_000_003 + self._n

    def run(self, check_id: str, statement: str, trials: int, body):
        """``body(seed)`` returns None on success or a counterexample object."""
        first_seed = None
        for _ in range(trials):
            s = self.trial_seed()
            first_seed = first_seed if first_seed is not None else s
            bad = body(s)
            if bad is not None:
                self.report.checks.append(CheckResult(check_id, statement, False, trials, s, _payload(bad)))
                return
        self.report.checks.append(CheckResult(check_id, statement, True, trials, first_seed))

    def fact(self, check_id: str, statement: str, passed: bool, detail=None):
        self.report.checks.append(
            CheckResult(check_id, statement, bool(passed), 1, None, None if passed else {"detail": repr(detail)})
        )


def _default_ops() -> dict:
    return {"T10": T10, "T12": T12, "Tm10": Tm10, "T": T_spherical}


def _iw(p, radius, s, r=0, kind="d", count=None, field=None):
    rng = random.Random(s)
    count = count if count is not None else rng.randint(1, 6)
    return random_element(p, "iwahori", radius, count, s, char_kind=kind, r=r, field=field)


def _middle_rs(p: int) -> list[int]:
    return list(range(1, p - 1))


# -- suites ----------------------------------------------------------------


def _suite_relations(ck: _Checker, p: int, radius: int, trials: int, ops: dict):
    t10, t12, tm10 = ops["T10"], ops["T12"], ops["Tm10"]

    def rel(s, lhs, rhs):
        x = _iw(p, radius, s)
        return None if lhs(x) == rhs(x) else x

    ck.run("T10^2", "T10 T10 = 1", trials, lambda s: rel(s, lambda x: t10(t10(x)), lambda x: x))
    ck.run(
        "T12T10T12",
        "T12 T10 T12 = -T12",
        trials,
        lambda s: rel(s, lambda x: t12(t10(t12(x))), lambda x: -t12(x)),
    )
    ck.run(
        "Tm10",
        "Tm10 = T10 T12 T10",
        trials,
        lambda s: rel(s, lambda x: tm10(x), lambda x: t10(t12(t10(x)))),
    )

    def e(x):
        return -t12(t10(x))

    ck.run("idempotent", "(-T12 T10)^2 = -T12 T10", trials, lambda s: rel(s, lambda x: e(e(x)), e))

    def split(s):
        x = _iw(p, radius, s)
        a = e(x)
        b = x + t12(t10(x))
        if a + b != x or not e(b).is_zero() or not (a + t12(t10(a))).is_zero():
            return x
        return None

    ck.run("idempotent-split", "x = e(x) + (1 - e)(x), each part killed by the other idempotent", trials, split)
    ck.run(
        "annihilate-image",
        "(Tm10 + T10) T12 T10 = 0",
        trials,
        lambda s: rel(s, lambda x: (lambda y: tm10(y) + t10(y))(t12(t10(x))), lambda x: x - x),
    )
    ck.run(
        "annihilate-complement",
        "Tm10 (1 + T12 T10) = 0",
        trials,
        lambda s: rel(s, lambda x: tm10(x + t12(t10(x))), lambda x: x - x),
    )

    def equivariance(s):
        rng = random.Random(s)
        h = random_group_element(p, rng)
        x = _iw(p, radius, s)
        for op in (t10, t12, tm10):
            if op(act_g(h, x)) != act_g(h, op(x)):
                return x
        return None

    ck.run("equivariance", "T10, T12, Tm10 commute with the G-action", max(1, trials // 4), equivariance)

    def figure(s):
        rng = random.Random(s)
        edges = tree(p).edge_ball(radius)
        edge = edges[rng.randrange(len(edges))]
        x = iwahori_indicator(p, edge)
        y = t12(t10(x))
        expected = {EdgeKey(edge.origin, u) for u in tree(p).neighbors(edge.origin) if u != edge.terminal}
        cont = set(tree(p).continuations(reverse(edge)))
        if set(y.support) != expected or expected != cont or any(c != 1 for c in y.support.values()):
            return x
        return None

    ck.run("figure", "T12 T10 of an edge indicator is the sum over the other edges at its origin", trials, figure)

    def well_defined(s):
        rng = random.Random(s)
        g = random_group_element(p, rng)
        u = random_iwahori_matrix(p, rng)
        for kind in ("d", "a"):
            for r in range(p - 1):
                m = normalize_iwahori(g @ u, 1, kind, r)
                _, unit = _scalar_split(u)
                want = normalize_iwahori(g, 1, kind, r).scale(char_value(unit, kind, r))
                if m != want:
                    return m
        return None

    ck.run("normalize-iwahori", "[[g u, 1]] = chi(u) [[g, 1]] for u in IZ", trials, well_defined)


def _scalar_split(u: Mat2):
    return factor_IZ(u)


def _suite_commutative(ck: _Checker, p: int, radius: int, trials: int, ops: dict):
    t12, tm10, T = ops["T12"], ops["Tm10"], ops["T"]
    rs = _middle_rs(p)
    if not rs:
        ck.fact("no-middle-range", f"no 0 < r < p - 1 for p={p}", True)
        return
    for r in rs:

        def rel(s, r=r):
            x = _iw(p, radius, s, r=r)
            if not tm10(t12(x)).is_zero() or not t12(tm10(x)).is_zero():
                return x
            return None

        ck.run(f"Tm10T12[r={r}]", "Tm10 T12 = 0 = T12 Tm10 on ind d^r", trials, rel)

        def kills(s, r=r):
            x = _iw(p, radius, s, r=r)
            return None if psi_r(tm10(x)).is_zero() else x

        ck.run(f"psi_r-kills-Tm10[r={r}]", "psi_r Tm10 = 0", trials, kills)

        def intertwine(s, r=r):
            x = _iw(p, radius, s, r=r)
            return None if psi_r(t12(x)) == T(psi_r(x)) else x

        ck.run(f"psi_r-T12[r={r}]", "psi_r T12 = T psi_r", trials, intertwine)

        F = GF(p)
        b = normalize_iwahori(beta(p), 1, "d", r)
        ck.fact(
            f"psi_r-beta[r={r}]",
            "psi_r [[beta, 1]] = [1, X^r]",
            psi_r(b) == spherical_indicator(p, VrElement.monomial(F, r, 0)),
            psi_r(b),
        )
        e0 = iwahori_indicator(p, r=r)
        ck.fact(
            f"psi_r-e0[r={r}]",
            "psi_r [[1, 1]] = [beta, X^r]",
            psi_r(e0) == _sph(p, beta(p), VrElement.monomial(F, r, 0)),
            psi_r(e0),
        )

        def well_defined(s, r=r):
            rng = random.Random(s)
            g = random_group_element(p, rng)
            u = random_iwahori_matrix(p, rng)
            _, unit = _scalar_split(u)
            lhs = psi_r(normalize_iwahori(g @ u, 1, "d", r))
            rhs = _sph(p, g @ beta(p), VrElement.monomial(F, r, 0)).scale(char_value(unit, "d", r))
            return None if lhs == rhs else lhs

        ck.run(f"psi_r-representative[r={r}]", "psi_r [[g u, 1]] = d^r(u) [g beta, X^r]", trials, well_defined)


def _sph(p, g, val):
    v, kbar = _vertex_part(g)
    if isinstance(val, QuotElement):
        img = quot_act(kbar, val)
        w = Weight("Q", val.r)
    else:
        img = gl2_act(kbar, val)
        w = Weight("V", val.r)
    return SphericalElement(p, w, {v: img}, val.field)


def generator_images(p: int) -> dict[str, tuple[SphericalElement, SphericalElement]]:
    """Computed vs expected images of the four displayed generators under phi."""
    F = GF(p)
    r = 2 * p - 2
    x0 = iwahori_indicator(p)
    q = lambda P: vstar_reduce(P, p)  # noqa: E731
    x2p2 = VrElement.monomial(F, r, 0)
    return {
        "[[1,1]]": (phi(x0), _sph(p, identity(p), q(phi_generator(F)))),
        "T12[[1,1]]": (phi(T12(x0)), _sph(p, beta(p), q(x2p2))),
        "T12T10[[1,1]]": (phi(T12(T10(x0))), _sph(p, identity(p), q(x2p2))),
        "(1+T12T10)[[1,1]]": (phi(x0 + T12(T10(x0))), _sph(p, identity(p), q(v0_generator(F)))),
    }


def phi_ball_rank(p: int, radius: int) -> tuple[int, int]:
    """(number of edges in the ball, rank of phi on their indicators)."""
    edges = tree(p).edge_ball(radius)
    cols: dict = {}
    rows = []
    for e in edges:
        y = phi(iwahori_indicator(p, e))
        row = {}
        for v, val in y.support.items():
            for j, c in enumerate(val.coeffs):
                if c:
                    row[cols.setdefault((v, j), len(cols))] = c.v
        rows.append(row)
    return len(edges), rank_mod_p(rows, p)


def _suite_noncommutative(ck: _Checker, p: int, radius: int, trials: int, ops: dict):
    t10, t12, tm10, T = ops["T10"], ops["T12"], ops["Tm10"], ops["T"]
    for name, (got, want) in generator_images(p).items():
        ck.fact(f"phi-{name}", f"phi of {name} matches its displayed image", got == want, got)
    x0 = iwahori_indicator(p)
    F = GF(p)
    ck.fact(
        "project-V0-e0",
        "project_V0 phi [[1,1]] = [1, 1]",
        project_V0(phi(x0)) == spherical_indicator(p, VrElement(0, (F.one,))),
    )
    ck.fact(
        "project-Vp1-e0",
        "project_Vp1 phi [[1,1]] = [1, -X^{p-1}]",
        project_Vp1(phi(x0)) == spherical_indicator(p, VrElement.monomial(F, p - 1, 0, -1)),
    )
    ck.fact(
        "I-invariance",
        "Y^{2p-2} - X^{p-1}Y^{p-1} mod V^* is fixed by the Iwahori subgroup mod p",
        all(
            quot_act(g, vstar_reduce(phi_generator(F), p)) == vstar_reduce(phi_generator(F), p)
            for g in gl2_fp(p)
            if g.c == 0
        ),
    )

    def v0_side(s):
        x = _iw(p, radius, s)
        lhs = project_V0(phi(tm10(x) + t10(x)))
        rhs = T(project_V0(phi(x)))
        return None if lhs == rhs else x

    ck.run("intertwine-V0", "project_V0 phi (Tm10 + T10) = T project_V0 phi", trials, v0_side)

    def vp1_side(s):
        x = _iw(p, radius, s)
        return None if project_Vp1(phi(tm10(x))) == T(project_Vp1(phi(x))) else x

    ck.run("intertwine-Vp1", "project_Vp1 phi Tm10 = T project_Vp1 phi", trials, vp1_side)

    def components(s):
        x = _iw(p, radius, s)
        a = phi(t12(t10(x)))
        b = phi(x + t12(t10(x)))
        if not project_V0(a).is_zero() or not project_Vp1(b).is_zero():
            return x
        return None

    ck.run("image-components", "phi(Im T12T10) lies in V_{p-1}, phi(Im(1+T12T10)) in V_0", trials, components)

    def reconstruct(s):
        x = _iw(p, radius, s)
        y = phi(x)
        return None if recombine(project_V0(y), project_Vp1(y)) == y else x

    ck.run("reconstruct", "project_V0 and project_Vp1 reconstruct phi(x)", trials, reconstruct)

    def equivariance(s):
        rng = random.Random(s)
        h = random_group_element(p, rng)
        x = _iw(p, radius, s)
        return None if phi(act_g(h, x)) == act_g(h, phi(x)) else x

    ck.run("phi-equivariance", "phi commutes with the G-action", max(1, trials // 4), equivariance)

    for R in range(0, min(radius, 3) + 1):
        n, rk = phi_ball_rank(p, R)
        ck.fact(f"phi-injective[radius={R}]", f"phi is injective on the {n} edge indicators of the ball", n == rk, (n, rk))

    def theta_checks(s):
        x = _iw(p, radius, s)
        if theta(theta(x)) != x or theta(t12(x)) != tm10(theta(x)) or theta(tm10(x)) != t12(theta(x)):
            return x
        return None

    ck.run("theta", "theta^2 = 1 and theta swaps T12 and Tm10", trials, theta_checks)

    _chains(ck, p, radius, trials, ops)


def _chains(ck: _Checker, p: int, radius: int, trials: int, ops: dict, lam=None):
    """Composite maps carrying the Iwahori relations to T - lambda, for r = 0 and r = p - 1."""
    t10, t12, tm10, T = ops["T10"], ops["T12"], ops["Tm10"], ops["T"]
    F = GF(p)
    lam = F.zero if lam is None else lam

    def m0(x):
        return project_V0(phi(theta(x)))

    def m1(x):
        return project_Vp1(phi(theta(x)))

    def chain0(s):
        x = _iw(p, radius, s, field=_field_of(lam))
        if not m0(tm10(x)).is_zero():
            return x
        lhs = m0(t12(x) + t10(x) - x.scale(lam))
        y = m0(x)
        return None if lhs == T(y) - y.scale(lam) else x

    ck.run("chain-r=0", "project_V0 phi theta kills Tm10 and sends T12 + T10 - lambda to T - lambda", trials, chain0)

    def chain1(s):
        x = _iw(p, radius, s, field=_field_of(lam))
        if not m1(tm10(x) + t10(x)).is_zero():
            return x
        lhs = m1(t12(x) - x.scale(lam))
        y = m1(x)
        return None if lhs == T(y) - y.scale(lam) else x

    ck.run(
        f"chain-r={p - 1}", "project_Vp1 phi theta kills Tm10 + T10 and sends T12 - lambda to T - lambda", trials, chain1
    )


def _field_of(lam):
    return lam.field if isinstance(lam, FqScalar) else None


def _suite_flip(ck: _Checker, p: int, radius: int, trials: int, ops: dict):
    t12, tm10 = ops["T12"], ops["Tm10"]
    rs = _middle_rs(p)
    if not rs:
        ck.fact("no-middle-range", f"no 0 < r < p - 1 for p={p}", True)
        return
    for r in rs:

        def swaps(s, r=r):
            x = _iw(p, radius, s, r=r)
            if flip(tm10(x)) != t12(flip(x)) or flip(t12(x)) != tm10(flip(x)):
                return x
            return None

        ck.run(f"flip-swap[r={r}]", "flip Tm10 = T12 flip and flip T12 = Tm10 flip", trials, swaps)

        def well_defined(s, r=r):
            rng = random.Random(s)
            g = random_group_element(p, rng)
            u = random_iwahori_matrix(p, rng)
            _, unit = _scalar_split(u)
            lhs = flip(normalize_iwahori(g @ u, 1, "d", r))
            rhs = normalize_iwahori(g @ beta(p), 1, "a", r).scale(char_value(unit, "d", r))
            return None if lhs == rhs else lhs

        ck.run(f"flip-representative[r={r}]", "flip [[g u, 1]] = d^r(u) [[g beta, 1]]_a", trials, well_defined)

        b = normalize_iwahori(beta(p), 1, "d", r)
        ck.fact(f"flip-beta[r={r}]", "flip [[beta, 1]] = [[1, 1]]_a", flip(b) == iwahori_indicator(p, kind="a", r=r))

        edges = tree(p).edge_ball(radius)
        images = {_flip_column(p, r, e)[0] for e in edges}
        ck.fact(f"flip-injective[r={r}]", "flip permutes edge indicators up to units", len(images) == len(edges))


def _suite_psi(ck: _Checker, p: int, radius: int, trials: int, ops: dict):
    F = GF(p)
    r = 2 * p - 2
    group = gl2_fp(p)
    rng = random.Random(ck.trial_seed())
    exhaustive = p <= 3
    sample = group if exhaustive else [rng.choice(group) for _ in range(500)]
    basis = [VrElement.monomial(F, r, j) for j in range(r + 1)]
    extra = [phi_generator(F), v0_generator(F)]

    bad = None
    for g in sample:
        for P in basis + extra:
            if psi(gl2_act(g, P), p) != right_translate(g, psi(P, p)):
                bad = (g, P)
                break
        if bad:
            break
    ck.fact("psi-equivariance", f"psi(g.P) = g.psi(P) over {len(sample)} group elements", bad is None, bad)

    rows = []
    for P in basis:
        f = psi(P, p)
        rows.append({i: v.v for i, v in enumerate(f.values) if v})
    ck.fact("psi-rank", "psi has rank p + 1 on V_{2p-2}", rank_mod_p(rows, p) == p + 1)

    def round_trip(s):
        rr = random.Random(s)
        P = VrElement(r, tuple(F.random(rr) for _ in range(r + 1)))
        return None if psi_inverse(psi(P, p)) == vstar_reduce(P, p) else P

    ck.run("psi-inverse", "psi_inverse(psi(P)) = P mod V^*", trials, round_trip)

    theta_poly = {(p, 1): 1, (1, p): -1}
    if r >= p + 1:
        th = VrElement.from_terms(F, r, {(i + r - p - 1, j): c for (i, j), c in theta_poly.items()})
        ck.fact("psi-kills-vstar", "psi vanishes on V^*", psi(th, p).is_zero())

    one = psi(v0_generator(F), p)
    ck.fact("psi-e0", "psi(e_0) is the constant function 1", all(v == 1 for v in one.values))
    dim = orbit_span_dimension(VrElement.monomial(F, r, 0), p)
    ck.fact("orbit-dim", "the orbit of X^{2p-2} spans a p-dimensional subspace", dim == p, dim)
    e0 = vstar_reduce(v0_generator(F), p)
    gens = [g for g in group if (g.a, g.b, g.c, g.d) in {(0, 1, 1, 0), (1, 1, 0, 1)} or (g.b == g.c == 0)]
    ck.fact("e0-fixed", "e_0 is fixed by the generators of GL_2(F_p)", all(quot_act(g, e0) == e0 for g in gens))
    ck.fact("decompose-e0", "e_0 decomposes as (1, 0)", decompose_2p2(e0, p) == (F.one, VrElement.zero(F, p - 1)))
    ck.fact(
        "decompose-X2p2",
        "X^{2p-2} decomposes as (0, X^{p-1})",
        decompose_2p2(vstar_reduce(VrElement.monomial(F, r, 0), p), p) == (F.zero, VrElement.monomial(F, p - 1, 0)),
    )

    def reconstruct(s):
        rr = random.Random(s)
        x = vstar_reduce(VrElement(r, tuple(F.random(rr) for _ in range(r + 1))), p)
        a, y = decompose_2p2(x, p)
        return None if e0.scale(a) + embed_vp1(y, p) == x else x

    ck.run("decompose-reconstruct", "a e_0 + iota(y) reconstructs x", trials, reconstruct)

    def iota_equivariant(s):
        rr = random.Random(s)
        g = rr.choice(group)
        y = VrElement(p - 1, tuple(F.random(rr) for _ in range(p)))
        return None if embed_vp1(gl2_act(g, y), p) == quot_act(g, embed_vp1(y, p)) else y

    ck.run("iota-equivariance", "iota commutes with GL_2(F_p)", trials, iota_equivariant)

    bad = [j for j in range(1, 4 * (p - 1) + 1) if sum_powers(j, p) != (p - 1 if j % (p - 1) == 0 else 0)]
    ck.fact("sum-powers", "sum_i i^j = -[p-1 | j] mod p", not bad, bad)


def _suite_llc(ck: _Checker, p: int, radius: int, trials: int, ops: dict):
    from . import llc

    F = GF(p)
    eta = llc.trivial_eta(F)
    ok = all(llc.symmetry_check(p, r, lam, eta) for r in range(p) for lam in F.nonzero())
    ck.fact("symmetry", "the twin presentation has the same Galois side", ok)
    bad = [r for r in range(p) if not llc.delta_coefficients_ok(p, r)]
    ck.fact("delta", "relation delta-coefficients follow r", not bad, bad)
    for r in llc.regime_representatives(p):
        for lam in (F.zero, F.one):
            sub = llc.consistency_numeric(p, r, lam, trials=max(1, trials // 2), seed=ck.trial_seed(), radius=radius)
            for c in sub.checks:
                c.check_id = f"consistency[r={r},lambda={lam}]/{c.check_id}"
            ck.report.checks.extend(sub.checks)


SUITES = {
    "relations": _suite_relations,
    "comparison-commutative": _suite_commutative,
    "comparison-noncommutative": _suite_noncommutative,
    "flip": _suite_flip,
    "psi": _suite_psi,
    "llc": _suite_llc,
}


def verify_suite(
    p: int,
    radius: int = 2,
    trials: int = 20,
    seed: int = 0,
    suites=None,
    operators: dict | None = None,
) -> ComparisonReport:
    """Run the named suites (default: all) on fresh random elements.

    ``operators`` may override any of ``T10``, ``T12``, ``Tm10``, ``T`` so the
    harness can be tested against a deliberately broken operator.
    """
    names = list(SUITES) if suites is None or suites == "all" else ([suites] if isinstance(suites, str) else list(suites))
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    ops = _default_ops()
    ops.update(operators or {})
    report = ComparisonReport(p, "+".join(names) if len(names) < len(SUITES) else "all", seeds=[seed])
    start = time.perf_counter()
    for i, name in enumerate(names):
        ck = _Checker(report, seed * len(SUITES) + i)
        SUITES[name](ck, p, radius, trials, ops)
    report.elapsed = time.perf_counter() - start
    return report


# -- exploration (not an acceptance check) ---------------------------------


def _matrix_rows(op, p: int, r: int, edges, cols: dict):
    rows = []
    for e in edges:
        y = op(iwahori_indicator(p, e, r=r))
        rows.append({cols.setdefault(k, len(cols)): c.v for k, c in y.support.items()})
    return rows


def explore_kernel_image(p: int, r: int, radius: int) -> dict:
    """Truncated dimensions for Ker T12 versus Im Tm10 on ind d^r.

    Ker is computed among elements supported in the edge ball of ``radius``;
    Im is spanned by Tm10 of indicators in the ball of ``radius - 2`` (whose
    images stay in the big ball). Boundary effects make these numbers
    indicative only; nothing here asserts equality.
    """
    T = tree(p)
    big = T.edge_ball(radius)
    small = T.edge_ball(max(radius - 2, 0))
    cols: dict = {}
    rk_t12 = rank_mod_p(_matrix_rows(T12, p, r, big, cols), p)
    ker_dim = len(big) - rk_t12
    idx = {e: i for i, e in enumerate(big)}
    img_rows = []
    inside = True
    for e in small:
        y = Tm10(iwahori_indicator(p, e, r=r))
        if any(k not in idx for k in y.support):
            inside = False
        img_rows.append({idx.get(k, -1 - len(img_rows)): c.v for k, c in y.support.items()})
    img_dim = rank_mod_p(img_rows, p)
    in_kernel = all(T12(Tm10(iwahori_indicator(p, e, r=r))).is_zero() for e in small)
    return {
        "p": p,
        "r": r,
        "radius": radius,
        "edges": len(big),
        "ker_T12_dim": ker_dim,
        "im_Tm10_dim": img_dim,
        "image_inside_ball": inside,
        "image_in_kernel": in_kernel,
    }
