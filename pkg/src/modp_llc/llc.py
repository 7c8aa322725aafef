"""Symbolic semisimple mod p correspondence for GL_2(Q_p), in both presentations.

Galois side: ``ind(omega_2^{r+1}) (x) eta`` when lambda = 0, otherwise
``(mu_lambda omega^{r+1} + mu_{1/lambda}) (x) eta``. The GL_2 side is either
pi(r, lambda, eta) = ind_{KZ}^G V_r / (T - lambda) (x) eta, plus its twin when
lambda != 0, or the same objects presented as quotients of ind_{IZ}^G d^r by
two operator relations.

Characters are symbols (t, e) meaning mu_t * omega^e; nothing here computes
with actual Galois representations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .comparison import ComparisonReport, _Checker, _chains, _default_ops, _iw, psi_r
from .fields import GF, FiniteField, FqScalar
from .inductions import SmoothCharSymbol

__all__ = [
    "class_mod",
    "delta",
    "CharacterSymbol",
    "Irreducible",
    "SplitSum",
    "GaloisRepSymbol",
    "IwahoriPresentation",
    "SphericalPresentation",
    "trivial_eta",
    "omega_power",
    "galois_side",
    "gl2_side_spherical",
    "gl2_side_iwahori",
    "symmetry_check",
    "consistency_numeric",
    "correspondence",
    "OPERATOR_BASIS",
]

OPERATOR_BASIS = ("Tm10", "T10", "T12", "1")


def class_mod(a: int, p: int) -> int:
    """The representative of a mod p - 1 in {0, ..., p - 2}."""
    return a % (p - 1)


def delta(a, b) -> int:
    return 1 if a == b else 0


def _check_r(p: int, r: int):
    if not 0 <= r <= p - 1:
        raise ValueError(f"r must lie in 0..{p - 1}, got {r}")


def trivial_eta(field: FiniteField) -> SmoothCharSymbol:
    return SmoothCharSymbol.trivial(field)


def omega_power(field: FiniteField, e: int) -> SmoothCharSymbol:
    """omega^e, the e-th power of the mod p cyclotomic character."""
    return SmoothCharSymbol(field.one, e)


@dataclass(frozen=True)
class CharacterSymbol:
    """mu_t * omega^e with e read mod p - 1."""

    t: FqScalar
    e: int

    def __post_init__(self):
        if not self.t:
            raise ValueError("t must be nonzero")
        object.__setattr__(self, "e", self.e % (self.t.field.p - 1))

    @classmethod
    def from_smooth(cls, eta: SmoothCharSymbol) -> CharacterSymbol:
        return cls(eta.t, eta.a)

    def __mul__(self, other: CharacterSymbol) -> CharacterSymbol:
        return CharacterSymbol(self.t * other.t, self.e + other.e)

    def key(self) -> tuple:
        return (self.t.field.p, self.t.v, self.e)

    def to_json(self) -> dict:
        return {"t": self.t.to_json(), "e": self.e}


@dataclass(frozen=True)
class Irreducible:
    """ind(omega_2^c) (x) twist, with p + 1 not dividing c."""

    p: int
    c: int
    twist: SmoothCharSymbol
    identify_frobenius: bool = False

    def __post_init__(self):
        q1 = self.p**2 - 1
        c = self.c % q1
        if c % (self.p + 1) == 0:
            raise ValueError("p + 1 must not divide c")
        if self.identify_frobenius:
            c = min(c, self.p * c % q1)
        object.__setattr__(self, "c", c)

    @property
    def det_exponent(self) -> int:
        # det ind(omega_2^c) = omega^c
        return self.c % (self.p - 1)

    def __eq__(self, other):
        if not isinstance(other, Irreducible):
            return NotImplemented
        return (self.p, self.c, self.twist.t, self.twist.a) == (other.p, other.c, other.twist.t, other.twist.a)

    def __hash__(self):
        return hash((self.p, self.c, self.twist.t, self.twist.a))

    def to_json(self) -> dict:
        return {"type": "irreducible", "c": self.c, "det_exponent": self.det_exponent, "twist": self.twist.to_json()}


@dataclass(frozen=True)
class SplitSum:
    """A direct sum of two characters; equality ignores their order."""

    components: tuple[CharacterSymbol, CharacterSymbol]

    def _multiset(self):
        return Counter(c.key() for c in self.components)

    def __eq__(self, other):
        if not isinstance(other, SplitSum):
            return NotImplemented
        return self._multiset() == other._multiset()

    def __hash__(self):
        return hash(tuple(sorted(c.key() for c in self.components)))

    def to_json(self) -> dict:
        comps = sorted(self.components, key=CharacterSymbol.key)
        return {"type": "split", "components": [c.to_json() for c in comps]}


GaloisRepSymbol = Irreducible | SplitSum


def _lift_lambda(lam, field: FiniteField) -> FqScalar:
    return field(lam)


def galois_side(p: int, r: int, lam, eta: SmoothCharSymbol | None = None, identify_frobenius: bool = False):
    """The semisimple Galois representation attached to (r, lambda, eta)."""
    _check_r(p, r)
    field = lam.field if isinstance(lam, FqScalar) else GF(p)
    eta = eta or trivial_eta(field)
    lam = _lift_lambda(lam, field)
    if not lam:
        return Irreducible(p, r + 1, eta, identify_frobenius)
    tw = CharacterSymbol.from_smooth(eta)
    return SplitSum((CharacterSymbol(lam, r + 1) * tw, CharacterSymbol(lam.inverse(), 0) * tw))


@dataclass(frozen=True)
class SphericalPresentation:
    """pi(r, lambda, eta) = ind_{KZ}^G V_r / (T - lambda) (x) eta."""

    p: int
    r: int
    lam: FqScalar
    eta: SmoothCharSymbol

    def __post_init__(self):
        _check_r(self.p, self.r)

    def to_json(self) -> dict:
        return {"r": self.r, "lambda": self.lam.to_json(), "eta": self.eta.to_json(), "relation": ["T", "-lambda"]}


@dataclass(frozen=True)
class IwahoriPresentation:
    """ind_{IZ}^G d^r / ((Tm10 + [r = p-1] T10) + (T12 + [r = 0] T10 - lambda)) (x) eta."""

    p: int
    r: int
    lam: FqScalar
    eta: SmoothCharSymbol

    def __post_init__(self):
        _check_r(self.p, self.r)

    @property
    def relations(self) -> tuple[tuple, tuple]:
        """Coefficient rows over the basis (Tm10, T10, T12, 1)."""
        F = self.lam.field
        first = (F.one, F(delta(self.r, self.p - 1)), F.zero, F.zero)
        second = (F.zero, F(delta(self.r, 0)), F.one, -self.lam)
        return first, second

    def apply_relation(self, index: int, x):
        """Evaluate a relation on an element of ind_{IZ}^G d^r."""
        from .inductions import T10, T12, Tm10

        row = self.relations[index]
        out = x.scale(row[3])
        for coeff, op in zip(row[:3], (Tm10, T10, T12)):
            if coeff:
                out = out + op(x).scale(coeff)
        return out

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "lambda": self.lam.to_json(),
            "eta": self.eta.to_json(),
            "basis": list(OPERATOR_BASIS),
            "relations": [[c.to_json() for c in row] for row in self.relations],
        }


def _sides(p: int, r: int, lam, eta, cls):
    _check_r(p, r)
    field = lam.field if isinstance(lam, FqScalar) else GF(p)
    lam = _lift_lambda(lam, field)
    eta = eta or trivial_eta(field)
    first = cls(p, r, lam, eta)
    if not lam:
        return (first,)
    twin = cls(p, class_mod(p - 3 - r, p), lam.inverse(), eta * omega_power(field, r + 1))
    return first, twin


def gl2_side_spherical(p: int, r: int, lam, eta: SmoothCharSymbol | None = None) -> tuple[SphericalPresentation, ...]:
    return _sides(p, r, lam, eta, SphericalPresentation)


def gl2_side_iwahori(p: int, r: int, lam, eta: SmoothCharSymbol | None = None) -> tuple[IwahoriPresentation, ...]:
    return _sides(p, r, lam, eta, IwahoriPresentation)


def delta_coefficients_ok(p: int, r: int) -> bool:
    """Relation rows of the Iwahori presentation switch on T10 exactly at r = p - 1 and r = 0."""
    pres = gl2_side_iwahori(p, r, GF(p).one)
    for pr in pres:
        first, second = pr.relations
        if first[1] != (1 if pr.r == p - 1 else 0) or second[1] != (1 if pr.r == 0 else 0):
            return False
        if first[0] != 1 or second[2] != 1 or first[2] or second[0]:
            return False
    return True


def symmetry_check(p: int, r: int, lam, eta: SmoothCharSymbol | None = None) -> bool:
    """The twin parameters ([p-3-r], 1/lambda, eta omega^{r+1}) give the same Galois side."""
    field = lam.field if isinstance(lam, FqScalar) else GF(p)
    lam = _lift_lambda(lam, field)
    if not lam:
        raise ValueError("symmetry only concerns lambda != 0")
    eta = eta or trivial_eta(field)
    twin_eta = eta * omega_power(field, r + 1)
    return galois_side(p, r, lam, eta) == galois_side(p, class_mod(p - 3 - r, p), lam.inverse(), twin_eta)


def regime_representatives(p: int) -> list[int]:
    """r = 0, r = p - 1, and one middle r when the middle range is nonempty."""
    out = [0, p - 1]
    if p > 2:
        out.insert(1, (p - 1) // 2)
    return sorted(set(out))


def consistency_numeric(
    p: int, r: int, lam, trials: int = 50, seed: int = 0, radius: int = 2
) -> ComparisonReport:
    """Check that the Iwahori relations for (r, lambda) land in the spherical relation T - lambda.

    r = 0 and r = p - 1 go through phi and theta; 0 < r < p - 1 through psi_r.
    """
    _check_r(p, r)
    field = lam.field if isinstance(lam, FqScalar) else GF(p)
    lam = _lift_lambda(lam, field)
    report = ComparisonReport(p, f"consistency[r={r}]", seeds=[seed])
    ck = _Checker(report, seed)
    ops = _default_ops()
    pres = IwahoriPresentation(p, r, lam, trivial_eta(field))
    if r in (0, p - 1):
        sub = ComparisonReport(p, "chains")
        _chains(_Checker(sub, seed), p, radius, trials, ops, lam=lam)
        want = "chain-r=0" if r == 0 else f"chain-r={p - 1}"
        report.checks.extend(c for c in sub.checks if c.check_id == want)
        return report
    T = ops["T"]

    def middle(s):
        x = _iw(p, radius, s, r=r, field=field)
        if not psi_r(pres.apply_relation(0, x)).is_zero():
            return x
        y = psi_r(x)
        return None if psi_r(pres.apply_relation(1, x)) == T(y) - y.scale(lam) else x

    ck.run(f"chain-r={r}", "psi_r kills Tm10 and sends T12 - lambda to T - lambda", trials, middle)
    return report


def correspondence(p: int, r: int, lam, eta: SmoothCharSymbol | None = None, identify_frobenius: bool = False) -> dict:
    """JSON rendering of both sides for the CLI."""
    gal = galois_side(p, r, lam, eta, identify_frobenius)
    return {
        "p": p,
        "galois": gal.to_json(),
        "gl2_spherical": [x.to_json() for x in gl2_side_spherical(p, r, lam, eta)],
        "gl2_iwahori": [x.to_json() for x in gl2_side_iwahori(p, r, lam, eta)],
    }
