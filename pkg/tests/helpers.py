"""Independent oracles shared by the test modules."""

import sympy
from sympy.polys.domains import GF as SymGF
from sympy.polys.matrices import DomainMatrix

from modp_llc.fields import GF
from modp_llc.finite_reps import VrElement

X, Y = sympy.symbols("X Y")


def poly_to_vr(expr, r: int, p: int, field=None) -> VrElement:
    """Expand a sympy polynomial in X, Y and read off coefficients mod p."""
    field = field or GF(p)
    poly = sympy.Poly(sympy.expand(expr), X, Y)
    coeffs = [field(int(poly.coeff_monomial(X ** (r - j) * Y**j)) % p) for j in range(r + 1)]
    return VrElement(r, tuple(coeffs))


def rank_gf(rows, p: int) -> int:
    """Rank over F_p via sympy's DomainMatrix."""
    if not rows:
        return 0
    dom = SymGF(p)
    mat = DomainMatrix([[dom(int(x)) for x in row] for row in rows], (len(rows), len(rows[0])), dom)
    return mat.rank()


def factor_exponent(n: int, p: int) -> int:
    return sympy.factorint(n).get(p, 0)
