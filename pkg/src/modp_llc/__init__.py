"""Exact computations for the semisimple mod p local Langlands correspondence of GL_2(Q_p).

Hecke operators on compact inductions are realized on the Bruhat-Tits tree
with exact arithmetic; the comparison maps between the Iwahori and spherical
pictures and the symbolic correspondence are built on top.
"""

from .comparison import (
    ComparisonReport,
    flip,
    phi,
    project_V0,
    project_Vp1,
    psi_r,
    theta,
    verify_suite,
)
from .fields import GF, FiniteField, FqScalar
from .finite_reps import IndBChar, QuotElement, VrElement, decompose_2p2, gl2_act, psi, psi_inverse, sum_powers, vstar_reduce
from .inductions import (
    IwahoriElement,
    SmoothCharSymbol,
    SphericalElement,
    T10,
    T12,
    T_spherical,
    Tm10,
    Weight,
    act_g,
    element_from_json,
    element_to_json,
    iwahori_indicator,
    normalize_iwahori,
    normalize_spherical,
    random_element,
    spherical_indicator,
    twist_eta,
)
from .llc import (
    CharacterSymbol,
    Irreducible,
    IwahoriPresentation,
    SphericalPresentation,
    SplitSum,
    class_mod,
    consistency_numeric,
    delta,
    galois_side,
    gl2_side_iwahori,
    gl2_side_spherical,
    symmetry_check,
)
from .padic import Gl2FpMat, Mat2, PadicRational, alpha, beta, factor_IZ, factor_KZ, identity, reduce_mod_p, w
from .tree import EdgeKey, VertexKey, edge_from_group, tree, vertex_normal_form

__version__ = "0.1.0"
