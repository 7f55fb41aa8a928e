"""Exact Macdonald-Koornwinder polynomials via alcove paths.

Nonsymmetric and symmetric polynomials for untwisted, dual untwisted,
Koornwinder, and mixed affine root systems, with quantum Bruhat graphs and
the v->0, v->infinity, q->0, q->infinity specializations, all over exact
rational-function coefficients.
"""

from .coeffring import (
    CoeffRat, CoeffRing, DivergentLimit, InexactDivision,
    limit_q0, limit_qinf, limit_v0, limit_vinf, equalize_parameters,
)
from .rootdata import (
    AffineWeight, CartanDatum, DoubleAffineDatum, FiniteRootDatum,
    FractionalExponent, IncompatibleTypes, LatticeUnsupported, SideMismatch,
    DUAL_UNTWISTED, KOORNWINDER, MIXED_A2N2, MIXED_A2N2_DAGGER, UNTWISTED,
    X_SIDE, Y_SIDE, build_datum, is_affine_root,
)
from .weyl import (
    AffineGroup, FinWeyl, WeylElem, WordNotReduced, group_x, group_y, groups,
    m_lambda, translation_inversion_formula, u_lambda_elem, wt_dir,
)
from .xpoly import XPoly, exact_divide
from .hecke import EigenReport, HeckeOps
from .paths import AlcovePath, PathFamily, enumerate_paths, family_for_weight
from .evaluate import (
    EvalResult, NotDominant, PResult, VariantRequiresKoornwinder,
    evaluate_E, evaluate_E_mixed, evaluate_P, mixed_datum, oversymmetrized_P,
    w0_coset_reps,
)
from .qbg import (
    BRUHAT, QUANTUM, QBGraph, TooLarge, build_qbg, check_limits,
    classify_path, E_at_q0, E_at_qinf, E_at_v0, E_at_vinf, P_at_v0,
    quantum_paths,
)
from .duality import (
    check_dual_coefficients, check_path_bijection, check_star_identity,
    minus_w0, star_poly,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
