"""Integral points on quadratic twists A(t) y^2 = f(x) of constant elliptic curves over GF(q)(t)."""

from .bounds import (
    LatticeSpec,
    check_lemma_latt,
    combined_lang_bound,
    count_lattice_points,
    lang_bound,
    lemma_bound,
    min_norm,
    rh_degree_cap,
    twist_bound,
)
from .curve import (
    EllipticCurve,
    IntegralPoint,
    TwistedCurve,
    count_points_affine_plus_infinity,
    j_invariant,
    morphism_view,
    validate_point,
)
from .errors import IsotwistError
from .family import family_instance, gen_constant_derivative_A
from .field import FieldElement, FieldSpec, embed, field_arith, parse_field, sqrt_in_field
from .poly import (
    NEG_INF,
    Polynomial,
    compose,
    derivative,
    gcd_monic,
    is_squarefree,
    parse_poly,
    poly_sqrt,
    roots_in_field,
    splitting_spec,
)
from .search import SweepSpec, frobenius_lift, naive_enumerate, search_separable, sweep
from .theorems import arithmetic_progression_check, check_conditions, check_lemma_gdf, decompose

__version__ = "0.1.0"
