"""Exact computation of shifted lonely runner gaps and related lattice tools."""

__version__ = "0.1.0"

from .exact import (
    Comparison,
    InconsistentOracleError,
    Interval,
    NonPrimitiveError,
    Rational,
    format_rational,
    integer_kernel_basis,
    invariant_factors,
    lr_projection,
    parse_rational,
    stern_brocot_search,
)
from .runner import (
    canonical_shift,
    gamma_at,
    normalize_velocities,
    verify_gap_upper_bound,
)
from .polytrope import CoverMode, Polytrope, canonicalize, interior_point, min_vertices
from . import zonolab
from .decider import (
    Certificate,
    Decision,
    DivergedError,
    certificate_polytrope,
    decide,
    initial_domain,
    minimizing_shift,
    shifted_gap,
)

__all__ = [
    "zonolab",
    "Comparison",
    "InconsistentOracleError",
    "Interval",
    "NonPrimitiveError",
    "Rational",
    "format_rational",
    "parse_rational",
    "stern_brocot_search",
    "integer_kernel_basis",
    "invariant_factors",
    "lr_projection",
    "canonical_shift",
    "gamma_at",
    "normalize_velocities",
    "verify_gap_upper_bound",
    "CoverMode",
    "Polytrope",
    "canonicalize",
    "interior_point",
    "min_vertices",
    "Certificate",
    "Decision",
    "DivergedError",
    "certificate_polytrope",
    "decide",
    "initial_domain",
    "minimizing_shift",
    "shifted_gap",
]
