"""Exact tools for polygons with an area center at the origin.

Continuants, the triangular basis of the defining ideal, bracket strings
with their polynomial sets, inclusion batteries and polygon synthesis.
"""

from .batteries import verify_theorem_battery
from .brackets import BracketError, BracketString, Kind, content, enumerate_strings, parse
from .continuant import TransferMatrix, u_eval, u_poly, verify_identities
from .polyalg import Monomial, SparsePoly
from .polygons import area_report, quad_classify, regular_star, synthesize
from .polysets import PolySet, polyset, shift_plus_one
from .sampling import InclusionClaim, SampleConfig, check_inclusion, sample_point
from .transforms import TRANSFORMS
from .varieties import (
    ac_generators,
    certificate_check,
    groebner_basis,
    jacobian_rank,
    origin_membership,
    rational_parametrization,
)

__version__ = "0.1.0"

__all__ = [
    "BracketError", "BracketString", "InclusionClaim", "Kind", "Monomial", "PolySet", "SampleConfig",
    "SparsePoly", "TRANSFORMS", "TransferMatrix", "ac_generators", "area_report", "certificate_check",
    "check_inclusion", "content", "enumerate_strings", "groebner_basis", "jacobian_rank",
    "origin_membership", "parse", "polyset", "quad_classify", "rational_parametrization", "regular_star",
    "sample_point", "shift_plus_one", "synthesize", "u_eval", "u_poly", "verify_identities",
    "verify_theorem_battery",
]
