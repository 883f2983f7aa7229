"""Piercing sets for pairwise intersecting balls and illumination of
spiky balls and cap bodies in n dimensions."""

from .bounds import (
    ExponentReport,
    covering_exponent,
    exponent_report,
    kl_exponent,
    solve_alpha,
)
from .errors import VerificationError
from .geometry import (
    DEFAULT_TOL,
    Ball,
    SphericalCap,
    angular_distance,
    balls_intersect,
    cap_contains,
    point_in_ball,
)
from .illumination import (
    CapBody,
    DirectionSet,
    SpikyBall,
    base_cap,
    illuminate_cap_body,
    illumination_cap,
    is_cap_body,
    positive_hull_full,
    u1_separation_check,
    verifies_illumination,
)
from .lowerbound import (
    MultiplicityReport,
    SeparatedSet,
    SymmetricSeparatedSet,
    build_lower_bound_body,
    construct_separated_set,
    illumination_multiplicity,
    multiplicity_report,
    symmetrize,
)
from .piercing import (
    BallFamily,
    PiercingConfig,
    PiercingSet,
    Similarity,
    cap_overlap_radius,
    cover_points_by_balls,
    normalize_family,
    pierce,
    pierce_large,
    refine_ball_cover,
    verify_piercing,
)
from .sphere_cover import (
    Cover,
    CoverCertificate,
    CoverParams,
    Packing,
    PackParams,
    covering_size_estimate,
    greedy_cover,
    maximal_packing,
    sphere_net,
    verify_cover,
)

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "BallFamily",
    "CapBody",
    "Cover",
    "CoverCertificate",
    "CoverParams",
    "DEFAULT_TOL",
    "DirectionSet",
    "ExponentReport",
    "MultiplicityReport",
    "PackParams",
    "Packing",
    "PiercingConfig",
    "PiercingSet",
    "SeparatedSet",
    "Similarity",
    "SphericalCap",
    "SpikyBall",
    "SymmetricSeparatedSet",
    "VerificationError",
    "angular_distance",
    "balls_intersect",
    "base_cap",
    "build_lower_bound_body",
    "cap_contains",
    "cap_overlap_radius",
    "construct_separated_set",
    "cover_points_by_balls",
    "covering_exponent",
    "covering_size_estimate",
    "exponent_report",
    "greedy_cover",
    "illuminate_cap_body",
    "illumination_cap",
    "illumination_multiplicity",
    "is_cap_body",
    "kl_exponent",
    "maximal_packing",
    "multiplicity_report",
    "normalize_family",
    "pierce",
    "pierce_large",
    "point_in_ball",
    "positive_hull_full",
    "refine_ball_cover",
    "solve_alpha",
    "sphere_net",
    "symmetrize",
    "u1_separation_check",
    "verifies_illumination",
    "verify_cover",
    "verify_piercing",
]
