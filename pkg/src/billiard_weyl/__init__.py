"""Mode-density asymptotics for planar billiards.

Smooth-expansion coefficients from geometry, closed-orbit Green functions,
bounce-map monodromy algebra, image-path corner ledgers, corner-flattening
coordinates, and exact-spectrum verification harnesses.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import BilliardError, DomainError, NonConvergence
from .geometry import (
    Boundary,
    Corner,
    GeometricMeasures,
    Segment,
    frame_at,
    measures,
    parse_geometry,
    serialize_geometry,
)
from .weyl import (
    BoundaryCondition,
    CornerCoefficients,
    SpectralExpansion,
    corner_coeffs,
    smooth_counting,
    weyl_expansion,
)
from .birkhoff import (
    BirkhoffCoord,
    Mat2,
    OrbitSpec,
    bounce_map,
    jacobian_r_p,
    linearized_bounce_map,
    monodromy,
    transverse_jacobians,
)
from .orbit_terms import (
    acute_corner_orbit,
    corner_orbit_propagator,
    green_stationary,
    length_term_density,
    single_reflection_factors,
    single_reflection_green,
    single_reflection_propagator,
)
from .folding import (
    PathContribution,
    SignSignature,
    broken_path_propagator,
    fold,
    obtuse_corner_constant,
    signature_ledger,
)
from .curvilinear import FlattenMap, corner_coeff_identity, flatten
from .spectra import (
    Spectrum,
    disk_spectrum,
    rectangle_spectrum,
    staircase_residual,
)

__all__ = [
    "__version__",
    "BilliardError", "DomainError", "NonConvergence",
    "Boundary", "Corner", "GeometricMeasures", "Segment",
    "frame_at", "measures", "parse_geometry", "serialize_geometry",
    "BoundaryCondition", "CornerCoefficients", "SpectralExpansion",
    "corner_coeffs", "smooth_counting", "weyl_expansion",
    "BirkhoffCoord", "Mat2", "OrbitSpec", "bounce_map", "jacobian_r_p",
    "linearized_bounce_map", "monodromy", "transverse_jacobians",
    "acute_corner_orbit", "corner_orbit_propagator", "green_stationary",
    "length_term_density", "single_reflection_factors",
    "single_reflection_green", "single_reflection_propagator",
    "PathContribution", "SignSignature", "broken_path_propagator", "fold",
    "obtuse_corner_constant", "signature_ledger",
    "FlattenMap", "corner_coeff_identity", "flatten",
    "Spectrum", "disk_spectrum", "rectangle_spectrum", "staircase_residual",
]
