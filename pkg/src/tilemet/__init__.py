"""Certified distances between described tilings of the plane.

Two strong metrics (translation radii over shared covering patches) and
two weak ones (patch and boundary-web Hausdorff closeness), each
computed as a certified interval on finitely-described tilings, plus
mechanized checks: metric axioms, comparison inequalities, local
complexity censuses with separation constants, shift continuity, and
finite-depth compactness/completeness constructions.
"""

from .analysis import (
    AxiomReport,
    CauchyResult,
    ConvergenceCurve,
    DistanceCache,
    FlcConstants,
    FlcReport,
    InequalityReport,
    KoenigResult,
    RatioSurvey,
    ShiftContinuityReport,
    cauchy_limit,
    check_axioms,
    check_flc,
    check_inequalities,
    convergence_probe,
    flc_constants,
    koenig_limit,
    shift_continuity_check,
    weak_ratio_survey,
)
from .descriptions import (
    FamilyMember,
    HalfPlaneSplice,
    Periodic,
    PeriodicWithDefects,
    TilingDescription,
    canonical_key,
    family_names,
    register_family,
)
from .hausdorff import CertifiedValue, boundary_hausdorff, solid_hausdorff
from .jsonio import load_tiling, loads, dumps, save_tiling
from .metrics import (
    DistanceReport,
    RawInfimum,
    d_sa,
    d_sb,
    d_wc,
    d_wd,
    distance,
    raw_infimum,
)
from .polygon import Polygon
from .tiles import Patch, Prototile, Tile, Tileset, patch_hausdorff
from .vec import Ball, Vec

__version__ = "0.1.0"

__all__ = [
    "AxiomReport",
    "Ball",
    "CauchyResult",
    "CertifiedValue",
    "ConvergenceCurve",
    "DistanceCache",
    "DistanceReport",
    "FamilyMember",
    "FlcConstants",
    "FlcReport",
    "HalfPlaneSplice",
    "InequalityReport",
    "KoenigResult",
    "Patch",
    "Periodic",
    "PeriodicWithDefects",
    "Polygon",
    "Prototile",
    "RatioSurvey",
    "RawInfimum",
    "ShiftContinuityReport",
    "Tile",
    "TilingDescription",
    "Tileset",
    "Vec",
    "boundary_hausdorff",
    "canonical_key",
    "cauchy_limit",
    "check_axioms",
    "check_flc",
    "check_inequalities",
    "convergence_probe",
    "d_sa",
    "d_sb",
    "d_wc",
    "d_wd",
    "distance",
    "dumps",
    "family_names",
    "flc_constants",
    "koenig_limit",
    "load_tiling",
    "loads",
    "patch_hausdorff",
    "raw_infimum",
    "register_family",
    "save_tiling",
    "shift_continuity_check",
    "solid_hausdorff",
    "weak_ratio_survey",
    "__version__",
]
