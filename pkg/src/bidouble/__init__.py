"""Exact-arithmetic certificates for Klein-four covers of rational surfaces.

The package constructs, for each admissible pair of a canonical degree and a
holomorphic Euler characteristic, a branch configuration on the plane or on
a ruled surface whose associated cover realizes the pair, then verifies the
invariants by independent integer computations.  Each covered family also
carries a designated degeneration with an index-2 singularity ledger.
"""

from .cover import (
    BuildingData,
    Component,
    CoverError,
    InvalidBuildingData,
    Invariants,
    LedgerEntry,
    NON_NORMAL_GLUING,
    NotTriplePoint,
    ParityError,
    QUARTER_POINT,
    building_data,
    chi_oracle,
    derive_line_bundles,
    invariants,
    ksq_oracle,
    resolve_triple_point,
    singularity_scan,
)
from .degenerations import (
    DegenerationCertificate,
    DegenerationError,
    Normalization,
    degenerate,
    degenerate_pair,
    normalize_noether_line,
)
from .geography import AtlasRow, atlas, canonical_json, emit
from .lattice import (
    AMPLE,
    Ambient,
    AmbientMismatch,
    DivClass,
    LatticeError,
    NEF_ONLY,
    NOT_NEF,
    PointLabel,
    UNKNOWN,
    UnsupportedClass,
    canonical_class,
    exceptional,
    h0,
    h0_flagged,
    hirzebruch,
    intersect,
    plane,
    positivity,
    pullback,
)
from .recipes import (
    ConstructionCertificate,
    GENUS2_GENERAL,
    GENUS3,
    LINE_4CHI_MINUS_4,
    LINE_4CHI_MINUS_5,
    NOETHER_LINE,
    NOT_ADMISSIBLE,
    NOT_COVERED,
    PLANE_SPECIAL_12,
    PLANE_SPECIAL_13,
    PRODUCT_LINE,
    RegionError,
    SideCondition,
    admissible,
    classify,
    construct,
    region_parameters,
)

__all__ = [
    "AMPLE",
    "Ambient",
    "AmbientMismatch",
    "AtlasRow",
    "BuildingData",
    "Component",
    "ConstructionCertificate",
    "CoverError",
    "DegenerationCertificate",
    "DegenerationError",
    "DivClass",
    "GENUS2_GENERAL",
    "GENUS3",
    "InvalidBuildingData",
    "Invariants",
    "LINE_4CHI_MINUS_4",
    "LINE_4CHI_MINUS_5",
    "LatticeError",
    "LedgerEntry",
    "NEF_ONLY",
    "NOETHER_LINE",
    "NON_NORMAL_GLUING",
    "NOT_ADMISSIBLE",
    "NOT_COVERED",
    "NOT_NEF",
    "Normalization",
    "NotTriplePoint",
    "PLANE_SPECIAL_12",
    "PLANE_SPECIAL_13",
    "PRODUCT_LINE",
    "ParityError",
    "PointLabel",
    "QUARTER_POINT",
    "RegionError",
    "SideCondition",
    "UNKNOWN",
    "UnsupportedClass",
    "admissible",
    "atlas",
    "building_data",
    "canonical_class",
    "canonical_json",
    "chi_oracle",
    "classify",
    "construct",
    "degenerate",
    "degenerate_pair",
    "derive_line_bundles",
    "emit",
    "exceptional",
    "h0",
    "h0_flagged",
    "hirzebruch",
    "intersect",
    "invariants",
    "ksq_oracle",
    "normalize_noether_line",
    "plane",
    "positivity",
    "pullback",
    "region_parameters",
    "resolve_triple_point",
    "singularity_scan",
]

__version__ = "0.1.0"
