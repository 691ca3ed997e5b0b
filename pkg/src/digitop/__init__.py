"""Exact checks, searches and constructions for digital homotopy notions."""
from .errors import (
    BudgetExceeded,
    Check,
    DigitopError,
    DimensionMismatch,
    EndpointMismatch,
    NotASubimage,
    StateCapExceeded,
    UnsupportedConversion,
)
from .lattice import AdjacencyKind, DigitalImage, PointedImage, adjacent, c, components, interval
from .maps import (
    DigitalMap,
    check_continuity_connected,
    check_continuity_edges,
    compose,
    constant,
    identity,
    inclusion,
)
from .homotopy import (
    EquivalenceCertificate,
    Found,
    Homotopy,
    NotWithinBudget,
    search_contraction,
    search_homotopy,
    verify_equivalence,
    verify_homotopy,
)
from .ecpath import ECHomotopy, ECPath, Equal, Unknown, loops_equal_within_budget, push_loop
from .longhtpy import (
    LHomotopy,
    LongEquivalenceCertificate,
    LongHomotopy,
    finite_to_long,
    l_to_long,
    long_to_finite,
    shift_constant_target,
    verify_l_homotopy,
    verify_long_equivalence,
    verify_long_homotopy,
)
from .realhtpy import (
    RealEquivalenceCertificate,
    RealHomotopy,
    RealPath,
    long_to_real,
    real_to_finite,
    verify_real_equivalence,
    verify_real_homotopy,
    verify_real_path,
)
from .similarity import (
    Filtration,
    NotStable,
    SimilarityCertificate,
    compose_through_finite,
    extract_equivalence_when_stable,
    from_equivalence,
    verify_similarity,
)

__version__ = "0.1.0"

__all__ = [
    "AdjacencyKind",
    "adjacent",
    "BudgetExceeded",
    "c",
    "Check",
    "check_continuity_connected",
    "check_continuity_edges",
    "components",
    "compose",
    "compose_through_finite",
    "constant",
    "DigitalImage",
    "DigitalMap",
    "DigitopError",
    "DimensionMismatch",
    "ECHomotopy",
    "ECPath",
    "EndpointMismatch",
    "Equal",
    "EquivalenceCertificate",
    "extract_equivalence_when_stable",
    "Filtration",
    "finite_to_long",
    "Found",
    "from_equivalence",
    "Homotopy",
    "identity",
    "inclusion",
    "interval",
    "l_to_long",
    "LHomotopy",
    "long_to_finite",
    "long_to_real",
    "LongEquivalenceCertificate",
    "LongHomotopy",
    "loops_equal_within_budget",
    "NotASubimage",
    "NotStable",
    "NotWithinBudget",
    "PointedImage",
    "push_loop",
    "real_to_finite",
    "RealEquivalenceCertificate",
    "RealHomotopy",
    "RealPath",
    "search_contraction",
    "search_homotopy",
    "shift_constant_target",
    "SimilarityCertificate",
    "StateCapExceeded",
    "Unknown",
    "UnsupportedConversion",
    "verify_equivalence",
    "verify_homotopy",
    "verify_l_homotopy",
    "verify_long_equivalence",
    "verify_long_homotopy",
    "verify_real_equivalence",
    "verify_real_homotopy",
    "verify_real_path",
    "verify_similarity",
]
