"""SLOCC classification of GHZ-symmetric three-qubit states and the symmetrization witness."""
from .estimators import GHZSymmetrizer, SloccClassifier
from .exceptions import GhzSymError
from .geometry import (
    Thresholds,
    class_of_werner,
    classify,
    solve_thresholds,
    w_curve,
    x_bisep,
    x_edge,
    x_sep,
    x_sep_pure,
    x_w,
)
from .statespace import (
    LocalOp,
    SloccClass,
    TriangleCoords,
    local_op,
    make_density,
    make_pure,
    pure_to_density,
    reference_state,
    werner,
)
from .twirl import (
    QubitPermutation,
    TripleFlip,
    ZRotation,
    apply_symmetry,
    coords_of_density,
    coords_of_pure,
    is_ghz_symmetric,
    symmetric_from_coords,
    twirl,
)

__version__ = "0.1.0"

__all__ = [
    "GHZSymmetrizer",
    "GhzSymError",
    "LocalOp",
    "QubitPermutation",
    "SloccClass",
    "SloccClassifier",
    "Thresholds",
    "TriangleCoords",
    "TripleFlip",
    "ZRotation",
    "apply_symmetry",
    "class_of_werner",
    "classify",
    "coords_of_density",
    "coords_of_pure",
    "is_ghz_symmetric",
    "local_op",
    "make_density",
    "make_pure",
    "pure_to_density",
    "reference_state",
    "solve_thresholds",
    "symmetric_from_coords",
    "twirl",
    "w_curve",
    "werner",
    "x_bisep",
    "x_edge",
    "x_sep",
    "x_sep_pure",
    "x_w",
]
