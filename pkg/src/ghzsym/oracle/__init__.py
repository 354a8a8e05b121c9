"""Independent checks of the closed-form boundaries."""
from .invariants import CUTS, hyperdeterminant, partial_transpose, ppt_min_eigenvalue, three_tangle
from .maximize import MaximizationReport, boundary_sweep, maximize_x_at_y, sweep_heights
from .sampling import ClassSampler, containment_test, sample_batch, sample_pure, task_rng

__all__ = [
    "CUTS",
    "ClassSampler",
    "MaximizationReport",
    "boundary_sweep",
    "containment_test",
    "hyperdeterminant",
    "maximize_x_at_y",
    "partial_transpose",
    "ppt_min_eigenvalue",
    "sample_batch",
    "sample_pure",
    "sweep_heights",
    "task_rng",
    "three_tangle",
]
