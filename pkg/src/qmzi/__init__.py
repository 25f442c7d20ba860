"""Mach-Zehnder interferometer with an ancilla-controlled recombining beam
splitter: exact state evolution, wave/particle duality metrics, and a
photon-counting Monte Carlo twin."""

from .apparatus import (
    AncillaOutcome,
    ApparatusParams,
    Blocking,
    RunResult,
    bs_matrix,
    evolve,
    first_stage,
    particle_state,
    run,
    wave_state,
)
from .metrics import (
    DualityReport,
    FringeScan,
    distinguishability,
    duality_sum,
    fringe_scan,
    generalized_metrics,
    mixed_final_state,
    visibility,
)
from .montecarlo import (
    CountsTable,
    NoiseModel,
    ShotPlan,
    bootstrap_errors,
    estimate_metrics,
    sample_counts,
)
from .qcore import (
    JointState,
    PathDensity,
    PathState,
    Unitary2,
    apply_on_path_sector,
    detector_probs,
    partial_trace_ancilla,
    project_ancilla,
    tensor,
)

__all__ = [
    "AncillaOutcome",
    "ApparatusParams",
    "Blocking",
    "CountsTable",
    "DualityReport",
    "FringeScan",
    "JointState",
    "NoiseModel",
    "PathDensity",
    "PathState",
    "RunResult",
    "ShotPlan",
    "Unitary2",
    "apply_on_path_sector",
    "bootstrap_errors",
    "bs_matrix",
    "detector_probs",
    "distinguishability",
    "duality_sum",
    "estimate_metrics",
    "evolve",
    "first_stage",
    "fringe_scan",
    "generalized_metrics",
    "mixed_final_state",
    "partial_trace_ancilla",
    "particle_state",
    "project_ancilla",
    "run",
    "sample_counts",
    "tensor",
    "visibility",
    "wave_state",
]

__version__ = "0.1.0"
