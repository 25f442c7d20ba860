"""Stage-by-stage model of the interferometer bench.

A photon enters a balanced beam splitter, picks up a relative phase phi
between the two arms (either of which may be blocked), and meets a second
beam splitter whose presence is controlled by a two-level ancilla prepared
in sin(alpha)|a> + cos(alpha)|p>. Detection projects the ancilla on the
basis |b> = sin(beta)|a> + cos(beta)|p>, |b_perp> = cos(beta)|a> - sin(beta)|p>.

The recombining beam splitter convention is the unique Hadamard-type matrix
with output phases (delta1, delta2) that maps the open-interferometer state
(|1> + e^{i phi}|2>)/sqrt(2) onto
e^{i phi/2}(cos(phi/2) e^{i delta1}|1> - i sin(phi/2) e^{i delta2}|2>).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .qcore import (
    JointState,
    PathState,
    Unitary2,
    apply_on_path_sector,
    project_ancilla,
    tensor,
)

SQRT1_2 = 1.0 / math.sqrt(2.0)

# Below this post-selection probability an outcome carries no photons and its
# conditional detector probabilities are reported as 0 instead of 0/0.
MIN_SUCCESS_PROB = 1e-15


class Blocking(Enum):
    NONE = "none"
    PATH1 = "path1"
    PATH2 = "path2"


class AncillaOutcome(Enum):
    B = "B"
    B_PERP = "Bperp"


@dataclass(frozen=True)
class ApparatusParams:
    """Everything that determines one run of the bench. Angles in radians."""

    alpha: float
    beta: float
    phi: float = 0.0
    delta1: float = 0.0
    delta2: float = 0.0
    blocking: Blocking = Blocking.NONE

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "phi", "delta1", "delta2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not isinstance(self.blocking, Blocking):
            raise ValueError(f"blocking must be a Blocking, got {self.blocking!r}")


def ancilla_basis(beta: float) -> tuple[tuple[float, float], tuple[float, float]]:
    """Coefficient pairs (on |a>, |p>) of the detection basis |b>, |b_perp>."""
    s, c = math.sin(beta), math.cos(beta)
    return (s, c), (c, -s)


def outcome_vector(beta: float, outcome: AncillaOutcome) -> tuple[float, float]:
    b, b_perp = ancilla_basis(beta)
    return b if outcome is AncillaOutcome.B else b_perp


def first_stage(phi: float, blocking: Blocking) -> PathState:
    """Path state after the input beam splitter, the phase, and any blocker.

    Blocking deletes the amplitude of the obstructed arm without
    renormalizing, so the state keeps norm_sq = 1/2.
    """
    e = cmath.exp(1j * phi)
    if blocking is Blocking.NONE:
        return PathState(SQRT1_2, SQRT1_2 * e)
    if blocking is Blocking.PATH1:
        return PathState(0.0, SQRT1_2 * e)
    return PathState(SQRT1_2, 0.0)


@lru_cache(maxsize=64)
def bs_matrix(delta1: float, delta2: float) -> Unitary2:
    """Balanced recombining beam splitter with constant output phases."""
    e1 = cmath.exp(1j * delta1) * SQRT1_2
    e2 = cmath.exp(1j * delta2) * SQRT1_2
    return Unitary2(((e1, e1), (e2, -e2)))


def particle_state(phi: float) -> PathState:
    """Open-interferometer state (|1> + e^{i phi}|2>)/sqrt(2)."""
    return PathState(SQRT1_2, SQRT1_2 * cmath.exp(1j * phi))


def wave_state(phi: float, delta1: float, delta2: float) -> PathState:
    """Closed-interferometer state, written in its closed form.

    Used as an independent oracle against evolve(): it must equal
    bs_matrix(delta1, delta2) applied to particle_state(phi).
    """
    half = cmath.exp(1j * phi / 2.0)
    amp1 = half * math.cos(phi / 2.0) * cmath.exp(1j * delta1)
    amp2 = -1j * half * math.sin(phi / 2.0) * cmath.exp(1j * delta2)
    return PathState(amp1, amp2)


def evolve(params: ApparatusParams) -> JointState:
    """Joint photon+ancilla state just before the ancilla is detected."""
    ancilla = tensor(
        first_stage(params.phi, params.blocking),
        math.sin(params.alpha),
        math.cos(params.alpha),
    )
    return apply_on_path_sector(ancilla, bs_matrix(params.delta1, params.delta2), "p")


@dataclass(frozen=True)
class OutcomeStats:
    """Detection statistics conditioned on one ancilla outcome."""

    path: PathState  # unnormalized post-selected path state
    success_prob: float
    p1: float  # conditional detector probabilities (0 when success_prob ~ 0)
    p2: float
    joint: tuple[float, float]  # p(detector j AND this outcome), per emitted photon


@dataclass(frozen=True)
class RunResult:
    b: OutcomeStats
    b_perp: OutcomeStats
    loss: float  # photon flux removed by a blocker (0 unblocked, 1/2 blocked)

    def outcome(self, o: AncillaOutcome) -> OutcomeStats:
        return self.b if o is AncillaOutcome.B else self.b_perp


def _outcome_stats(state: JointState, g: tuple[float, float]) -> OutcomeStats:
    path, prob = project_ancilla(state, g[0], g[1])
    j1 = abs(path.amp1) ** 2
    j2 = abs(path.amp2) ** 2
    if prob < MIN_SUCCESS_PROB:
        p1 = p2 = 0.0
    else:
        p1, p2 = j1 / prob, j2 / prob
    return OutcomeStats(path=path, success_prob=prob, p1=p1, p2=p2, joint=(j1, j2))


def run(params: ApparatusParams) -> RunResult:
    """Evolve and project on both detection-basis outcomes."""
    state = evolve(params)
    b, b_perp = ancilla_basis(params.beta)
    stats_b = _outcome_stats(state, b)
    stats_p = _outcome_stats(state, b_perp)
    total = sum(stats_b.joint) + sum(stats_p.joint)
    return RunResult(b=stats_b, b_perp=stats_p, loss=1.0 - total)
