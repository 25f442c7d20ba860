"""Wave and particle metrics in the infinite-statistics limit.

Visibility follows the fringe-contrast definition (p_max - p_min)/(p_max + p_min)
of the post-selected Path-2 probability over phi. Distinguishability follows the
blocked-arm counting procedure: block one arm at a time, compare the post-selected
Path-2 fluxes N12 (arm 2 blocked) and N22 (arm 1 blocked) via
|N12 - N22|/(N12 + N22). The generalized variants combine the photon counts of
both orthogonal ancilla outcomes before applying the same two formulas.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

from .apparatus import (
    AncillaOutcome,
    ApparatusParams,
    Blocking,
    MIN_SUCCESS_PROB,
    particle_state,
    run,
    wave_state,
)
from .qcore import PathDensity

VISIBILITY_GRID = 720
GOLDEN_TOL = 1e-10
_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class FringePoint:
    phi: float
    p2_cond: float
    p1_cond: float
    success_prob: float


@dataclass(frozen=True)
class FringeScan:
    entries: tuple[FringePoint, ...]

    def __post_init__(self) -> None:
        phis = [e.phi for e in self.entries]
        if any(b <= a for a, b in zip(phis, phis[1:])):
            raise ValueError("phi grid must be strictly increasing")


@dataclass(frozen=True)
class DualityReport:
    """Wave/particle metrics, each optionally paired with a standard error.

    Analytic computations leave the *_err fields as None; flags name any
    metric whose denominator vanished (the value is then reported as 0).
    """

    v: float | None = None
    d: float | None = None
    sum_vd: float | None = None
    v_g: float | None = None
    d_g: float | None = None
    sum_g: float | None = None
    v_err: float | None = None
    d_err: float | None = None
    sum_vd_err: float | None = None
    flags: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        for name in ("v", "d", "v_g", "d_g"):
            val = getattr(self, name)
            if val is not None and not -1e-9 <= val <= 1.0 + 1e-9:
                raise ValueError(f"{name}={val} outside [0, 1]")
        if self.sum_g is not None and self.sum_g > 1.0 + 1e-9:
            raise ValueError(f"sum_g={self.sum_g} exceeds the unit bound")


def _golden_section(
    f: Callable[[float], float], lo: float, hi: float, maximize: bool
) -> tuple[float, float]:
    """Golden-section search for an interior extremum, to |hi - lo| < GOLDEN_TOL."""
    sign = -1.0 if maximize else 1.0
    c = hi - (hi - lo) * _INV_GOLDEN
    d = lo + (hi - lo) * _INV_GOLDEN
    fc, fd = sign * f(c), sign * f(d)
    while hi - lo > GOLDEN_TOL:
        if fc < fd:
            hi, d, fd = d, c, fc
            c = hi - (hi - lo) * _INV_GOLDEN
            fc = sign * f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + (hi - lo) * _INV_GOLDEN
            fd = sign * f(d)
    x = 0.5 * (lo + hi)
    return x, f(x)


def _extremes_of_fringe(g: Callable[[float], tuple[float, bool]]) -> tuple[float, float]:
    """Locate max and min of a 2pi-periodic fringe by grid scan plus refinement.

    g maps phi to (value, has_flux). Grid points carrying no post-selected flux
    hold no fringe information and are excluded as candidates; raises if no
    grid point carries flux. Candidate extrema (the cyclic grid extrema, strict
    local extrema, and points bordering a no-flux region) are each refined by
    golden-section search in their one-grid-step bracket.
    """
    n = VISIBILITY_GRID
    step = 2.0 * math.pi / n
    phis = [k * step for k in range(n)]
    pairs = [g(p) for p in phis]
    ok = [o for _, o in pairs]
    if not any(ok):
        raise ValueError("projection never occurs: no grid point has post-selected flux")
    vals = [v if o else math.nan for (v, o) in pairs]

    def refined(k: int, maximize: bool) -> float:
        # no-flux points must never win the refinement
        bad = -math.inf if maximize else math.inf

        def guarded(phi: float) -> float:
            v, o = g(phi)
            return v if o else bad

        _, fx = _golden_section(guarded, phis[k] - step, phis[k] + step, maximize)
        return max(fx, vals[k]) if maximize else min(fx, vals[k])

    valid_ks = [k for k in range(n) if ok[k]]
    k_hi = max(valid_ks, key=lambda k: vals[k])
    k_lo = min(valid_ks, key=lambda k: vals[k])
    max_candidates = {k_hi}
    min_candidates = {k_lo}
    for k in valid_ks:
        prev = vals[(k - 1) % n]
        nxt = vals[(k + 1) % n]
        if math.isnan(prev) or math.isnan(nxt):
            max_candidates.add(k)
            min_candidates.add(k)
        elif vals[k] > prev and vals[k] > nxt:
            max_candidates.add(k)
        elif vals[k] < prev and vals[k] < nxt:
            min_candidates.add(k)
    best_max = max(refined(k, maximize=True) for k in max_candidates)
    best_min = min(refined(k, maximize=False) for k in min_candidates)
    return best_max, best_min


def _conditional_prob(stats, detector: int) -> float:
    return stats.p2 if detector == 2 else stats.p1


def fringe_scan(
    params: ApparatusParams, outcome: AncillaOutcome, grid_points: int
) -> FringeScan:
    """Post-selected detection probabilities on an even phi grid, arms unblocked."""
    if grid_points < 8:
        raise ValueError(f"grid_points must be >= 8, got {grid_points}")
    entries = []
    any_flux = False
    for k in range(grid_points):
        phi = 2.0 * math.pi * k / grid_points
        stats = run(replace(params, phi=phi, blocking=Blocking.NONE)).outcome(outcome)
        any_flux = any_flux or stats.success_prob >= MIN_SUCCESS_PROB
        entries.append(
            FringePoint(phi=phi, p2_cond=stats.p2, p1_cond=stats.p1, success_prob=stats.success_prob)
        )
    if not any_flux:
        raise ValueError("projection never occurs: no grid point has post-selected flux")
    return FringeScan(entries=tuple(entries))


def visibility(params: ApparatusParams, outcome: AncillaOutcome, detector: int = 2) -> float:
    """Fringe contrast of the post-selected detector probability over phi."""
    if detector not in (1, 2):
        raise ValueError("detector must be 1 or 2")

    def g(phi: float) -> tuple[float, bool]:
        stats = run(replace(params, phi=phi, blocking=Blocking.NONE)).outcome(outcome)
        return _conditional_prob(stats, detector), stats.success_prob >= MIN_SUCCESS_PROB

    p_max, p_min = _extremes_of_fringe(g)
    if p_max + p_min < 1e-15:
        return 0.0
    return (p_max - p_min) / (p_max + p_min)


def _blocked_joints(
    params: ApparatusParams, outcome: AncillaOutcome, detector: int
) -> tuple[float, float]:
    """Post-selected detector fluxes of the two blocked-arm runs, at phi = 0.

    With one arm blocked only a single input amplitude survives, so phi is a
    global phase and the joint probabilities do not depend on it.
    """
    j = detector - 1
    n_from_1 = run(replace(params, phi=0.0, blocking=Blocking.PATH2)).outcome(outcome).joint[j]
    n_from_2 = run(replace(params, phi=0.0, blocking=Blocking.PATH1)).outcome(outcome).joint[j]
    return n_from_1, n_from_2


def distinguishability(
    params: ApparatusParams, outcome: AncillaOutcome, detector: int = 2
) -> float:
    """Which-path knowledge from the blocked-arm counting procedure."""
    if detector not in (1, 2):
        raise ValueError("detector must be 1 or 2")
    n12, n22 = _blocked_joints(params, outcome, detector)
    if n12 + n22 < 1e-15:
        return 0.0
    return abs(n12 - n22) / (n12 + n22)


def duality_sum(params: ApparatusParams, outcome: AncillaOutcome) -> DualityReport:
    v = visibility(params, outcome)
    d = distinguishability(params, outcome)
    return DualityReport(v=v, d=d, sum_vd=v * v + d * d)


def generalized_metrics(
    alpha: float, beta: float, delta1: float = 0.0, delta2: float = 0.0
) -> DualityReport:
    """Metrics from photon counts summed over both orthogonal ancilla outcomes."""
    params = ApparatusParams(alpha=alpha, beta=beta, delta1=delta1, delta2=delta2)

    def g(phi: float) -> tuple[float, bool]:
        res = run(replace(params, phi=phi, blocking=Blocking.NONE))
        num = res.b.joint[1] + res.b_perp.joint[1]
        den = sum(res.b.joint) + sum(res.b_perp.joint)
        if den < 1e-15:
            return 0.0, False
        return num / den, True

    p_max, p_min = _extremes_of_fringe(g)
    v_g = 0.0 if p_max + p_min < 1e-15 else (p_max - p_min) / (p_max + p_min)

    n12 = n22 = 0.0
    for outcome in AncillaOutcome:
        a, b = _blocked_joints(params, outcome, detector=2)
        n12 += a
        n22 += b
    d_g = 0.0 if n12 + n22 < 1e-15 else abs(n12 - n22) / (n12 + n22)
    return DualityReport(v_g=v_g, d_g=d_g, sum_g=v_g * v_g + d_g * d_g)


def mixed_final_state(
    alpha: float, phi: float, delta1: float = 0.0, delta2: float = 0.0
) -> PathDensity:
    """Trace-normalized mixture of the open- and closed-interferometer states.

    Equals the ancilla partial trace of the evolved unblocked state: combining
    the counts of two orthogonal outcomes erases the ancilla, leaving a
    classical sin^2/cos^2 mixture of the two behaviors.
    """
    part = particle_state(phi)
    wave = wave_state(phi, delta1, delta2)
    wa, wp = math.sin(alpha) ** 2, math.cos(alpha) ** 2

    def elem(x: complex, y: complex, u: complex, w: complex) -> complex:
        return wa * x * y.conjugate() + wp * u * w.conjugate()

    m = (
        (elem(part.amp1, part.amp1, wave.amp1, wave.amp1), elem(part.amp1, part.amp2, wave.amp1, wave.amp2)),
        (elem(part.amp2, part.amp1, wave.amp2, wave.amp1), elem(part.amp2, part.amp2, wave.amp2, wave.amp2)),
    )
    return PathDensity(m)
