"""Finite-statistics digital twin of the photon-counting experiment.

sample_counts draws per-shot detection events from the analytic joint
probabilities of the bench, under a four-parameter noise model:

  contrast            dephasing of the path qubit inside the interferometer,
                      before the recombining beam splitter (scales the
                      off-diagonal path coherences by this factor)
  phase_jitter_sigma  Gaussian jitter of phi, redrawn per shot
  efficiency          per-photon detection probability (thinning)
  dark_rate           expected spurious counts per detector and outcome cell,
                      per grid point (Poisson)

Because every post-selected path amplitude is first-harmonic in phi, the four
joint probabilities are exactly A + B cos(phi) + C sin(phi); the coefficients
are recovered from three analytic runs and evaluated vectorized over jittered
phases. The dephased bench is the contrast-weighted mixture of the ideal run
and the two blocked runs, which carry the diagonal of the path state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .apparatus import (
    AncillaOutcome,
    ApparatusParams,
    Blocking,
    run,
)
from .metrics import DualityReport

# cell order everywhere: (detector 1, B), (detector 2, B), (detector 1, Bperp), (detector 2, Bperp)
N_CELLS = 4


@dataclass(frozen=True)
class NoiseModel:
    dark_rate: float = 0.0
    contrast: float = 1.0
    phase_jitter_sigma: float = 0.0
    efficiency: float = 1.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.dark_rate < math.inf:
            raise ValueError(f"dark_rate must be >= 0, got {self.dark_rate}")
        if not 0.0 <= self.contrast <= 1.0:
            raise ValueError(f"contrast must be in [0, 1], got {self.contrast}")
        if not 0.0 <= self.phase_jitter_sigma < math.inf:
            raise ValueError(f"phase_jitter_sigma must be >= 0, got {self.phase_jitter_sigma}")
        if not 0.0 < self.efficiency <= 1.0:
            raise ValueError(f"efficiency must be in (0, 1], got {self.efficiency}")


@dataclass(frozen=True)
class ShotPlan:
    shots_per_point: int
    phi_grid: tuple[float, ...]
    seed: int

    def __post_init__(self) -> None:
        if self.shots_per_point < 1:
            raise ValueError("shots_per_point must be >= 1")
        object.__setattr__(self, "phi_grid", tuple(float(p) for p in self.phi_grid))
        if len(self.phi_grid) == 0:
            raise ValueError("phi_grid must be nonempty")
        if any(b <= a for a, b in zip(self.phi_grid, self.phi_grid[1:])):
            raise ValueError("phi_grid must be strictly increasing")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class CountsTable:
    """Photon counts per (grid point, detector, ancilla outcome), plus losses."""

    phi_grid: tuple[float, ...]
    counts: np.ndarray  # shape (points, 2 detectors, 2 outcomes), int64
    lost: np.ndarray  # shape (points,), int64

    def cell(self, point: int, detector: int, outcome: AncillaOutcome) -> int:
        o = 0 if outcome is AncillaOutcome.B else 1
        return int(self.counts[point, detector - 1, o])


_BLOCK_CODE = {Blocking.NONE: 0, Blocking.PATH1: 1, Blocking.PATH2: 2}


def _point_rng(seed: int, blocking: Blocking, point: int) -> np.random.Generator:
    """Counter-based substream for one grid point of one bench configuration.

    Substreams depend only on (seed, blocking, point index), so grid points can
    be sampled in any order or in parallel with identical results.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(_BLOCK_CODE[blocking], point))
    return np.random.Generator(np.random.Philox(ss))


def _joint_cells(params: ApparatusParams, phi: float) -> np.ndarray:
    res = run(replace(params, phi=phi))
    return np.array(
        [res.b.joint[0], res.b.joint[1], res.b_perp.joint[0], res.b_perp.joint[1]]
    )


def fringe_coefficients(params: ApparatusParams, contrast: float = 1.0) -> np.ndarray:
    """Coefficients (A, B, C) with p_cell(phi) = A + B cos(phi) + C sin(phi).

    Exact for every cell: the joint probabilities are first-harmonic in phi, so
    three analytic runs pin them down. The contrast channel mixes the ideal
    probabilities with the phi-independent blocked-run probabilities, which
    together represent the fully dephased arm populations.
    """
    p0 = _joint_cells(params, 0.0)
    p_half = _joint_cells(params, math.pi / 2.0)
    p_pi = _joint_cells(params, math.pi)
    a = 0.5 * (p0 + p_pi)
    b = 0.5 * (p0 - p_pi)
    c = p_half - a
    coeffs = np.stack([a, b, c], axis=1)  # (cell, 3)
    if contrast < 1.0 and params.blocking is Blocking.NONE:
        dephased = _joint_cells(replace(params, blocking=Blocking.PATH1), 0.0) + _joint_cells(
            replace(params, blocking=Blocking.PATH2), 0.0
        )
        coeffs[:, 0] = contrast * coeffs[:, 0] + (1.0 - contrast) * dephased
        coeffs[:, 1:] *= contrast
    return coeffs


def _cell_probs(coeffs: np.ndarray, phis: np.ndarray) -> np.ndarray:
    p = coeffs[:, 0] + np.outer(np.cos(phis), coeffs[:, 1]) + np.outer(np.sin(phis), coeffs[:, 2])
    return np.clip(p, 0.0, 1.0)


def sample_counts(params: ApparatusParams, noise: NoiseModel, plan: ShotPlan) -> CountsTable:
    """Simulate photon counting over the phi grid. Deterministic given plan.seed."""
    coeffs = fringe_coefficients(params, noise.contrast)
    n_points = len(plan.phi_grid)
    counts = np.zeros((n_points, 2, 2), dtype=np.int64)
    lost = np.zeros(n_points, dtype=np.int64)
    for k, phi in enumerate(plan.phi_grid):
        rng = _point_rng(plan.seed, params.blocking, k)
        if noise.phase_jitter_sigma > 0.0:
            jittered = phi + rng.normal(0.0, noise.phase_jitter_sigma, size=plan.shots_per_point)
            p = noise.efficiency * _cell_probs(coeffs, jittered)  # (shots, 4)
            p_full = np.concatenate(
                [p, np.clip(1.0 - p.sum(axis=1), 0.0, 1.0)[:, None]], axis=1
            )
            cdf = np.cumsum(p_full, axis=1)
            u = rng.random(plan.shots_per_point) * cdf[:, -1]
            idx = np.minimum((u[:, None] > cdf).sum(axis=1), N_CELLS)
            cell_counts = np.bincount(idx, minlength=N_CELLS + 1)
        else:
            p = noise.efficiency * _cell_probs(coeffs, np.array([phi]))[0]
            p_full = np.append(p, max(0.0, 1.0 - p.sum()))
            cell_counts = rng.multinomial(plan.shots_per_point, p_full / p_full.sum())
        counts[k, 0, 0] = cell_counts[0]
        counts[k, 1, 0] = cell_counts[1]
        counts[k, 0, 1] = cell_counts[2]
        counts[k, 1, 1] = cell_counts[3]
        lost[k] = cell_counts[4]
        if noise.dark_rate > 0.0:
            counts[k] += rng.poisson(noise.dark_rate, size=(2, 2))
    counts.setflags(write=False)
    lost.setflags(write=False)
    return CountsTable(phi_grid=plan.phi_grid, counts=counts, lost=lost)


def _vd_from_counts(
    fringe: np.ndarray, blocked1: np.ndarray, blocked2: np.ndarray, o: int
) -> tuple[float, float, float, float, list[str]]:
    """V-hat and D-hat with first-order Poisson/binomial standard errors.

    fringe/blocked arrays have shape (points, 2, 2); o selects the outcome.
    """
    flags: list[str] = []
    n1 = fringe[:, 0, o].astype(float)
    n2 = fringe[:, 1, o].astype(float)
    tot = n1 + n2
    valid = tot > 0
    if not valid.any():
        flags.append("V_undefined")
        v = v_err = 0.0
    else:
        p2 = np.where(valid, n2 / np.where(valid, tot, 1.0), np.nan)
        k_hi = int(np.nanargmax(p2))
        k_lo = int(np.nanargmin(p2))
        a, b = p2[k_hi], p2[k_lo]
        if a + b <= 0.0:
            flags.append("V_undefined")
            v = v_err = 0.0
        else:
            v = (a - b) / (a + b)
            var_a = a * (1.0 - a) / tot[k_hi]
            var_b = b * (1.0 - b) / tot[k_lo]
            v_err = math.sqrt(
                (2.0 * b / (a + b) ** 2) ** 2 * var_a + (2.0 * a / (a + b) ** 2) ** 2 * var_b
            )
    n22 = float(blocked1[:, 1, o].sum())  # arm 1 blocked: flux reaching detector 2 via arm 2
    n12 = float(blocked2[:, 1, o].sum())  # arm 2 blocked: flux reaching detector 2 via arm 1
    if n12 + n22 <= 0.0:
        flags.append("D_undefined")
        d = d_err = 0.0
    else:
        d = abs(n12 - n22) / (n12 + n22)
        d_err = math.sqrt(4.0 * n12 * n22 / (n12 + n22) ** 3)
    return v, v_err, d, d_err, flags


def estimate_metrics(
    fringe: CountsTable,
    blocked_path1: CountsTable,
    blocked_path2: CountsTable,
    outcome: AncillaOutcome = AncillaOutcome.B,
) -> DualityReport:
    """Estimate V, D and V^2+D^2 from one fringe table and two blocked tables.

    V-hat compares the empirical Path-2 fractions of the extremal grid cells;
    D-hat compares the summed post-selected Path-2 counts of the two blocked
    tables. Standard errors are first-order propagation of counting noise.
    """
    o = 0 if outcome is AncillaOutcome.B else 1
    v, v_err, d, d_err, flags = _vd_from_counts(
        fringe.counts, blocked_path1.counts, blocked_path2.counts, o
    )
    sum_vd = v * v + d * d
    sum_err = math.sqrt((2.0 * v * v_err) ** 2 + (2.0 * d * d_err) ** 2)
    return DualityReport(
        v=v, d=d, sum_vd=sum_vd, v_err=v_err, d_err=d_err, sum_vd_err=sum_err, flags=tuple(flags)
    )


def bootstrap_errors(
    fringe: CountsTable,
    blocked_path1: CountsTable,
    blocked_path2: CountsTable,
    outcome: AncillaOutcome = AncillaOutcome.B,
    resamples: int = 200,
    seed: int = 0,
) -> tuple[float, float]:
    """Bootstrap standard deviations of (V-hat, D-hat), for cross-checking.

    Each resample redraws every counts cell as Poisson with the observed mean.
    """
    if resamples < 2:
        raise ValueError("resamples must be >= 2")
    o = 0 if outcome is AncillaOutcome.B else 1
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    vs, ds = [], []
    for _ in range(resamples):
        f = rng.poisson(fringe.counts)
        b1 = rng.poisson(blocked_path1.counts)
        b2 = rng.poisson(blocked_path2.counts)
        v, _, d, _, _ = _vd_from_counts(f, b1, b2, o)
        vs.append(v)
        ds.append(d)
    return float(np.std(vs, ddof=1)), float(np.std(ds, ddof=1))
