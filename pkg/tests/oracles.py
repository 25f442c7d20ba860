"""Independent closed-form oracles used across the test suite.

These are derived directly from the printed closed forms of the two
interferometer behaviors, bypassing the staged tensor/unitary/projection
pipeline of the package:

  open (particle):  (|1> + e^{i phi}|2>)/sqrt(2)
  closed (wave):    (e^{i d1}(1 + e^{i phi})|1> + e^{i d2}(1 - e^{i phi})|2>)/2

Projecting sin(a)|particle>|a> + cos(a)|wave>|p> on an ancilla vector
(g_a, g_p) gives path amplitudes that are first-harmonic in phi:
path_j(phi) = P_j + Q_j e^{i phi}.

Frozen numeric values below were computed from these formulas with a
2e6-point brute-force scan for the extrema (see the constants' comments).
"""

from __future__ import annotations

import math

import numpy as np

SQRT1_2 = 1.0 / math.sqrt(2.0)

# beta = 3*pi/16, alpha = pi/4, delta1 = delta2 = 0, outcome B:
P2_MAX_3PI16 = 0.554886358553912  # at phi = pi
P2_MIN_3PI16 = 0.09334716655818917  # at phi = 0
V_3PI16 = 0.711995251889984
N12_3PI16 = 0.08641771452281813  # cos(beta)^2 cos(alpha)^2 / 4
N22_3PI16 = 0.00026191486763482686
D_3PI16 = 0.9939567146404141
SUM_3PI16 = 1.4948871892926476


def outcome_coeffs(beta: float, perp: bool = False) -> tuple[float, float]:
    if perp:
        return math.cos(beta), -math.sin(beta)
    return math.sin(beta), math.cos(beta)


def projected_amplitudes(
    alpha: float, beta: float, d1: float, d2: float, phi, perp: bool = False
):
    """Unnormalized path amplitudes after projecting the ancilla, vectorized in phi."""
    g_a, g_p = outcome_coeffs(beta, perp)
    phi = np.asarray(phi, dtype=float)
    e = np.exp(1j * phi)
    amp1 = g_a * math.sin(alpha) * SQRT1_2 + g_p * math.cos(alpha) * np.exp(1j * d1) * (1 + e) / 2
    amp2 = g_a * math.sin(alpha) * SQRT1_2 * e + g_p * math.cos(alpha) * np.exp(1j * d2) * (1 - e) / 2
    return amp1, amp2


def joint_probs(alpha: float, beta: float, d1: float, d2: float, phi, perp: bool = False):
    a1, a2 = projected_amplitudes(alpha, beta, d1, d2, phi, perp)
    return np.abs(a1) ** 2, np.abs(a2) ** 2


def p2_conditional(alpha: float, beta: float, d1: float, d2: float, phi, perp: bool = False):
    j1, j2 = joint_probs(alpha, beta, d1, d2, phi, perp)
    return j2 / (j1 + j2)


def blocked_n12(alpha: float, beta: float, d2: float, perp: bool = False) -> float:
    """Post-selected Path-2 flux with arm 2 blocked (photon travels arm 1)."""
    g_a, g_p = outcome_coeffs(beta, perp)
    return abs(g_p * math.cos(alpha) / 2.0) ** 2


def blocked_n22(alpha: float, beta: float, d2: float, perp: bool = False) -> float:
    """Post-selected Path-2 flux with arm 1 blocked (photon travels arm 2)."""
    g_a, g_p = outcome_coeffs(beta, perp)
    return abs(g_a * math.sin(alpha) * SQRT1_2 - g_p * math.cos(alpha) * np.exp(1j * d2) / 2.0) ** 2


def visibility_brute_force(
    alpha: float, beta: float, d1: float, d2: float, n: int = 1_000_000, perp: bool = False
) -> float:
    phi = np.linspace(0.0, 2.0 * math.pi, n, endpoint=False)
    vals = p2_conditional(alpha, beta, d1, d2, phi, perp)
    p_max, p_min = float(np.max(vals)), float(np.min(vals))
    if p_max + p_min < 1e-15:
        return 0.0
    return (p_max - p_min) / (p_max + p_min)


def distinguishability_closed_form(
    alpha: float, beta: float, d2: float, perp: bool = False
) -> float:
    n12 = blocked_n12(alpha, beta, d2, perp)
    n22 = blocked_n22(alpha, beta, d2, perp)
    if n12 + n22 < 1e-15:
        return 0.0
    return abs(n12 - n22) / (n12 + n22)
