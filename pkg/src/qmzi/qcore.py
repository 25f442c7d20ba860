"""Exact complex linear algebra for the 2-path x 2-ancilla state space.

Basis conventions used by every module downstream:

  path basis    |1>, |2>         (the two interferometer arms)
  ancilla basis |a>, |p>         (recombining beam splitter absent / present)
  joint basis, in this fixed order: |1>|a>, |2>|a>, |1>|p>, |2>|p>

States may be subnormalized: a blocked interferometer arm removes amplitude
without renormalizing, so norm_sq tracks the surviving photon flux directly.
All values are immutable and every operation is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

ATOL = 1e-12

Amplitude = complex
AncillaLabel = Literal["a", "p"]


def _check_finite(z: complex, what: str) -> None:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"{what} must be finite, got {z!r}")


@dataclass(frozen=True)
class PathState:
    """Pure (possibly subnormalized) state on the path qubit."""

    amp1: complex
    amp2: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "amp1", complex(self.amp1))
        object.__setattr__(self, "amp2", complex(self.amp2))
        _check_finite(self.amp1, "amp1")
        _check_finite(self.amp2, "amp2")
        if self.norm_sq > 1.0 + ATOL:
            raise ValueError(f"path state norm_sq {self.norm_sq} exceeds 1")

    @property
    def norm_sq(self) -> float:
        return abs(self.amp1) ** 2 + abs(self.amp2) ** 2


@dataclass(frozen=True)
class JointState:
    """Pure state of photon path and ancilla, amplitudes in the fixed basis order."""

    v: tuple[complex, complex, complex, complex]

    def __post_init__(self) -> None:
        if len(self.v) != 4:
            raise ValueError("joint state needs exactly 4 amplitudes")
        object.__setattr__(self, "v", tuple(complex(z) for z in self.v))
        for z in self.v:
            _check_finite(z, "joint amplitude")
        if self.norm_sq > 1.0 + ATOL:
            raise ValueError(f"joint state norm_sq {self.norm_sq} exceeds 1")

    @property
    def norm_sq(self) -> float:
        return sum(abs(z) ** 2 for z in self.v)


Matrix2 = tuple[tuple[complex, complex], tuple[complex, complex]]


def _as_matrix2(m) -> Matrix2:
    rows = tuple(tuple(complex(z) for z in row) for row in m)
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise ValueError("expected a 2x2 matrix")
    for row in rows:
        for z in row:
            _check_finite(z, "matrix entry")
    return rows  # type: ignore[return-value]


@dataclass(frozen=True)
class PathDensity:
    """2x2 density matrix on the path qubit (Hermitian, positive, trace <= 1)."""

    m: Matrix2

    def __post_init__(self) -> None:
        m = _as_matrix2(self.m)
        object.__setattr__(self, "m", m)
        if abs(m[0][1] - m[1][0].conjugate()) > ATOL or abs(m[0][0].imag) > ATOL or abs(m[1][1].imag) > ATOL:
            raise ValueError("density matrix is not Hermitian")
        tr = self.trace
        if not -ATOL <= tr <= 1.0 + ATOL:
            raise ValueError(f"density matrix trace {tr} outside [0, 1]")
        # Smaller eigenvalue of a 2x2 Hermitian matrix, in closed form.
        det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).real
        lam_min = 0.5 * (tr - math.sqrt(max(tr * tr - 4.0 * det, 0.0)))
        if lam_min < -ATOL:
            raise ValueError(f"density matrix has negative eigenvalue {lam_min}")

    @property
    def trace(self) -> float:
        return self.m[0][0].real + self.m[1][1].real


@dataclass(frozen=True)
class Unitary2:
    """2x2 unitary acting on the path qubit."""

    m: Matrix2

    def __post_init__(self) -> None:
        m = _as_matrix2(self.m)
        object.__setattr__(self, "m", m)
        # u†u = 1 elementwise
        for i in range(2):
            for j in range(2):
                s = sum(m[k][i].conjugate() * m[k][j] for k in range(2))
                if abs(s - (1.0 if i == j else 0.0)) > ATOL:
                    raise ValueError("matrix is not unitary")


def tensor(path: PathState, anc_a: complex, anc_p: complex) -> JointState:
    """Attach a normalized ancilla state (anc_a|a> + anc_p|p>) to a path state."""
    anc_a, anc_p = complex(anc_a), complex(anc_p)
    n = abs(anc_a) ** 2 + abs(anc_p) ** 2
    if abs(n - 1.0) > ATOL:
        raise ValueError(f"ancilla coefficients have norm_sq {n}, expected 1")
    return JointState(
        (path.amp1 * anc_a, path.amp2 * anc_a, path.amp1 * anc_p, path.amp2 * anc_p)
    )


def apply_on_path_sector(state: JointState, u: Unitary2, sector: AncillaLabel) -> JointState:
    """Apply a path unitary only on the amplitudes carrying the given ancilla label."""
    if sector not in ("a", "p"):
        raise ValueError(f"unknown ancilla label {sector!r}")
    i, j = (0, 1) if sector == "a" else (2, 3)
    v = list(state.v)
    x, y = v[i], v[j]
    m = u.m
    v[i] = m[0][0] * x + m[0][1] * y
    v[j] = m[1][0] * x + m[1][1] * y
    return JointState(tuple(v))


def project_ancilla(state: JointState, b_a: complex, b_p: complex) -> tuple[PathState, float]:
    """Project the ancilla on b_a|a> + b_p|p>.

    Returns the unnormalized path state <b|psi> and its norm_sq, which is the
    probability of obtaining this ancilla outcome.
    """
    b_a, b_p = complex(b_a), complex(b_p)
    n = abs(b_a) ** 2 + abs(b_p) ** 2
    if abs(n - 1.0) > ATOL:
        raise ValueError(f"projection basis vector has norm_sq {n}, expected 1")
    ca, cp = b_a.conjugate(), b_p.conjugate()
    path = PathState(ca * state.v[0] + cp * state.v[2], ca * state.v[1] + cp * state.v[3])
    return path, path.norm_sq


def partial_trace_ancilla(state: JointState) -> PathDensity:
    """Trace out the ancilla: rho[i][j] = sum_x v[(i,x)] conj(v[(j,x)])."""
    v = state.v
    # path index i owns joint positions (i, a)=i and (i, p)=i+2
    def elem(i: int, j: int) -> complex:
        return v[i] * v[j].conjugate() + v[i + 2] * v[j + 2].conjugate()

    return PathDensity(((elem(0, 0), elem(0, 1)), (elem(1, 0), elem(1, 1))))


def detector_probs(rho: PathDensity) -> tuple[float, float]:
    """Diagonal of a path density matrix: probabilities of detecting in path 1 and 2."""
    return rho.m[0][0].real, rho.m[1][1].real
