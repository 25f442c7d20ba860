"""Tests of the staged bench model against hand-derived closed forms."""

import cmath
import math
from dataclasses import replace

import numpy as np
import pytest

from qmzi.apparatus import (
    AncillaOutcome,
    ApparatusParams,
    Blocking,
    ancilla_basis,
    bs_matrix,
    evolve,
    first_stage,
    particle_state,
    run,
    wave_state,
)
from qmzi.qcore import detector_probs, partial_trace_ancilla

import oracles

SQRT1_2 = 1.0 / math.sqrt(2.0)


def path_overlap(a, b) -> float:
    """|<a|b>| / (|a||b|), insensitive to global phase."""
    inner = a.amp1.conjugate() * b.amp1 + a.amp2.conjugate() * b.amp2
    return abs(inner) / math.sqrt(a.norm_sq * b.norm_sq)


class TestFirstStage:
    def test_unblocked(self) -> None:
        s = first_stage(0.0, Blocking.NONE)
        assert (s.amp1, s.amp2) == pytest.approx((SQRT1_2, SQRT1_2), abs=1e-15)
        s = first_stage(math.pi, Blocking.NONE)
        assert (s.amp1, s.amp2) == pytest.approx((SQRT1_2, -SQRT1_2), abs=1e-12)

    def test_blocked_arm_is_removed_without_renormalizing(self) -> None:
        s = first_stage(math.pi / 2, Blocking.PATH1)
        assert (s.amp1, s.amp2) == pytest.approx((0.0, 1j * SQRT1_2), abs=1e-15)
        assert s.norm_sq == pytest.approx(0.5, abs=1e-12)
        s = first_stage(1.3, Blocking.PATH2)
        assert (s.amp1, s.amp2) == pytest.approx((SQRT1_2, 0.0), abs=1e-15)


class TestBeamSplitter:
    def test_hadamard_form_at_zero_phases(self) -> None:
        m = bs_matrix(0.0, 0.0).m
        assert m[0] == pytest.approx((SQRT1_2, SQRT1_2), abs=1e-15)
        assert m[1] == pytest.approx((SQRT1_2, -SQRT1_2), abs=1e-15)

    def test_phase_factor_on_first_row(self) -> None:
        m = bs_matrix(math.pi / 2, 0.0).m
        ref = bs_matrix(0.0, 0.0).m
        for j in range(2):
            assert m[0][j] == pytest.approx(1j * ref[0][j], abs=1e-15)
            assert m[1][j] == pytest.approx(ref[1][j], abs=1e-15)

    def test_unitary_for_random_phases(self) -> None:
        rng = np.random.default_rng(41)
        for _ in range(50):
            bs_matrix(rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi))  # validates on build

    def test_maps_open_state_to_fringing_populations(self) -> None:
        # |amp1|^2 = cos^2(phi/2), |amp2|^2 = sin^2(phi/2) for every phi
        rng = np.random.default_rng(43)
        for _ in range(50):
            phi = rng.uniform(0, 2 * math.pi)
            d1, d2 = rng.uniform(0, 2 * math.pi, size=2)
            u = bs_matrix(d1, d2).m
            s = first_stage(phi, Blocking.NONE)
            out1 = u[0][0] * s.amp1 + u[0][1] * s.amp2
            out2 = u[1][0] * s.amp1 + u[1][1] * s.amp2
            assert abs(out1) ** 2 == pytest.approx(math.cos(phi / 2) ** 2, abs=1e-12)
            assert abs(out2) ** 2 == pytest.approx(math.sin(phi / 2) ** 2, abs=1e-12)


class TestClosedFormStates:
    def test_particle_state(self) -> None:
        s = particle_state(0.0)
        assert (s.amp1, s.amp2) == pytest.approx((SQRT1_2, SQRT1_2), abs=1e-15)

    def test_wave_state_at_pi(self) -> None:
        s = wave_state(math.pi, 0.0, 0.0)
        assert (s.amp1, s.amp2) == pytest.approx((0.0, 1.0), abs=1e-12)

    def test_wave_state_at_zero_keeps_only_path1(self) -> None:
        d1, d2 = 0.8, -0.4
        s = wave_state(0.0, d1, d2)
        assert (s.amp1, s.amp2) == pytest.approx((cmath.exp(1j * d1), 0.0), abs=1e-15)

    def test_beam_splitter_reproduces_wave_state_exactly(self) -> None:
        rng = np.random.default_rng(47)
        for _ in range(100):
            phi, d1, d2 = rng.uniform(0, 2 * math.pi, size=3)
            u = bs_matrix(d1, d2).m
            s = first_stage(phi, Blocking.NONE)
            w = wave_state(phi, d1, d2)
            assert u[0][0] * s.amp1 + u[0][1] * s.amp2 == pytest.approx(w.amp1, abs=1e-12)
            assert u[1][0] * s.amp1 + u[1][1] * s.amp2 == pytest.approx(w.amp2, abs=1e-12)


class TestEvolve:
    def test_pure_ancilla_a_gives_open_interferometer(self) -> None:
        state = evolve(ApparatusParams(alpha=math.pi / 2, beta=0.0, phi=1.1))
        p = particle_state(1.1)
        assert state.v == pytest.approx((p.amp1, p.amp2, 0.0, 0.0), abs=1e-12)

    def test_pure_ancilla_p_at_zero_phase(self) -> None:
        state = evolve(ApparatusParams(alpha=0.0, beta=0.0, phi=0.0))
        assert state.v == pytest.approx((0.0, 0.0, 1.0, 0.0), abs=1e-12)

    def test_balanced_superposition_amplitudes(self) -> None:
        # alpha=pi/4, phi=pi/2, deltas zero: expanded by hand
        state = evolve(ApparatusParams(alpha=math.pi / 4, beta=0.0, phi=math.pi / 2))
        expected = (
            0.5,
            0.5j,
            (1.0 + 1.0j) / (2.0 * math.sqrt(2.0)),
            (1.0 - 1.0j) / (2.0 * math.sqrt(2.0)),
        )
        assert state.v == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("d1,d2", [(0.0, 0.0), (1.0, 2.5), (4.0, 0.3)])
    def test_oracle_equivalence_on_360_grid(self, d1: float, d2: float) -> None:
        # extreme preparations reproduce the printed closed forms up to global phase
        from qmzi.qcore import PathState, project_ancilla

        for k in range(360):
            phi = 2.0 * math.pi * k / 360.0
            wave_side = evolve(ApparatusParams(alpha=0.0, beta=0.0, phi=phi, delta1=d1, delta2=d2))
            got, prob = project_ancilla(wave_side, 0.0, 1.0)
            assert prob == pytest.approx(1.0, abs=1e-12)
            assert path_overlap(got, wave_state(phi, d1, d2)) == pytest.approx(1.0, abs=1e-10)

            particle_side = evolve(
                ApparatusParams(alpha=math.pi / 2, beta=0.0, phi=phi, delta1=d1, delta2=d2)
            )
            got, prob = project_ancilla(particle_side, 1.0, 0.0)
            assert prob == pytest.approx(1.0, abs=1e-12)
            assert path_overlap(got, particle_state(phi)) == pytest.approx(1.0, abs=1e-10)

    def test_norm_is_one_unblocked_and_half_blocked(self) -> None:
        rng = np.random.default_rng(53)
        for _ in range(50):
            alpha, phi, d1, d2 = rng.uniform(0, 2 * math.pi, size=4)
            p = ApparatusParams(alpha=alpha, beta=0.0, phi=phi, delta1=d1, delta2=d2)
            assert evolve(p).norm_sq == pytest.approx(1.0, abs=1e-12)
            for blocking in (Blocking.PATH1, Blocking.PATH2):
                assert evolve(replace(p, blocking=blocking)).norm_sq == pytest.approx(0.5, abs=1e-12)


class TestRun:
    def test_wave_basis_fringe(self) -> None:
        # beta=0 selects the closed interferometer: p2 = sin^2(phi/2)
        for k in range(24):
            phi = 2.0 * math.pi * k / 24.0
            res = run(ApparatusParams(alpha=math.pi / 4, beta=0.0, phi=phi))
            assert res.b.p2 == pytest.approx(math.sin(phi / 2) ** 2, abs=1e-12)

    def test_particle_basis_is_flat(self) -> None:
        for k in range(24):
            phi = 2.0 * math.pi * k / 24.0
            res = run(ApparatusParams(alpha=math.pi / 4, beta=math.pi / 2, phi=phi))
            assert res.b.p2 == pytest.approx(0.5, abs=1e-12)

    def test_blocked_joint_probability(self) -> None:
        rng = np.random.default_rng(59)
        for _ in range(50):
            alpha, beta = rng.uniform(0, math.pi / 2, size=2)
            phi = rng.uniform(0, 2 * math.pi)
            res = run(
                ApparatusParams(alpha=alpha, beta=beta, phi=phi, blocking=Blocking.PATH2)
            )
            expected = math.cos(beta) ** 2 * math.cos(alpha) ** 2 / 4.0
            assert res.b.joint[1] == pytest.approx(expected, abs=1e-12)

    def test_probability_bookkeeping(self) -> None:
        rng = np.random.default_rng(61)
        for _ in range(100):
            alpha, beta, phi, d1, d2 = rng.uniform(0, 2 * math.pi, size=5)
            for blocking, loss in (
                (Blocking.NONE, 0.0),
                (Blocking.PATH1, 0.5),
                (Blocking.PATH2, 0.5),
            ):
                res = run(
                    ApparatusParams(
                        alpha=alpha, beta=beta, phi=phi, delta1=d1, delta2=d2, blocking=blocking
                    )
                )
                total = sum(res.b.joint) + sum(res.b_perp.joint)
                assert total == pytest.approx(1.0 - loss, abs=1e-12)
                assert res.loss == pytest.approx(loss, abs=1e-12)

    def test_outcome_sums_are_basis_independent(self) -> None:
        # combining both outcomes equals tracing out the ancilla, for any beta
        rng = np.random.default_rng(67)
        for _ in range(100):
            alpha, phi, d1, d2 = rng.uniform(0, 2 * math.pi, size=4)
            beta1, beta2 = rng.uniform(0, math.pi, size=2)
            base = ApparatusParams(alpha=alpha, beta=beta1, phi=phi, delta1=d1, delta2=d2)
            res1 = run(base)
            res2 = run(replace(base, beta=beta2))
            ref = detector_probs(partial_trace_ancilla(evolve(base)))
            for j in range(2):
                s1 = res1.b.joint[j] + res1.b_perp.joint[j]
                s2 = res2.b.joint[j] + res2.b_perp.joint[j]
                assert s1 == pytest.approx(s2, abs=1e-12)
                assert s1 == pytest.approx(ref[j], abs=1e-12)

    def test_conditionals_match_independent_closed_form(self) -> None:
        rng = np.random.default_rng(71)
        for _ in range(100):
            alpha, beta = rng.uniform(0, math.pi / 2, size=2)
            phi, d1, d2 = rng.uniform(0, 2 * math.pi, size=3)
            res = run(ApparatusParams(alpha=alpha, beta=beta, phi=phi, delta1=d1, delta2=d2))
            for perp, stats in ((False, res.b), (True, res.b_perp)):
                j1, j2 = oracles.joint_probs(alpha, beta, d1, d2, phi, perp)
                assert stats.joint[0] == pytest.approx(float(j1), abs=1e-12)
                assert stats.joint[1] == pytest.approx(float(j2), abs=1e-12)

    def test_zero_probability_outcome_reports_zero_conditionals(self) -> None:
        # alpha=pi/2 prepares pure |a>; projecting on |p> (beta=0) never occurs
        res = run(ApparatusParams(alpha=math.pi / 2, beta=0.0, phi=0.7))
        assert res.b.success_prob == pytest.approx(0.0, abs=1e-15)
        assert res.b.p1 == 0.0
        assert res.b.p2 == 0.0

    def test_detection_basis_is_orthonormal(self) -> None:
        rng = np.random.default_rng(73)
        for _ in range(20):
            beta = rng.uniform(0, 2 * math.pi)
            (ba, bp), (ca, cp) = ancilla_basis(beta)
            assert ba * ca + bp * cp == pytest.approx(0.0, abs=1e-15)
            assert ba * ba + bp * bp == pytest.approx(1.0, abs=1e-15)

    def test_run_result_outcome_accessor(self) -> None:
        res = run(ApparatusParams(alpha=math.pi / 4, beta=0.3, phi=0.2))
        assert res.outcome(AncillaOutcome.B) is res.b
        assert res.outcome(AncillaOutcome.B_PERP) is res.b_perp
