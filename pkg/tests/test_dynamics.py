import math

import numpy as np
import pytest

from hybrid_qubit_sim.core.errors import ConfigError, ConvergenceError
from hybrid_qubit_sim.core.units import ghz_to_rad_per_ns
from hybrid_qubit_sim.dynamics import (
    ChargeRamp,
    DrivenHamiltonian,
    SweepSchedule,
    evolve,
    evolve_from_ground,
    lz_probability,
    min_sweep_time,
    propagator,
    simulate_lz,
    sweep_hamiltonian,
)
from hybrid_qubit_sim.qmath import SIGMA_X, SIGMA_Z, basis_state, expm_unitary

DELTA = ghz_to_rad_per_ns(1.0)


def test_schedules():
    lin = SweepSchedule(-4.0, 4.0, 2.0)
    assert lin.velocity == pytest.approx(4.0)
    assert lin.crosses_zero()
    assert float(lin.epsilon(1.0)) == pytest.approx(0.0)
    cos = SweepSchedule(-4.0, 0.0, 2.0, "cosine")
    assert not cos.crosses_zero()
    assert np.allclose(cos.epsilon(np.array([0.0, 1.0, 2.0, 5.0])), [-4.0, -2.0, 0.0, 0.0])
    assert lin.reversed().eps_initial == 4.0
    with pytest.raises(ConfigError):
        SweepSchedule(0.0, 1.0, 0.0)
    with pytest.raises(ConfigError):
        SweepSchedule(0.0, 1.0, 1.0, "cubic")


def test_charge_ramp_profile():
    ramp = ChargeRamp(0.5, 0.0, 2.0)
    assert float(ramp.q_ext(0.0)) == pytest.approx(0.5)
    assert float(ramp.q_ext(1.0)) == pytest.approx(0.25)
    assert float(ramp.q_ext(2.0)) == pytest.approx(0.0, abs=1e-15)
    assert ChargeRamp(0.5, 0.0, 0.0).sudden


def test_constant_hamiltonian_matches_exponential():
    h = DrivenHamiltonian((0.3 * SIGMA_X + 1.1 * SIGMA_Z).as_hermitian())
    psi0 = basis_state(2, 0)
    traj = evolve(h, psi0, 3.0, tol=1e-10)
    exact = expm_unitary(h.static, 3.0) @ psi0
    assert np.allclose(traj.final.amplitudes, exact.amplitudes, atol=1e-9)
    assert traj.max_norm_error() < 1e-12


def test_propagator_is_unitary_and_accepts_callables():
    sched = SweepSchedule(-2.0 * DELTA, 2.0 * DELTA, 1.0)
    driven = sweep_hamiltonian(DELTA, sched)
    u = propagator(driven, (2,), 1.0, tol=1e-9)
    u_fn = propagator(lambda t: driven(t), (2,), 1.0, tol=1e-9)
    assert np.allclose(u.matrix.conj().T @ u.matrix, np.eye(2), atol=1e-10)
    assert np.allclose(u.matrix, u_fn.matrix, atol=1e-8)


def test_schemes_agree():
    sched = SweepSchedule(-2.0 * DELTA, 2.0 * DELTA, 1.0)
    psi0 = basis_state(2, 1)
    h = sweep_hamiltonian(DELTA, sched)
    a = evolve(h, psi0, 1.0, tol=1e-8, scheme="magnus4").final.amplitudes
    b = evolve(h, psi0, 1.0, tol=1e-8, scheme="midpoint").final.amplitudes
    assert np.allclose(a, b, atol=1e-6)


def test_non_convergence_raises():
    sched = SweepSchedule(-10.0 * DELTA, 10.0 * DELTA, 20.0)
    h = sweep_hamiltonian(DELTA, sched)
    with pytest.raises(ConvergenceError):
        evolve(h, basis_state(2, 0), 20.0, tol=1e-14, samples=1, max_refinements=1)


@pytest.mark.parametrize("sweep_ns", [0.2, 0.5, 1.0, 2.0, 5.0, 20.0])
def test_lz_matches_analytic_formula(sweep_ns):
    point = simulate_lz(DELTA, 10.0 * DELTA, sweep_ns, tol=1e-7)
    assert point.abs_error < 0.02


def test_lz_probability_decreases_with_sweep_time():
    sweeps = (0.2, 0.4, 0.8, 1.6, 3.2)
    probs = [simulate_lz(DELTA, 10.0 * DELTA, t, tol=1e-7).p_simulated for t in sweeps]
    assert all(a > b for a, b in zip(probs, probs[1:]))


def test_zero_gap_is_fully_diabatic():
    point = simulate_lz(0.0, 10.0 * DELTA, 1.0, tol=1e-9)
    assert point.p_analytic == 1.0
    assert point.p_simulated == pytest.approx(1.0, abs=1e-9)


def test_evolve_from_ground_starts_in_ground_state():
    sched = SweepSchedule(-10.0 * DELTA, 10.0 * DELTA, 5.0)
    traj = evolve_from_ground(DELTA, sched, tol=1e-7)
    assert abs(traj.states[0].amplitudes[1]) ** 2 > 0.99


def test_sweep_time_thresholds():
    assert min_sweep_time(DELTA, 2.0 * DELTA) == pytest.approx(0.405, abs=0.01)
    d1 = ghz_to_rad_per_ns(2.0)
    assert min_sweep_time(d1, 10.0 * d1) == pytest.approx(1.01, abs=0.02)


def test_write_operating_point_error_is_negligible():
    v = 2.0 * (2.0 * DELTA) / 10.0
    exponent = 2.0 * math.pi * DELTA**2 / (4.0 * v)
    assert exponent == pytest.approx(24.67, abs=0.01)
    p = lz_probability(DELTA, v)
    assert 1e-11 < p < 3e-11
    assert p < 1e-9


def test_smooth_schedule_pads_a_linear_window():
    sched = SweepSchedule.with_smooth_edges(-4.0, 4.0, 2.0, 1.0)
    assert sched.shape == "smooth"
    assert sched.duration == pytest.approx(4.0)
    assert (sched.eps_initial, sched.eps_final) == pytest.approx((-6.0, 6.0))
    assert sched.core_velocity == pytest.approx(4.0)
    assert sched.velocity == pytest.approx(3.0)
    window = np.linspace(1.0, 3.0, 9)
    assert np.allclose(sched.epsilon(window), -4.0 + 4.0 * (window - 1.0))
    assert np.allclose(sched.epsilon(np.array([0.0, 4.0])), [-6.0, 6.0])
    # velocity ramps from zero and joins the core without a step
    assert float(sched.epsilon(1e-3)) - (-6.0) < 1e-9
    for t in (1.0, 3.0):
        assert float(sched.epsilon(t + 1e-9) - sched.epsilon(t - 1e-9)) == pytest.approx(
            8e-9, rel=1e-3
        )
    back = sched.reversed()
    assert back.edge_ns == 1.0
    assert float(back.epsilon(0.0)) == pytest.approx(6.0)


def test_smooth_schedule_rejects_bad_edges():
    with pytest.raises(ConfigError) as err:
        SweepSchedule(-1.0, 1.0, 2.0, "smooth")
    assert err.value.key == "edge_ns"
    with pytest.raises(ConfigError):
        SweepSchedule(-1.0, 1.0, 2.0, "smooth", 1.5)
    with pytest.raises(ConfigError):
        SweepSchedule.with_smooth_edges(-1.0, 1.0, 2.0, 0.0)
    with pytest.raises(ConfigError):
        SweepSchedule.with_smooth_edges(-1.0, 1.0, 0.0, 1.0)


def test_padded_write_sweep_reaches_the_analytic_error():
    point = simulate_lz(DELTA, 2.0 * DELTA, 10.0, tol=1e-10, edge_ns=10.0)
    assert point.sweep_ns == 10.0
    assert point.v == pytest.approx(2.0 * (2.0 * DELTA) / 10.0)
    assert point.p_analytic == pytest.approx(1.92e-11, rel=0.02)
    assert point.p_simulated < 1e-9
    assert 0.5 <= point.p_simulated / point.p_analytic <= 2.0


def test_halving_the_step_leaves_probabilities_unchanged():
    coarse = simulate_lz(DELTA, 10.0 * DELTA, 1.0, tol=1e-9).p_simulated
    fine = simulate_lz(DELTA, 10.0 * DELTA, 1.0, tol=1e-11).p_simulated
    assert abs(coarse - fine) < 1e-8
    sched = SweepSchedule(-10.0 * DELTA, 10.0 * DELTA, 1.0)
    traj = evolve_from_ground(DELTA, sched, tol=1e-9)
    assert traj.max_norm_error() < 1e-9
