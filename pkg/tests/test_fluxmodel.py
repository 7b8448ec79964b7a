import math

import numpy as np
import pytest

from hybrid_qubit_sim.core.errors import ConfigError, DegeneracyError
from hybrid_qubit_sim.core.units import ghz_to_rad_per_ns
from hybrid_qubit_sim.fluxmodel import (
    FluxParams,
    TopFluxFluxParams,
    ac_splitting,
    conditional_hamiltonian,
    coupler_hamiltonian,
    detuned_exchange_probability,
    epsilon_of_bias,
    find_decoupling_charge,
    flux_eigenstates,
    flux_hamiltonian,
    ground_energy,
    parity_contrast,
    phase_rate,
    phase_rate_first_order,
    swap_duration,
)
from hybrid_qubit_sim.qmath import basis_state, expm_unitary

DELTA = ghz_to_rad_per_ns(1.0)


def test_splitting_depends_on_parity_only_away_from_half_charge():
    assert ac_splitting(DELTA, 0, 0.0) == pytest.approx(DELTA)
    assert ac_splitting(DELTA, 1, 0.0) == pytest.approx(0.0, abs=1e-15)
    assert abs(ac_splitting(DELTA, 0, 0.5) - ac_splitting(DELTA, 1, 0.5)) < 1e-12
    assert parity_contrast(DELTA, 0.0) == pytest.approx(DELTA)


def test_parity_blocks_equal_at_half_charge():
    p = FluxParams.at_epsilon(10.0 * DELTA, DELTA, q_ext=0.5)
    h = conditional_hamiltonian(p).matrix
    assert np.max(np.abs(h[:2, :2] - h[2:, 2:])) < 1e-12
    assert np.max(np.abs(h[:2, 2:])) == 0.0


def test_at_epsilon_recovers_bias():
    p = FluxParams.at_epsilon(-3.0, DELTA)
    assert epsilon_of_bias(p) == pytest.approx(-3.0, rel=1e-9)


def test_ground_state_is_left_well_for_positive_bias():
    ground, excited = flux_eigenstates(100.0, 1.0)
    assert abs(ground.amplitudes[0]) ** 2 > 0.999
    assert abs(excited.amplitudes[1]) ** 2 > 0.999


def test_phase_rate_closed_form_and_first_order():
    eps = 10.0 * DELTA
    exact = 0.5 * (math.hypot(eps, DELTA) - eps)
    assert abs(phase_rate(eps, DELTA) - exact) < 1e-12
    assert phase_rate(eps, DELTA) == pytest.approx(0.1567, abs=1e-4)
    assert phase_rate_first_order(eps, DELTA) == pytest.approx(DELTA / 40.0)
    assert phase_rate(eps, DELTA) < phase_rate_first_order(eps, DELTA)
    assert phase_rate(eps, DELTA) == pytest.approx(
        ground_energy(eps, 0.0) - ground_energy(eps, DELTA), abs=1e-12
    )
    lowest = np.linalg.eigvalsh(flux_hamiltonian(eps, DELTA).matrix)[0]
    assert lowest == pytest.approx(ground_energy(eps, DELTA), abs=1e-12)


def test_find_decoupling_charge():
    assert find_decoupling_charge(DELTA) == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(DegeneracyError):
        find_decoupling_charge(0.0)


def test_coupler_swaps_in_half_period():
    omega = 0.025
    t = swap_duration(omega)
    assert t == pytest.approx(20.0)
    u = expm_unitary(coupler_hamiltonian(omega), t)
    ge = basis_state((2, 2), 1)
    eg = basis_state((2, 2), 2)
    assert abs(eg.inner(u @ ge)) ** 2 == pytest.approx(1.0, abs=1e-12)
    assert detuned_exchange_probability(omega, 0.0, t) == pytest.approx(1.0, abs=1e-12)
    assert detuned_exchange_probability(omega, 5.0, t) < 2e-3


def test_top_flux_flux_params_defaults():
    d1 = ghz_to_rad_per_ns(2.0)
    p = TopFluxFluxParams(FluxParams(d1), delta2=0.3 * d1, omega_coupler_ghz=0.025)
    assert p.drive_frequency == pytest.approx(0.7 * d1)
    assert p.odd_branch_detuning == pytest.approx(0.4 * d1)
    with pytest.raises(ConfigError) as err:
        TopFluxFluxParams(FluxParams(d1), delta2=d1, omega_coupler_ghz=0.025)
    assert err.value.key == "delta2_over_delta1"


def test_flux_params_reject_negative_splitting():
    with pytest.raises(ConfigError):
        FluxParams(-1.0)
