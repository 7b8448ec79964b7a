from functools import lru_cache

import pytest

from hybrid_qubit_sim.core.errors import ConfigError
from hybrid_qubit_sim.core.units import ghz_to_rad_per_ns
from hybrid_qubit_sim.dynamics import SweepSchedule
from hybrid_qubit_sim.fluxmodel import FluxParams, TopFluxFluxParams
from hybrid_qubit_sim.protocols import (
    MeasurementModel,
    complete_read,
    default_read_schedules,
    read_protocol,
    run_read_dynamics,
)
from hybrid_qubit_sim.protocols import readout

DELTA1 = ghz_to_rad_per_ns(2.0)
EPS_A = -10.0 * DELTA1
A, B = 0.6, 0.8j


def _params() -> TopFluxFluxParams:
    return TopFluxFluxParams(FluxParams(DELTA1), delta2=0.3 * DELTA1, omega_coupler_ghz=0.025)


@lru_cache(maxsize=None)
def _stage():
    sched_in, sched_out = default_read_schedules(EPS_A, 20.0)
    return run_read_dynamics(A, B, _params(), sched_in, sched_out)


def test_post_pulse_state_matches_reference():
    m = _stage().metrics
    assert m["pulse_fidelity"] >= 0.99
    assert m["pulse_fidelity"] >= m["pulse_fidelity_raw"]
    assert m["topological_entropy_after_pulse"] > 0.5


def test_qubit1_factors_out_at_point_b():
    assert _stage().metrics["qubit1_purity_at_b"] > 1.0 - 1e-6


def test_topological_qubit2_concurrence():
    m = _stage().metrics
    assert m["concurrence_expected"] == pytest.approx(0.96)
    assert m["concurrence_topo_qubit2_at_b"] == pytest.approx(0.96, abs=0.01)


def test_entangling_stage_fits_coherence_budget():
    m = _stage().metrics
    assert m["pulse_ns"] == pytest.approx(20.0)
    assert m["entangling_stage_ns"] == pytest.approx(40.0)
    assert m["coherence_fraction"] == pytest.approx(0.02)
    assert m["detuned_rabi_error"] < 2e-3


def test_full_read_delivers_state_to_qubit2():
    rec = complete_read(_stage(), MeasurementModel(mode="both-branches"))
    assert rec.outcomes == [0, 1]
    assert rec.fidelity_phase_corrected >= 0.99
    assert any("phase flip" in flag for flag in rec.flags)
    for branch in rec.branches:
        assert branch.probability == pytest.approx(0.5, abs=0.01)
        assert branch.fidelity_phase_corrected >= 0.99


def test_sampled_read_runs_are_seeded():
    stage = _stage()
    model = MeasurementModel(seed=5)
    first = [complete_read(stage, model.for_run(i)).outcomes for i in range(20)]
    again = [complete_read(stage, model.for_run(i)).outcomes for i in range(20)]
    assert first == again
    assert {o[0] for o in first} == {0, 1}


def test_read_rejects_positive_point_a():
    with pytest.raises(ConfigError):
        default_read_schedules(5.0, 20.0)
    bad_in = SweepSchedule(-EPS_A, 0.0, 20.0, "cosine")
    bad_out = SweepSchedule(0.0, EPS_A, 20.0, "cosine")
    with pytest.raises(ConfigError):
        run_read_dynamics(A, B, _params(), bad_in, bad_out)


def test_read_protocol_composes_dynamics_and_completion(monkeypatch):
    calls = []

    def cached(*args):
        calls.append(args)
        return _stage()

    monkeypatch.setattr(readout, "run_read_dynamics", cached)
    sched_in, sched_out = default_read_schedules(EPS_A, 20.0)
    rec = read_protocol(A, B, _params(), sched_in, sched_out, MeasurementModel(seed=7))
    assert len(calls) == 1
    assert len(rec.outcomes) == 1
    assert rec.fidelity_phase_corrected >= 0.99


@lru_cache(maxsize=None)
def _basis_stage():
    sched_in, sched_out = default_read_schedules(EPS_A, 20.0)
    return run_read_dynamics(1.0, 0.0, _params(), sched_in, sched_out)


def test_read_of_basis_state_leaves_qubit2_in_ground():
    rec = complete_read(_basis_stage(), MeasurementModel(mode="both-branches"))
    assert sum(b.probability for b in rec.branches) == pytest.approx(1.0, abs=1e-9)
    for branch in rec.branches:
        assert branch.fidelity_raw >= 0.99
        assert abs(branch.final_state.amplitudes[0]) ** 2 >= 0.99
