import numpy as np
import pytest

from hybrid_qubit_sim.core.errors import ConfigError, DimensionError, SimulationError
from hybrid_qubit_sim.fluxmodel import flux_hamiltonian
from hybrid_qubit_sim.protocols import MeasurementModel, ProtocolRecord, measure
from hybrid_qubit_sim.qmath import StateVector, basis_state

BELL = StateVector(np.array([1, 0, 0, 1]) / np.sqrt(2.0), (2, 2))


def test_both_branches_collapse_partner():
    branches = measure(BELL, 0, MeasurementModel(mode="both-branches"))
    assert [b.outcome for b in branches] == [0, 1]
    assert sum(b.probability for b in branches) == pytest.approx(1.0)
    assert abs(branches[1].state.amplitudes[3]) == pytest.approx(1.0)


def test_sampled_measurement_returns_one_branch():
    branches = measure(BELL, 1, MeasurementModel(seed=3))
    assert len(branches) == 1
    assert branches[0].probability == pytest.approx(0.5)


def test_zero_probability_outcome_is_never_sampled():
    psi = basis_state((2, 2), 0)
    model = MeasurementModel(seed=0)
    for i in range(50):
        assert measure(psi, 0, model.for_run(i))[0].outcome == 0


def test_energy_basis_orders_ground_first():
    h = flux_hamiltonian(5.0, 1.0)
    ground = np.linalg.eigh(h.matrix)[1][:, 0]
    psi = StateVector(ground, (2,))
    branches = measure(psi, 0, MeasurementModel(mode="both-branches"), "energy", h)
    assert branches[0].probability == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DimensionError):
        measure(psi, 0, MeasurementModel(), "energy")


def test_for_run_is_deterministic_and_distinct():
    model = MeasurementModel(seed=42)
    assert model.for_run(3).seed == model.for_run(3).seed
    assert model.for_run(3).seed != model.for_run(4).seed
    assert 0 <= model.for_run(7).seed < 2**64


def test_model_validation():
    with pytest.raises(ConfigError):
        MeasurementModel(mode="weak")
    with pytest.raises(ConfigError):
        MeasurementModel(seed=-1)


def test_unnormalised_state_cannot_be_measured():
    with pytest.raises(DimensionError):
        measure(StateVector(np.array([1.0, 1.0]), (2,)), 0, MeasurementModel())


def test_record_rejects_out_of_range_fidelity():
    rec = ProtocolRecord("write", fidelity_raw=1.5)
    with pytest.raises(SimulationError):
        rec.validate()
    rec = ProtocolRecord("write", fidelity_raw=0.9, fidelity_phase_corrected=0.8)
    with pytest.raises(SimulationError):
        rec.validate()


def test_record_clock_and_summary():
    rec = ProtocolRecord("idle")
    rec.log("hold", "a", 2.5)
    rec.log("check")
    assert [e.t_ns for e in rec.events] == [0.0, 2.5]
    summary = rec.to_summary()
    assert summary["protocol"] == "idle"
    assert summary["events"][1]["kind"] == "check"
