import cmath
import math

import pytest

from hybrid_qubit_sim.core.errors import ConfigError
from hybrid_qubit_sim.protocols import ideal_circuit_backend

S = 1.0 / math.sqrt(2.0)
STATES = [
    (1.0, 0.0),
    (0.0, 1.0),
    (S, S),
    (S, -1j * S),
    (0.6, 0.8 * cmath.exp(0.4j)),
    (0.8 * cmath.exp(-1.3j), 0.6),
]


@pytest.mark.parametrize("a,b", STATES)
@pytest.mark.parametrize("circuit", ["write", "read"])
def test_ideal_circuits_are_exact(circuit, a, b):
    rec = ideal_circuit_backend(circuit, a, b)
    assert rec.protocol == f"{circuit}-ideal"
    assert rec.fidelity_raw == pytest.approx(1.0, abs=1e-12)
    for branch in rec.branches:
        assert branch.fidelity_raw == pytest.approx(1.0, abs=1e-12)


def test_bit_flip_correction_fails_on_outcome_one():
    rec = ideal_circuit_backend("read", S, S, correction="bit-flip")
    outcome_one = next(b for b in rec.branches if b.outcome == 1)
    assert outcome_one.fidelity_raw == pytest.approx(0.0, abs=1e-12)
    assert rec.flags

    skewed = ideal_circuit_backend("read", 0.6, 0.8, correction="bit-flip")
    outcome_one = next(b for b in skewed.branches if b.outcome == 1)
    assert outcome_one.fidelity_phase_corrected == pytest.approx(0.9216, abs=1e-12)


def test_unknown_circuit_is_a_config_error():
    with pytest.raises(ConfigError):
        ideal_circuit_backend("teleport", 1.0, 0.0)


@pytest.mark.parametrize("circuit", ["write", "read"])
def test_ideal_circuits_over_state_grid(circuit):
    mags = [k / 9.0 for k in range(10)]
    phases = [2.0 * math.pi * k / 10.0 for k in range(10)]
    grid = [(m, math.sqrt(1.0 - m * m) * cmath.exp(1j * p)) for m in mags for p in phases]
    assert len(grid) == 100
    for a, b in grid:
        rec = ideal_circuit_backend(circuit, a, b)
        assert rec.fidelity_raw == pytest.approx(1.0, abs=1e-12), (a, b)
