import cmath
import math
from functools import lru_cache

import pytest

from hybrid_qubit_sim.core.errors import ConfigError
from hybrid_qubit_sim.core.units import ghz_to_rad_per_ns
from hybrid_qubit_sim.dynamics import SweepSchedule
from hybrid_qubit_sim.fluxmodel import FluxParams
from hybrid_qubit_sim.protocols import (
    MeasurementModel,
    complete_write,
    run_write_dynamics,
    write_protocol,
)

DELTA = ghz_to_rad_per_ns(1.0)
SCHED = SweepSchedule(-2.0 * DELTA, 2.0 * DELTA, 10.0, "linear")
BOTH = MeasurementModel(mode="both-branches")
S = 1.0 / math.sqrt(2.0)


@lru_cache(maxsize=None)
def _stage(a: complex, b: complex):
    return run_write_dynamics(a, b, FluxParams(DELTA), SCHED)


@pytest.mark.parametrize(
    "a,b",
    [
        (1.0, 0.0),
        (0.0, 1.0),
        (S, S),
        (S, -S),
        (S, 1j * S),
        (0.6, 0.8 * cmath.exp(1j * 2.1)),
        (0.28 * cmath.exp(-0.7j), 0.96),
    ],
)
def test_write_fidelity_at_operating_point(a, b):
    rec = complete_write(_stage(a, b), BOTH)
    assert rec.fidelity_phase_corrected >= 0.999
    assert rec.fidelity_phase_corrected >= rec.fidelity_raw


def test_write_branch_bookkeeping():
    stage = _stage(S, S)
    assert stage.metrics["even_branch_transition"] < 1e-3
    assert stage.metrics["odd_branch_transition"] > 1.0 - 1e-9
    assert stage.metrics["even_branch_lz_analytic"] < 1e-9


def test_write_events_and_outcomes():
    rec = complete_write(_stage(S, S), BOTH)
    kinds = [e.kind for e in rec.events]
    assert kinds[:4] == ["braid", "switch", "sweep", "switch"]
    assert "measure" in kinds
    assert rec.outcomes == [0, 1]
    assert sum(b.probability for b in rec.branches) == pytest.approx(1.0, abs=1e-9)
    assert rec.elapsed_ns == pytest.approx(14.0)


def test_measurement_frequencies_over_seeded_runs():
    stage = _stage(S, S)
    model = MeasurementModel(seed=2024)
    counts = [0, 0]
    n = 10_000
    for i in range(n):
        rec = complete_write(stage, model.for_run(i))
        counts[rec.outcomes[0]] += 1
    assert counts[0] / n == pytest.approx(0.5, abs=0.02)
    assert counts[1] / n == pytest.approx(0.5, abs=0.02)


def test_sampled_runs_are_reproducible():
    first = write_protocol(S, S, FluxParams(DELTA), SCHED, MeasurementModel(seed=99))
    second = write_protocol(S, S, FluxParams(DELTA), SCHED, MeasurementModel(seed=99))
    assert first.outcomes == second.outcomes
    assert first.fidelity_raw == second.fidelity_raw


def test_write_rejects_sweep_inside_the_gap():
    with pytest.raises(ConfigError) as err:
        run_write_dynamics(S, S, FluxParams(DELTA), SweepSchedule(-0.5 * DELTA, 0.5 * DELTA, 10.0))
    assert err.value.key == "epsilon_over_delta"
    with pytest.raises(ConfigError):
        run_write_dynamics(S, S, FluxParams(DELTA), SweepSchedule(2.0 * DELTA, 4.0 * DELTA, 10.0))


GRID = [
    (mag, math.sqrt(1.0 - mag**2) * cmath.exp(1j * phi))
    for mag in (0.0, 0.28, 0.6, S, 0.96)
    for phi in (0.0, 0.5 * math.pi, math.pi, 2.1, -0.7)
]


def test_write_fidelity_over_state_grid():
    assert len(GRID) == 25
    for a, b in GRID:
        rec = complete_write(_stage(a, b), BOTH)
        assert rec.fidelity_phase_corrected >= 0.999, (a, b)
