"""Gate-level reference for the write and read circuits (no dynamics)."""

from __future__ import annotations

import logging
from typing import Literal

import numpy as np

from hybrid_qubit_sim.analysis import fidelity, fidelity_up_to_local_z
from hybrid_qubit_sim.core.errors import ConfigError
from hybrid_qubit_sim.majorana import LogicalState
from hybrid_qubit_sim.protocols.measurement import MeasurementModel, measure
from hybrid_qubit_sim.protocols.records import BranchResult, ProtocolRecord
from hybrid_qubit_sim.protocols.stages import apply_local, braid, component
from hybrid_qubit_sim.qmath import SIGMA_X, SIGMA_Z, Operator, StateVector, basis_state

logger = logging.getLogger(__name__)

_BOTH = MeasurementModel(mode="both-branches")

# Control on the first qubit, NOT on the second.
_CNOT = Operator(np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]), (2, 2))
# NOT on the second qubit when the first is |0>.
_ANTI_CNOT = Operator(np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]), (2, 2))


def _score(
    record: ProtocolRecord, branches: list[tuple[int, float, StateVector]], target: StateVector
) -> ProtocolRecord:
    results = []
    for outcome, prob, state in branches:
        f_corr, angles = fidelity_up_to_local_z(state, target, [0])
        results.append(BranchResult(outcome, prob, state, fidelity(state, target), f_corr, angles))
    record.add_branches(results)
    return record.validate()


def _ideal_write(target: LogicalState) -> ProtocolRecord:
    record = ProtocolRecord("write-ideal")
    psi = basis_state(2, 0).tensor(target.vector())
    psi = braid(record, "H", psi)
    record.log("gate", "CNOT topological -> flux")
    psi = _CNOT @ psi
    record.log("measure", "flux qubit")
    branches = []
    for branch in measure(psi, 1, _BOTH, "logical"):
        if branch.state is None:
            continue
        topo = component(branch.state, 1, np.eye(2)[branch.outcome])
        if branch.outcome == 1:
            topo = braid(record, "X", topo)
        branches.append((branch.outcome, branch.probability, topo))
    return _score(record, branches, target.vector())


def _ideal_read(target: LogicalState, correction: str) -> ProtocolRecord:
    record = ProtocolRecord("read-ideal")
    psi = target.vector().tensor(basis_state(2, 1))
    record.log("gate", "exchange on the n_p = 0 branch")
    psi = _ANTI_CNOT @ psi
    psi = braid(record, "H", psi)
    record.log("measure", "topological qubit")
    flip = SIGMA_Z if correction == "phase-flip" else SIGMA_X
    branches = []
    for branch in measure(psi, 0, _BOTH, "logical"):
        if branch.state is None:
            continue
        q2 = component(branch.state, 0, np.eye(2)[branch.outcome])
        if branch.outcome == 1:
            q2 = apply_local(record, "correct", f"{correction} on qubit 2", flip, q2, 0)
        branches.append((branch.outcome, branch.probability, q2))
    if correction != "phase-flip":
        record.flags.append(f"{correction} correction does not recover the state on outcome 1")
    return _score(record, branches, target.vector())


def ideal_circuit_backend(
    circuit: Literal["write", "read"],
    a: complex,
    b: complex,
    correction: Literal["phase-flip", "bit-flip"] = "phase-flip",
) -> ProtocolRecord:
    target = LogicalState(complex(a), complex(b))
    if correction not in ("phase-flip", "bit-flip"):
        raise ConfigError(f"unknown correction {correction!r}", key="correction")
    if circuit == "write":
        return _ideal_write(target)
    if circuit == "read":
        return _ideal_read(target, correction)
    raise ConfigError(f"unknown circuit {circuit!r}", key="circuit")
