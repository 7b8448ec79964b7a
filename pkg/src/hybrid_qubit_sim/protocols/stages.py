"""Building blocks shared by the protocols: stage Hamiltonians, braids, stage runner.

The topological qubit is carried as its 2-dim logical space (subsystem 0); braids act
through their even-sector restriction.
"""

from __future__ import annotations

import logging
import math

import numpy as np

from hybrid_qubit_sim.core.errors import DimensionError
from hybrid_qubit_sim.dynamics import ChargeRamp, DrivenHamiltonian, SweepSchedule, evolve
from hybrid_qubit_sim.majorana import compiled_gate
from hybrid_qubit_sim.protocols.records import ProtocolRecord
from hybrid_qubit_sim.qmath import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Z,
    Operator,
    StateVector,
    embed,
    kron,
)

logger = logging.getLogger(__name__)


def parity_projector(n_p: int) -> Operator:
    m = np.zeros((2, 2))
    m[n_p, n_p] = 1.0
    return Operator(m, (2,), hermitian=True)


def _tunnelling_terms(delta_max: float) -> tuple[Operator, Operator]:
    """P_{n_p} (x) (-Delta_max sigma_x / 2) for n_p = 0, 1."""
    tunnel = (-0.5 * delta_max * SIGMA_X).as_hermitian()
    return kron(parity_projector(0), tunnel), kron(parity_projector(1), tunnel)


def _bias_term() -> Operator:
    return kron(IDENTITY_2, (-0.5 * SIGMA_Z).as_hermitian())


def _splitting_factor(n_p: int, ramp: ChargeRamp):
    def factor(t: np.ndarray) -> np.ndarray:
        return np.abs(np.cos(0.5 * np.pi * (n_p + ramp.q_ext(t))))

    return factor


def conditional_sweep_hamiltonian(
    delta_max: float, q_ext: float, schedule: SweepSchedule
) -> DrivenHamiltonian:
    """Topological (x) flux Hamiltonian at fixed q_ext while eps follows the schedule."""
    t0, t1 = _tunnelling_terms(delta_max)
    f0 = abs(math.cos(0.5 * math.pi * q_ext))
    f1 = abs(math.cos(0.5 * math.pi * (1.0 + q_ext)))
    static = (f0 * t0 + f1 * t1).as_hermitian()
    return DrivenHamiltonian(static, ((_bias_term(), schedule.epsilon),))


def conditional_ramp_hamiltonian(
    delta_max: float, eps: float, ramp: ChargeRamp
) -> DrivenHamiltonian:
    """Topological (x) flux Hamiltonian at fixed eps while q_ext follows the ramp."""
    t0, t1 = _tunnelling_terms(delta_max)
    static = (eps * _bias_term()).as_hermitian()
    return DrivenHamiltonian(
        static, ((t0, _splitting_factor(0, ramp)), (t1, _splitting_factor(1, ramp)))
    )


def with_spectator(h: DrivenHamiltonian, spectator: Operator) -> DrivenHamiltonian:
    """Append an uncoupled subsystem with its own static Hamiltonian."""
    eye_s = Operator.identity(spectator.dims)
    eye_h = Operator.identity(h.dims)
    static = (kron(h.static, eye_s) + kron(eye_h, spectator)).as_hermitian()
    drives = tuple((kron(op, eye_s), f) for op, f in h.drives)
    return DrivenHamiltonian(static, drives)


def qubit_energy_hamiltonian(splitting: float) -> Operator:
    """diag(-s/2, s/2): a qubit written in its own energy basis."""
    return Operator(np.diag([-0.5 * splitting, 0.5 * splitting]), (2,), hermitian=True)


def braid(
    record: ProtocolRecord, name: str, psi: StateVector, subsystem: int = 0
) -> StateVector:
    """Apply a braid-compiled Clifford to the topological qubit (instantaneous)."""
    word, logical = compiled_gate(name)
    record.log("braid", f"{name} = {word}")
    return embed(logical, subsystem, psi.dims) @ psi


def apply_local(
    record: ProtocolRecord, kind: str, detail: str, op: Operator, psi: StateVector, subsystem: int
) -> StateVector:
    record.log(kind, detail)
    return embed(op, subsystem, psi.dims) @ psi


def run_stage(
    record: ProtocolRecord,
    kind: str,
    detail: str,
    h: DrivenHamiltonian,
    psi: StateVector,
    duration: float,
    tol: float | None = None,
) -> StateVector:
    """Evolve through one timed stage; a zero-duration stage is sudden (state unchanged)."""
    if duration < 0:
        raise DimensionError(f"stage duration must be >= 0, got {duration}")
    if duration == 0.0:
        record.log(kind, f"{detail} (sudden)")
        return psi
    traj = evolve(h, psi, duration, tol)
    record.log(kind, f"{detail} [{traj.steps} steps]", duration)
    record.metrics["max_norm_error"] = max(
        record.metrics.get("max_norm_error", 0.0), traj.max_norm_error()
    )
    logger.debug("%s stage '%s' done in %d steps", kind, detail, traj.steps)
    return traj.final


def component(psi: StateVector, subsystem: int, vector: np.ndarray) -> StateVector:
    """Contract one subsystem with ``vector`` (its dual) and renormalise the rest."""
    dims = psi.dims
    moved = np.moveaxis(psi.amplitudes.reshape(dims), subsystem, 0).reshape(dims[subsystem], -1)
    rest = np.conj(vector) @ moved
    rest_dims = tuple(n for k, n in enumerate(dims) if k != subsystem)
    return StateVector(rest, rest_dims).normalized()
