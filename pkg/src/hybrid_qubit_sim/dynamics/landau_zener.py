from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from hybrid_qubit_sim.core.errors import DegeneracyError, DimensionError
from hybrid_qubit_sim.dynamics.propagate import DrivenHamiltonian, Trajectory, evolve
from hybrid_qubit_sim.dynamics.schedule import SweepSchedule
from hybrid_qubit_sim.fluxmodel import flux_eigenstates, flux_hamiltonian
from hybrid_qubit_sim.qmath import SIGMA_Z, Operator, eigh

logger = logging.getLogger(__name__)

GAP_TOL = 1e-12


def lz_probability(delta: float, v: float) -> float:
    """Diabatic passage probability exp(-2 pi delta^2 / 4v)."""
    if not v > 0:
        raise DimensionError(f"sweep velocity must be positive, got {v}")
    if delta == 0.0:
        return 1.0
    return math.exp(-2.0 * math.pi * delta**2 / (4.0 * v))


def min_sweep_time(delta: float, eps_span_endpoint: float, exponent_target: float = 1.0) -> float:
    """Sweep time whose LZ exponent (with v = 2 eps / dt) equals ``exponent_target``."""
    if delta <= 0 or eps_span_endpoint <= 0 or exponent_target <= 0:
        raise DimensionError("min_sweep_time needs positive delta, eps and exponent target")
    return 8.0 * eps_span_endpoint * exponent_target / (2.0 * math.pi * delta**2)


def sweep_hamiltonian(delta: float, schedule: SweepSchedule) -> DrivenHamiltonian:
    static = flux_hamiltonian(0.0, delta)
    return DrivenHamiltonian(static, (((-0.5 * SIGMA_Z).as_hermitian(), schedule.epsilon),))


def diabatic_transition_probability(
    traj: Trajectory, h_initial: Operator, h_final: Operator
) -> float:
    """Population of the final excited eigenstate after a ground-state start."""
    if h_initial.dim != 2 or h_final.dim != 2:
        raise DimensionError("diabatic transition probability is defined for 2x2 Hamiltonians")
    values, vectors = eigh(h_final)
    gap = float(values[1] - values[0])
    if gap < GAP_TOL:
        raise DegeneracyError(
            f"final Hamiltonian is degenerate (gap {gap:.3e}); adiabatic labels undefined"
        )
    _, initial_vectors = eigh(h_initial)
    start = abs(np.vdot(initial_vectors.matrix[:, 0], traj.states[0].amplitudes)) ** 2
    if start < 1.0 - 1e-9:
        logger.warning(
            "trajectory does not start in the initial ground state (overlap %.3e)", start
        )
    excited = vectors.matrix[:, 1]
    return float(min(1.0, abs(np.vdot(excited, traj.final.amplitudes)) ** 2))


@dataclass(frozen=True)
class LZPoint:
    sweep_ns: float
    v: float
    p_analytic: float
    p_simulated: float

    @property
    def abs_error(self) -> float:
        return abs(self.p_simulated - self.p_analytic)


def simulate_lz(
    delta: float,
    eps_span: float,
    duration: float,
    tol: float | None = None,
    edge_ns: float = 0.0,
) -> LZPoint:
    """Linear sweep -eps_span -> +eps_span from the ground state.

    With ``edge_ns`` > 0 the linear window is padded by smooth velocity ramps, which
    removes the switch-on and switch-off transitions of a hard-edged finite sweep.
    """
    if edge_ns > 0:
        sched = SweepSchedule.with_smooth_edges(-eps_span, eps_span, duration, edge_ns)
    else:
        sched = SweepSchedule(-eps_span, eps_span, duration, "linear")
    traj = evolve_from_ground(delta, sched, tol)
    p_sim = diabatic_transition_probability(
        traj,
        flux_hamiltonian(sched.eps_initial, delta),
        flux_hamiltonian(sched.eps_final, delta),
    )
    v = sched.core_velocity
    point = LZPoint(duration, v, lz_probability(delta, v), p_sim)
    logger.debug(
        "LZ point dt=%.4g ns v=%.4g: analytic %.6g simulated %.6g (%d steps)",
        duration,
        point.v,
        point.p_analytic,
        p_sim,
        traj.steps,
    )
    return point


def evolve_from_ground(
    delta: float, schedule: SweepSchedule, tol: float | None = None
) -> Trajectory:
    ground, _ = flux_eigenstates(schedule.eps_initial, delta)
    return evolve(sweep_hamiltonian(delta, schedule), ground, schedule.duration, tol)
