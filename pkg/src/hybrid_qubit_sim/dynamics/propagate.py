"""Piecewise-constant unitary propagation with step-doubling control.

The interval is cut into ``samples`` equal segments (the trajectory sample points);
each segment is integrated with m = 1, 2, 4, ... steps until the final state moves by
less than ``tol`` between consecutive refinements. Every step is the exact exponential
of a hermitian effective Hamiltonian, so the propagation is unitary at any step size.

Schemes:
  midpoint  H_eff = H(t + dt/2)
  magnus4   H_eff = (H1 + H2)/2 - i (sqrt(3)/12) dt [H2, H1], H1,2 at the Gauss points
"""

from __future__ import annotations

import logging
import math
from collections.abc import Callable, Sequence
from dataclasses import dataclass

import numpy as np

from hybrid_qubit_sim.core.config import settings
from hybrid_qubit_sim.core.errors import (
    ConvergenceError,
    DimensionError,
    NotHermitianError,
)
from hybrid_qubit_sim.qmath import Operator, StateVector
from hybrid_qubit_sim.qmath.operators import HERMITIAN_TOL, NORM_TOL

logger = logging.getLogger(__name__)

SCHEMES = ("magnus4", "midpoint")

# Upper bound on step unitaries held in memory at once.
_CHUNK_STEPS = 1 << 15

_GAUSS_OFFSET = math.sqrt(3.0) / 6.0
_MAGNUS_COEFF = math.sqrt(3.0) / 12.0

Coefficient = Callable[[np.ndarray], np.ndarray]
HamiltonianFn = Callable[[float], Operator]


@dataclass(frozen=True)
class DrivenHamiltonian:
    """H(t) = static + sum_k f_k(t) op_k with real, vectorised coefficient functions."""

    static: Operator
    drives: tuple[tuple[Operator, Coefficient], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "drives", tuple(self.drives))
        for op in (self.static, *(op for op, _ in self.drives)):
            if op.dim != self.static.dim:
                raise DimensionError(
                    f"drive dim {op.dim} does not match static dim {self.static.dim}"
                )
            if not op.hermitian:
                raise NotHermitianError("driven Hamiltonian terms must be flagged hermitian")

    @property
    def dims(self) -> tuple[int, ...]:
        return self.static.dims

    @property
    def dim(self) -> int:
        return self.static.dim

    def stack(self, times: np.ndarray) -> np.ndarray:
        times = np.asarray(times, dtype=float).reshape(-1)
        h = np.broadcast_to(self.static.matrix, (times.size, self.dim, self.dim)).copy()
        for op, f in self.drives:
            coeff = np.broadcast_to(np.asarray(f(times), dtype=float), times.shape)
            h += coeff[:, None, None] * op.matrix
        return h

    def __call__(self, t: float) -> Operator:
        return Operator(self.stack(np.array([t]))[0], self.dims, hermitian=True)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: tuple[StateVector, ...]
    steps: int = 0

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=float)
        if times.size != len(self.states):
            raise DimensionError("trajectory times and states are not aligned")
        if times.size > 1 and not np.all(np.diff(times) > 0):
            raise DimensionError("trajectory times must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", tuple(self.states))

    @property
    def final(self) -> StateVector:
        return self.states[-1]

    def max_norm_error(self) -> float:
        return max(abs(s.norm() - 1.0) for s in self.states)


def _hamiltonian_stack(h_of_t: DrivenHamiltonian | HamiltonianFn, times: np.ndarray) -> np.ndarray:
    if isinstance(h_of_t, DrivenHamiltonian):
        return h_of_t.stack(times)
    return np.stack([np.asarray(h_of_t(float(t)).matrix) for t in times])


def _check_hermitian(stack: np.ndarray) -> None:
    err = float(np.max(np.abs(stack - np.conj(np.swapaxes(stack, -1, -2))), initial=0.0))
    scale = max(1.0, float(np.max(np.abs(stack), initial=0.0)))
    if err >= HERMITIAN_TOL * scale:
        raise NotHermitianError(
            f"time-dependent Hamiltonian is not hermitian (deviation {err:.3e})"
        )


def _effective_hamiltonians(
    h_of_t: DrivenHamiltonian | HamiltonianFn, starts: np.ndarray, dt: float, scheme: str
) -> np.ndarray:
    if scheme == "midpoint":
        h = _hamiltonian_stack(h_of_t, starts + 0.5 * dt)
        _check_hermitian(h)
        return h
    h1 = _hamiltonian_stack(h_of_t, starts + (0.5 - _GAUSS_OFFSET) * dt)
    h2 = _hamiltonian_stack(h_of_t, starts + (0.5 + _GAUSS_OFFSET) * dt)
    _check_hermitian(h1)
    _check_hermitian(h2)
    comm = h2 @ h1 - h1 @ h2
    h = 0.5 * (h1 + h2) - 1j * _MAGNUS_COEFF * dt * comm
    return 0.5 * (h + np.conj(np.swapaxes(h, -1, -2)))


def _step_unitaries(h_eff: np.ndarray, dt: float) -> np.ndarray:
    values, vectors = np.linalg.eigh(h_eff)
    phases = np.exp(-1j * values * dt)
    return (vectors * phases[:, None, :]) @ np.conj(np.swapaxes(vectors, -1, -2))


def _segment_unitaries(
    h_of_t: DrivenHamiltonian | HamiltonianFn,
    seg_starts: np.ndarray,
    seg_len: float,
    m: int,
    scheme: str,
    dim: int,
) -> np.ndarray:
    dt = seg_len / m
    out = np.empty((seg_starts.size, dim, dim), dtype=np.complex128)
    per_chunk = max(1, _CHUNK_STEPS // m)
    offsets = np.arange(m) * dt
    for lo in range(0, seg_starts.size, per_chunk):
        block = seg_starts[lo : lo + per_chunk]
        starts = (block[:, None] + offsets[None, :]).reshape(-1)
        u = _step_unitaries(_effective_hamiltonians(h_of_t, starts, dt, scheme), dt)
        u = u.reshape(block.size, m, dim, dim)
        while u.shape[1] > 1:
            u = u[:, 1::2] @ u[:, 0::2]
        out[lo : lo + block.size] = u[:, 0]
    return out


def _propagate(
    h_of_t: DrivenHamiltonian | HamiltonianFn,
    psi0: np.ndarray,
    duration: float,
    tol: float,
    scheme: str,
    samples: int,
    max_refinements: int,
) -> tuple[np.ndarray, np.ndarray, int]:
    if not duration > 0 or not math.isfinite(duration):
        raise DimensionError(f"evolution time must be positive and finite, got {duration}")
    if scheme not in SCHEMES:
        raise DimensionError(f"unknown integration scheme {scheme!r}")
    if samples < 1:
        raise DimensionError(f"need at least one sample segment, got {samples}")
    if max_refinements < 1:
        raise DimensionError(f"need at least one refinement, got {max_refinements}")

    times = np.linspace(0.0, duration, samples + 1)
    seg_len = duration / samples
    dim = psi0.shape[0]

    def run(m: int) -> np.ndarray:
        seg = _segment_unitaries(h_of_t, times[:-1], seg_len, m, scheme, dim)
        states = np.empty((samples + 1,) + psi0.shape, dtype=np.complex128)
        states[0] = psi0
        for k in range(samples):
            states[k + 1] = seg[k] @ states[k]
        return states

    m = 1
    previous = run(m)
    for level in range(1, max_refinements + 1):
        m *= 2
        current = run(m)
        change = float(np.linalg.norm(current[-1] - previous[-1]))
        logger.debug("refinement %d: %d steps, final-state change %.3e", level, m * samples, change)
        if change < tol:
            return times, current, m * samples
        previous = current
    logger.error(
        "propagation did not converge to tol=%.1e after %d refinements (last change %.3e)",
        tol,
        max_refinements,
        change,
    )
    raise ConvergenceError(
        f"no convergence to tol={tol:.1e} within {max_refinements} step doublings "
        f"({m * samples} steps, last change {change:.3e})"
    )


def _solver_options(
    tol: float | None, scheme: str | None, samples: int | None, max_refinements: int | None
) -> tuple[float, str, int, int]:
    return (
        settings.solver_tol if tol is None else tol,
        settings.solver_scheme if scheme is None else scheme,
        settings.solver_samples if samples is None else samples,
        settings.solver_max_refinements if max_refinements is None else max_refinements,
    )


def evolve(
    h_of_t: DrivenHamiltonian | HamiltonianFn,
    psi0: StateVector,
    duration: float,
    tol: float | None = None,
    *,
    scheme: str | None = None,
    samples: int | None = None,
    max_refinements: int | None = None,
) -> Trajectory:
    if not psi0.is_normalized():
        raise DimensionError(f"initial state must be normalised (norm {psi0.norm():.12f})")
    tol, scheme, samples, max_refinements = _solver_options(tol, scheme, samples, max_refinements)
    times, states, steps = _propagate(
        h_of_t, psi0.amplitudes.copy(), duration, tol, scheme, samples, max_refinements
    )
    traj = Trajectory(times, tuple(StateVector(s, psi0.dims) for s in states), steps)
    err = traj.max_norm_error()
    if err >= NORM_TOL:
        raise ConvergenceError(f"norm drifted by {err:.3e} during propagation")
    return traj


def propagator(
    h_of_t: DrivenHamiltonian | HamiltonianFn,
    dims: Sequence[int],
    duration: float,
    tol: float | None = None,
    *,
    scheme: str | None = None,
    samples: int | None = None,
    max_refinements: int | None = None,
) -> Operator:
    dims = tuple(dims)
    dim = math.prod(dims)
    tol, scheme, samples, max_refinements = _solver_options(tol, scheme, samples, max_refinements)
    _, states, _ = _propagate(
        h_of_t, np.eye(dim, dtype=np.complex128), duration, tol, scheme, samples, max_refinements
    )
    return Operator(states[-1], dims, unitary=True)
