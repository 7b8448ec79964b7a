"""Ideal projective measurement of one subsystem (Born rule)."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from hybrid_qubit_sim.core.errors import ConfigError, DimensionError
from hybrid_qubit_sim.qmath import Operator, StateVector, eigh
from hybrid_qubit_sim.qmath.operators import NORM_TOL

logger = logging.getLogger(__name__)

# Branches below this probability are reported but never sampled.
MIN_SAMPLED_PROBABILITY = 1e-14

MeasurementMode = Literal["sampled", "both-branches"]


@dataclass(frozen=True)
class MeasurementModel:
    seed: int = 0
    mode: MeasurementMode = "sampled"
    _rng: np.random.Generator = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.mode not in ("sampled", "both-branches"):
            raise ConfigError(f"unknown measurement mode {self.mode!r}", key="measurement_mode")
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError(
                f"seed must be a 64-bit unsigned integer, got {self.seed}", key="seed"
            )
        rng = np.random.default_rng(np.random.SeedSequence(int(self.seed)))
        object.__setattr__(self, "_rng", rng)

    @property
    def both_branches(self) -> bool:
        return self.mode == "both-branches"

    def for_run(self, index: int) -> "MeasurementModel":
        """Independent model for run ``index``, derived from (seed, index)."""
        words = np.random.SeedSequence([int(self.seed), int(index)]).generate_state(2, np.uint32)
        return MeasurementModel(seed=(int(words[0]) << 32) | int(words[1]), mode=self.mode)

    def draw(self) -> float:
        return float(self._rng.random())


@dataclass(frozen=True)
class MeasurementBranch:
    outcome: int
    probability: float
    state: StateVector | None  # post-measurement state, renormalised


def _basis(dim: int, basis: str, hamiltonian: Operator | None) -> np.ndarray:
    if basis == "logical":
        return np.eye(dim, dtype=np.complex128)
    if basis == "energy":
        if hamiltonian is None or hamiltonian.dim != dim:
            raise DimensionError("energy-basis measurement needs the subsystem Hamiltonian")
        return eigh(hamiltonian)[1].matrix
    raise DimensionError(f"unknown measurement basis {basis!r}")


def measure(
    state: StateVector,
    subsystem: int,
    model: MeasurementModel,
    basis: Literal["logical", "energy"] = "logical",
    hamiltonian: Operator | None = None,
) -> list[MeasurementBranch]:
    """Measure one subsystem.

    ``energy`` outcomes are ordered by eigenvalue (0 = ground). Sampled mode returns the
    single drawn branch; both-branches mode returns every outcome with its probability.
    """
    if not state.is_normalized(NORM_TOL):
        raise DimensionError(f"cannot measure an unnormalised state (norm {state.norm():.12f})")
    dims = state.dims
    if not 0 <= subsystem < len(dims):
        raise DimensionError(f"subsystem {subsystem} out of range for dims {dims}")
    d = dims[subsystem]
    vectors = _basis(d, basis, hamiltonian)

    psi = np.moveaxis(state.amplitudes.reshape(dims), subsystem, 0).reshape(d, -1)
    rest_shape = tuple(n for k, n in enumerate(dims) if k != subsystem)
    branches: list[MeasurementBranch] = []
    for k in range(d):
        component = vectors[:, k].conj() @ psi
        prob = float(np.vdot(component, component).real)
        collapsed = None
        if prob > 0.0:
            full = np.outer(vectors[:, k], component / np.sqrt(prob))
            full = np.moveaxis(full.reshape((d,) + rest_shape), 0, subsystem)
            collapsed = StateVector(full.reshape(-1), dims)
        branches.append(MeasurementBranch(k, prob, collapsed))

    if model.both_branches:
        return branches

    eligible = [b for b in branches if b.probability >= MIN_SAMPLED_PROBABILITY]
    weights = np.array([b.probability for b in eligible])
    cumulative = np.cumsum(weights / weights.sum())
    pick = int(np.searchsorted(cumulative, model.draw(), side="right"))
    chosen = eligible[min(pick, len(eligible) - 1)]
    logger.debug(
        "measured subsystem %d in %s basis: outcome %d (p=%.6f)",
        subsystem,
        basis,
        chosen.outcome,
        chosen.probability,
    )
    return [chosen]
