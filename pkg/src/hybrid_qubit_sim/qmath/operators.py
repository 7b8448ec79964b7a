"""Dense state vectors and operators over small tensor-product Hilbert spaces.

Basis-ordering convention (used by every protocol):

- flux diabatic basis: index 0 = |L>, index 1 = |R>, with sigma_z |L> = +|L>
- flux energy basis: columns of ``eigh`` of the flux Hamiltonian, ground first
- topological logical basis: index 0 = |0> = |00>, index 1 = |1> = |11>
- tensor order: topological (x) flux1 (x) flux2
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import reduce

import numpy as np

from hybrid_qubit_sim.core.errors import DimensionError, NotHermitianError, NotUnitaryError

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
NORM_TOL = 1e-9


def _frozen(values: np.ndarray) -> np.ndarray:
    arr = np.array(values, dtype=np.complex128, copy=True)
    arr.flags.writeable = False
    return arr


def _check_dims(dims: Sequence[int], size: int) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims) or (size,)
    if any(d <= 0 for d in dims) or math.prod(dims) != size:
        raise DimensionError(f"subsystem dims {dims} do not factor dimension {size}")
    return dims


def hermiticity_error(matrix: np.ndarray) -> float:
    return float(np.max(np.abs(matrix - matrix.conj().T), initial=0.0))


def unitarity_error(matrix: np.ndarray) -> float:
    eye = np.eye(matrix.shape[0])
    return float(np.max(np.abs(matrix.conj().T @ matrix - eye), initial=0.0))


@dataclass(frozen=True, eq=False)
class StateVector:
    amplitudes: np.ndarray
    dims: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        amps = _frozen(self.amplitudes).reshape(-1)
        if amps.size == 0:
            raise DimensionError("empty state vector")
        if not np.all(np.isfinite(amps)):
            raise DimensionError("state vector has non-finite amplitudes")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", _check_dims(self.dims, amps.size))

    @property
    def dim(self) -> int:
        return int(self.amplitudes.size)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm() - 1.0) < tol

    def normalized(self) -> "StateVector":
        n = self.norm()
        if n == 0.0:
            raise DimensionError("cannot normalise the zero vector")
        return StateVector(self.amplitudes / n, self.dims)

    def tensor(self, *others: "StateVector") -> "StateVector":
        amps = self.amplitudes
        dims = list(self.dims)
        for other in others:
            amps = np.kron(amps, other.amplitudes)
            dims.extend(other.dims)
        return StateVector(amps, tuple(dims))

    def inner(self, other: "StateVector") -> complex:
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch {self.dim} vs {other.dim}")
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def density(self) -> "Operator":
        rho = np.outer(self.amplitudes, self.amplitudes.conj())
        return Operator(rho, self.dims, hermitian=True)

    def __repr__(self) -> str:
        return f"StateVector(dims={self.dims}, amplitudes={np.round(self.amplitudes, 6)!r})"


@dataclass(frozen=True, eq=False)
class Operator:
    """Square complex matrix with optional, verified hermitian/unitary flags."""

    matrix: np.ndarray
    dims: tuple[int, ...] = ()
    hermitian: bool = False
    unitary: bool = False

    def __post_init__(self) -> None:
        m = _frozen(self.matrix)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"operator must be square, got shape {m.shape}")
        if not np.all(np.isfinite(m)):
            raise DimensionError("operator has non-finite entries")
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "dims", _check_dims(self.dims, m.shape[0]))
        err = hermiticity_error(m) if self.hermitian else 0.0
        if self.hermitian and err >= HERMITIAN_TOL * max(1.0, float(np.abs(m).max(initial=0.0))):
            raise NotHermitianError(f"operator flagged hermitian deviates by {err:.3e}")
        if self.unitary and unitarity_error(m) >= UNITARY_TOL:
            raise NotUnitaryError(f"operator flagged unitary deviates by {unitarity_error(m):.3e}")

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    @classmethod
    def identity(cls, dims: Sequence[int] | int) -> "Operator":
        dims = (dims,) if isinstance(dims, int) else tuple(dims)
        return cls(np.eye(math.prod(dims)), dims, hermitian=True, unitary=True)

    def dag(self) -> "Operator":
        return Operator(
            self.matrix.conj().T, self.dims, hermitian=self.hermitian, unitary=self.unitary
        )

    def as_hermitian(self) -> "Operator":
        return Operator(self.matrix, self.dims, hermitian=True)

    def restrict(self, indices: Sequence[int]) -> np.ndarray:
        idx = np.asarray(indices, dtype=int)
        return np.array(self.matrix[np.ix_(idx, idx)])

    def apply(self, state: StateVector) -> StateVector:
        if state.dim != self.dim:
            raise DimensionError(f"dimension mismatch {self.dim} vs {state.dim}")
        return StateVector(self.matrix @ state.amplitudes, state.dims)

    def expectation(self, state: StateVector) -> complex:
        return complex(np.vdot(state.amplitudes, self.matrix @ state.amplitudes))

    def __matmul__(self, other: "Operator | StateVector") -> "Operator | StateVector":
        if isinstance(other, StateVector):
            return self.apply(other)
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch {self.dim} vs {other.dim}")
        both_unitary = self.unitary and other.unitary
        return Operator(self.matrix @ other.matrix, self.dims, unitary=both_unitary)

    def __add__(self, other: "Operator") -> "Operator":
        if other.dim != self.dim:
            raise DimensionError(f"dimension mismatch {self.dim} vs {other.dim}")
        return Operator(self.matrix + other.matrix, self.dims)

    def __sub__(self, other: "Operator") -> "Operator":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.matrix * scalar, self.dims)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Operator(dims={self.dims}, hermitian={self.hermitian}, unitary={self.unitary})"


def kron(a: Operator, b: Operator) -> Operator:
    return Operator(
        np.kron(a.matrix, b.matrix),
        a.dims + b.dims,
        hermitian=a.hermitian and b.hermitian,
        unitary=a.unitary and b.unitary,
    )


def kron_all(ops: Sequence[Operator]) -> Operator:
    return reduce(kron, ops)


def embed(op: Operator, index: int, dims: Sequence[int]) -> Operator:
    dims = tuple(dims)
    if not 0 <= index < len(dims):
        raise DimensionError(f"subsystem index {index} out of range for dims {dims}")
    if op.dim != dims[index]:
        raise DimensionError(f"operator dim {op.dim} does not match subsystem dim {dims[index]}")
    factors = [op if k == index else Operator.identity(d) for k, d in enumerate(dims)]
    return kron_all(factors)


def basis_state(dims: Sequence[int] | int, index: int) -> StateVector:
    dims = (dims,) if isinstance(dims, int) else tuple(dims)
    amps = np.zeros(math.prod(dims), dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps, dims)


# Pauli matrices in the computational (or diabatic) basis.
IDENTITY_2 = Operator.identity(2)
SIGMA_X = Operator(np.array([[0, 1], [1, 0]]), hermitian=True, unitary=True)
SIGMA_Y = Operator(np.array([[0, -1j], [1j, 0]]), hermitian=True, unitary=True)
SIGMA_Z = Operator(np.array([[1, 0], [0, -1]]), hermitian=True, unitary=True)
