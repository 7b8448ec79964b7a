from __future__ import annotations

import math
from collections.abc import Iterable

import numpy as np

from hybrid_qubit_sim.core.errors import DimensionError, NotHermitianError
from hybrid_qubit_sim.qmath.operators import (
    HERMITIAN_TOL,
    Operator,
    StateVector,
    hermiticity_error,
)


def _require_hermitian(h: Operator) -> None:
    if h.hermitian:
        return
    scale = max(1.0, float(np.abs(h.matrix).max(initial=0.0)))
    err = hermiticity_error(h.matrix)
    if err >= HERMITIAN_TOL * scale:
        raise NotHermitianError(f"expected a hermitian operator, deviation {err:.3e}")


def anchor_index(values: np.ndarray, tol: float = 1e-12) -> int:
    mags = np.abs(values)
    return int(np.flatnonzero(mags >= mags.max() - tol)[0])


def gauge_columns(vectors: np.ndarray) -> np.ndarray:
    """Rotate each column so its anchor entry is real and positive."""
    out = np.array(vectors, dtype=np.complex128, copy=True)
    for k in range(out.shape[1]):
        col = out[:, k]
        pivot = col[anchor_index(col)]
        out[:, k] = col * (abs(pivot) / pivot)
    return out


def eigh(h: Operator) -> tuple[np.ndarray, Operator]:
    _require_hermitian(h)
    values, vectors = np.linalg.eigh(h.matrix)
    return values, Operator(gauge_columns(vectors), h.dims, unitary=True)


def expm_unitary(h: Operator, t: float) -> Operator:
    """exp(-i h t) from the eigendecomposition of h."""
    _require_hermitian(h)
    if not math.isfinite(t):
        raise DimensionError(f"propagation time must be finite, got {t}")
    values, vectors = np.linalg.eigh(h.matrix)
    phases = np.exp(-1j * values * t)
    u = (vectors * phases) @ vectors.conj().T
    return Operator(u, h.dims, unitary=True)


def partial_trace(state: StateVector | Operator, keep: Iterable[int]) -> Operator:
    """Reduced density matrix on the subsystems listed in ``keep`` (kept in order)."""
    dims = state.dims
    n = len(dims)
    keep = sorted(set(int(k) for k in keep))
    if not keep or any(k < 0 or k >= n for k in keep):
        raise DimensionError(f"keep set {keep} out of range for {n} subsystems")
    traced = [k for k in range(n) if k not in keep]
    d_keep = math.prod(dims[k] for k in keep)

    if isinstance(state, StateVector):
        psi = state.amplitudes.reshape(dims)
        psi = np.transpose(psi, keep + traced).reshape(d_keep, -1)
        rho = psi @ psi.conj().T
    else:
        rho = state.matrix.reshape(dims + dims)
        for k in sorted(traced, reverse=True):
            m = rho.ndim // 2
            rho = np.trace(rho, axis1=k, axis2=k + m)
        rho = rho.reshape(d_keep, d_keep)
    rho = 0.5 * (rho + rho.conj().T)
    return Operator(rho, tuple(dims[k] for k in keep), hermitian=True)


def phase_canonical(matrix: np.ndarray) -> np.ndarray:
    # anchor entry made real positive
    flat = np.asarray(matrix, dtype=np.complex128).reshape(-1)
    pivot = flat[anchor_index(flat, tol=1e-9)]
    return np.asarray(matrix) * (abs(pivot) / pivot)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-10) -> bool:
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    if a.shape != b.shape:
        return False
    overlap = np.vdot(a, b)
    if abs(overlap) == 0.0:
        return False
    aligned = a * (overlap / abs(overlap))
    return float(np.max(np.abs(aligned - b))) < tol
