from __future__ import annotations

import itertools
import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np
from scipy import optimize

from hybrid_qubit_sim.core.errors import DimensionError, OperatorError
from hybrid_qubit_sim.qmath import Operator, StateVector, kron, partial_trace
from hybrid_qubit_sim.qmath.operators import NORM_TOL, SIGMA_Y

logger = logging.getLogger(__name__)

PSD_TOL = 1e-10
GRID_POINTS = 16
REFINE_XATOL = 1e-6

_YY = kron(SIGMA_Y, SIGMA_Y).matrix


def _check_pair(psi: StateVector, phi: StateVector) -> None:
    if psi.dim != phi.dim:
        raise DimensionError(f"dimension mismatch {psi.dim} vs {phi.dim}")
    for name, s in (("psi", psi), ("phi", phi)):
        if not s.is_normalized(NORM_TOL):
            raise DimensionError(f"{name} is not normalised (norm {s.norm():.12f})")


def fidelity(psi: StateVector, phi: StateVector) -> float:
    _check_pair(psi, phi)
    return float(min(1.0, abs(np.vdot(psi.amplitudes, phi.amplitudes)) ** 2))


def branch_overlaps(psi: StateVector, phi: StateVector, subsystem: int) -> np.ndarray:
    """<phi|psi> split by the basis index of one qubit subsystem: (A0, A1)."""
    _check_pair(psi, phi)
    dims = psi.dims
    if not 0 <= subsystem < len(dims) or dims[subsystem] != 2:
        raise DimensionError(f"subsystem {subsystem} is not a qubit in dims {dims}")
    terms = (np.conj(phi.amplitudes) * psi.amplitudes).reshape(dims)
    terms = np.moveaxis(terms, subsystem, 0).reshape(2, -1)
    return terms.sum(axis=1)


def _z_phases(dims: Sequence[int], subsystems: Sequence[int], angles: np.ndarray) -> np.ndarray:
    phase = np.zeros(dims, dtype=float)
    for k, theta in zip(subsystems, angles):
        shape = [1] * len(dims)
        shape[k] = 2
        phase = phase + theta * np.arange(2).reshape(shape)
    return np.exp(1j * phase).reshape(-1)


def fidelity_up_to_local_z(
    psi: StateVector, phi: StateVector, z_subsystems: Iterable[int]
) -> tuple[float, tuple[float, ...]]:
    """max over Z(theta) = diag(1, e^{i theta}) on each listed qubit of F(Z psi, phi)."""
    _check_pair(psi, phi)
    subsystems = tuple(sorted(set(int(k) for k in z_subsystems)))
    for k in subsystems:
        if not 0 <= k < len(psi.dims) or psi.dims[k] != 2:
            raise DimensionError(f"subsystem {k} is not a qubit in dims {psi.dims}")
    raw = fidelity(psi, phi)
    if not subsystems:
        return raw, ()

    if len(subsystems) == 1:
        a0, a1 = branch_overlaps(psi, phi, subsystems[0])
        theta = float(np.angle(a0) - np.angle(a1)) if abs(a1) > 0 and abs(a0) > 0 else 0.0
        theta = math.remainder(theta, 2.0 * math.pi)
        best = min(1.0, (abs(a0) + abs(a1)) ** 2)
        return max(best, raw), (theta,)

    terms = np.conj(phi.amplitudes) * psi.amplitudes

    def neg_fid(angles: np.ndarray) -> float:
        return -abs(np.sum(terms * _z_phases(psi.dims, subsystems, angles))) ** 2

    grid = np.linspace(-math.pi, math.pi, GRID_POINTS, endpoint=False)
    start = min(
        (np.array(p) for p in itertools.product(grid, repeat=len(subsystems))),
        key=neg_fid,
    )
    res = optimize.minimize(
        neg_fid, start, method="Nelder-Mead", options={"xatol": REFINE_XATOL, "fatol": 1e-14}
    )
    angles = tuple(math.remainder(float(a), 2.0 * math.pi) for a in res.x)
    best = min(1.0, -float(res.fun))
    if best < raw:
        return raw, tuple(0.0 for _ in subsystems)
    return best, angles


def apply_local_z(
    psi: StateVector, subsystems: Sequence[int], angles: Sequence[float]
) -> StateVector:
    phases = _z_phases(psi.dims, tuple(subsystems), np.asarray(angles, dtype=float))
    return StateVector(psi.amplitudes * phases, psi.dims)


def _psd_eigenvalues(rho: Operator) -> np.ndarray:
    values = np.linalg.eigvalsh(0.5 * (rho.matrix + rho.matrix.conj().T))
    if values.min(initial=0.0) < -PSD_TOL:
        raise OperatorError(
            f"density matrix is not positive semidefinite (eigenvalue {values.min():.3e})"
        )
    return np.clip(values, 0.0, None)


def _sqrtm_psd(m: np.ndarray) -> np.ndarray:
    values, vectors = np.linalg.eigh(0.5 * (m + m.conj().T))
    root = np.sqrt(np.clip(values, 0.0, None))
    return (vectors * root) @ vectors.conj().T


def concurrence(rho: Operator) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    lambda_i are the singular values of sqrt(rho) sqrt(rho~), rho~ = (Y(x)Y) rho* (Y(x)Y),
    which are the square roots of the eigenvalues of rho rho~.
    """
    if rho.dim != 4:
        raise DimensionError(f"concurrence needs a 4x4 density matrix, got dim {rho.dim}")
    _psd_eigenvalues(rho)
    root = _sqrtm_psd(rho.matrix)
    root_tilde = _YY @ root.conj() @ _YY
    lam = np.linalg.svd(root @ root_tilde, compute_uv=False)
    lam = np.sort(lam)[::-1]
    c = lam[0] - lam[1] - lam[2] - lam[3]
    return float(min(1.0, max(0.0, c)))


def purity(rho: Operator) -> float:
    return float(np.real(np.trace(rho.matrix @ rho.matrix)))


def reduced_purity(state: StateVector | Operator, keep: Iterable[int]) -> float:
    return purity(partial_trace(state, keep))


def entanglement_entropy(psi: StateVector, cut: Iterable[int]) -> float:
    """von Neumann entropy (bits) of the reduced state on ``cut``."""
    if not psi.is_normalized(NORM_TOL):
        raise DimensionError(f"state is not normalised (norm {psi.norm():.12f})")
    p = _psd_eigenvalues(partial_trace(psi, cut))
    p = p[p > 1e-15]
    return float(max(0.0, -np.sum(p * np.log2(p))))
