"""Flux-qubit Hamiltonians conditioned on the island parity.

Diabatic basis (|L>, |R>), H = -(eps sigma_z + Delta sigma_x)/2. The tunnel splitting
is modulated by the total island charge q = n_p + q_ext (units of e):
Delta = Delta_max |cos(pi q / 2)|.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy import optimize

from hybrid_qubit_sim.core.errors import DegeneracyError, DimensionError
from hybrid_qubit_sim.fluxmodel.models import FluxParams
from hybrid_qubit_sim.qmath import SIGMA_X, SIGMA_Y, SIGMA_Z, Operator, StateVector, eigh, kron

logger = logging.getLogger(__name__)

PARITIES = (0, 1)


def epsilon_of_bias(p: FluxParams) -> float:
    return p.persistent_current_scale * (p.bias_phi - 0.5)


def ac_splitting(delta_max: float, n_p: int, q_ext: float) -> float:
    if n_p not in PARITIES:
        raise DimensionError(f"parity must be 0 or 1, got {n_p}")
    q = (n_p + q_ext) % 2.0
    return delta_max * abs(math.cos(math.pi * q / 2.0))


def flux_hamiltonian(eps: float, delta: float) -> Operator:
    h = -0.5 * (eps * SIGMA_Z.matrix + delta * SIGMA_X.matrix)
    return Operator(h, (2,), hermitian=True)


def flux_eigenstates(eps: float, delta: float) -> tuple[StateVector, StateVector]:
    """(ground, excited) of the flux Hamiltonian, gauge-fixed."""
    _, vecs = eigh(flux_hamiltonian(eps, delta))
    m = vecs.matrix
    return StateVector(m[:, 0], (2,)), StateVector(m[:, 1], (2,))


def conditional_matrix(eps: float, delta_max: float, q_ext: float) -> np.ndarray:
    """sum_{n_p} |n_p><n_p| (x) H(eps, Delta(n_p)) as a raw 4x4 array."""
    h = np.zeros((4, 4), dtype=np.complex128)
    for n_p in PARITIES:
        block = flux_hamiltonian(eps, ac_splitting(delta_max, n_p, q_ext)).matrix
        h[2 * n_p : 2 * n_p + 2, 2 * n_p : 2 * n_p + 2] = block
    return h


def conditional_hamiltonian(p: FluxParams, eps: float | None = None) -> Operator:
    eps = epsilon_of_bias(p) if eps is None else eps
    return Operator(conditional_matrix(eps, p.delta_max, p.q_ext), (2, 2), hermitian=True)


def ground_energy(eps: float, delta: float) -> float:
    return -0.5 * math.hypot(eps, delta)


def phase_rate(eps: float, delta_max: float) -> float:
    """Ground-energy difference of the two parity branches at q_ext = 0.

    (sqrt(eps^2 + Delta^2) - eps)/2 evaluated as Delta^2 / (2 (sqrt(eps^2 + Delta^2) + eps))
    to avoid cancellation at large eps.
    """
    if eps < 0:
        raise DimensionError(f"phase_rate takes the bias magnitude, got eps={eps}")
    root = math.hypot(eps, delta_max)
    if root == 0.0:
        return 0.0
    return delta_max**2 / (2.0 * (root + eps))


def phase_rate_first_order(eps: float, delta_max: float) -> float:
    if eps <= 0:
        raise DimensionError(f"first-order phase rate needs eps > 0, got {eps}")
    return delta_max**2 / (4.0 * eps)


def coupler_strength(omega_cyclic: float) -> float:
    """g in rad/ns such that a |ge> <-> |eg> swap takes 1/(2 Omega)."""
    if omega_cyclic <= 0:
        raise DimensionError(f"coupler frequency must be positive, got {omega_cyclic}")
    return math.pi * omega_cyclic / 2.0


def coupler_hamiltonian(omega_cyclic: float) -> Operator:
    g = coupler_strength(omega_cyclic)
    xx = kron(SIGMA_X, SIGMA_X).matrix
    yy = kron(SIGMA_Y, SIGMA_Y).matrix
    return Operator(g * (xx + yy), (2, 2), hermitian=True)


def swap_duration(omega_cyclic: float) -> float:
    if omega_cyclic <= 0:
        raise DimensionError(f"coupler frequency must be positive, got {omega_cyclic}")
    return 1.0 / (2.0 * omega_cyclic)


def detuned_exchange_probability(omega_cyclic: float, detuning: float, t: float) -> float:
    """|ge> -> |eg> transfer for an exchange detuned by ``detuning`` (rad/ns)."""
    two_g = 2.0 * coupler_strength(omega_cyclic)
    w = math.sqrt(two_g**2 + detuning**2 / 4.0)
    return (two_g / w) ** 2 * math.sin(w * t) ** 2


def find_decoupling_charge(delta_max: float) -> float:
    """q_ext in (0, 1) where both parity branches have the same splitting."""
    if delta_max <= 0:
        raise DegeneracyError("splittings coincide for every q_ext when delta_max is 0")

    def mismatch(q: float) -> float:
        return ac_splitting(delta_max, 0, q) - ac_splitting(delta_max, 1, q)

    q = optimize.brentq(mismatch, 0.0, 1.0, xtol=1e-14)
    logger.debug("decoupling charge located at q_ext=%.15f", q)
    return float(q)


def parity_contrast(delta_max: float, q_ext: float) -> float:
    return abs(ac_splitting(delta_max, 0, q_ext) - ac_splitting(delta_max, 1, q_ext))
