"""Four Majorana modes built from two Dirac fermions.

Jordan-Wigner construction in the Fock basis (|00>, |01>, |10>, |11>), index 2*n1 + n2:

    f1 = a (x) I        f2 = Z (x) a        a = |0><1|,  Z = diag(1, -1)

so that gamma1 = X(x)I, gamma2 = Y(x)I, gamma3 = Z(x)X, gamma4 = Z(x)Y. Only the
even-sector restrictions of products of gammas are contractually visible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from hybrid_qubit_sim.core.errors import DimensionError
from hybrid_qubit_sim.qmath import IDENTITY_2, SIGMA_Z, Operator, StateVector, kron

FOCK_DIMS = (2, 2)
EVEN_SECTOR = (0, 3)  # |00>, |11>
ALGEBRA_TOL = 1e-12

_LOWER = Operator(np.array([[0, 1], [0, 0]]))


@dataclass(frozen=True)
class MajoranaSet:
    gammas: tuple[Operator, Operator, Operator, Operator]
    f1: Operator
    f2: Operator

    def __post_init__(self) -> None:
        eye = np.eye(4)
        for i, gi in enumerate(self.gammas):
            if not gi.hermitian:
                raise DimensionError(f"gamma{i + 1} must be hermitian")
            for j, gj in enumerate(self.gammas):
                anti = gi.matrix @ gj.matrix + gj.matrix @ gi.matrix
                expected = 2.0 * eye if i == j else 0.0 * eye
                if np.max(np.abs(anti - expected)) >= ALGEBRA_TOL:
                    raise DimensionError(
                        f"{{gamma{i + 1}, gamma{j + 1}}} violates the Clifford algebra"
                    )

    def gamma(self, index: int) -> Operator:
        """1-based access, matching the physics labels gamma1..gamma4."""
        if not 1 <= index <= 4:
            raise DimensionError(f"Majorana index must be in 1..4, got {index}")
        return self.gammas[index - 1]

    def annihilator(self, mode: int) -> Operator:
        return self.f1 if mode == 1 else self.f2

    def number(self, mode: int) -> Operator:
        f = self.annihilator(mode)
        return f.dag() @ f


@lru_cache(maxsize=1)
def majorana_operators() -> MajoranaSet:
    f1 = kron(_LOWER, IDENTITY_2)
    f2 = kron(SIGMA_Z, _LOWER)

    def pair(f: Operator) -> tuple[Operator, Operator]:
        fd = f.dag()
        first = Operator((f + fd).matrix, FOCK_DIMS, hermitian=True)
        second = Operator((-1j * (f - fd)).matrix, FOCK_DIMS, hermitian=True)
        return first, second

    g1, g2 = pair(f1)
    g3, g4 = pair(f2)
    return MajoranaSet(gammas=(g1, g2, g3, g4), f1=f1, f2=f2)


@lru_cache(maxsize=1)
def parity_operator() -> Operator:
    """Total fermion parity -g1 g2 g3 g4 (= Z(x)Z): +1 on the even sector."""
    g = majorana_operators().gammas
    p = -1.0 * (g[0] @ g[1] @ g[2] @ g[3])
    return Operator(p.matrix, FOCK_DIMS, hermitian=True, unitary=True)


@lru_cache(maxsize=1)
def even_projector() -> Operator:
    p = parity_operator()
    return Operator(0.5 * (np.eye(4) + p.matrix), FOCK_DIMS, hermitian=True)


@dataclass(frozen=True)
class LogicalState:
    """Even-parity topological qubit c1|00> + c2|11>."""

    c1: complex
    c2: complex

    def __post_init__(self) -> None:
        norm = abs(self.c1) ** 2 + abs(self.c2) ** 2
        if abs(norm - 1.0) >= 1e-9:
            raise DimensionError(
                f"logical amplitudes are not normalised (|c1|^2+|c2|^2 = {norm:.12f})"
            )

    @classmethod
    def from_vector(cls, vec: np.ndarray | StateVector) -> "LogicalState":
        amps = vec.amplitudes if isinstance(vec, StateVector) else np.asarray(vec)
        if amps.size != 2:
            raise DimensionError(f"logical state needs 2 amplitudes, got {amps.size}")
        return cls(complex(amps[0]), complex(amps[1]))

    def island_parity(self) -> float:
        """<n_p>: occupation of mode 1, the fermion formed by the MFs on the flux island."""
        n1 = majorana_operators().number(1)
        return float(n1.expectation(self.to_fock()).real)

    def vector(self) -> StateVector:
        return StateVector(np.array([self.c1, self.c2]), (2,))

    def to_fock(self) -> StateVector:
        amps = np.zeros(4, dtype=np.complex128)
        amps[EVEN_SECTOR[0]] = self.c1
        amps[EVEN_SECTOR[1]] = self.c2
        return StateVector(amps, FOCK_DIMS)
