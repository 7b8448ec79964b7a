from .linalg import eigh, equal_up_to_phase, expm_unitary, partial_trace, phase_canonical
from .operators import (
    IDENTITY_2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    Operator,
    StateVector,
    basis_state,
    embed,
    kron,
    kron_all,
)

__all__ = [
    "IDENTITY_2",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "Operator",
    "StateVector",
    "basis_state",
    "eigh",
    "embed",
    "equal_up_to_phase",
    "expm_unitary",
    "kron",
    "kron_all",
    "partial_trace",
    "phase_canonical",
]
