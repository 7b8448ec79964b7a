from .hamiltonians import (
    ac_splitting,
    conditional_hamiltonian,
    conditional_matrix,
    coupler_hamiltonian,
    coupler_strength,
    detuned_exchange_probability,
    epsilon_of_bias,
    find_decoupling_charge,
    flux_eigenstates,
    flux_hamiltonian,
    ground_energy,
    parity_contrast,
    phase_rate,
    phase_rate_first_order,
    swap_duration,
)
from .models import DEFAULT_CURRENT_SCALE, FluxParams, TopFluxFluxParams

__all__ = [
    "DEFAULT_CURRENT_SCALE",
    "FluxParams",
    "TopFluxFluxParams",
    "ac_splitting",
    "conditional_hamiltonian",
    "conditional_matrix",
    "coupler_hamiltonian",
    "coupler_strength",
    "detuned_exchange_probability",
    "epsilon_of_bias",
    "find_decoupling_charge",
    "flux_eigenstates",
    "flux_hamiltonian",
    "ground_energy",
    "parity_contrast",
    "phase_rate",
    "phase_rate_first_order",
    "swap_duration",
]
