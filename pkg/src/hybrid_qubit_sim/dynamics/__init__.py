from .landau_zener import (
    LZPoint,
    diabatic_transition_probability,
    evolve_from_ground,
    lz_probability,
    min_sweep_time,
    simulate_lz,
    sweep_hamiltonian,
)
from .propagate import DrivenHamiltonian, Trajectory, evolve, propagator
from .schedule import ChargeRamp, SweepSchedule

__all__ = [
    "ChargeRamp",
    "DrivenHamiltonian",
    "LZPoint",
    "SweepSchedule",
    "Trajectory",
    "diabatic_transition_probability",
    "evolve",
    "evolve_from_ground",
    "lz_probability",
    "min_sweep_time",
    "propagator",
    "simulate_lz",
    "sweep_hamiltonian",
]
