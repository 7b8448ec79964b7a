from .decoupling import decoupling_comparison, decoupling_report
from .metrics import (
    apply_local_z,
    branch_overlaps,
    concurrence,
    entanglement_entropy,
    fidelity,
    fidelity_up_to_local_z,
    purity,
    reduced_purity,
)
from .schema import DecouplingComparison, DecouplingReport

__all__ = [
    "DecouplingComparison",
    "DecouplingReport",
    "apply_local_z",
    "branch_overlaps",
    "concurrence",
    "decoupling_comparison",
    "decoupling_report",
    "entanglement_entropy",
    "fidelity",
    "fidelity_up_to_local_z",
    "purity",
    "reduced_purity",
]
