from __future__ import annotations

import math
from dataclasses import dataclass, replace

from scipy import constants

from hybrid_qubit_sim.core.errors import ConfigError

# Persistent current of a typical three-junction flux qubit.
PERSISTENT_CURRENT_A = 300e-9

# eps per unit (phi/phi0 - 1/2): 2 I_p phi0 / hbar = 2 pi I_p / e, in rad/ns.
DEFAULT_CURRENT_SCALE = 2.0 * math.pi * PERSISTENT_CURRENT_A / constants.e * 1e-9


@dataclass(frozen=True)
class FluxParams:
    delta_max: float
    persistent_current_scale: float = DEFAULT_CURRENT_SCALE
    bias_phi: float = 0.5
    q_ext: float = 0.5

    def __post_init__(self) -> None:
        if self.delta_max < 0:
            raise ConfigError(f"delta_max must be >= 0, got {self.delta_max}", key="delta_max")
        if self.persistent_current_scale <= 0:
            raise ConfigError(
                "persistent_current_scale must be positive", key="persistent_current_scale"
            )

    @classmethod
    def at_epsilon(
        cls,
        eps: float,
        delta_max: float,
        q_ext: float = 0.5,
        persistent_current_scale: float = DEFAULT_CURRENT_SCALE,
    ) -> "FluxParams":
        """Params whose flux bias gives the requested eps (rad/ns)."""
        return cls(
            delta_max=delta_max,
            persistent_current_scale=persistent_current_scale,
            bias_phi=0.5 + eps / persistent_current_scale,
            q_ext=q_ext,
        )

    def with_q_ext(self, q_ext: float) -> "FluxParams":
        return replace(self, q_ext=q_ext)


@dataclass(frozen=True)
class TopFluxFluxParams:
    """Topological qubit read by flux qubit 1, exchange-coupled to flux qubit 2."""

    qubit1: FluxParams
    delta2: float
    omega_coupler_ghz: float
    drive_frequency: float | None = None  # rad/ns; defaults to |delta1 - delta2|

    def __post_init__(self) -> None:
        if self.delta2 <= 0:
            raise ConfigError(f"delta2 must be positive, got {self.delta2}", key="delta2")
        if self.omega_coupler_ghz <= 0:
            raise ConfigError(
                f"coupler frequency must be positive, got {self.omega_coupler_ghz}",
                key="omega_ghz",
            )
        detuning = abs(self.qubit1.delta_max - self.delta2)
        if self.drive_frequency is None:
            if detuning == 0.0:
                raise ConfigError(
                    "delta2 equals delta1: the resonant drive |delta1 - delta2| vanishes",
                    key="delta2_over_delta1",
                )
            object.__setattr__(self, "drive_frequency", detuning)
        elif self.drive_frequency <= 0:
            raise ConfigError("drive frequency must be positive", key="drive_frequency")

    @property
    def delta1(self) -> float:
        return self.qubit1.delta_max

    @property
    def odd_branch_detuning(self) -> float:
        """Detuning of the n_p = 1 exchange (qubit-1 splitting 0) from the drive."""
        return abs(self.delta2 - self.drive_frequency)
