from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field


class DecouplingReport(BaseModel):
    method: Literal["charge", "bias"]
    epsilon: float = Field(ge=0, description="bias magnitude, rad/ns")
    delta_max: float = Field(ge=0)
    q_ext: float
    residual_gap: float = Field(
        ge=0, description="parity-conditioned ground-energy difference, rad/ns"
    )
    residual_gap_first_order: float | None = None
    reference_time: float = Field(ge=0, description="ns")
    spurious_phase: float = Field(ge=0, description="rad accumulated over reference_time")


class DecouplingComparison(BaseModel):
    charge: DecouplingReport
    bias: DecouplingReport

    @property
    def advantage(self) -> float:
        """Spurious phase removed by charge decoupling, rad."""
        return self.bias.spurious_phase - self.charge.spurious_phase
