from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field


class RunOutcome(BaseModel):
    index: int
    seed: int
    outcomes: list[int]
    fidelity_raw: float | None = None
    fidelity_phase_corrected: float | None = None


class ResultRecord(BaseModel):
    scenario: str
    config: dict[str, Any]
    runs: list[RunOutcome] = []
    aggregate: dict[str, Any] = {}
    oracle: dict[str, Any] = {}
    detail: dict[str, Any] | None = None
    table_columns: list[str] = []
    wall_clock_s: float = Field(default=0.0, ge=0)

    def structured(self) -> dict[str, Any]:
        """Everything except wall-clock; identical for identical config and seed."""
        return self.model_dump(mode="json", exclude={"wall_clock_s"})
