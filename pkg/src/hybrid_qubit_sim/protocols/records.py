from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from hybrid_qubit_sim.core.errors import SimulationError
from hybrid_qubit_sim.qmath import StateVector

FIDELITY_SLACK = 1e-12


@dataclass(frozen=True)
class ProtocolEvent:
    t_ns: float
    kind: str  # braid|switch|sweep|hold|pulse|measure|correct|check
    detail: str = ""


@dataclass(frozen=True)
class BranchResult:
    outcome: int
    probability: float
    final_state: StateVector | None
    fidelity_raw: float | None = None
    fidelity_phase_corrected: float | None = None
    correction_angles: tuple[float, ...] = ()


@dataclass
class ProtocolRecord:
    protocol: str
    events: list[ProtocolEvent] = field(default_factory=list)
    outcomes: list[int] = field(default_factory=list)
    final_state: StateVector | None = None
    fidelity_raw: float | None = None
    fidelity_phase_corrected: float | None = None
    phases: dict[str, float] = field(default_factory=dict)
    leakage: float | None = None
    branches: list[BranchResult] = field(default_factory=list)
    metrics: dict[str, float] = field(default_factory=dict)
    flags: list[str] = field(default_factory=list)
    elapsed_ns: float = 0.0

    def log(self, kind: str, detail: str = "", duration: float = 0.0) -> None:
        """Record an event at the current protocol time, then advance the clock."""
        self.events.append(ProtocolEvent(round(self.elapsed_ns, 12), kind, detail))
        self.elapsed_ns += duration

    def add_branches(self, branches: list[BranchResult]) -> None:
        """Store branch results; headline fidelities are probability-weighted."""
        self.branches = list(branches)
        self.outcomes = [b.outcome for b in branches]
        scored = [b for b in branches if b.fidelity_raw is not None]
        total = sum(b.probability for b in scored)
        if not scored or total <= 0:
            return
        self.fidelity_raw = sum(b.probability * b.fidelity_raw for b in scored) / total
        self.fidelity_phase_corrected = (
            sum(b.probability * b.fidelity_phase_corrected for b in scored) / total
        )
        self.final_state = max(scored, key=lambda b: b.probability).final_state

    def validate(self) -> "ProtocolRecord":
        for name in ("fidelity_raw", "fidelity_phase_corrected", "leakage"):
            value = getattr(self, name)
            if value is not None and not (-FIDELITY_SLACK <= value <= 1.0 + FIDELITY_SLACK):
                raise SimulationError(f"{self.protocol}: {name}={value!r} outside [0, 1]")
        if self.fidelity_raw is not None and self.fidelity_phase_corrected is not None:
            if self.fidelity_phase_corrected < self.fidelity_raw - FIDELITY_SLACK:
                raise SimulationError(
                    f"{self.protocol}: phase-corrected fidelity below raw fidelity"
                )
        return self

    def to_summary(self) -> dict[str, Any]:
        """JSON-friendly view (complex amplitudes as [re, im] pairs)."""

        def amps(s: StateVector | None) -> list[list[float]] | None:
            if s is None:
                return None
            return [[float(z.real), float(z.imag)] for z in np.asarray(s.amplitudes)]

        return {
            "protocol": self.protocol,
            "outcomes": list(self.outcomes),
            "fidelity_raw": self.fidelity_raw,
            "fidelity_phase_corrected": self.fidelity_phase_corrected,
            "leakage": self.leakage,
            "phases": dict(self.phases),
            "metrics": dict(self.metrics),
            "flags": list(self.flags),
            "final_state": amps(self.final_state),
            "branches": [
                {
                    "outcome": b.outcome,
                    "probability": b.probability,
                    "fidelity_raw": b.fidelity_raw,
                    "fidelity_phase_corrected": b.fidelity_phase_corrected,
                    "correction_angles": list(b.correction_angles),
                }
                for b in self.branches
            ],
            "events": [
                {"t_ns": e.t_ns, "kind": e.kind, "detail": e.detail} for e in self.events
            ],
        }
