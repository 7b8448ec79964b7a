"""Scenario catalogue: required keys, defaults, and what each scenario emits.

Defaults are the published operating points. Energies are cyclic GHz in configs.
"""

from __future__ import annotations

import math
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np

_AMP = 1.0 / math.sqrt(2.0)
_EQUAL_SUPERPOSITION = {"a_re": _AMP, "a_im": 0.0, "b_re": _AMP, "b_im": 0.0}


@dataclass(frozen=True)
class ScenarioSpec:
    name: str
    summary: str
    required: tuple[str, ...]
    defaults: Mapping[str, Any]
    typical: Mapping[str, Any] = field(default_factory=dict)
    table: tuple[str, ...] = ()  # CSV columns, empty when the scenario has no table

    def describe(self) -> str:
        lines = [f"{self.name}: {self.summary}"]
        req = ", ".join(
            f"{k} (e.g. {self.typical[k]})" if k in self.typical else k for k in self.required
        )
        lines.append(f"  required: {req}")
        for key, value in self.defaults.items():
            lines.append(f"  {key} = {_show(value)}")
        if self.table:
            lines.append(f"  csv columns: {', '.join(self.table)}")
        return "\n".join(lines)


def _show(value: Any) -> str:
    if isinstance(value, list):
        if len(value) > 6:
            return f"[{_show(value[0])} .. {_show(value[-1])}] ({len(value)} points)"
        return "[" + ", ".join(_show(v) for v in value) + "]"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


_LZ_SWEEPS = [float(t) for t in np.geomspace(0.1, 20.0, 20)]

CATALOG: dict[str, ScenarioSpec] = {
    spec.name: spec
    for spec in (
        ScenarioSpec(
            name="phase-gate",
            summary="conditional-phase gate on the topological qubit "
            "(theta = pi/4 is the pi/8 gate)",
            required=("delta_max_ghz",),
            typical={"delta_max_ghz": 1.0},
            defaults={
                "epsilon_over_delta": 10.0,
                "theta_target": math.pi / 4.0,
                **_EQUAL_SUPERPOSITION,
                "scan_epsilon_over_delta": [5.0, 10.0, 20.0, 40.0],
            },
            table=("epsilon_over_delta", "leakage", "theta", "theta_error", "hold_ns"),
        ),
        ScenarioSpec(
            name="write",
            summary="transfer a|g> + b|e> from a flux qubit onto the topological qubit",
            required=("delta_max_ghz",),
            typical={"delta_max_ghz": 1.0},
            defaults={
                "epsilon_over_delta": 2.0,
                "sweep_ns": 10.0,
                "sweep_shape": "linear",
                **_EQUAL_SUPERPOSITION,
                "runs": 1,
                "measurement_mode": "sampled",
            },
        ),
        ScenarioSpec(
            name="read",
            summary="transfer the topological state onto flux qubit 2 via flux qubit 1",
            required=("delta_max_ghz",),
            typical={"delta_max_ghz": 2.0},
            defaults={
                "epsilon_over_delta": 10.0,
                "sweep_ns": 20.0,
                "sweep_shape": "cosine",
                "omega_ghz": 0.025,
                "delta2_over_delta1": 0.3,
                **_EQUAL_SUPERPOSITION,
                "runs": 1,
                "measurement_mode": "sampled",
                "correction": "phase-flip",
            },
        ),
        ScenarioSpec(
            name="lz-scan",
            summary="simulated vs analytic Landau-Zener probability over sweep times",
            required=("delta_max_ghz",),
            typical={"delta_max_ghz": 1.0},
            defaults={"epsilon_over_delta": 10.0, "scan_sweep_ns": _LZ_SWEEPS},
            table=("sweep_ns", "v", "p_analytic", "p_simulated", "abs_error"),
        ),
        ScenarioSpec(
            name="sweep-time",
            summary="minimal sweep time for a target Landau-Zener exponent",
            required=("delta_max_ghz",),
            typical={"delta_max_ghz": 1.0},
            defaults={
                "epsilon_over_delta": 2.0,
                "sweep_ns": 10.0,
                "edge_ns": 10.0,
                "scan_exponent_target": [0.5, 1.0, 2.0, 5.0, 10.0, 24.0],
            },
            table=("exponent_target", "sweep_ns_min", "p_lz"),
        ),
        ScenarioSpec(
            name="decoupling-compare",
            summary="residual conditional coupling: q_ext = 1/2 vs large flux bias",
            required=("delta_max_ghz",),
            typical={"delta_max_ghz": 1.0},
            defaults={
                "epsilon_over_delta": 10.0,
                "reference_time_ns": 100.0,
                "scan_epsilon_over_delta": [2.0, 5.0, 10.0, 20.0, 40.0, 100.0],
            },
            table=(
                "epsilon_over_delta",
                "charge_gap",
                "bias_gap",
                "bias_gap_first_order",
                "charge_phase_rad",
                "bias_phase_rad",
            ),
        ),
    )
}


def list_scenarios() -> str:
    return "\n\n".join(spec.describe() for spec in CATALOG.values())
