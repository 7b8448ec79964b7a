from __future__ import annotations

import logging
import math
import time
from collections import Counter
from collections.abc import Callable, Iterable
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, TypeVar

import pandas as pd
from pathos.pools import ThreadPool

from hybrid_qubit_sim.analysis import decoupling_comparison
from hybrid_qubit_sim.core.config import settings
from hybrid_qubit_sim.core.units import ghz_to_rad_per_ns
from hybrid_qubit_sim.dynamics import SweepSchedule, lz_probability, min_sweep_time, simulate_lz
from hybrid_qubit_sim.fluxmodel import FluxParams, TopFluxFluxParams, find_decoupling_charge
from hybrid_qubit_sim.majorana import LogicalState
from hybrid_qubit_sim.protocols import (
    MeasurementModel,
    ProtocolRecord,
    complete_read,
    complete_write,
    ideal_circuit_backend,
    idle_protocol,
    phase_gate_protocol,
    run_read_dynamics,
    run_write_dynamics,
)
from hybrid_qubit_sim.scenarios.catalog import CATALOG
from hybrid_qubit_sim.scenarios.config import ScenarioConfig
from hybrid_qubit_sim.scenarios.schema import ResultRecord, RunOutcome

logger = logging.getLogger(__name__)

K = TypeVar("K")
V = TypeVar("V")

WRITE_FIDELITY_TARGET = 0.999
READ_FIDELITY_TARGET = 0.99
LZ_TOLERANCE = 0.02


@dataclass
class ScenarioResult:
    record: ResultRecord
    table: pd.DataFrame | None = None
    lines: list[str] = field(default_factory=list)


def _pool_map(fn: Callable[[K], V], items: list[K]) -> list[V]:
    if not items:
        return []
    pool = ThreadPool(nodes=max(1, settings.workers))
    try:
        return list(pool.map(fn, items))
    finally:
        pool.close()
        pool.join()
        pool.clear()


def _scan(fn: Callable[[K], V], keys: Iterable[K]) -> list[tuple[K, V]]:
    """Evaluate scan points on the worker pool; results come back sorted by key."""
    ordered = sorted(keys)
    return list(zip(ordered, _pool_map(fn, ordered)))


def _mean(values: Iterable[float | None]) -> float | None:
    present = [v for v in values if v is not None]
    return math.fsum(present) / len(present) if present else None


def _fmt(value: float | None) -> str:
    return "n/a" if value is None else f"{value:.6f}"


def _run_line(cfg: ScenarioConfig, outcome: RunOutcome) -> str:
    return (
        f"{cfg.scenario} run {outcome.index} seed {outcome.seed}: "
        f"outcomes {outcome.outcomes} fidelity {_fmt(outcome.fidelity_raw)} "
        f"corrected {_fmt(outcome.fidelity_phase_corrected)}"
    )


def _measured_runs(
    cfg: ScenarioConfig, complete: Callable[[MeasurementModel], ProtocolRecord]
) -> tuple[list[RunOutcome], ProtocolRecord, dict[str, Any]]:
    """Apply the per-run measurement stage ``cfg.runs`` times with derived seeds."""
    base = MeasurementModel(seed=cfg.seed, mode=cfg.measurement_mode)
    models = [base.for_run(i) for i in range(cfg.runs)]
    records = _pool_map(complete, models)

    runs = [
        RunOutcome(
            index=i,
            seed=model.seed,
            outcomes=list(rec.outcomes),
            fidelity_raw=rec.fidelity_raw,
            fidelity_phase_corrected=rec.fidelity_phase_corrected,
        )
        for i, (model, rec) in enumerate(zip(models, records))
    ]
    aggregate: dict[str, Any] = {
        "runs": len(runs),
        "mean_fidelity_raw": _mean(r.fidelity_raw for r in runs),
        "mean_fidelity_phase_corrected": _mean(r.fidelity_phase_corrected for r in runs),
    }
    if base.both_branches:
        aggregate["branch_probabilities"] = {
            str(b.outcome): b.probability for b in records[0].branches
        }
    else:
        counts = Counter(o for r in runs for o in r.outcomes)
        aggregate["outcome_frequencies"] = {
            str(k): counts.get(k, 0) / len(runs) for k in (0, 1)
        }
    return runs, records[0], aggregate


def _run_phase_gate(cfg: ScenarioConfig) -> ScenarioResult:
    delta = ghz_to_rad_per_ns(cfg.delta_max_ghz)
    theta = cfg.theta_target if cfg.theta_target is not None else math.pi / 4.0
    state = LogicalState(cfg.a, cfg.b)

    def at_ratio(ratio: float) -> ProtocolRecord:
        p = FluxParams.at_epsilon(ratio * delta, delta)
        return phase_gate_protocol(p, theta, state)

    record = at_ratio(cfg.epsilon_over_delta)
    outcome = RunOutcome(
        index=0,
        seed=cfg.seed,
        outcomes=[],
        fidelity_raw=record.fidelity_raw,
        fidelity_phase_corrected=record.fidelity_phase_corrected,
    )
    lines = [_run_line(cfg, outcome)]

    table = None
    oracle: dict[str, Any] = {
        "theta_error": record.phases["theta_error"],
        "theta_within_1e-3": record.phases["theta_error"] < 1e-3,
        "leakage_below_1e-3": record.leakage < 1e-3,
    }
    if cfg.scan_epsilon_over_delta:
        points = _scan(at_ratio, cfg.scan_epsilon_over_delta)
        rows = [
            {
                "epsilon_over_delta": ratio,
                "leakage": rec.leakage,
                "theta": rec.phases["theta"],
                "theta_error": rec.phases["theta_error"],
                "hold_ns": rec.metrics["hold_ns"],
            }
            for ratio, rec in points
        ]
        table = pd.DataFrame(rows, columns=list(CATALOG["phase-gate"].table))
        leak = [row["leakage"] for row in rows]
        oracle["leakage_strictly_decreasing"] = all(a > b for a, b in zip(leak, leak[1:]))
        lines += [
            f"phase-gate eps/delta={row['epsilon_over_delta']:g}: leakage {row['leakage']:.3e} "
            f"theta error {row['theta_error']:.3e}"
            for row in rows
        ]

    result = ResultRecord(
        scenario=cfg.scenario,
        config=cfg.echo(),
        runs=[outcome],
        aggregate={"leakage": record.leakage, **record.phases, **record.metrics},
        oracle=oracle,
        detail=record.to_summary(),
    )
    return ScenarioResult(result, table, lines)


def _run_write(cfg: ScenarioConfig) -> ScenarioResult:
    delta = ghz_to_rad_per_ns(cfg.delta_max_ghz)
    eps = cfg.epsilon_over_delta * delta
    sched = SweepSchedule(
        -eps, eps, cfg.sweep_ns, cfg.sweep_shape or "linear", cfg.edge_ns or 0.0
    )
    stage = run_write_dynamics(cfg.a, cfg.b, FluxParams(delta), sched, cfg.switch_ns, cfg.tol)

    runs, first, aggregate = _measured_runs(cfg, lambda model: complete_write(stage, model))
    aggregate.update(stage.metrics)
    ideal = ideal_circuit_backend("write", cfg.a, cfg.b)
    mean_corr = aggregate["mean_fidelity_phase_corrected"]
    oracle = {
        "even_branch_lz_analytic": stage.metrics["even_branch_lz_analytic"],
        "even_branch_transition": stage.metrics["even_branch_transition"],
        "ideal_fidelity": ideal.fidelity_phase_corrected,
        "fidelity_target": WRITE_FIDELITY_TARGET,
        "meets_fidelity_target": mean_corr is not None and mean_corr >= WRITE_FIDELITY_TARGET,
    }
    result = ResultRecord(
        scenario=cfg.scenario,
        config=cfg.echo(),
        runs=runs,
        aggregate=aggregate,
        oracle=oracle,
        detail=first.to_summary(),
    )
    return ScenarioResult(result, None, [_run_line(cfg, r) for r in runs])


def _run_read(cfg: ScenarioConfig) -> ScenarioResult:
    delta1 = ghz_to_rad_per_ns(cfg.delta_max_ghz)
    eps_a = -cfg.epsilon_over_delta * delta1
    shape = cfg.sweep_shape or "cosine"
    edge = cfg.edge_ns or 0.0
    sched_in = SweepSchedule(eps_a, 0.0, cfg.sweep_ns, shape, edge)
    sched_out = SweepSchedule(0.0, -eps_a, cfg.sweep_ns, shape, edge)
    p = TopFluxFluxParams(
        qubit1=FluxParams(delta1),
        delta2=cfg.delta2_over_delta1 * delta1,
        omega_coupler_ghz=cfg.omega_ghz,
    )
    stage = run_read_dynamics(cfg.a, cfg.b, p, sched_in, sched_out, cfg.switch_ns, cfg.tol)

    runs, first, aggregate = _measured_runs(
        cfg, lambda model: complete_read(stage, model, cfg.correction)
    )
    aggregate.update(stage.metrics)
    ideal = ideal_circuit_backend("read", cfg.a, cfg.b, cfg.correction)
    concurrence = stage.metrics["concurrence_topo_qubit2_at_b"]
    expected = stage.metrics["concurrence_expected"]
    mean_corr = aggregate["mean_fidelity_phase_corrected"]
    oracle = {
        "post_pulse_fidelity": stage.metrics["pulse_fidelity"],
        "qubit1_purity_at_b": stage.metrics["qubit1_purity_at_b"],
        "concurrence": concurrence,
        "concurrence_expected": expected,
        "concurrence_within_0.01": abs(concurrence - expected) <= 0.01,
        "entangling_stage_ns": stage.metrics["entangling_stage_ns"],
        "coherence_budget_ns": stage.metrics["coherence_budget_ns"],
        "ideal_fidelity": ideal.fidelity_phase_corrected,
        "fidelity_target": READ_FIDELITY_TARGET,
        "meets_fidelity_target": mean_corr is not None and mean_corr >= READ_FIDELITY_TARGET,
    }
    result = ResultRecord(
        scenario=cfg.scenario,
        config=cfg.echo(),
        runs=runs,
        aggregate=aggregate,
        oracle=oracle,
        detail=first.to_summary(),
    )
    return ScenarioResult(result, None, [_run_line(cfg, r) for r in runs])


def _run_lz_scan(cfg: ScenarioConfig) -> ScenarioResult:
    delta = ghz_to_rad_per_ns(cfg.delta_max_ghz)
    span = cfg.epsilon_over_delta * delta
    points = _scan(lambda t: simulate_lz(delta, span, t, cfg.tol), cfg.scan_sweep_ns or [])
    rows = [
        {
            "sweep_ns": pt.sweep_ns,
            "v": pt.v,
            "p_analytic": pt.p_analytic,
            "p_simulated": pt.p_simulated,
            "abs_error": pt.abs_error,
        }
        for _, pt in points
    ]
    table = pd.DataFrame(rows, columns=list(CATALOG["lz-scan"].table))
    max_error = max((row["abs_error"] for row in rows), default=0.0)
    result = ResultRecord(
        scenario=cfg.scenario,
        config=cfg.echo(),
        aggregate={"points": len(rows), "max_abs_error": max_error},
        oracle={"tolerance": LZ_TOLERANCE, "within_tolerance": max_error < LZ_TOLERANCE},
    )
    lines = [
        f"lz-scan sweep_ns={row['sweep_ns']:.6g}: p_analytic {row['p_analytic']:.6g} "
        f"p_simulated {row['p_simulated']:.6g}"
        for row in rows
    ]
    return ScenarioResult(result, table, lines)


def _run_sweep_time(cfg: ScenarioConfig) -> ScenarioResult:
    delta = ghz_to_rad_per_ns(cfg.delta_max_ghz)
    eps = cfg.epsilon_over_delta * delta
    rows = []
    for x in sorted(cfg.scan_exponent_target or []):
        t_min = min_sweep_time(delta, eps, x)
        rows.append(
            {
                "exponent_target": x,
                "sweep_ns_min": t_min,
                "p_lz": lz_probability(delta, 2.0 * eps / t_min),
            }
        )
    table = pd.DataFrame(rows, columns=list(CATALOG["sweep-time"].table))

    v = 2.0 * eps / cfg.sweep_ns
    edge = cfg.edge_ns or 0.0
    simulated = simulate_lz(delta, eps, cfg.sweep_ns, cfg.tol, edge)
    aggregate = {
        "sweep_ns": cfg.sweep_ns,
        "velocity": v,
        "lz_exponent": 2.0 * math.pi * delta**2 / (4.0 * v),
        "p_lz_formula": lz_probability(delta, v),
        "p_lz_simulated": simulated.p_simulated,
        "edge_ns": edge,
    }
    # Reference operating points: write at 1 GHz, eps = 2 delta; read at 2 GHz, eps = 10 delta.
    write_delta = ghz_to_rad_per_ns(1.0)
    read_delta = ghz_to_rad_per_ns(2.0)
    oracle = {
        "write_threshold_ns": min_sweep_time(write_delta, 2.0 * write_delta),
        "read_threshold_ns": min_sweep_time(read_delta, 10.0 * read_delta),
        "p_lz_formula_below_1e-9": aggregate["p_lz_formula"] < 1e-9,
        "p_lz_simulated_below_1e-9": simulated.p_simulated < 1e-9,
        "p_lz_within_factor_2": simulated.p_analytic > 0
        and 0.5 <= simulated.p_simulated / simulated.p_analytic <= 2.0,
    }
    result = ResultRecord(
        scenario=cfg.scenario,
        config=cfg.echo(),
        aggregate=aggregate,
        oracle=oracle,
    )
    lines = [
        f"sweep-time exponent {row['exponent_target']:g}: "
        f"sweep_ns_min {row['sweep_ns_min']:.6g} p_lz {row['p_lz']:.6g}"
        for row in rows
    ]
    lines.append(
        f"sweep-time at {cfg.sweep_ns:g} ns: formula {aggregate['p_lz_formula']:.3e} "
        f"simulated {aggregate['p_lz_simulated']:.3e}"
    )
    return ScenarioResult(result, table, lines)


def _run_decoupling_compare(cfg: ScenarioConfig) -> ScenarioResult:
    delta = ghz_to_rad_per_ns(cfg.delta_max_ghz)
    ref = cfg.reference_time_ns if cfg.reference_time_ns is not None else 100.0

    def at_ratio(ratio: float):
        return decoupling_comparison(FluxParams.at_epsilon(ratio * delta, delta), ref)

    points = _scan(at_ratio, cfg.scan_epsilon_over_delta or [])
    rows = [
        {
            "epsilon_over_delta": ratio,
            "charge_gap": cmp.charge.residual_gap,
            "bias_gap": cmp.bias.residual_gap,
            "bias_gap_first_order": cmp.bias.residual_gap_first_order,
            "charge_phase_rad": cmp.charge.spurious_phase,
            "bias_phase_rad": cmp.bias.spurious_phase,
        }
        for ratio, cmp in points
    ]
    table = pd.DataFrame(rows, columns=list(CATALOG["decoupling-compare"].table))

    eps = cfg.epsilon_over_delta * delta
    p = FluxParams.at_epsilon(eps, delta)
    main = decoupling_comparison(p, ref)
    idle_charge = idle_protocol(p, ref, q_ext=0.5)
    idle_bias = idle_protocol(p, ref, q_ext=0.0)
    q_star = find_decoupling_charge(delta)
    closed_form = 0.5 * (math.hypot(eps, delta) - eps)
    oracle = {
        "idle_conditional_phase_charge": idle_charge.phases["conditional_phase"],
        "idle_conditional_phase_bias": idle_bias.phases["conditional_phase"],
        "charge_idle_below_1e-9": abs(idle_charge.phases["conditional_phase"]) < 1e-9,
        "bias_gap_closed_form": closed_form,
        "bias_gap_matches_closed_form": abs(main.bias.residual_gap - closed_form) < 1e-12,
        "decoupling_charge": q_star,
        "decoupling_charge_error": abs(q_star - 0.5),
    }
    result = ResultRecord(
        scenario=cfg.scenario,
        config=cfg.echo(),
        aggregate={**main.model_dump(mode="json"), "advantage_rad": main.advantage},
        oracle=oracle,
    )
    lines = [
        f"decoupling eps/delta={row['epsilon_over_delta']:g}: charge gap "
        f"{row['charge_gap']:.3e} bias gap {row['bias_gap']:.3e} rad/ns"
        for row in rows
    ]
    return ScenarioResult(result, table, lines)


_RUNNERS: dict[str, Callable[[ScenarioConfig], ScenarioResult]] = {
    "phase-gate": _run_phase_gate,
    "write": _run_write,
    "read": _run_read,
    "lz-scan": _run_lz_scan,
    "sweep-time": _run_sweep_time,
    "decoupling-compare": _run_decoupling_compare,
}


def run_scenario(cfg: ScenarioConfig) -> ScenarioResult:
    logger.info("running scenario %s (seed %d, runs %d)", cfg.scenario, cfg.seed, cfg.runs)
    started = time.perf_counter()
    result = _RUNNERS[cfg.scenario](cfg)
    if result.table is not None:
        result.record.table_columns = list(result.table.columns)
    result.record.wall_clock_s = time.perf_counter() - started
    logger.info("scenario %s finished in %.2f s", cfg.scenario, result.record.wall_clock_s)
    return result


def write_artifacts(result: ScenarioResult, out_dir: str | Path, stem: str, fmt: str) -> list[Path]:
    """<stem>.json always unless fmt is csv and a table exists; <stem>.csv for tables."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    has_table = result.table is not None
    if fmt in ("json", "both") or not has_table:
        if fmt == "csv":
            logger.warning("scenario %s has no table; writing JSON instead", result.record.scenario)
        path = out / f"{stem}.json"
        path.write_text(result.record.model_dump_json(indent=2), encoding="utf-8")
        written.append(path)
    if has_table and fmt in ("csv", "both"):
        path = out / f"{stem}.csv"
        result.table.to_csv(path, index=False, float_format="%.17g")
        written.append(path)
    return written
