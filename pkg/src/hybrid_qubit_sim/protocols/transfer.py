"""Write: move an unknown flux-qubit state a|g> + b|e> onto the topological qubit.

Circuit: Hadamard braid on the topological qubit, a parity-controlled NOT on the flux
qubit realised by one bias sweep through the anti-crossing (adiabatic for n_p = 0, fully
diabatic for n_p = 1 where the splitting vanishes), flux measurement in its energy
basis, braid NOT on outcome e.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from hybrid_qubit_sim.analysis import fidelity, fidelity_up_to_local_z
from hybrid_qubit_sim.core.config import settings
from hybrid_qubit_sim.core.errors import ConfigError
from hybrid_qubit_sim.dynamics import (
    ChargeRamp,
    SweepSchedule,
    diabatic_transition_probability,
    evolve_from_ground,
    lz_probability,
)
from hybrid_qubit_sim.fluxmodel import FluxParams, ac_splitting, flux_eigenstates, flux_hamiltonian
from hybrid_qubit_sim.majorana import LogicalState
from hybrid_qubit_sim.protocols.measurement import MeasurementModel, measure
from hybrid_qubit_sim.protocols.records import BranchResult, ProtocolRecord
from hybrid_qubit_sim.protocols.stages import (
    braid,
    component,
    conditional_ramp_hamiltonian,
    conditional_sweep_hamiltonian,
    run_stage,
)
from hybrid_qubit_sim.qmath import Operator, StateVector, basis_state, eigh

logger = logging.getLogger(__name__)

FLUX = 1


@dataclass
class WriteStage:
    """Deterministic pre-measurement part of a write run."""

    target: LogicalState
    state: StateVector
    readout_hamiltonian: Operator
    record: ProtocolRecord
    metrics: dict[str, float] = field(default_factory=dict)


def run_write_dynamics(
    a: complex,
    b: complex,
    p: FluxParams,
    sched: SweepSchedule,
    switch_ns: float | None = None,
    tol: float | None = None,
) -> WriteStage:
    target = LogicalState(complex(a), complex(b))
    if abs(sched.eps_initial) <= p.delta_max:
        raise ConfigError(
            f"write needs |eps_initial| > delta_max, got {abs(sched.eps_initial):.4g}",
            key="epsilon_over_delta",
        )
    if not sched.crosses_zero():
        raise ConfigError(
            "write sweep must cross the anti-crossing at eps = 0", key="epsilon_over_delta"
        )
    switch_ns = settings.switch_ns if switch_ns is None else switch_ns
    decoupled = ac_splitting(p.delta_max, 0, 0.5)
    switch_on = ChargeRamp(0.5, 0.0, switch_ns)
    switch_off = ChargeRamp(0.0, 0.5, switch_ns)

    record = ProtocolRecord("write")
    g_i, e_i = flux_eigenstates(sched.eps_initial, decoupled)
    flux = StateVector(target.c1 * g_i.amplitudes + target.c2 * e_i.amplitudes, (2,))
    psi = basis_state(2, 0).tensor(flux)

    psi = braid(record, "H", psi)
    psi = run_stage(
        record,
        "switch",
        "q_ext 1/2 -> 0",
        conditional_ramp_hamiltonian(p.delta_max, sched.eps_initial, switch_on),
        psi,
        switch_ns,
        tol,
    )
    psi = run_stage(
        record,
        "sweep",
        f"eps {sched.eps_initial:.6g} -> {sched.eps_final:.6g} ({sched.shape})",
        conditional_sweep_hamiltonian(p.delta_max, 0.0, sched),
        psi,
        sched.duration,
        tol,
    )
    psi = run_stage(
        record,
        "switch",
        "q_ext 0 -> 1/2",
        conditional_ramp_hamiltonian(p.delta_max, sched.eps_final, switch_off),
        psi,
        switch_ns,
        tol,
    )

    # Branch bookkeeping: n_p = 0 should follow adiabatically, n_p = 1 flip diabatically.
    metrics: dict[str, float] = {"velocity": sched.velocity}
    for n_p, name in ((0, "even"), (1, "odd")):
        delta = ac_splitting(p.delta_max, n_p, 0.0)
        traj = evolve_from_ground(delta, sched, tol)
        metrics[f"{name}_branch_transition"] = diabatic_transition_probability(
            traj,
            flux_hamiltonian(sched.eps_initial, delta),
            flux_hamiltonian(sched.eps_final, delta),
        )
    metrics["even_branch_lz_analytic"] = lz_probability(p.delta_max, sched.velocity)
    logger.info(
        "write dynamics done: even-branch error %.3e, odd-branch flip %.12f",
        metrics["even_branch_transition"],
        metrics["odd_branch_transition"],
    )
    return WriteStage(target, psi, flux_hamiltonian(sched.eps_final, decoupled), record, metrics)


def complete_write(stage: WriteStage, model: MeasurementModel) -> ProtocolRecord:
    """Measure the flux qubit, feed forward, and score the topological state."""
    record = ProtocolRecord(
        protocol=stage.record.protocol,
        events=list(stage.record.events),
        metrics={**stage.record.metrics, **stage.metrics},
        elapsed_ns=stage.record.elapsed_ns,
    )
    record.log("measure", f"flux qubit, energy basis ({model.mode})")
    flux_vectors = eigh(stage.readout_hamiltonian)[1].matrix
    target = stage.target.vector()
    results: list[BranchResult] = []
    for branch in measure(stage.state, FLUX, model, "energy", stage.readout_hamiltonian):
        if branch.state is None:
            results.append(BranchResult(branch.outcome, branch.probability, None))
            continue
        topo = component(branch.state, FLUX, flux_vectors[:, branch.outcome])
        if branch.outcome == 1:
            topo = braid(record, "X", topo)
            record.log("correct", "NOT on topological qubit (flux outcome e)")
        f_raw = fidelity(topo, target)
        f_corr, angles = fidelity_up_to_local_z(topo, target, [0])
        results.append(
            BranchResult(branch.outcome, branch.probability, topo, f_raw, f_corr, angles)
        )
        record.phases[f"virtual_z_outcome_{branch.outcome}"] = angles[0]
    record.add_branches(results)
    return record.validate()


def write_protocol(
    a: complex,
    b: complex,
    p: FluxParams,
    sched: SweepSchedule,
    model: MeasurementModel,
    switch_ns: float | None = None,
    tol: float | None = None,
) -> ProtocolRecord:
    return complete_write(run_write_dynamics(a, b, p, sched, switch_ns, tol), model)
