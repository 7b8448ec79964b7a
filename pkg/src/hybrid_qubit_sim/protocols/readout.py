"""Read: transfer the topological state onto flux qubit 2 through flux qubit 1.

Tensor order topological (x) qubit 1 (x) qubit 2; qubit 2 is written in its energy
basis and idles at its optimal point throughout. Stages:

  1. couple (q_ext 1/2 -> 0) at point A, eps_A < 0
  2. sweep A -> anti-crossing: n_p = 0 follows the ground state, n_p = 1 keeps its
     diabatic state D_A since its splitting vanishes
  3. exchange pulse of 1/(2 Omega), resonant only for the n_p = 0 branch
  4. sweep anti-crossing -> B = -A: both branches land in the same qubit-1 state
  5. decouple at B, check qubit 1 factors out
  6. Hadamard braid, topological measurement, phase flip on qubit 2 for outcome 1
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from hybrid_qubit_sim.analysis import (
    concurrence,
    entanglement_entropy,
    fidelity,
    fidelity_up_to_local_z,
    reduced_purity,
)
from hybrid_qubit_sim.core.config import settings
from hybrid_qubit_sim.core.errors import ConfigError, FactorizationError
from hybrid_qubit_sim.dynamics import ChargeRamp, SweepSchedule
from hybrid_qubit_sim.fluxmodel import (
    TopFluxFluxParams,
    ac_splitting,
    coupler_hamiltonian,
    detuned_exchange_probability,
    flux_eigenstates,
    flux_hamiltonian,
    swap_duration,
)
from hybrid_qubit_sim.majorana import LogicalState
from hybrid_qubit_sim.protocols.measurement import MeasurementModel, measure
from hybrid_qubit_sim.protocols.records import BranchResult, ProtocolRecord
from hybrid_qubit_sim.protocols.stages import (
    apply_local,
    braid,
    component,
    conditional_ramp_hamiltonian,
    conditional_sweep_hamiltonian,
    parity_projector,
    qubit_energy_hamiltonian,
    run_stage,
    with_spectator,
)
from hybrid_qubit_sim.qmath import (
    SIGMA_Z,
    Operator,
    StateVector,
    basis_state,
    eigh,
    expm_unitary,
    kron,
    partial_trace,
)

logger = logging.getLogger(__name__)

TOPO, QUBIT1, QUBIT2 = 0, 1, 2
DIMS = (2, 2, 2)
RECOMMENDED_BIAS_RATIO = 10.0


@dataclass
class ReadStage:
    """Deterministic pre-measurement part of a read run."""

    target: LogicalState
    state: StateVector
    record: ProtocolRecord
    metrics: dict[str, float] = field(default_factory=dict)


def _pulse_unitary(p: TopFluxFluxParams) -> Operator:
    """P0 (x) W exp(-i H_c t) W^dag + P1 (x) I, W = qubit-1 eigenbasis at eps = 0."""
    t = swap_duration(p.omega_coupler_ghz)
    exchange = expm_unitary(coupler_hamiltonian(p.omega_coupler_ghz), t)
    w = kron(eigh(flux_hamiltonian(0.0, p.delta1))[1], Operator.identity(2))
    lab = w @ exchange @ w.dag()
    u = kron(parity_projector(0), lab) + kron(parity_projector(1), Operator.identity((2, 2)))
    return Operator(u.matrix, DIMS, unitary=True)


def _post_pulse_reference(target: LogicalState, eps_a: float, delta1: float) -> StateVector:
    """a|0, e1(0), g> + b|1, D_A, e>: the ideal post-pulse state."""
    _, e1 = flux_eigenstates(0.0, delta1)
    d_a, _ = flux_eigenstates(eps_a, 0.0)
    g2, e2 = basis_state(2, 0), basis_state(2, 1)
    first = basis_state(2, 0).tensor(e1, g2).amplitudes
    second = basis_state(2, 1).tensor(d_a, e2).amplitudes
    return StateVector(target.c1 * first + target.c2 * second, DIMS)


def run_read_dynamics(
    a: complex,
    b: complex,
    p: TopFluxFluxParams,
    sched_in: SweepSchedule,
    sched_out: SweepSchedule,
    switch_ns: float | None = None,
    tol: float | None = None,
) -> ReadStage:
    target = LogicalState(complex(a), complex(b))
    eps_a, eps_b = sched_in.eps_initial, sched_out.eps_final
    if eps_a >= 0:
        raise ConfigError(f"point A must have eps < 0, got {eps_a}", key="epsilon_over_delta")
    if sched_in.eps_final != 0.0 or sched_out.eps_initial != 0.0:
        raise ConfigError("read sweeps must meet at the anti-crossing eps = 0", key="sweep_shape")
    if abs(eps_a) < RECOMMENDED_BIAS_RATIO * p.delta1:
        logger.warning(
            "point A at |eps|/delta1 = %.2f; qubit-1 branch states overlap below %.0f",
            abs(eps_a) / p.delta1,
            RECOMMENDED_BIAS_RATIO,
        )
    switch_ns = settings.switch_ns if switch_ns is None else switch_ns
    delta1 = p.delta1
    decoupled = ac_splitting(delta1, 0, 0.5)
    spectator = qubit_energy_hamiltonian(p.delta2)
    switch_on = ChargeRamp(0.5, 0.0, switch_ns)
    switch_off = ChargeRamp(0.0, 0.5, switch_ns)

    record = ProtocolRecord("read")
    q1_ground, _ = flux_eigenstates(eps_a, decoupled)
    psi = target.vector().tensor(q1_ground, basis_state(2, 1))

    psi = run_stage(
        record,
        "switch",
        "q_ext 1/2 -> 0 at A",
        with_spectator(conditional_ramp_hamiltonian(delta1, eps_a, switch_on), spectator),
        psi,
        switch_ns,
        tol,
    )
    psi = run_stage(
        record,
        "sweep",
        f"eps {eps_a:.6g} -> 0 ({sched_in.shape})",
        with_spectator(conditional_sweep_hamiltonian(delta1, 0.0, sched_in), spectator),
        psi,
        sched_in.duration,
        tol,
    )

    t_pulse = swap_duration(p.omega_coupler_ghz)
    psi = _pulse_unitary(p) @ psi
    record.log("pulse", f"exchange drive at {p.drive_frequency:.6g} rad/ns", t_pulse)

    reference = _post_pulse_reference(target, eps_a, delta1)
    pulse_raw = fidelity(psi, reference)
    pulse_fid, pulse_angles = fidelity_up_to_local_z(psi, reference, [TOPO])
    metrics: dict[str, float] = {
        "pulse_fidelity_raw": pulse_raw,
        "pulse_fidelity": pulse_fid,
        "topological_entropy_after_pulse": entanglement_entropy(psi, [TOPO]),
    }
    record.phases["post_pulse_branch_phase"] = pulse_angles[0]

    psi = run_stage(
        record,
        "sweep",
        f"eps 0 -> {eps_b:.6g} ({sched_out.shape})",
        with_spectator(conditional_sweep_hamiltonian(delta1, 0.0, sched_out), spectator),
        psi,
        sched_out.duration,
        tol,
    )
    psi = run_stage(
        record,
        "switch",
        "q_ext 0 -> 1/2 at B",
        with_spectator(conditional_ramp_hamiltonian(delta1, eps_b, switch_off), spectator),
        psi,
        switch_ns,
        tol,
    )

    purity = reduced_purity(psi, [QUBIT1])
    metrics["qubit1_purity_at_b"] = purity
    record.log("check", f"qubit-1 purity {purity:.12f}")
    if purity <= 1.0 - settings.purity_tol:
        logger.error("qubit 1 did not factor out at B (purity %.3e)", purity)
        raise FactorizationError(
            f"qubit 1 is still entangled at point B (purity {purity:.9f}); "
            "sweeps were not adiabatic enough"
        )
    metrics["concurrence_topo_qubit2_at_b"] = concurrence(partial_trace(psi, [TOPO, QUBIT2]))
    metrics["concurrence_expected"] = 2.0 * abs(target.c1) * abs(target.c2)

    entangling = sched_in.duration + t_pulse
    metrics.update(
        {
            "entangling_stage_ns": entangling,
            "coherence_budget_ns": settings.coherence_budget_ns,
            "coherence_fraction": entangling / settings.coherence_budget_ns,
            "pulse_ns": t_pulse,
            "odd_branch_detuning": p.odd_branch_detuning,
            "detuned_rabi_error": detuned_exchange_probability(
                p.omega_coupler_ghz, p.odd_branch_detuning, t_pulse
            ),
        }
    )
    logger.info(
        "read dynamics done: post-pulse overlap %.6f, concurrence %.6f, entangling stage %.1f ns",
        pulse_fid,
        metrics["concurrence_topo_qubit2_at_b"],
        entangling,
    )
    return ReadStage(target, psi, record, metrics)


def complete_read(
    stage: ReadStage, model: MeasurementModel, correction: str = "phase-flip"
) -> ProtocolRecord:
    """Hadamard braid, topological measurement, feed-forward on qubit 2, scoring."""
    record = ProtocolRecord(
        protocol=stage.record.protocol,
        events=list(stage.record.events),
        phases=dict(stage.record.phases),
        metrics={**stage.record.metrics, **stage.metrics},
        elapsed_ns=stage.record.elapsed_ns,
    )
    record.flags.append(
        "outcome-1 correction is a phase flip (Z) on qubit 2; a bit flip (NOT) does not "
        "recover the transferred state"
    )
    psi = braid(record, "H", stage.state)
    record.log("measure", f"topological qubit via qubit 1 ({model.mode})")
    rho1 = partial_trace(psi, [QUBIT1])
    q1_state = eigh(rho1)[1].matrix[:, -1]
    target = stage.target.vector()
    flip = SIGMA_Z if correction == "phase-flip" else Operator(np.array([[0, 1], [1, 0]]), (2,))

    results: list[BranchResult] = []
    for branch in measure(psi, TOPO, model, "logical"):
        if branch.state is None:
            results.append(BranchResult(branch.outcome, branch.probability, None))
            continue
        rest = component(branch.state, TOPO, np.eye(2)[branch.outcome])
        q2 = component(rest, 0, q1_state)
        if branch.outcome == 1:
            q2 = apply_local(record, "correct", f"{correction} on qubit 2", flip, q2, 0)
        f_raw = fidelity(q2, target)
        f_corr, angles = fidelity_up_to_local_z(q2, target, [0])
        results.append(
            BranchResult(branch.outcome, branch.probability, q2, f_raw, f_corr, angles)
        )
        record.phases[f"virtual_z_outcome_{branch.outcome}"] = angles[0]
    record.add_branches(results)
    return record.validate()


def read_protocol(
    a: complex,
    b: complex,
    p: TopFluxFluxParams,
    sched_in: SweepSchedule,
    sched_out: SweepSchedule,
    model: MeasurementModel,
    switch_ns: float | None = None,
    tol: float | None = None,
) -> ProtocolRecord:
    return complete_read(run_read_dynamics(a, b, p, sched_in, sched_out, switch_ns, tol), model)


def default_read_schedules(eps_a: float, sweep_ns: float) -> tuple[SweepSchedule, SweepSchedule]:
    """Cosine sweeps A -> 0 -> B = -A."""
    if eps_a >= 0:
        raise ConfigError(f"point A must have eps < 0, got {eps_a}", key="epsilon_over_delta")
    return (
        SweepSchedule(eps_a, 0.0, sweep_ns, "cosine"),
        SweepSchedule(0.0, -eps_a, sweep_ns, "cosine"),
    )
