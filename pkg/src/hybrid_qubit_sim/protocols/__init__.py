from .ideal import ideal_circuit_backend
from .measurement import MeasurementBranch, MeasurementModel, measure
from .phase_gate import idle_protocol, phase_gate_protocol
from .readout import (
    ReadStage,
    complete_read,
    default_read_schedules,
    read_protocol,
    run_read_dynamics,
)
from .records import BranchResult, ProtocolEvent, ProtocolRecord
from .transfer import WriteStage, complete_write, run_write_dynamics, write_protocol

__all__ = [
    "BranchResult",
    "MeasurementBranch",
    "MeasurementModel",
    "ProtocolEvent",
    "ProtocolRecord",
    "ReadStage",
    "WriteStage",
    "complete_read",
    "complete_write",
    "default_read_schedules",
    "ideal_circuit_backend",
    "idle_protocol",
    "measure",
    "phase_gate_protocol",
    "read_protocol",
    "run_read_dynamics",
    "run_write_dynamics",
    "write_protocol",
]
