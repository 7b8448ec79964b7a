from .algebra import (
    EVEN_SECTOR,
    LogicalState,
    MajoranaSet,
    even_projector,
    majorana_operators,
    parity_operator,
)
from .braids import (
    GENERATORS,
    BraidWord,
    braid_operator,
    clifford_group_image,
    compile_clifford,
    compiled_gate,
    logical_action,
    word_operator,
)

__all__ = [
    "EVEN_SECTOR",
    "GENERATORS",
    "BraidWord",
    "LogicalState",
    "MajoranaSet",
    "braid_operator",
    "clifford_group_image",
    "compile_clifford",
    "compiled_gate",
    "even_projector",
    "logical_action",
    "majorana_operators",
    "parity_operator",
    "word_operator",
]
