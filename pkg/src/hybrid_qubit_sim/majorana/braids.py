"""Braid operators and a breadth-first Clifford compiler.

A braid exchanging Majoranas i and j is B(i, j) = exp(pi g_j g_i / 4) = (I + g_j g_i)/sqrt(2);
B(j, i) is its inverse. A BraidWord is applied left to right: the first exchange acts first.
"""

from __future__ import annotations

import logging
import math
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from hybrid_qubit_sim.core.errors import DimensionError, LeakageError, NotRepresentableError
from hybrid_qubit_sim.majorana.algebra import (
    EVEN_SECTOR,
    FOCK_DIMS,
    even_projector,
    majorana_operators,
)
from hybrid_qubit_sim.qmath import Operator
from hybrid_qubit_sim.qmath.linalg import equal_up_to_phase, phase_canonical
from hybrid_qubit_sim.qmath.operators import unitarity_error

logger = logging.getLogger(__name__)

LEAKAGE_TOL = 1e-8

# Nearest-neighbour exchanges and their inverses, in lexicographic order.
GENERATORS: tuple[tuple[int, int], ...] = ((1, 2), (2, 1), (2, 3), (3, 2), (3, 4), (4, 3))


@dataclass(frozen=True)
class BraidWord:
    exchanges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        pairs = tuple((int(i), int(j)) for i, j in self.exchanges)
        for i, j in pairs:
            if not (1 <= i <= 4 and 1 <= j <= 4) or i == j:
                raise DimensionError(f"invalid exchange ({i}, {j})")
        object.__setattr__(self, "exchanges", pairs)

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "BraidWord":
        return cls(tuple(pairs))

    def __len__(self) -> int:
        return len(self.exchanges)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.exchanges)

    def inverse(self) -> "BraidWord":
        return BraidWord(tuple((j, i) for i, j in reversed(self.exchanges)))

    def __str__(self) -> str:
        return " ".join(f"({i},{j})" for i, j in self.exchanges) or "identity"


@lru_cache(maxsize=None)
def braid_operator(i: int, j: int) -> Operator:
    if i == j:
        raise DimensionError(f"cannot exchange Majorana {i} with itself")
    ms = majorana_operators()
    gj_gi = ms.gamma(j) @ ms.gamma(i)
    u = (np.eye(4) + gj_gi.matrix) / math.sqrt(2.0)
    return Operator(u, FOCK_DIMS, unitary=True)


def word_operator(word: BraidWord) -> Operator:
    u = Operator.identity(FOCK_DIMS)
    for i, j in word:
        u = braid_operator(i, j) @ u
    return u


def logical_action(u: Operator) -> Operator:
    """Restriction of a 4x4 Fock-space unitary to span{|00>, |11>}."""
    if u.dim != 4:
        raise DimensionError(f"expected a 4x4 Fock-space operator, got dim {u.dim}")
    proj = even_projector().matrix
    drift = float(np.max(np.abs(u.matrix @ proj @ u.matrix.conj().T - proj)))
    if drift > LEAKAGE_TOL:
        raise LeakageError(f"operator does not conserve fermion parity (drift {drift:.3e})")
    block = u.restrict(EVEN_SECTOR)
    err = unitarity_error(block)
    if err > LEAKAGE_TOL:
        raise LeakageError(f"operator mixes parity sectors (restriction unitarity error {err:.3e})")
    return Operator(block, (2,), unitary=True)


def _group_key(m: np.ndarray) -> tuple[tuple[float, float], ...]:
    canon = phase_canonical(m).reshape(-1)
    return tuple((round(z.real, 8) + 0.0, round(z.imag, 8) + 0.0) for z in canon)


@lru_cache(maxsize=1)
def clifford_group_image() -> dict[tuple, tuple[np.ndarray, BraidWord]]:
    """Every logical matrix (mod phase) reachable by braids, with its canonical word.

    Breadth-first over words extended by GENERATORS in order, so the stored word is the
    shortest one and, among those, the lexicographically smallest.
    """
    gens = [(g, logical_action(braid_operator(*g)).matrix) for g in GENERATORS]
    eye = np.eye(2, dtype=np.complex128)
    table: dict[tuple, tuple[np.ndarray, BraidWord]] = {_group_key(eye): (eye, BraidWord())}
    queue: deque[tuple[np.ndarray, tuple[tuple[int, int], ...]]] = deque([(eye, ())])
    while queue:
        current, word = queue.popleft()
        for g, gm in gens:
            nxt = gm @ current
            key = _group_key(nxt)
            if key not in table:
                table[key] = (nxt, BraidWord(word + (g,)))
                queue.append((nxt, word + (g,)))
    logger.debug("braid group image closed with %d elements", len(table))
    return table


def compile_clifford(target: Operator | np.ndarray) -> BraidWord:
    m = target.matrix if isinstance(target, Operator) else np.asarray(target, dtype=np.complex128)
    if m.shape != (2, 2):
        raise DimensionError(f"target must be a 2x2 logical gate, got shape {m.shape}")
    table = clifford_group_image()
    hit = table.get(_group_key(m))
    if hit is not None and equal_up_to_phase(hit[0], m):
        return hit[1]
    # Rounding keys can split near-boundary values; fall back to a direct comparison.
    for matrix, word in table.values():
        if equal_up_to_phase(matrix, m):
            return word
    raise NotRepresentableError(
        f"gate is not in the {len(table)}-element braid-generated Clifford group"
    )


@lru_cache(maxsize=None)
def compiled_gate(name: str) -> tuple[BraidWord, Operator]:
    """Braid word and its logical action for a named Clifford gate (H, X, Z, S)."""
    s = 1.0 / math.sqrt(2.0)
    targets = {
        "H": np.array([[s, s], [s, -s]]),
        "X": np.array([[0, 1], [1, 0]]),
        "Z": np.array([[1, 0], [0, -1]]),
        "S": np.array([[1, 0], [0, 1j]]),
    }
    if name not in targets:
        raise NotRepresentableError(f"no named Clifford gate {name!r}")
    word = compile_clifford(targets[name])
    return word, logical_action(word_operator(word))
