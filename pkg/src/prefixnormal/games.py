"""The two prefix normal games.

Variant 1: Alice and Bob alternately pick a free cell of n and set it to 0 or 1;
Alice moves first and wins iff the final word is prefix normal. Solved exactly by
minimax over full cell assignments.

Variant 2: the first 4k cells are 1, the rest are cut into blocks of 2k. Bob picks a
block and sets k of its cells, Alice sets the other k. Alice wins by balancing every
block to exactly k ones; the verifier plays that strategy against every Bob play.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Sequence

from . import budget
from .words import BinaryWord, is_prefix_normal_naive

__all__ = [
    "ALICE",
    "BOB",
    "BlockGameConfig",
    "GameResult",
    "GameState",
    "LemmaViolation",
    "Move",
    "alice_block_strategy",
    "count_block_outcomes",
    "solve_game_v1",
    "solve_position",
    "verify_block_lemma",
]

ALICE = "Alice"
BOB = "Bob"
UNSET = -1


class LemmaViolation(AssertionError):
    pass


@dataclass(frozen=True)
class Move:
    position: int
    value: int

    def __str__(self) -> str:
        return f"{self.position + 1}:{self.value}"


@dataclass(frozen=True)
class GameState:
    cells: tuple[int, ...]

    @classmethod
    def empty(cls, n: int) -> GameState:
        return cls((UNSET,) * n)

    @classmethod
    def parse(cls, text: str) -> GameState:
        """Cells as ``'0'``, ``'1'`` or ``'_'`` for a free cell, e.g. ``"10_0_"``."""
        table = {"0": 0, "1": 1, "_": UNSET}
        try:
            return cls(tuple(table[ch] for ch in text))
        except KeyError as exc:
            raise ValueError(f"bad cell {exc.args[0]!r} in {text!r}") from None

    @property
    def n(self) -> int:
        return len(self.cells)

    @property
    def filled(self) -> int:
        return sum(c != UNSET for c in self.cells)

    @property
    def mover(self) -> str:
        return ALICE if self.filled % 2 == 0 else BOB

    @property
    def finished(self) -> bool:
        return UNSET not in self.cells

    def moves(self) -> Iterator[Move]:
        for i, c in enumerate(self.cells):
            if c == UNSET:
                yield Move(i, 0)
                yield Move(i, 1)

    def play(self, move: Move) -> GameState:
        if self.cells[move.position] != UNSET:
            raise ValueError(f"cell {move.position + 1} is already set")
        cells = list(self.cells)
        cells[move.position] = move.value
        return GameState(tuple(cells))

    def word(self) -> BinaryWord:
        if not self.finished:
            raise ValueError("the game is not over")
        return BinaryWord(self.cells)

    def __str__(self) -> str:
        return "".join("_" if c == UNSET else str(c) for c in self.cells)


@dataclass(frozen=True)
class GameResult:
    winner: str
    principal_variation: tuple[Move, ...] = field(default=())

    @property
    def first_move(self) -> Move | None:
        return self.principal_variation[0] if self.principal_variation else None


@lru_cache(maxsize=1 << 16)
def _final_is_pn(cells: tuple[int, ...]) -> bool:
    return is_prefix_normal_naive(BinaryWord(cells))[0]


class _Solver:
    def __init__(self, memo: bool = True):
        self.table: dict[tuple[int, ...], bool] | None = {} if memo else None

    def alice_wins(self, state: GameState) -> bool:
        table = self.table
        if table is not None:
            hit = table.get(state.cells)
            if hit is not None:
                return hit
        if state.finished:
            result = _final_is_pn(state.cells)
        elif state.mover == ALICE:
            result = any(self.alice_wins(state.play(m)) for m in state.moves())
        else:
            result = all(self.alice_wins(state.play(m)) for m in state.moves())
        if table is not None:
            table[state.cells] = result
        return result

    def variation(self, state: GameState) -> tuple[Move, ...]:
        """The winner picks a winning move; the loser, whose moves all lose, the first one."""
        alice_wins = self.alice_wins(state)
        line = []
        while not state.finished:
            choice = None
            for m in state.moves():
                child_alice_wins = self.alice_wins(state.play(m))
                if child_alice_wins == alice_wins or (state.mover == ALICE) != alice_wins:
                    choice = m
                    break
            line.append(choice)
            state = state.play(choice)
        return tuple(line)


def solve_position(state: GameState | str, memo: bool = True) -> GameResult:
    """Winner of Variant 1 from ``state`` with the mover given by the parity of filled cells."""
    if isinstance(state, str):
        state = GameState.parse(state)
    budget.check(budget.GAME_MAX_N, state.n, "game solve")
    solver = _Solver(memo)
    winner = ALICE if solver.alice_wins(state) else BOB
    return GameResult(winner, solver.variation(state))


def solve_game_v1(n: int, memo: bool = True) -> GameResult:
    if n < 1:
        raise ValueError("n must be at least 1")
    return solve_position(GameState.empty(n), memo=memo)


# -- Variant 2: blocks ---------------------------------------------------------------


@dataclass(frozen=True)
class BlockGameConfig:
    n: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.n % (2 * self.k):
            raise ValueError(f"block length {2 * self.k} does not divide n={self.n}")
        if self.n < 4 * self.k:
            raise ValueError(f"n={self.n} is shorter than the preset prefix of {4 * self.k} ones")

    @property
    def blocks(self) -> int:
        return (self.n - 4 * self.k) // (2 * self.k)

    def block_cells(self, block: int) -> range:
        if not 0 <= block < self.blocks:
            raise IndexError(f"block {block} outside 0..{self.blocks - 1}")
        start = 4 * self.k + 2 * self.k * block
        return range(start, start + 2 * self.k)

    def initial(self) -> tuple[int, ...]:
        return (1,) * (4 * self.k) + (UNSET,) * (self.n - 4 * self.k)

    def outcome_bound(self) -> int:
        return math.comb(2 * self.k, self.k) ** self.blocks


def alice_block_strategy(
    cells: Sequence[int], block: int, config: BlockGameConfig
) -> list[Move]:
    """Alice's reply after Bob half-filled ``block``: bring the block to exactly k ones.

    Bob's cells hold b <= k ones; Alice puts k - b ones in the leftmost free cells and
    zeros in the rest.
    """
    span = config.block_cells(block)
    free = [i for i in span if cells[i] == UNSET]
    if len(free) != config.k:
        raise ValueError(f"block {block} has {len(free)} free cells, expected {config.k}")
    placed = sum(cells[i] == 1 for i in span)
    need = config.k - placed
    return [Move(i, 1 if j < need else 0) for j, i in enumerate(free)]


def _apply(cells: tuple[int, ...], moves: Sequence[Move]) -> tuple[int, ...]:
    out = list(cells)
    for m in moves:
        out[m.position] = m.value
    return tuple(out)


def _bob_choices(cells: tuple[int, ...], config: BlockGameConfig) -> Iterator[tuple[int, list[Move]]]:
    k = config.k
    for block in range(config.blocks):
        span = config.block_cells(block)
        if any(cells[i] != UNSET for i in span):
            continue
        for chosen in itertools.combinations(span, k):
            for values in itertools.product((0, 1), repeat=k):
                yield block, [Move(i, v) for i, v in zip(chosen, values)]


_BLOCK_STATE_BUDGET = 2_000_000


def _check_block_budget(config: BlockGameConfig) -> None:
    per_block = math.comb(2 * config.k, config.k) + 1
    if per_block ** config.blocks > _BLOCK_STATE_BUDGET:
        raise budget.BudgetExceeded(f"block game n={config.n}, k={config.k} is too large to verify exhaustively")


def verify_block_lemma(config: BlockGameConfig) -> bool:
    """Play Alice's balancing strategy against every Bob play; True iff every end word is
    prefix normal.

    Bob's freedom covers which block, which k cells and which values. Positions reached
    through different block orders are explored once.
    """
    _check_block_budget(config)
    seen: set[tuple[int, ...]] = set()
    stack = [config.initial()]
    while stack:
        cells = stack.pop()
        if cells in seen:
            continue
        seen.add(cells)
        if UNSET not in cells:
            if not _final_is_pn(cells):
                return False
            continue
        for block, bob in _bob_choices(cells, config):
            after_bob = _apply(cells, bob)
            stack.append(_apply(after_bob, alice_block_strategy(after_bob, block, config)))
    return True


def count_block_outcomes(config: BlockGameConfig) -> int:
    """Distinct end words when Bob only places k zeros per block and Alice fills ones.

    Raises :class:`LemmaViolation` if some end word is not prefix normal.
    """
    _check_block_budget(config)
    k = config.k
    per_block = []
    for block in range(config.blocks):
        span = config.block_cells(block)
        per_block.append([[Move(i, 0) for i in zeros] for zeros in itertools.combinations(span, k)])
    outcomes = set()
    for plays in itertools.product(*per_block):
        cells = config.initial()
        for block, bob in enumerate(plays):
            cells = _apply(cells, bob)
            cells = _apply(cells, alice_block_strategy(cells, block, config))
        if not _final_is_pn(cells):
            raise LemmaViolation(f"end word {BinaryWord(cells)} is not prefix normal")
        outcomes.add(cells)
    return len(outcomes)
