"""Strategies, the interleave combinator, and surjectivity verification.

Verification runs the belief-state semantics: starting from every possibly
unsolved configuration, each move shrinks (or spreads) the set of states the
switches could still occupy given that the light has not turned on.  The
strategy is valid exactly when the belief set ends empty.  A naive oracle
that enumerates every adversary spin sequence is kept alongside for
cross-validation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .actions import WreathContext
from .errors import BudgetExceeded, ContextMismatch

SOLVED_AT_CAP = 4096  # per-initial-state diagnostics only below this k_size


@dataclass(frozen=True)
class Strategy:
    """A finite sequence of base vectors, stored as K-indices."""

    ctx: WreathContext
    moves: Tuple[int, ...]

    def __len__(self):
        return len(self.moves)

    def coords(self):
        return tuple(self.ctx.decode(m) for m in self.moves)

    def is_palindromic(self) -> bool:
        return self.moves == self.moves[::-1]


def strategy_from_coords(ctx: WreathContext,
                         moves: Iterable[Sequence[int]]) -> Strategy:
    return Strategy(ctx=ctx, moves=tuple(ctx.encode(m) for m in moves))


def interleave(a: Strategy, b: Strategy) -> Strategy:
    """(A, b_1, A, b_2, ..., b_M, A) of length MN + M + N."""
    if a.ctx != b.ctx:
        raise ContextMismatch("interleave requires a common context")
    moves = list(a.moves)
    for bm in b.moves:
        moves.append(bm)
        moves.extend(a.moves)
    return Strategy(ctx=a.ctx, moves=tuple(moves))


@dataclass(frozen=True)
class BeliefState:
    """Subset of K still possibly unsolved, as a bitmask over K-indices."""

    ctx: WreathContext
    mask: int
    step: int = 0

    @property
    def members(self) -> frozenset:
        return frozenset(_bits(self.mask))

    def __len__(self):
        return bin(self.mask).count("1")


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def initial_belief(ctx: WreathContext) -> BeliefState:
    mask = (1 << ctx.k_size) - 1
    for w in ctx.win_set:
        mask &= ~(1 << w)
    return BeliefState(ctx=ctx, mask=mask, step=0)


def _step_mask(ctx: WreathContext, mask: int, move: int, *, spin=True) -> int:
    """One belief transition: apply the move, drop solved states, spread spins."""
    win = ctx.win_set
    out = 0
    if spin:
        orbit = ctx.orbit_masks
        for s in _bits(mask):
            t = ctx.k_mul(s, move)
            if t not in win:
                out |= orbit[t]
    else:
        for s in _bits(mask):
            t = ctx.k_mul(s, move)
            if t not in win:
                out |= 1 << t
    return out


def belief_step(ctx: WreathContext, state: BeliefState, move: int,
                *, spin=True) -> BeliefState:
    new = _step_mask(ctx, state.mask, move, spin=spin)
    # elimination bound: the move itself is injective on K, so at most
    # |win_set| states can disappear in one step
    assert bin(new).count("1") >= len(state) - len(ctx.win_set)
    if spin:
        assert _is_h_closed(ctx, new)
    return BeliefState(ctx=ctx, mask=new, step=state.step + 1)


def _is_h_closed(ctx: WreathContext, mask: int) -> bool:
    orbit = ctx.orbit_masks if ctx.k_size <= 4096 else None
    if orbit is not None:
        return all(orbit[s] & ~mask == 0 for s in _bits(mask))
    return all(
        (mask >> ctx.k_act(h, s)) & 1
        for s in _bits(mask)
        for h in range(ctx.h_order)
    )


@dataclass(frozen=True)
class VerificationReport:
    valid: bool
    length: int
    residual: frozenset
    minimal: bool
    solved_at: Optional[Dict[int, Optional[int]]] = None

    def worst_case_steps(self) -> Optional[int]:
        if not self.valid or self.solved_at is None:
            return None
        return max((v for v in self.solved_at.values() if v is not None),
                   default=0)


def minimal_length_bound(ctx: WreathContext) -> int:
    # each move sends at most |win| surviving initial states into the win set
    unsolved = ctx.k_size - len(ctx.win_set)
    return -(-unsolved // len(ctx.win_set))


def verify(ctx: WreathContext, strategy: Strategy,
           *, spin_period: Optional[int] = None) -> VerificationReport:
    """Belief-state verification; O(N * |K| * |H|).

    With ``spin_period = r`` the adversary may spin only on turns i with
    i % r == 0; moves on other turns face no spin.
    """
    if strategy.ctx.k_size != ctx.k_size:
        raise ContextMismatch("strategy was built for a different context")
    track = ctx.k_size <= SOLVED_AT_CAP
    state = initial_belief(ctx)
    # origins[s] = bitmask of initial states that could currently occupy s
    origins: Dict[int, int] = {s: 1 << s for s in _bits(state.mask)} if track else {}
    solved_at: Dict[int, Optional[int]] = (
        {s: None for s in _bits(state.mask)} if track else {}
    )
    win = ctx.win_set
    for i, move in enumerate(strategy.moves, start=1):
        spin = spin_period is None or i % spin_period == 0
        state = belief_step(ctx, state, move, spin=spin)
        if track:
            new_origins: Dict[int, int] = {}
            for s, mask in origins.items():
                t = ctx.k_mul(s, move)
                if t in win:
                    continue
                if spin:
                    for h in range(ctx.h_order):
                        u = ctx.k_act(h, t)
                        new_origins[u] = new_origins.get(u, 0) | mask
                else:
                    new_origins[t] = new_origins.get(t, 0) | mask
            origins = new_origins
            alive = 0
            for mask in origins.values():
                alive |= mask
            for s in list(solved_at):
                if solved_at[s] is None and not (alive >> s) & 1:
                    solved_at[s] = i
        if state.mask == 0:
            break
    # consume remaining moves for the step count only; belief stays empty
    valid = state.mask == 0
    return VerificationReport(
        valid=valid,
        length=len(strategy),
        residual=state.members,
        minimal=valid and len(strategy) == minimal_length_bound(ctx),
        solved_at=solved_at if track else None,
    )


def verify_naive(ctx: WreathContext, strategy: Strategy,
                 *, budget: int = 10 ** 7,
                 spin_period: Optional[int] = None) -> bool:
    """Explicit enumeration of every adversary spin sequence.

    For each path, the lab-frame state after move j from initial state k is
    act(h_1...h_{j-1}, k * p(m_j)), so k is solved on that path iff it lies in
    act(sigma^-1, win) * p(m_j)^-1 for some prefix j (including j = 0).
    """
    n = len(strategy)
    h_group = ctx.action.h_group
    h_order = h_group.order
    spins_per_turn = []
    for i in range(1, n + 1):
        if spin_period is None or i % spin_period == 0:
            spins_per_turn.append(list(range(h_order)))
        else:
            spins_per_turn.append([0])
    paths = 1
    for options in spins_per_turn:
        paths *= len(options)
        if paths > budget:
            raise BudgetExceeded(f"|H|^N = {paths}+ exceeds budget {budget}")

    win = ctx.win_set
    if ctx.loop_mode:
        # without associativity the projection shortcut is unsound; simulate
        # every initial state along every path directly
        return _naive_simulate(ctx, strategy, spins_per_turn)

    def explore(turn, p_base, spin_sigma, covered):
        # covered: initial states already guaranteed solved along this path
        if len(covered) == ctx.k_size:
            return True
        if turn == n:
            return False
        move = strategy.moves[turn]
        for h in spins_per_turn[turn]:
            # p(m_{j}) = p(m_{j-1}) * act(sigma_{j-1}, k_j); the trailing spin
            # does not touch the projection
            new_base = ctx.k_mul(p_base, ctx.k_act(spin_sigma, move))
            inv_sigma = h_group.inv[spin_sigma]
            solved = {
                ctx.k_mul(ctx.k_act(inv_sigma, w), ctx.k_inv(new_base))
                for w in win
            }
            new_sigma = h_group.mul[spin_sigma][h]
            if not explore(turn + 1, new_base, new_sigma, covered | solved):
                return False
        return True

    covered0 = frozenset(w for w in win)  # m_0 = identity prefix
    if len(covered0) == ctx.k_size:
        return True
    return explore(0, 0, 0, covered0)


def _naive_simulate(ctx: WreathContext, strategy: Strategy, spins_per_turn):
    win = ctx.win_set

    def explore(turn, live):
        # live: current positions of initial states not yet solved on this path
        if not live:
            return True
        if turn == len(strategy.moves):
            return False
        move = strategy.moves[turn]
        moved = [ctx.k_mul(s, move) for s in live]
        moved = [t for t in moved if t not in win]
        if not moved:
            return True
        for h in spins_per_turn[turn]:
            if not explore(turn + 1, [ctx.k_act(h, t) for t in moved]):
                return False
        return True

    start = [s for s in range(ctx.k_size) if s not in win]
    return explore(0, start)
