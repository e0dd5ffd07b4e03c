"""Expected-turn computations and strategy enumeration.

Exact results use rational arithmetic throughout; floating point only ever
appears in Monte Carlo summaries.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .actions import WreathContext
from .errors import BudgetExceeded, ContextTooSmall
from .strategies import Strategy, minimal_length_bound, verify


# ---------------------------------------------------------------------------
# exact expectation under a fixed strategy
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExpectationReport:
    absorbed_probability: Fraction
    conditional_expected_moves: Optional[Fraction]
    stop_time_distribution: Tuple[Tuple[int, Fraction], ...]
    adversary_model: str

    def expected_moves(self) -> Optional[Fraction]:
        return self.conditional_expected_moves


def uniform_adversary(ctx: WreathContext) -> Dict[int, Fraction]:
    n = ctx.h_order
    return {h: Fraction(1, n) for h in range(n)}


def uniform_initial(ctx: WreathContext) -> Dict[int, Fraction]:
    states = [s for s in range(ctx.k_size) if s not in ctx.win_set]
    return {s: Fraction(1, len(states)) for s in states}


def exact_expected_moves(ctx: WreathContext, strategy: Strategy,
                         adversary: Optional[Dict[int, Fraction]] = None,
                         initial: Optional[Dict[int, Fraction]] = None
                         ) -> ExpectationReport:
    """Propagate exact probability mass through the per-step transition.

    Mass sitting at state s is absorbed at step i when the move lands it in
    the winning set; otherwise it spreads over the adversary's spins.
    """
    adversary = adversary if adversary is not None else uniform_adversary(ctx)
    initial = initial if initial is not None else uniform_initial(ctx)
    assert sum(adversary.values()) == 1
    assert sum(initial.values()) == 1
    win = ctx.win_set
    dist: Dict[int, Fraction] = dict(initial)
    absorbed: List[Tuple[int, Fraction]] = []
    for i, move in enumerate(strategy.moves, start=1):
        new_dist: Dict[int, Fraction] = {}
        hit = Fraction(0)
        for s, mass in dist.items():
            t = ctx.k_mul(s, move)
            if t in win:
                hit += mass
                continue
            for h, weight in adversary.items():
                if weight == 0:
                    continue
                u = ctx.k_act(h, t)
                new_dist[u] = new_dist.get(u, Fraction(0)) + mass * weight
        if hit:
            absorbed.append((i, hit))
        dist = new_dist
        if not dist:
            break
    total = sum((mass for _, mass in absorbed), Fraction(0))
    expected = None
    if total > 0:
        expected = sum((Fraction(i) * mass for i, mass in absorbed),
                       Fraction(0)) / total
    adv_label = ("uniform i.i.d." if adversary == uniform_adversary(ctx)
                 else "custom")
    return ExpectationReport(
        absorbed_probability=total,
        conditional_expected_moves=expected,
        stop_time_distribution=tuple(absorbed),
        adversary_model=adv_label,
    )


# ---------------------------------------------------------------------------
# random play
# ---------------------------------------------------------------------------

def random_play_expectation(ctx: WreathContext) -> Fraction:
    """Closed form for uniform moves over K minus the do-nothing move."""
    return Fraction(ctx.k_size - 1)


def _simulate_game(ctx: WreathContext, rng: random.Random,
                   *, exclude_constant_backtrack=False, max_turns=10 ** 6
                   ) -> int:
    k = ctx.k_size
    win = ctx.win_set
    state = rng.randrange(1, k)
    while state in win:
        state = rng.randrange(1, k)
    n_g = ctx.g_group.order
    constants = {ctx.encode([g] * ctx.omega_size): g for g in range(n_g)}
    # hot loop: localize the dense tables (cached on the context) and the rng
    mul = ctx._k_mul_table if ctx._dense else None
    act = ctx._k_act_table if ctx._dense else None
    inv = ctx._k_inv_table if ctx._dense else [ctx.k_inv(a) for a in range(k)]
    randrange = rng.randrange
    h_order = ctx.h_order
    last_constant = None
    for turn in range(1, max_turns + 1):
        move = randrange(1, k)
        if exclude_constant_backtrack and last_constant is not None:
            banned = inv[last_constant]
            while move == banned:
                move = randrange(1, k)
        state = mul[state][move] if mul else ctx.k_mul(state, move)
        if state in win:
            return turn
        last_constant = move if move in constants else None
        spin = randrange(h_order)
        state = act[spin][state] if act else ctx.k_act(spin, state)
    raise RuntimeError("simulation did not terminate")


def monte_carlo_random_play(ctx: WreathContext, trials: int, seed: int) -> float:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    total = sum(_simulate_game(ctx, rng) for _ in range(trials))
    return total / trials


def non_backtracking_expectation(ctx: WreathContext, trials: int, seed: int
                                 ) -> float:
    """Random play that never undoes a constant-vector move immediately."""
    if ctx.k_size <= 2:
        raise ContextTooSmall("non-backtracking play needs |K| > 2")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)
    total = sum(
        _simulate_game(ctx, rng, exclude_constant_backtrack=True)
        for _ in range(trials)
    )
    return total / trials


# ---------------------------------------------------------------------------
# enumeration and counting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationResult:
    strategies: Tuple[Strategy, ...]
    count: int
    canonical_count: Optional[int] = None


def enumerate_strategies(ctx: WreathContext, length: int,
                         *, palindromic=False, minimal_only=False,
                         up_to_h=False, budget: int = 10 ** 7
                         ) -> EnumerationResult:
    """All length-N surjective strategies, by backtracking with belief pruning.

    A prefix is pruned when the remaining moves cannot eliminate the current
    belief set (at most |win_set| states disappear per step).  Palindromic
    enumeration forces the mirrored half of the sequence.
    """
    from .strategies import _step_mask, initial_belief

    if minimal_only and length != minimal_length_bound(ctx):
        return EnumerationResult(strategies=(), count=0,
                                 canonical_count=0 if up_to_h else None)
    k = ctx.k_size
    win_size = len(ctx.win_set)
    found: List[Tuple[int, ...]] = []
    moves: List[int] = []
    visited = 0
    start = initial_belief(ctx).mask

    def dfs(mask, depth):
        nonlocal visited
        visited += 1
        if visited > budget:
            raise BudgetExceeded("enumeration budget exceeded")
        if depth == length:
            if mask == 0:
                found.append(tuple(moves))
            return
        remaining = length - depth
        if bin(mask).count("1") > remaining * win_size:
            return
        mirror = length - 1 - depth
        candidates = [moves[mirror]] if palindromic and mirror < depth else range(k)
        for mv in candidates:
            moves.append(mv)
            dfs(_step_mask(ctx, mask, mv), depth + 1)
            moves.pop()

    dfs(start, 0)
    strategies = tuple(Strategy(ctx=ctx, moves=m) for m in found)
    canonical_count = None
    if up_to_h:
        canonical = {canonicalize_strategy(ctx, s) for s in strategies}
        canonical_count = len(canonical)
    return EnumerationResult(strategies=strategies, count=len(strategies),
                             canonical_count=canonical_count)


def enumerate_strategies_exhaustive(ctx: WreathContext, length: int,
                                    *, palindromic=False) -> List[Strategy]:
    """Plain product enumeration; the cross-check oracle for the backtracker."""
    import itertools

    out = []
    for seq in itertools.product(range(ctx.k_size), repeat=length):
        if palindromic and seq != seq[::-1]:
            continue
        strat = Strategy(ctx=ctx, moves=seq)
        if verify(ctx, strat).valid:
            out.append(strat)
    return out


def canonicalize_strategy(ctx: WreathContext, strat: Strategy) -> Tuple[int, ...]:
    """Lexicographically least image under one global spin applied to all moves."""
    return min(
        tuple(ctx.k_act(h, mv) for mv in strat.moves)
        for h in range(ctx.h_order)
    )


def count_minimal_trivial_strategies(ctx: WreathContext) -> int:
    """Count of minimal strategies when the adversary is trivial."""
    result = enumerate_strategies(ctx, minimal_length_bound(ctx))
    return result.count
