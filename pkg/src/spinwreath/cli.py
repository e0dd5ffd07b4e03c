"""Command-line interface.

Exit codes: 0 = Yes/valid, 2 = usage error, 3 = No/invalid, 4 = Unknown.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

from . import analysis, decision, fileio, synthesis
from .actions import WreathContext
from .decision import (decide_existence, find_nonexistence_certificate,
                       min_spin_period, render_certificate,
                       validate_certificate)
from .errors import (BudgetExceeded, FileFormatInvalid, ParseError,
                     SpinWreathError, UnknownGroupFamily)
from .groups import normal_subgroups, subgroup_as_group
from .puzzle_parser import parse_expr, build_context
from .strategies import Strategy, verify, verify_naive
from .synthesis import (construct_by_decomposition, construct_involution_pair,
                        construct_pgroup, construct_trivial,
                        synthesize_by_search)

JSON_SCHEMA = "spinwreath.cli/1"
EXIT_YES = 0
EXIT_USAGE = 2
EXIT_NO = 3
EXIT_UNKNOWN = 4


def _default_budget() -> int:
    raw = os.environ.get("SPINWREATH_BUDGET")
    return int(raw) if raw else 10 ** 7


def _progress(args, message: str):
    if not args.quiet:
        print(message, file=sys.stderr)


def _load_context(args) -> WreathContext:
    text = args.puzzle.strip()
    win = None
    if args.win_set:
        win = frozenset(int(tok) for tok in args.win_set.split(","))
    if text.startswith("@") and " " not in text:
        ctx = fileio.load_context(text[1:])
        if win is not None:
            ctx = WreathContext(g_group=ctx.g_group, action=ctx.action,
                                win_set=win, name=ctx.name,
                                allow_non_faithful=ctx.allow_non_faithful)
    else:
        ctx = build_context(parse_expr(text), win_set=win)
    if ctx.loop_mode and not args.loop:
        raise FileFormatInvalid(
            "the switch table is a non-associative loop; pass --loop to "
            "run the loop engine"
        )
    return ctx


def _strategy_payload(strat: Strategy):
    return {
        "length": len(strat),
        "moves": [list(c) for c in strat.coords()],
    }


def _emit(args, *, verdict: str, payload: dict, human: str,
          exit_code: int, started: float, seed: Optional[int] = None,
          states_explored: int = 0) -> int:
    if args.json:
        doc = {
            "schema": JSON_SCHEMA,
            "command": args.command,
            "verdict": verdict,
            "payload": payload,
            "timing_seconds": round(time.perf_counter() - started, 6),
            "budget": {
                "limit": args.budget,
                "states_explored": states_explored,
            },
        }
        if seed is not None:
            doc["seed"] = seed
        print(json.dumps(doc, indent=2))
    elif human:
        print(human)
    return exit_code


def _write_strategy(args, strat: Strategy):
    text = fileio.format_strategy(strat)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    elif not args.json:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_decide(args, started) -> int:
    ctx = _load_context(args)
    result = decide_existence(ctx, spin_period=args.spin_period,
                              budget=args.budget)
    payload = {"context": ctx.name, "k_size": ctx.k_size,
               "conjectural": result.conjectural, "message": result.message}
    lines = [f"{ctx.name}: {result.verdict}"
             + (" (conjectural: loop mode)" if result.conjectural else "")]
    if result.strategy is not None:
        payload["strategy"] = _strategy_payload(result.strategy)
        lines.append(fileio.format_strategy(result.strategy).rstrip())
    if result.certificate is not None:
        cert_text = render_certificate(result.certificate)
        payload["certificate"] = cert_text
        lines.append(cert_text)
    return _emit(args, verdict=result.verdict, payload=payload,
                 human="\n".join(lines), exit_code=result.exit_code,
                 started=started, states_explored=result.states_explored)


def _auto_strategy(ctx: WreathContext, budget: int) -> Strategy:
    try:
        return construct_pgroup(ctx)
    except SpinWreathError:
        return synthesize_by_search(ctx, budget=budget)


def _construct(args, ctx: WreathContext) -> Strategy:
    method = args.method
    if method == "trivial":
        if ctx.h_order != 1:
            raise FileFormatInvalid(
                "--method trivial needs a trivial spin group (G wr 1)")
        perm = list(range(1, ctx.g_group.order))
        return construct_trivial(ctx.g_group, perm, action=ctx.action)
    if method == "involution":
        return construct_involution_pair(ctx.g_group, ctx.action)
    if method == "pgroup":
        return construct_pgroup(ctx)
    if method == "search":
        return synthesize_by_search(ctx, max_depth=args.depth,
                                    budget=args.budget,
                                    spin_period=args.spin_period)
    assert method == "decompose"
    for sub in reversed(normal_subgroups(ctx.g_group)):
        if 1 < len(sub.members) < ctx.g_group.order:
            n_group = subgroup_as_group(sub)
            from .groups import quotient

            quot, _, _ = quotient(ctx.g_group, sub)
            ctx_n = WreathContext(g_group=n_group, action=ctx.action)
            ctx_q = WreathContext(g_group=quot, action=ctx.action)
            strat_n = _auto_strategy(ctx_n, args.budget)
            strat_q = _auto_strategy(ctx_q, args.budget)
            return construct_by_decomposition(ctx, sub, strat_n, strat_q)
    raise FileFormatInvalid(
        "--method decompose needs a proper nontrivial normal subgroup")


def _cmd_construct(args, started) -> int:
    ctx = _load_context(args)
    strat = _construct(args, ctx)
    report = verify(ctx, strat, spin_period=args.spin_period)
    assert report.valid
    _write_strategy(args, strat)
    payload = {"context": ctx.name, "method": args.method,
               "strategy": _strategy_payload(strat),
               "minimal": report.minimal}
    return _emit(args, verdict="yes", payload=payload, human="",
                 exit_code=EXIT_YES, started=started)


def _cmd_verify(args, started) -> int:
    ctx = _load_context(args)
    strat = fileio.load_strategy(args.strategy, ctx)
    if args.naive:
        valid = verify_naive(ctx, strat, budget=args.budget,
                             spin_period=args.spin_period)
        report = None
    else:
        report = verify(ctx, strat, spin_period=args.spin_period)
        valid = report.valid
    payload = {"context": ctx.name, "length": len(strat), "valid": valid}
    if report is not None:
        payload["minimal"] = report.minimal
        payload["residual"] = sorted(report.residual)
    verdict = "valid" if valid else "invalid"
    return _emit(args, verdict=verdict, payload=payload,
                 human=f"{ctx.name}: {len(strat)}-move strategy is {verdict}",
                 exit_code=EXIT_YES if valid else EXIT_NO, started=started)


def _cmd_enumerate(args, started) -> int:
    ctx = _load_context(args)
    result = analysis.enumerate_strategies(
        ctx, args.length, palindromic=args.palindromic,
        minimal_only=args.minimal_only, up_to_h=args.up_to_h,
        budget=args.budget,
    )
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            for strat in result.strategies:
                fh.write(" ".join(
                    ",".join(str(c) for c in move) for move in strat.coords()
                ) + "\n")
    payload = {"context": ctx.name, "length": args.length,
               "count": result.count,
               "canonical_count": result.canonical_count,
               "filters": {"palindromic": args.palindromic,
                           "minimal_only": args.minimal_only,
                           "up_to_h": args.up_to_h}}
    human = f"{ctx.name}: {result.count} strategies of length {args.length}"
    if result.canonical_count is not None:
        human += (f" ({result.canonical_count} up to spins; "
                  "canonicalization applies one global spin to every move)")
    return _emit(args, verdict="ok", payload=payload, human=human,
                 exit_code=EXIT_YES, started=started)


def _cmd_expect(args, started) -> int:
    ctx = _load_context(args)
    seed = args.seed if args.seed is not None else 0
    payload = {"context": ctx.name, "model": args.model}
    if args.model == "strategy":
        if not args.strategy:
            raise FileFormatInvalid("--model strategy needs --strategy FILE")
        strat = fileio.load_strategy(args.strategy, ctx)
        report = analysis.exact_expected_moves(ctx, strat)
        expected = report.conditional_expected_moves
        payload.update({
            "absorbed_probability": str(report.absorbed_probability),
            "expected_moves": None if expected is None else str(expected),
            "adversary": report.adversary_model,
        })
        human = (f"{ctx.name}: absorbed {report.absorbed_probability}, "
                 f"expected moves {expected}")
        seed = None
    elif args.model == "random":
        exact = analysis.random_play_expectation(ctx)
        payload["expected_moves"] = str(exact)
        human = f"{ctx.name}: random play expects {exact} moves"
        seed = None
    elif args.model == "montecarlo":
        mean = analysis.monte_carlo_random_play(ctx, args.trials, seed)
        payload.update({"trials": args.trials, "sample_mean": mean,
                        "closed_form": str(analysis.random_play_expectation(ctx))})
        human = (f"{ctx.name}: sample mean {mean:.4f} over {args.trials} "
                 f"trials (seed {seed})")
    else:
        mean = analysis.non_backtracking_expectation(ctx, args.trials, seed)
        payload.update({"trials": args.trials, "sample_mean": mean})
        human = (f"{ctx.name}: non-backtracking sample mean {mean:.4f} "
                 f"over {args.trials} trials (seed {seed})")
    return _emit(args, verdict="ok", payload=payload, human=human,
                 exit_code=EXIT_YES, started=started, seed=seed)


def _cmd_classify(args, started) -> int:
    ctx = _load_context(args)
    result = decision.classify_abelian(ctx.g_group, ctx.action)
    payload = {"context": ctx.name, "message": result.message}
    if result.certificate is not None:
        payload["certificate"] = render_certificate(result.certificate)
    return _emit(args, verdict=result.verdict, payload=payload,
                 human=f"{ctx.name}: {result.verdict} ({result.message})",
                 exit_code=result.exit_code, started=started)


def _cmd_certify(args, started) -> int:
    ctx = _load_context(args)
    try:
        cert = find_nonexistence_certificate(ctx, budget=args.budget)
    except BudgetExceeded:
        cert = None
    if cert is None:
        return _emit(args, verdict="unknown",
                     payload={"context": ctx.name},
                     human=f"{ctx.name}: no nonexistence certificate found",
                     exit_code=EXIT_UNKNOWN, started=started)
    validated = validate_certificate(ctx, cert, search_budget=args.budget)
    assert validated
    text = render_certificate(cert)
    return _emit(args, verdict="no",
                 payload={"context": ctx.name, "certificate": text,
                          "validated": True},
                 human=text, exit_code=EXIT_NO, started=started)


def _cmd_min_spin_period(args, started) -> int:
    ctx = _load_context(args)
    try:
        r = min_spin_period(ctx, args.bound, budget=args.budget)
    except BudgetExceeded as exc:
        return _emit(args, verdict="unknown",
                     payload={"context": ctx.name, "message": str(exc)},
                     human=f"{ctx.name}: {exc}", exit_code=EXIT_UNKNOWN,
                     started=started)
    if r is None:
        return _emit(args, verdict="no",
                     payload={"context": ctx.name, "bound": args.bound},
                     human=(f"{ctx.name}: no winning spin period up to "
                            f"{args.bound}"),
                     exit_code=EXIT_NO, started=started)
    return _emit(args, verdict="yes",
                 payload={"context": ctx.name, "min_spin_period": r},
                 human=f"{ctx.name}: minimum spin period {r}",
                 exit_code=EXIT_YES, started=started)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("puzzle", help='puzzle expression, e.g. "Z2 wr C4", '
                                       "or @context-file")
    common.add_argument("--json", action="store_true",
                        help="machine-readable output")
    common.add_argument("--quiet", action="store_true",
                        help="suppress progress on stderr")
    common.add_argument("--budget", type=int, default=_default_budget(),
                        help="search/enumeration state budget")
    common.add_argument("--win-set", default=None,
                        help="comma-separated winning base-vector indices")
    common.add_argument("--spin-period", type=int, default=None,
                        help="adversary spins only every r-th turn")
    common.add_argument("--loop", action="store_true",
                        help="allow non-associative switch tables")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized paths")

    parser = argparse.ArgumentParser(
        prog="spinwreath",
        description="spinning-switches puzzles as wreath products",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("decide", parents=[common],
                   help="does a surjective strategy exist?")

    p = sub.add_parser("construct", parents=[common],
                       help="build a verified strategy")
    p.add_argument("--method", required=True,
                   choices=["trivial", "involution", "pgroup", "decompose",
                            "search"])
    p.add_argument("--output", default=None, help="write the strategy file here")
    p.add_argument("--depth", type=int, default=None,
                   help="depth limit for --method search")

    p = sub.add_parser("verify", parents=[common],
                       help="check a strategy file")
    p.add_argument("--strategy", required=True, help="strategy file to check")
    p.add_argument("--naive", action="store_true",
                   help="cross-check by enumerating all spin sequences")

    p = sub.add_parser("enumerate", parents=[common],
                       help="count/list surjective strategies of a length")
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--palindromic", action="store_true")
    p.add_argument("--minimal-only", action="store_true")
    p.add_argument("--up-to-h", action="store_true")
    p.add_argument("--output", default=None,
                   help="stream strategies here, one per line")

    p = sub.add_parser("expect", parents=[common],
                       help="expected number of moves")
    p.add_argument("--model", default="strategy",
                   choices=["strategy", "random", "montecarlo",
                            "nonbacktracking"])
    p.add_argument("--strategy", default=None, help="strategy file")
    p.add_argument("--trials", type=int, default=100000)

    sub.add_parser("classify", parents=[common],
                   help="abelian-switches solvability classification")
    sub.add_parser("certify", parents=[common],
                   help="search for a nonexistence certificate")

    p = sub.add_parser("min-spin-period", parents=[common],
                       help="smallest spin interval that allows a win")
    p.add_argument("--bound", type=int, default=8)

    return parser


_HANDLERS = {
    "decide": _cmd_decide,
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "enumerate": _cmd_enumerate,
    "expect": _cmd_expect,
    "classify": _cmd_classify,
    "certify": _cmd_certify,
    "min-spin-period": _cmd_min_spin_period,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        return _HANDLERS[args.command](args, started)
    except (ParseError, UnknownGroupFamily, FileFormatInvalid) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN
    except SpinWreathError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
