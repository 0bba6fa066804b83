"""Command-line entry point.

Exit codes: 0 solution found, 1 no solution, 2 no solution inside the
window (inconclusive), 3 usage error, 4 internal error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import bench, lemmas
from .ff import FieldError, make_ctx
from .quantum import (THEOREM_MODES, SpaceTooLarge, grover_simulate,
                      quantum_solve_sim)
from .solver import (EquationInstance, Mode, Verdict, WindowTooLarge,
                     count_solutions, make_plan, oracle_solve, solve_with_plan)

EXIT_SOLUTION, EXIT_NO_SOLUTION, EXIT_IN_WINDOW, EXIT_USAGE, EXIT_INTERNAL = range(5)
VERDICT_EXIT = {
    Verdict.SOLUTION: EXIT_SOLUTION,
    Verdict.NO_SOLUTION: EXIT_NO_SOLUTION,
    Verdict.NO_SOLUTION_IN_WINDOW: EXIT_IN_WINDOW,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get("EXPCONG_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"EXPCONG_SEED must be an integer, got {raw!r}")


def _instance_args(p, need_c=True):
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    if need_c:
        p.add_argument("--c", type=int, required=True)
    p.add_argument("--f", type=int, required=True)
    p.add_argument("--g", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="expcong", description="Solve a*f^x + b*g^y = c over F_p.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("solve")
    _instance_args(sp)
    sp.add_argument("--mode", choices=("worst", "typical", "oracle", "quantum-sim"), default="worst")
    sp.add_argument("--theorem", choices=THEOREM_MODES, default="thm3",
                    help="quantum-sim only: which quantum search to simulate")
    sp.add_argument("--C", type=float, default=1.0)
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--safe", dest="safe", action="store_true", default=True)
    g.add_argument("--strict", dest="safe", action="store_false")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--no-timing", action="store_true")

    cp = sub.add_parser("count")
    _instance_args(cp)
    cp.add_argument("--r", type=int, required=True)

    vp = sub.add_parser("verify")
    vp.add_argument("what", choices=("lemma1", "variance", "coverage"))
    _instance_args(vp, need_c=False)
    vp.add_argument("--r", type=int, default=None, help="window; defaults to the typical-case window")
    vp.add_argument("--scan", choices=("all", "sample"), default="all")
    vp.add_argument("--samples", type=int, default=256)
    vp.add_argument("--seed", type=int, default=None)

    gp = sub.add_parser("grover")
    gp.add_argument("--r", type=int)
    src = gp.add_mutually_exclusive_group(required=True)
    src.add_argument("--marked-list", type=str, help="comma-separated marked indices")
    src.add_argument("--instance", type=str, help="p,a,b,c,f,g")
    gp.add_argument("--iterations", type=int, default=None)
    gp.add_argument("--theorem", choices=THEOREM_MODES, default="thm3")
    gp.add_argument("--C", type=float, default=1.0)
    gp.add_argument("--seed", type=int, default=None)

    bp = sub.add_parser("bench")
    bp.add_argument("--p-min", type=int, required=True)
    bp.add_argument("--p-max", type=int, required=True)
    bp.add_argument("--per-prime", type=int, default=1)
    bp.add_argument("--num-primes", type=int, default=None,
                    help="sweep this many log-spaced primes instead of every prime")
    bp.add_argument("--mode", choices=bench.BENCH_MODES, default="worst")
    bp.add_argument("--C", type=float, default=1.0)
    bp.add_argument("--order-divisors", type=str, default="1,1",
                    help="kf,kg: use s = (p-1)/kf and t = (p-1)/kg")
    bp.add_argument("--seed", type=int, default=None)
    bp.add_argument("--out", type=str, default="-")

    fp = sub.add_parser("fit")
    fp.add_argument("--in", dest="inp", required=True)
    fp.add_argument("--metric", choices=("dl_calls", "group_mults"), default="dl_calls")
    return parser


def _int_list(text: str, n=None) -> list[int]:
    try:
        vals = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}")
    if n is not None and len(vals) != n:
        raise UsageError(f"expected {n} integers, got {len(vals)}")
    return vals


def _make_instance(p, a, b, c, f, g) -> EquationInstance:
    try:
        ctx = make_ctx(p)
    except FieldError as exc:
        raise UsageError(str(exc))
    try:
        return EquationInstance.create(ctx, a, b, c, f, g)
    except ValueError as exc:
        raise UsageError(str(exc))


def cmd_solve(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    inst = _make_instance(args.p, args.a, args.b, args.c, args.f, args.g)
    t0 = time.perf_counter_ns()
    if args.mode == "oracle":
        res = oracle_solve(inst)
        r, guaranteed = inst.t, True
    elif args.mode == "quantum-sim":
        q = quantum_solve_sim(inst, args.theorem, args.C, seed=seed, safe_mode=args.safe)
        res = q.outcome
        r, guaranteed = q.prediction.r, q.prediction.applicable
    else:
        plan = make_plan(inst, Mode.WORST_CASE if args.mode == "worst" else Mode.TYPICAL, args.C)
        res = solve_with_plan(inst, plan, args.safe)
        r, guaranteed = plan.r_raw, plan.guaranteed
    wall = time.perf_counter_ns() - t0
    rec = {"p": inst.p, "a": inst.a, "b": inst.b, "c": inst.c, "f": inst.f, "g": inst.g,
           "mode": args.mode, "verdict": res.verdict.value, "x": res.x, "y": res.y,
           "r": r, "guaranteed": guaranteed, "dl_calls": res.stats.dl_calls,
           "group_mults": res.stats.group_mults, "seed": seed}
    if not args.no_timing:
        rec["wall_nanos"] = wall
    if args.json:
        print(json.dumps(rec), file=out)
    elif res.solved:
        print(f"x={res.x} y={res.y}", file=out)
    else:
        print(res.verdict.value, file=out)
    return VERDICT_EXIT[res.verdict]


def cmd_count(args, out) -> int:
    inst = _make_instance(args.p, args.a, args.b, args.c, args.f, args.g)
    try:
        print(count_solutions(inst, args.r), file=out)
    except (WindowTooLarge, ValueError) as exc:
        raise UsageError(str(exc))
    return 0


def cmd_verify(args, out) -> int:
    inst = _make_instance(args.p, args.a, args.b, 1, args.f, args.g)
    r = args.r
    if r is None:
        r = make_plan(inst, Mode.TYPICAL).y_bound
    ctx = inst.ctx
    fn = {
        "variance": lambda: lemmas.verify_variance_bound(ctx, inst.a, inst.b, inst.f, inst.g, r),
        "lemma1": lambda: lemmas.verify_lemma1(ctx, inst.a, inst.b, inst.f, inst.g, r, args.scan,
                                               args.samples, _default_seed() if args.seed is None else args.seed),
        "coverage": lambda: lemmas.typical_coverage(ctx, inst.a, inst.b, inst.f, inst.g, r),
    }[args.what]
    try:
        report = fn()
    except (WindowTooLarge, ValueError) as exc:
        raise UsageError(str(exc))
    print(lemmas.report_record(args.what, ctx, inst.a, inst.b, inst.f, inst.g, report), file=out)
    return 0


def cmd_grover(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    if args.instance:
        inst = _make_instance(*_int_list(args.instance, 6))
        q = quantum_solve_sim(inst, args.theorem, args.C, seed=seed)
        rec = {"verdict": q.outcome.verdict.value, "x": q.outcome.x, "y": q.outcome.y,
               "window": q.prediction.r, "predicted_queries": q.prediction.predicted_queries,
               "applicable": q.prediction.applicable, "oracle_queries": q.oracle_queries, "seed": seed}
        print(json.dumps(rec), file=out)
        return VERDICT_EXIT[q.outcome.verdict]
    if args.r is None:
        raise UsageError("--r is required with --marked-list")
    marked = _int_list(args.marked_list)
    if any(not 0 <= y < args.r for y in marked):
        raise UsageError("marked indices must lie in [0, r)")
    k = args.iterations
    if k is None:
        from .quantum import optimal_iterations
        k = optimal_iterations(args.r, max(1, len(set(marked))))
    run = grover_simulate(args.r, marked, k, seed)
    rec = {"r": run.r, "m": len(run.marked), "iterations": run.iterations,
           "success_prob": run.success_prob, "sampled_y": run.sampled_y,
           "oracle_queries": run.oracle_queries, "seed": seed}
    print(json.dumps(rec), file=out)
    return 0


def cmd_bench(args, out) -> int:
    seed = _default_seed() if args.seed is None else args.seed
    divs = tuple(_int_list(args.order_divisors, 2))
    if args.p_min > args.p_max:
        rows = []
    else:
        primes = None
        if args.num_primes:
            primes = bench.log_spaced_primes(args.p_min, args.p_max, args.num_primes)
        rows = bench.bench_sweep(args.p_min, args.p_max, args.per_prime, args.mode, seed,
                                 args.C, primes, divs)
    if args.out == "-":
        bench.write_csv(rows, out)
    else:
        with open(args.out, "w", newline="") as fh:
            bench.write_csv(rows, fh)
    return 0


def cmd_fit(args, out) -> int:
    try:
        with open(args.inp, newline="") as fh:
            rows = bench.read_csv(fh)
    except OSError as exc:
        raise UsageError(str(exc))
    try:
        fit = bench.fit_exponent(rows, args.metric)
    except bench.InsufficientData as exc:
        raise UsageError(str(exc))
    print(json.dumps({"metric": args.metric, "slope": fit.slope, "intercept": fit.intercept,
                      "residual": fit.residual, "n": fit.n}), file=out)
    return 0


COMMANDS = {"solve": cmd_solve, "count": cmd_count, "verify": cmd_verify,
            "grover": cmd_grover, "bench": cmd_bench, "fit": cmd_fit}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"expcong: error: {exc}", file=err)
        return EXIT_USAGE
    except SpaceTooLarge as exc:
        print(f"expcong: error: {exc}", file=err)
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001
        print(f"expcong: internal error: {exc!r}", file=err)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
