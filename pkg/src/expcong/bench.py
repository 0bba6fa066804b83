"""Benchmark sweeps over primes with operation counting, and log-log fits."""
from __future__ import annotations

import csv
import math
import time
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .ff import FieldCtx, is_prime
from .numth import element_of_order, factor_group_order
from .solver import (EquationInstance, Mode, make_plan, oracle_solve,
                     solve_with_plan)

BENCH_MODES = ("worst", "typical", "oracle", "quantum-sim")
CSV_COLUMNS = ("p", "s", "t", "mode", "r", "dl_calls", "group_mults", "table_ops", "verdict", "wall_nanos")
MAX_SWEEP_P = 1 << 22


class InsufficientData(ValueError):
    pass


@dataclass
class BenchRow:
    p: int
    s: int
    t: int
    mode: str
    r: int
    dl_calls: int
    group_mults: int
    table_ops: int
    verdict: str
    wall_nanos: int


@dataclass
class FitResult:
    slope: float
    intercept: float
    residual: float
    n: int


def primes_between(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 3), hi + 1) if is_prime(n)]


def log_spaced_primes(lo: int, hi: int, count: int) -> list[int]:
    """``count`` distinct primes, roughly log-uniform in [lo, hi]."""
    out: list[int] = []
    for v in np.geomspace(lo, hi, count):
        n = max(int(v), 3, out[-1] + 1 if out else 0)
        while not is_prime(n):
            n += 1
        if n > hi:
            n = hi
            while n > (out[-1] if out else 2) and not is_prime(n):
                n -= 1
            if n in out or not is_prime(n):
                break
        out.append(n)
    return out


def make_instance(p: int, rng: np.random.Generator, order_divisors=(1, 1)) -> Optional[EquationInstance]:
    """Seeded instance with s = (p-1)/kf and t = (p-1)/kg, or None if they do not divide."""
    kf, kg = order_divisors
    if (p - 1) % kf or (p - 1) % kg:
        return None
    ctx = FieldCtx(p)
    fact = factor_group_order(p)
    f = element_of_order(ctx, (p - 1) // kf, fact, int(rng.integers(1, 1 << 31)))
    g = element_of_order(ctx, (p - 1) // kg, fact, int(rng.integers(1, 1 << 31)))
    a, b, c = (int(v) for v in rng.integers(1, p, size=3))
    return EquationInstance.create(ctx, a, b, c, f, g)


def run_instance(inst: EquationInstance, mode: str, C: float = 1.0, seed=None) -> BenchRow:
    t0 = time.perf_counter_ns()
    if mode == "oracle":
        out = oracle_solve(inst)
        r = inst.t
    elif mode == "quantum-sim":
        from .quantum import quantum_solve_sim

        theorem = "thm4" if inst.s * inst.t > C * inst.p ** 1.5 * math.sqrt(math.log(inst.p)) else "thm3"
        res = quantum_solve_sim(inst, theorem, C, seed=seed, safe_mode=False)
        out = res.outcome
        r = res.prediction.r if theorem == "thm4" else make_plan(inst, Mode.WORST_CASE, C).y_bound
    else:
        plan = make_plan(inst, Mode.WORST_CASE if mode == "worst" else Mode.TYPICAL, C)
        out = solve_with_plan(inst, plan, safe_mode=False)
        r = plan.r_raw
    wall = time.perf_counter_ns() - t0
    st = out.stats
    return BenchRow(inst.p, inst.s, inst.t, mode, r, st.dl_calls, st.group_mults, st.table_ops,
                    out.verdict.value, wall)


def bench_sweep(p_min: int, p_max: int, per_prime: int, mode: str = "worst", seed: int = 0,
                C: float = 1.0, primes: Optional[Sequence[int]] = None,
                order_divisors=(1, 1)) -> list[BenchRow]:
    """Strict-mode solves of ``per_prime`` seeded instances for each prime in range."""
    if mode not in BENCH_MODES:
        raise ValueError(f"mode must be one of {BENCH_MODES}")
    if p_max > MAX_SWEEP_P:
        raise ValueError(f"p_max must not exceed {MAX_SWEEP_P}")
    if primes is None:
        primes = primes_between(p_min, p_max)
    rows = []
    for p in primes:
        for i in range(per_prime):
            rng = np.random.default_rng([seed, p, i])
            inst = make_instance(p, rng, order_divisors)
            if inst is None:
                break
            rows.append(run_instance(inst, mode, C, seed=[seed, p, i]))
    return rows


def fit_exponent(rows: Iterable, metric: str = "dl_calls") -> FitResult:
    """Least-squares slope of log(metric) against log(p)."""
    pts = [(_get(row, "p"), _get(row, metric)) for row in rows]
    if len({p for p, _ in pts}) < 5:
        raise InsufficientData("need at least 5 distinct p values")
    if any(v <= 0 for _, v in pts):
        raise InsufficientData(f"{metric} must be positive to take logarithms")
    x = np.log([float(p) for p, _ in pts])
    y = np.log([float(v) for _, v in pts])
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.sqrt(np.mean((A @ [slope, intercept] - y) ** 2)))
    return FitResult(float(slope), float(intercept), resid, len(pts))


def _get(row, key):
    return getattr(row, key) if hasattr(row, key) else row[key]


def write_csv(rows: Iterable[BenchRow], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for row in rows:
        d = asdict(row)
        w.writerow([d[k] for k in CSV_COLUMNS])


def read_csv(fh) -> list[BenchRow]:
    rows = []
    for rec in csv.DictReader(fh):
        ints = {k: int(rec[k]) for k in CSV_COLUMNS if k not in ("mode", "verdict")}
        rows.append(BenchRow(mode=rec["mode"], verdict=rec["verdict"], **ints))
    return rows
