"""Grover-layer simulation of the quantum solvers.

The discrete-log subroutine that decides whether a candidate ``y`` is
extendable to a solution is replaced by a classical call counted as one
oracle query. Amplitude amplification itself is simulated exactly on a
real statevector of length ``r``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional

import numpy as np

from .numth import bsgs_dlog
from .solver import (EquationInstance, Mode, OpStats, SolveOutcome, Verdict,
                     make_plan)

MAX_SPACE = 1 << 20
BBHT_LAMBDA = 6 / 5
BBHT_CUTOFF = 4
RETRY_BUDGET = 3

THEOREM_MODES = ("thm3", "thm4", "thm5", "thm6")


class SpaceTooLarge(ValueError):
    pass


@dataclass
class QueryPrediction:
    mode: str
    r: int
    m: Optional[int]
    predicted_queries: float
    applicable: bool


@dataclass
class GroverRun:
    r: int
    marked: frozenset
    iterations: int
    success_prob: float
    sampled_y: int
    oracle_queries: int


@dataclass
class QuantumResult:
    outcome: SolveOutcome
    prediction: QueryPrediction
    run: Optional[GroverRun]
    oracle_queries: int = 0


def _ordered(inst: EquationInstance) -> tuple[int, int]:
    return max(inst.s, inst.t), min(inst.s, inst.t)


def predict_queries(inst: EquationInstance, mode: str = "thm3", C: float = 1.0) -> QueryPrediction:
    """Predicted oracle-query count for each quantum theorem's search."""
    if mode not in THEOREM_MODES:
        raise ValueError(f"mode must be one of {THEOREM_MODES}")
    q = inst.p
    lq = math.log(q)
    s, t = _ordered(inst)
    if mode in ("thm3", "thm5"):
        plan = make_plan(inst, Mode.WORST_CASE if mode == "thm3" else Mode.TYPICAL, C)
        return QueryPrediction(mode, plan.y_bound, None, math.sqrt(plan.y_bound), True)
    if mode == "thm4":
        r = math.floor(C * q * math.sqrt(q) * math.sqrt(lq) / s)
        applicable = s * t > C * q * math.sqrt(q) * math.sqrt(lq)
    else:
        r = math.floor(q * q * lq / (s * s))
        applicable = s * t > q ** (4 / 3) * lq ** (2 / 3)
    r = max(1, min(r, t))
    m = max(1, r * s // (2 * q))
    return QueryPrediction(mode, r, m, math.sqrt(r / m), applicable)


def closed_form_success(r: int, m: int, k: int) -> float:
    return math.sin((2 * k + 1) * math.asin(math.sqrt(m / r))) ** 2


def optimal_iterations(r: int, m: int) -> int:
    return math.floor(math.pi / 4 * math.sqrt(r / m))


def grover_amplitudes(r: int, mask: np.ndarray, iterations: int) -> np.ndarray:
    """Real amplitudes after ``iterations`` (phase flip on ``mask``, then inversion about the mean)."""
    amp = np.full(r, 1 / math.sqrt(r))
    for _ in range(iterations):
        amp[mask] *= -1
        amp = 2 * amp.mean() - amp
    return amp


def grover_simulate(r: int, marked: Iterable[int], iterations: int, seed=None) -> GroverRun:
    """Run ``iterations`` Grover steps from the uniform state and measure once."""
    if r > MAX_SPACE:
        raise SpaceTooLarge(f"search space {r} exceeds {MAX_SPACE}")
    if r < 1:
        raise ValueError("search space must be nonempty")
    marked = frozenset(marked)
    mask = np.zeros(r, dtype=bool)
    mask[list(marked)] = True
    amp = grover_amplitudes(r, mask, iterations)
    probs = amp * amp
    success = float(probs[mask].sum())
    rng = np.random.default_rng(seed)
    y = int(rng.choice(r, p=probs / probs.sum()))
    return GroverRun(r, marked, iterations, success, y, iterations)


def bbht_search(r: int, is_marked: Callable[[int], bool], seed=None,
                cutoff: int = BBHT_CUTOFF) -> tuple[Optional[int], int]:
    """Search with an unknown number of marked items.

    Returns ``(y, queries)`` where ``y`` is None after ``ceil(cutoff*sqrt(r))``
    rounds without a hit. Each round costs its Grover iterations plus one
    query to check the measured candidate.
    """
    if r > MAX_SPACE:
        raise SpaceTooLarge(f"search space {r} exceeds {MAX_SPACE}")
    mask = np.fromiter((bool(is_marked(y)) for y in range(r)), dtype=bool, count=r)
    rng = np.random.default_rng(seed)
    scale, queries = 1.0, 0
    for _ in range(math.ceil(cutoff * math.sqrt(r))):
        j = int(rng.integers(0, math.ceil(scale)))
        amp = grover_amplitudes(r, mask, j)
        probs = amp * amp
        y = int(rng.choice(r, p=probs / probs.sum()))
        queries += j + 1
        if mask[y]:
            return y, queries
        scale = min(BBHT_LAMBDA * scale, math.sqrt(r))
    return None, queries


@dataclass
class _Search:
    work: EquationInstance
    stats: OpStats = field(default_factory=OpStats)

    def subroutine(self, y: int) -> Optional[int]:
        """Classical stand-in: the x with f**x = a^-1 (c - b g**y), if any."""
        w = self.work
        p = w.p
        h = pow(w.a, -1, p) * (w.c - w.b * pow(w.g, y, p)) % p
        if h == 0:
            return None
        return bsgs_dlog(w.ctx, w.f, w.s, h)


def quantum_solve_sim(inst: EquationInstance, mode: str = "thm3", C: float = 1.0,
                      seed=None, safe_mode: bool = True) -> QuantumResult:
    """Grover search over the planned window, marking y iff the subroutine finds x.

    thm3/thm5 use BBHT since the marked count is unknown; thm4/thm6 run the
    fixed schedule for the promised count, remeasuring up to ``RETRY_BUDGET``
    times before falling back to BBHT.
    """
    pred = predict_queries(inst, mode, C)
    typical = mode in ("thm5", "thm6")
    plan = make_plan(inst, Mode.TYPICAL if typical else Mode.WORST_CASE, C)
    work = inst.swapped() if plan.swapped else inst
    search = _Search(work)
    rng = np.random.default_rng(seed)
    window = pred.r if mode in ("thm4", "thm6") else plan.y_bound
    total_queries = 0
    run = None

    def search_range(lo: int, hi: int):
        nonlocal total_queries, run
        size = hi - lo
        if size > MAX_SPACE:
            raise SpaceTooLarge(f"window {size} exceeds {MAX_SPACE}")
        xs = {y: search.subroutine(lo + y) for y in range(size)}
        marked = {y for y, x in xs.items() if x is not None}
        if mode in ("thm4", "thm6"):
            k = optimal_iterations(size, pred.m)
            for _ in range(RETRY_BUDGET):
                run = grover_simulate(size, marked, k, rng.integers(1 << 63))
                total_queries += k + 1
                if run.sampled_y in marked:
                    return lo + run.sampled_y, xs[run.sampled_y]
        y, used = bbht_search(size, marked.__contains__, rng.integers(1 << 63))
        total_queries += used
        if y is None:
            return None
        return lo + y, xs[y]

    hit = search_range(0, window)
    verdict = None
    if hit is None and window < work.t:
        if safe_mode:
            hit = search_range(window, work.t)
        else:
            verdict = Verdict.NO_SOLUTION_IN_WINDOW
    search.stats.dl_calls = total_queries
    if hit is None:
        out = SolveOutcome(verdict or Verdict.NO_SOLUTION, stats=search.stats)
    else:
        y, x = hit
        if plan.swapped:
            x, y = y, x
        out = SolveOutcome(Verdict.SOLUTION, x, y, search.stats)
    return QuantumResult(out, pred, run, total_queries)
