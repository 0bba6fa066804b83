"""Solving ``a*f**x + b*g**y = c`` over a prime field.

Two routes are provided. :func:`oracle_solve` is a meet-in-the-middle
ground truth in O(s + t). :func:`solve_worst_case` and
:func:`solve_typical` scan a short window of exponents on the
smaller-order side and take a baby-step giant-step discrete log on the
other side for each candidate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .ff import Elt, FieldCtx, make_ctx
from .numth import bsgs_dlog, order_of


class WindowTooLarge(ValueError):
    pass


class Mode(str, Enum):
    WORST_CASE = "worst_case"
    TYPICAL = "typical"


class Verdict(str, Enum):
    SOLUTION = "solution"
    NO_SOLUTION = "no_solution"
    NO_SOLUTION_IN_WINDOW = "no_solution_in_window"


@dataclass(frozen=True)
class EquationInstance:
    ctx: FieldCtx
    a: Elt
    b: Elt
    c: Elt
    f: Elt
    g: Elt
    s: int
    t: int

    @classmethod
    def create(cls, p_or_ctx, a, b, c, f, g) -> "EquationInstance":
        ctx = p_or_ctx if isinstance(p_or_ctx, FieldCtx) else make_ctx(p_or_ctx)
        p = ctx.p
        vals = [v % p for v in (a, b, c, f, g)]
        if 0 in vals:
            raise ValueError("a, b, c, f, g must all be nonzero mod p")
        a, b, c, f, g = vals
        return cls(ctx, a, b, c, f, g, order_of(p, f), order_of(p, g))

    @property
    def p(self) -> int:
        return self.ctx.p

    def holds(self, x: int, y: int) -> bool:
        p = self.p
        return (self.a * pow(self.f, x, p) + self.b * pow(self.g, y, p) - self.c) % p == 0

    def swapped(self) -> "EquationInstance":
        return EquationInstance(self.ctx, self.b, self.a, self.c, self.g, self.f, self.t, self.s)


@dataclass
class OpStats:
    dl_calls: int = 0
    group_mults: int = 0
    table_ops: int = 0


@dataclass
class SolveOutcome:
    verdict: Verdict
    x: Optional[int] = None
    y: Optional[int] = None
    stats: OpStats = field(default_factory=OpStats)

    @property
    def solved(self) -> bool:
        return self.verdict is Verdict.SOLUTION


@dataclass(frozen=True)
class SearchPlan:
    swapped: bool
    r_raw: int
    y_bound: int
    mode: Mode
    guaranteed: bool
    C: float
    order: int  # order of the searched exponent's base


def window_size(p: int, s_large: int, mode: Mode, C: float = 1.0) -> int:
    """Window length before clamping; ``s_large`` is the larger of the two orders."""
    if mode is Mode.WORST_CASE:
        return math.ceil(C * p * math.sqrt(p) * math.log(p) / s_large)
    return math.ceil(p * p * math.log(p) / (s_large * s_large))


def make_plan(inst: EquationInstance, mode=Mode.WORST_CASE, C: float = 1.0) -> SearchPlan:
    if C <= 0:
        raise ValueError("C must be positive")
    mode = Mode(mode)
    swapped = inst.t > inst.s
    large, small = (inst.t, inst.s) if swapped else (inst.s, inst.t)
    r_raw = window_size(inst.p, large, mode, C)
    return SearchPlan(swapped, r_raw, min(r_raw, small), mode, r_raw <= small, C, small)


def oracle_solve(inst: EquationInstance) -> SolveOutcome:
    """Exhaustive meet-in-the-middle; smallest y, then smallest x."""
    p = inst.p
    stats = OpStats()
    table: dict[int, int] = {}
    if inst.s <= inst.t:
        # tabulate x side, scan y
        e = inst.a
        for x in range(inst.s):
            table.setdefault(e, x)
            e = e * inst.f % p
        stats.group_mults += inst.s
        stats.table_ops += inst.s
        e = inst.b
        for y in range(inst.t):
            stats.table_ops += 1
            x = table.get((inst.c - e) % p)
            if x is not None:
                return SolveOutcome(Verdict.SOLUTION, x, y, stats)
            e = e * inst.g % p
            stats.group_mults += 1
        return SolveOutcome(Verdict.NO_SOLUTION, stats=stats)
    # tabulate y side; scan every x to keep the (y, x) ordering
    e = inst.b
    for y in range(inst.t):
        table.setdefault(e, y)
        e = e * inst.g % p
    stats.group_mults += inst.t
    stats.table_ops += inst.t
    best = None
    e = inst.a
    for x in range(inst.s):
        stats.table_ops += 1
        y = table.get((inst.c - e) % p)
        if y is not None and (best is None or y < best[1]):
            best = (x, y)
        e = e * inst.f % p
        stats.group_mults += 1
    if best is None:
        return SolveOutcome(Verdict.NO_SOLUTION, stats=stats)
    return SolveOutcome(Verdict.SOLUTION, best[0], best[1], stats)


def count_solutions(inst: EquationInstance, r: int) -> int:
    """Number of (x, y) with 0 <= x < s, 0 <= y < r solving the equation."""
    if r > inst.t:
        raise WindowTooLarge(f"window {r} exceeds order t = {inst.t}")
    if r < 1:
        raise ValueError("window must be positive")
    p = inst.p
    values = set()
    e = inst.a
    for _ in range(inst.s):
        values.add(e)
        e = e * inst.f % p
    n = 0
    e = inst.b
    for _ in range(r):
        if (inst.c - e) % p in values:
            n += 1
        e = e * inst.g % p
    return n


def scan_window(inst: EquationInstance, y_start: int, y_stop: int, stats: OpStats) -> Optional[tuple[int, int]]:
    """Per-y discrete-log scan over ``y_start <= y < y_stop``; first hit wins."""
    p = inst.p
    a_inv = pow(inst.a, -1, p)
    gy = pow(inst.g, y_start, p)
    stats.group_mults += y_start.bit_length()
    for y in range(y_start, y_stop):
        if y > y_start:
            gy = gy * inst.g % p
            stats.group_mults += 1
        h = a_inv * (inst.c - inst.b * gy) % p
        stats.group_mults += 2
        if h == 0:
            continue  # c == b*g**y; zero is never a power of f
        stats.dl_calls += 1
        x = bsgs_dlog(inst.ctx, inst.f, inst.s, h, stats)
        if x is not None:
            return x, y
    return None


def solve_with_plan(inst: EquationInstance, plan: SearchPlan, safe_mode: bool = True) -> SolveOutcome:
    work = inst.swapped() if plan.swapped else inst
    stats = OpStats()
    hit = scan_window(work, 0, plan.y_bound, stats)
    if hit is None and plan.y_bound < work.t:
        if not safe_mode:
            return SolveOutcome(Verdict.NO_SOLUTION_IN_WINDOW, stats=stats)
        hit = scan_window(work, plan.y_bound, work.t, stats)
    if hit is None:
        return SolveOutcome(Verdict.NO_SOLUTION, stats=stats)
    x, y = hit
    if plan.swapped:
        x, y = y, x
    return SolveOutcome(Verdict.SOLUTION, x, y, stats)


def solve_worst_case(inst: EquationInstance, C: float = 1.0, safe_mode: bool = True) -> SolveOutcome:
    return solve_with_plan(inst, make_plan(inst, Mode.WORST_CASE, C), safe_mode)


def solve_typical(inst: EquationInstance, safe_mode: bool = True) -> SolveOutcome:
    return solve_with_plan(inst, make_plan(inst, Mode.TYPICAL), safe_mode)
