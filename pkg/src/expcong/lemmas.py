"""Enumeration checks of the solution-count estimates.

Everything here is computed from the exact table ``N[c]`` of solution
counts for every right-hand side ``c``; deviations and the variance
functional are kept as :class:`fractions.Fraction` so bound comparisons
have no rounding margin.
"""
from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .ff import FieldCtx
from .numth import order_of
from .solver import WindowTooLarge

_CHUNK = 1 << 22


def _powers(base: int, start: int, n: int, p: int) -> np.ndarray:
    out = np.empty(n, dtype=np.int64)
    e = start % p
    for i in range(n):
        out[i] = e
        e = e * base % p
    return out


def solution_counts(ctx: FieldCtx, a, b, f, g, r: int) -> np.ndarray:
    """``N[c]`` for every ``c`` in F_p, x over a full period of f and y < r."""
    p = ctx.p
    s, t = order_of(p, f % p), order_of(p, g % p)
    if r > t:
        raise WindowTooLarge(f"window {r} exceeds order t = {t}")
    if r < 1:
        raise ValueError("window must be positive")
    xs = _powers(f, a, s, p)
    ys = _powers(g, b, r, p)
    counts = np.zeros(p, dtype=np.int64)
    step = max(1, _CHUNK // s)
    for lo in range(0, r, step):
        sums = np.add.outer(xs, ys[lo : lo + step]) % p
        counts += np.bincount(sums.ravel(), minlength=p)
    return counts


@dataclass
class VarianceReport:
    W: Fraction
    bound: int
    ratio: float
    r: int
    s: int
    total: int  # sum of N over all c

    @property
    def holds(self) -> bool:
        return self.W <= self.bound


@dataclass
class DeviationReport:
    r: int
    s: int
    expected: Fraction
    max_abs_dev: Fraction
    normalized_dev: float
    per_c_counts: Optional[list] = None


def variance_from_counts(counts, q: int, r: int, s: int) -> Fraction:
    rs = r * s
    # sum over all c of (N - rs/q)^2, scaled by q^2 to stay integral
    return Fraction(sum((q * int(n) - rs) ** 2 for n in counts), q * q)


def verify_variance_bound(ctx: FieldCtx, a, b, f, g, r: int) -> VarianceReport:
    counts = solution_counts(ctx, a, b, f, g, r)
    q = ctx.p
    s = order_of(q, f % q)
    W = variance_from_counts(counts, q, r, s)
    return VarianceReport(W, q * r, float(W / (q * r)), r, s, int(counts.sum()))


def chebyshev_violations(counts, q: int, r: int, s: int, delta) -> int:
    """``#{c : |N - rs/q| >= delta*sqrt(r)}`` over all of F_q, compared exactly."""
    d2 = Fraction(delta) ** 2
    rs = r * s
    return sum(1 for n in counts if (q * int(n) - rs) ** 2 >= d2 * q * q * r)


def verify_lemma1(ctx: FieldCtx, a, b, f, g, r: int, scan: str = "all",
                  samples: int = 256, seed: int = 0, keep_counts: bool = False) -> DeviationReport:
    """Largest deviation of N from rs/(q-1) over nonzero c (all of them, or a seeded sample)."""
    counts = solution_counts(ctx, a, b, f, g, r)
    q = ctx.p
    s = order_of(q, f % q)
    expected = Fraction(r * s, q - 1)
    if scan == "all":
        cs = range(1, q)
    elif scan == "sample":
        cs = sorted(random.Random(seed).sample(range(1, q), min(samples, q - 1)))
    else:
        raise ValueError(f"unknown scan mode {scan!r}")
    dev = max(abs(int(counts[c]) - expected) for c in cs)
    per_c = [(c, int(counts[c])) for c in cs] if keep_counts else None
    return DeviationReport(r, s, expected, dev, float(dev) / (math.sqrt(q) * math.log(q)), per_c)


def typical_coverage(ctx: FieldCtx, a, b, f, g, r: int) -> float:
    counts = solution_counts(ctx, a, b, f, g, r)
    return int(np.count_nonzero(counts[1:])) / (ctx.p - 1)


def report_record(kind: str, ctx: FieldCtx, a, b, f, g, report) -> str:
    """One-line JSON record of a report; Fractions are written as "num/den"."""
    rec = {"kind": kind, "p": ctx.p, "a": a, "b": b, "f": f, "g": g}
    if isinstance(report, float):
        rec["coverage"] = report
    else:
        for k, v in vars(report).items():
            if isinstance(v, Fraction):
                v = f"{v.numerator}/{v.denominator}"
            rec[k] = v
    return json.dumps(rec)
