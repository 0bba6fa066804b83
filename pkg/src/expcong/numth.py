"""Factorization, multiplicative orders and subgroup discrete logarithms."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .ff import Elt, FieldCtx, is_prime

TRIAL_BOUND = 10**6

Factorization = list  # list[tuple[int, int]], ascending primes


class ZeroElement(ValueError):
    pass


class NotADivisor(ValueError):
    pass


@lru_cache(maxsize=1)
def _small_primes(bound: int = TRIAL_BOUND) -> tuple[int, ...]:
    sieve = bytearray([1]) * (bound + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(bound) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _brent(n: int) -> int:
    """Return a nontrivial factor of the odd composite n (Pollard rho, Brent cycle)."""
    # Fixed sequence of polynomial constants; deterministic run for a given n.
    for c in range(1, n):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed on {n}")


def factor(n: int) -> Factorization:
    """Prime factorization of ``1 <= n < 2**63`` as ascending ``(prime, exponent)`` pairs."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    for q in _small_primes():
        if q * q > n:
            break
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
        else:
            d = _brent(m)
            stack.extend((d, m // d))
    return sorted(out.items())


@dataclass(frozen=True)
class OrderInfo:
    element: Elt
    s: int
    k: int


def mult_order(ctx: FieldCtx, u: Elt, fact: Optional[Factorization] = None) -> OrderInfo:
    """Exact multiplicative order of u by descent from p - 1."""
    u %= ctx.p
    if u == 0:
        raise ZeroElement("zero has no multiplicative order")
    if fact is None:
        fact = factor_group_order(ctx.p)
    s = ctx.p - 1
    for ell, e in fact:
        for _ in range(e):
            if pow(u, s // ell, ctx.p) != 1:
                break
            s //= ell
    return OrderInfo(u, s, (ctx.p - 1) // s)


@lru_cache(maxsize=4096)
def factor_group_order(p: int) -> tuple[tuple[int, int], ...]:
    return tuple(factor(p - 1))


@lru_cache(maxsize=1 << 16)
def order_of(p: int, u: int) -> int:
    return mult_order(FieldCtx(p), u, factor_group_order(p)).s


def bsgs_dlog(ctx: FieldCtx, f: Elt, s: int, h: Elt, stats=None) -> Optional[int]:
    """Least ``x in [0, s)`` with ``f**x == h``, or None when h is outside <f>.

    ``f`` must have order exactly ``s``. When ``stats`` is given its
    ``group_mults`` and ``table_ops`` counters are advanced.
    """
    p = ctx.p
    h %= p
    if h == 0:
        raise ZeroElement("h must be nonzero")
    m = math.isqrt(s - 1) + 1 if s > 1 else 1
    table: dict[int, int] = {}
    e = 1
    for j in range(m):
        table.setdefault(e, j)
        e = e * f % p
    # e == f**m here; one inversion for the giant stride.
    stride = pow(e, -1, p)
    giants = -(-s // m)
    gamma = h
    mults, lookups = m + 1, 0
    found = None
    for i in range(giants):
        lookups += 1
        j = table.get(gamma)
        if j is not None:
            found = i * m + j
            break
        gamma = gamma * stride % p
        mults += 1
    if stats is not None:
        stats.group_mults += mults
        stats.table_ops += m + lookups
    return found


def primitive_root(ctx: FieldCtx, fact: Optional[Factorization] = None, seed: int = 0) -> Elt:
    """A primitive root mod p: the least one for seed 0, else a seeded random one."""
    p = ctx.p
    if fact is None:
        fact = factor_group_order(p)
    exps = [(p - 1) // ell for ell, _ in fact]

    def ok(g: int) -> bool:
        return all(pow(g, e, p) != 1 for e in exps)

    if seed == 0:
        return next(g for g in range(2, p) if ok(g))
    rng = random.Random(seed)
    while True:
        g = rng.randrange(2, p)
        if ok(g):
            return g


def element_of_order(ctx: FieldCtx, s: int, fact: Optional[Factorization] = None, seed: int = 0) -> Elt:
    if s < 1 or (ctx.p - 1) % s:
        raise NotADivisor(f"{s} does not divide p - 1 = {ctx.p - 1}")
    if s == 1:
        return 1
    return pow(primitive_root(ctx, fact, seed), (ctx.p - 1) // s, ctx.p)


def divisors(fact: Factorization) -> list[int]:
    divs = [1]
    for ell, e in fact:
        divs = [d * ell**i for d in divs for i in range(e + 1)]
    return sorted(divs)
