"""Prime field arithmetic.

Elements are plain Python ints held in canonical form ``0 <= u < p``; a
:class:`FieldCtx` carries the modulus and does the reductions.
"""
from __future__ import annotations

from dataclasses import dataclass

Elt = int

MAX_MODULUS = 1 << 63

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


class FieldError(ValueError):
    pass


class NotPrime(FieldError):
    pass


class OutOfRange(FieldError):
    pass


class ZeroInverse(ZeroDivisionError, FieldError):
    pass


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n < 2**64."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldCtx:
    p: int

    def elt(self, value: int) -> Elt:
        return value % self.p

    def mul(self, u: Elt, v: Elt) -> Elt:
        return u * v % self.p

    def pow(self, u: Elt, e: int) -> Elt:
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        return pow(u, e, self.p)

    def inv(self, u: Elt) -> Elt:
        if u % self.p == 0:
            raise ZeroInverse("zero has no multiplicative inverse")
        return pow(u, -1, self.p)

    def add(self, u: Elt, v: Elt) -> Elt:
        return (u + v) % self.p

    def sub(self, u: Elt, v: Elt) -> Elt:
        return (u - v) % self.p

    def nonzero(self):
        return range(1, self.p)


def make_ctx(p: int) -> FieldCtx:
    if p >= MAX_MODULUS:
        raise OutOfRange(f"p must be below 2**63, got {p}")
    if p < 3 or not is_prime(p):
        raise NotPrime(f"p must be prime, got {p}")
    return FieldCtx(p)


def mul(ctx: FieldCtx, u: Elt, v: Elt) -> Elt:
    return ctx.mul(u, v)


def power(ctx: FieldCtx, u: Elt, e: int) -> Elt:
    return ctx.pow(u, e)


def inv(ctx: FieldCtx, u: Elt) -> Elt:
    return ctx.inv(u)
