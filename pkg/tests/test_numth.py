import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from expcong.ff import FieldCtx, is_prime
from expcong.numth import (NotADivisor, ZeroElement, bsgs_dlog, divisors,
                           element_of_order, factor, mult_order, primitive_root)
from expcong.solver import OpStats

sympy = pytest.importorskip("sympy")

P13 = FieldCtx(13)
SMALL_PRIMES = [n for n in range(3, 102) if is_prime(n)]


def naive_order(p, u):
    e, k = u % p, 1
    while e != 1:
        e = e * u % p
        k += 1
    return k


def test_factor_examples():
    assert factor(996) == [(2, 2), (3, 1), (83, 1)]
    assert factor(7) == [(7, 1)]
    assert factor(1) == []


def test_factor_hard_semiprimes():
    # both factors beyond the trial-division bound
    for n in [1000003 * 1000033, 2147483647 * 2147483629, 4294967291 * 1000003]:
        fac = factor(n)
        assert math.prod(q**e for q, e in fac) == n
        assert fac == sorted(sympy.factorint(n).items())


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 2**40))
def test_factor_round_trip(n):
    fac = factor(n)
    assert math.prod(q**e for q, e in fac) == n
    assert all(is_prime(q) for q, _ in fac)
    assert [q for q, _ in fac] == sorted({q for q, _ in fac})


def test_mult_order_examples():
    info = mult_order(P13, 3)
    assert (info.s, info.k) == (3, 4)
    assert mult_order(P13, 1).s == 1
    assert mult_order(P13, 12).s == 2
    with pytest.raises(ZeroElement):
        mult_order(P13, 0)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_mult_order_exhaustive(p):
    ctx = FieldCtx(p)
    fac = factor(p - 1)
    for u in range(1, p):
        info = mult_order(ctx, u, fac)
        assert info.s == naive_order(p, u)
        assert info.s * info.k == p - 1
        assert pow(u, info.s, p) == 1
        assert all(pow(u, info.s // q, p) != 1 for q, _ in factor(info.s))


def test_bsgs_examples():
    assert bsgs_dlog(P13, 2, 12, 9) == 8
    assert bsgs_dlog(P13, 5, 4, 1) == 0
    assert bsgs_dlog(P13, 3, 3, 2) is None
    with pytest.raises(ZeroElement):
        bsgs_dlog(P13, 2, 12, 0)


@pytest.mark.parametrize("p", SMALL_PRIMES)
def test_bsgs_membership_exhaustive(p):
    ctx = FieldCtx(p)
    for f in range(1, p):
        s = naive_order(p, f)
        logs = {}
        e = 1
        for x in range(s):
            logs.setdefault(e, x)
            e = e * f % p
        for h in range(1, p):
            assert bsgs_dlog(ctx, f, s, h) == logs.get(h)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([1009, 65537, 1000003, 2**31 - 1]), st.integers(0, 2**40), st.integers(0, 10**6))
def test_bsgs_random_minimal(p, x, fseed):
    ctx = FieldCtx(p)
    divs = divisors(factor(p - 1))
    s = divs[fseed % len(divs)]
    f = element_of_order(ctx, s, seed=fseed)
    assert bsgs_dlog(ctx, f, s, pow(f, x, p)) == x % s


def test_bsgs_counts_sqrt_work():
    ctx = FieldCtx(1000003)
    f = primitive_root(ctx)
    s = ctx.p - 1
    for h in [1, 2, 999999, 123456]:
        stats = OpStats()
        bsgs_dlog(ctx, f, s, h, stats)
        m = math.isqrt(s - 1) + 1
        assert stats.group_mults <= 2 * m + 2
        assert stats.table_ops <= 2 * m + 1


def test_element_of_order_examples():
    assert element_of_order(P13, 12, seed=0) == 2
    assert element_of_order(P13, 1) == 1
    with pytest.raises(NotADivisor):
        element_of_order(P13, 5)


@pytest.mark.parametrize("p", [13, 101, 997, 65537])
def test_element_of_order_exact(p):
    ctx = FieldCtx(p)
    fac = factor(p - 1)
    rng = random.Random(p)
    for s in divisors(fac):
        for _ in range(3):
            u = element_of_order(ctx, s, fac, seed=rng.randrange(1 << 30))
            assert sympy.n_order(u, p) == s


def test_primitive_root_least():
    for p in [13, 101, 997, 1999, 65537]:
        assert primitive_root(FieldCtx(p)) == sympy.primitive_root(p)
