import math

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from congrlab.arith import (
    discrete_log,
    divisors,
    factorize,
    is_prime,
    make_context,
    mod_inverse,
    mod_pow,
    mult_order,
    powmod_array,
    primes_below,
)
from congrlab.errors import CompositeModulus, NotInvertible

SMALL_PRIMES = primes_below(2000)[1:]


def test_make_context_examples():
    c = make_context(7)
    assert (c.g, c.factors) == (3, ((2, 1), (3, 1)))
    c = make_context(3)
    assert (c.g, c.factors) == (2, ((2, 1),))
    with pytest.raises(CompositeModulus):
        make_context(8)
    with pytest.raises(ValueError):
        make_context(2)


def test_pow_inverse_order_dlog_examples(ctx7):
    assert mod_pow(3, 6, ctx7) == 1
    assert mod_pow(5, 0, ctx7) == 1
    assert mod_pow(2, 10, ctx7) == 2
    assert mod_inverse(3, ctx7) == 5
    assert mod_inverse(1, ctx7) == 1
    with pytest.raises(NotInvertible):
        mod_inverse(0, ctx7)
    assert [mult_order(a, ctx7) for a in (2, 1, 3)] == [3, 1, 6]
    with pytest.raises(NotInvertible):
        mult_order(0, ctx7)
    assert [discrete_log(a, ctx7) for a in (6, 1, 3)] == [3, 0, 1]
    with pytest.raises(NotInvertible):
        discrete_log(0, ctx7)


def test_is_prime_matches_sieve():
    sieve = set(primes_below(20000))
    assert all(is_prime(n) == (n in sieve) for n in range(20000))


@pytest.mark.parametrize("n", [2**61 - 1, 2**31 - 1, 1_000_000_007, 18446744073709551557])
def test_is_prime_large_primes(n):
    assert is_prime(n)


@pytest.mark.parametrize("n", [3215031751, 2152302898747, 3474749660383, 341550071728321, 2**61 + 1])
def test_is_prime_strong_pseudoprimes(n):
    assert not is_prime(n)


@given(st.integers(2, 10**7))
def test_factorize_product(n):
    assert math.prod(q**e for q, e in factorize(n)) == n
    assert all(is_prime(q) for q, _ in factorize(n))


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]


def test_orders_exhaustive_below_2000():
    # walk all powers of every residue at once; first return to 1 is the order
    for p in SMALL_PRIMES:
        ctx = make_context(p)
        a = np.arange(1, p, dtype=np.int64)
        x = a.copy()
        first = np.zeros(p - 1, dtype=np.int64)
        for t in range(1, p):
            newly = (x == 1) & (first == 0)
            first[newly] = t
            x = x * a % p
        assert np.array_equal(first, [mult_order(int(v), ctx) for v in a]), p


def test_primitive_root_is_least():
    for p in SMALL_PRIMES:
        ctx = make_context(p)
        assert ctx.g == sympy.primitive_root(p)
        assert ctx.is_primitive_root(ctx.g)
        assert not any(ctx.is_primitive_root(h) for h in range(2, ctx.g))
        assert math.prod(q**e for q, e in ctx.factors) == p - 1


@pytest.mark.parametrize("p", [3, 5, 7, 11, 101, 499, 1009, 1999])
def test_dlog_bijection(p):
    ctx = make_context(p)
    logs = [discrete_log(a, ctx) for a in range(1, p)]
    assert sorted(logs) == list(range(p - 1))
    assert all(pow(ctx.g, k, p) == a for a, k in zip(range(1, p), logs))
    assert np.array_equal(ctx.log_table[1:], logs)


@given(st.sampled_from([10007, 99991, 999983, 2**31 - 1]), st.integers(1, 2**40))
def test_inverse_and_dlog_random(p, a):
    ctx = make_context(p)
    a %= p
    if a == 0:
        return
    assert a * mod_inverse(a, ctx) % p == 1
    assert pow(ctx.g, discrete_log(a, ctx), p) == a
    assert pow(a, mult_order(a, ctx), p) == 1


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=20), st.integers(0, 10**4))
def test_powmod_array_matches_builtin(bases, e):
    p = 1_000_003
    got = powmod_array(bases, e, p)
    assert got.tolist() == [pow(b, e, p) for b in bases]
