"""Exact arithmetic in the prime field F_p.

Residues are plain Python ints in ``[0, p)``; every function takes the
:class:`PrimeContext` they live in as its last argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import CompositeModulus, NotInvertible

# Deterministic for every n < 3.3e24, which covers all 64-bit inputs.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization into sorted (prime, exponent) pairs."""
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out.append((q, e))
        q += 1 if q == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for q, e in factorize(n):
        divs = [d * q**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def next_prime(n: int) -> int:
    """Smallest prime >= n."""
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def prev_prime(n: int) -> int:
    """Largest prime <= n (n >= 2)."""
    while n >= 2 and not is_prime(n):
        n -= 1
    if n < 2:
        raise ValueError("no prime <= n")
    return n


def primes_below(n: int) -> list[int]:
    """All primes < n (sieve of Eratosthenes)."""
    if n <= 2:
        return []
    sieve = np.ones(n, dtype=bool)
    sieve[:2] = False
    for q in range(2, math.isqrt(n - 1) + 1):
        if sieve[q]:
            sieve[q * q :: q] = False
    return [int(q) for q in np.flatnonzero(sieve)]


@dataclass(frozen=True)
class PrimeContext:
    """A prime modulus together with its least primitive root and p-1 factored."""

    p: int
    g: int
    factors: tuple[tuple[int, int], ...] = field(repr=False)

    def is_primitive_root(self, h: int) -> bool:
        h %= self.p
        if h == 0:
            return False
        return all(pow(h, (self.p - 1) // q, self.p) != 1 for q, _ in self.factors)

    @cached_property
    def log_table(self) -> np.ndarray:
        """``log_table[a]`` is the discrete log of a to base g; entry 0 is -1."""
        p = self.p
        table = np.full(p, -1, dtype=np.int64)
        x = 1
        for k in range(p - 1):
            table[x] = k
            x = x * self.g % p
        table.flags.writeable = False
        return table

    @cached_property
    def _bsgs(self):
        m = math.isqrt(self.p - 2) + 1
        baby = {}
        x = 1
        for j in range(m):
            baby.setdefault(x, j)
            x = x * self.g % self.p
        giant = pow(self.g, -m, self.p)
        return m, baby, giant


def make_context(p: int) -> PrimeContext:
    if p < 3:
        raise ValueError(f"modulus must be an odd prime, got {p}")
    if not is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    factors = tuple(factorize(p - 1))
    g = 2
    while not all(pow(g, (p - 1) // q, p) != 1 for q, _ in factors):
        g += 1
    return PrimeContext(p, g, factors)


def mod_pow(a: int, e: int, ctx: PrimeContext) -> int:
    if e < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(a, e, ctx.p)


def mod_inverse(a: int, ctx: PrimeContext) -> int:
    a %= ctx.p
    if a == 0:
        raise NotInvertible("0 has no inverse modulo p")
    return pow(a, -1, ctx.p)


def mult_order(a: int, ctx: PrimeContext) -> int:
    a %= ctx.p
    if a == 0:
        raise NotInvertible("0 has no multiplicative order")
    t = ctx.p - 1
    for q, e in ctx.factors:
        for _ in range(e):
            if pow(a, t // q, ctx.p) == 1:
                t //= q
            else:
                break
    return t


def discrete_log(a: int, ctx: PrimeContext) -> int:
    """k in [0, p-2] with g^k = a, by baby-step giant-step."""
    a %= ctx.p
    if a == 0:
        raise NotInvertible("discrete log of 0 is undefined")
    m, baby, giant = ctx._bsgs
    y = a
    for i in range(m + 1):
        j = baby.get(y)
        if j is not None:
            return (i * m + j) % (ctx.p - 1)
        y = y * giant % ctx.p
    raise AssertionError("g is not a primitive root")  # unreachable for valid contexts


def powmod_array(base, exp, p: int) -> np.ndarray:
    """Elementwise ``base**exp % p`` on int64 arrays; needs p < 2**31."""
    base = np.asarray(base, dtype=np.int64) % p
    exp = np.asarray(exp, dtype=np.int64)
    base, exp = np.broadcast_arrays(base, exp)
    base = base.copy()
    exp = exp.copy()
    result = np.ones(base.shape, dtype=np.int64)
    while exp.any():
        odd = (exp & 1).astype(bool)
        result[odd] = result[odd] * base[odd] % p
        base = base * base % p
        exp >>= 1
    return result
