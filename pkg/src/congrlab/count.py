"""Exact solution counters for the congruence families, and product coverage."""

from __future__ import annotations

import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Union

import numpy as np

from .arith import PrimeContext, discrete_log, is_prime, powmod_array
from .errors import (
    InvalidRange,
    InvalidSpec,
    NotSquarefree,
    TooLarge,
    ZeroInSet,
    ZeroLambda,
)
from .msets import Interval, ResidueSet, SetSpec, build_set, product_set

DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class CountReport:
    params: dict
    total: int
    by_gcd: dict | None = None
    method: str = "direct"
    by_pattern: dict | None = field(default=None, compare=False)


def _check_residue_set(H: int, U: ResidueSet):
    p = U.ctx.p
    if H < 1 or H >= p:
        raise InvalidRange(f"need 1 <= H < p, got H={H}, p={p}")
    if 0 in U:
        raise ZeroInSet("the set must lie in F_p^*")


def count_eq1(H: int, U: ResidueSet) -> CountReport:
    """#{(x, y, r): 1 <= x, y <= H, r in U, x = y r (mod p)}, split by gcd(x, y)."""
    _check_residue_set(H, U)
    p = U.ctx.p
    ys = np.arange(1, H + 1, dtype=np.int64)
    by_gcd = Counter()
    for r in U.elements():
        xs = int(r) * ys % p
        hit = (xs >= 1) & (xs <= H)
        if hit.any():
            by_gcd.update(np.gcd(xs[hit], ys[hit]).tolist())
    by_gcd = {int(d): int(c) for d, c in sorted(by_gcd.items())}
    return CountReport(
        params={"p": p, "H": H, "U": U.cardinality},
        total=sum(by_gcd.values()),
        by_gcd=by_gcd,
    )


def fiber_counts(H: int, U: ResidueSet) -> np.ndarray:
    """I(mu) = #{(x, r): 1 <= x <= H, r in U, x r = mu (mod p)}."""
    p = U.ctx.p
    xs = np.arange(1, H + 1, dtype=np.int64)
    prods = (xs[:, None] * U.elements()[None, :]) % p
    return np.bincount(prods.ravel(), minlength=p)


def count_eq2(H: int, U: ResidueSet) -> CountReport:
    """#{(x, x1, r, r1): x r = x1 r1 (mod p)} as the sum of squared fibers."""
    _check_residue_set(H, U)
    fibers = fiber_counts(H, U)
    return CountReport(
        params={"p": U.ctx.p, "H": H, "U": U.cardinality},
        total=int((fibers * fibers).sum()),
    )


def _coset_of_roots(d: int, lam: int, ctx: PrimeContext):
    """Solutions of x^d = lam in F_p^* as an array, or None if there are none."""
    p = ctx.p
    d1 = math.gcd(d, p - 1)
    a = discrete_log(lam, ctx)
    if a % d1:
        return None
    # g^k with d k = a (mod p-1)
    m = (p - 1) // d1
    k = (a // d1) * pow(d // d1, -1, m) % m if m > 1 else 0
    x0 = pow(ctx.g, k, p)
    h = pow(ctx.g, m, p)
    coset = np.empty(d1, dtype=np.int64)
    x = x0
    for i in range(d1):
        coset[i] = x
        x = x * h % p
    return coset


def count_T(d: int, lam: int, L: int, N: int, ctx: PrimeContext, method: str = "direct") -> CountReport:
    """#{x : L+1 <= x <= L+N, x^d = lam (mod p)}."""
    p = ctx.p
    lam %= p
    if lam == 0:
        raise ZeroLambda("lambda must be nonzero modulo p")
    if d < 1 or N < 1 or N > p:
        raise InvalidRange(f"need d >= 1 and 1 <= N <= p, got d={d}, N={N}")
    if method == "direct":
        xs = np.arange(L + 1, L + N + 1, dtype=np.int64)
        total = int(np.count_nonzero(powmod_array(xs, d, p) == lam))
    elif method == "coset":
        coset = _coset_of_roots(d, lam, ctx)
        if coset is None:
            total = 0
        else:
            # an interval of length <= p meets each residue class at most once
            total = int(np.count_nonzero((coset - (L + 1)) % p < N))
    else:
        raise ValueError(f"unknown method {method!r}")
    return CountReport(
        params={"p": p, "d": d, "lambda": lam, "L": L, "N": N},
        total=total,
        method=method,
    )


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_rem(a, b):
    a = [Fraction(x) for x in a]
    while len(a) >= len(b) and a:
        q = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, bc in enumerate(b):
            a[shift + i] -= q * bc
        a = _poly_trim(a)
    return a


def _poly_gcd(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        a, b = b, _poly_rem(a, b)
    return a


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial, constant term first; must be squarefree over C."""

    coefficients: tuple[int, ...]

    def __init__(self, coefficients):
        coeffs = tuple(int(c) for c in _poly_trim(coefficients))
        if len(coeffs) < 2:
            raise InvalidSpec("polynomial must be non-constant")
        object.__setattr__(self, "coefficients", coeffs)
        deriv = [k * c for k, c in enumerate(coeffs)][1:]
        if len(_poly_gcd(coeffs, deriv)) > 1:
            raise NotSquarefree(f"{self} has a repeated root")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_mod(self, xs: np.ndarray, m: int) -> np.ndarray:
        """f(xs) mod m for an int64 array; exact while m < 2**31."""
        xs = np.asarray(xs, dtype=np.int64) % m
        acc = np.zeros_like(xs)
        for c in reversed(self.coefficients):
            acc = (acc * xs + c % m) % m
        return acc

    def __str__(self):
        terms = [f"{c}*x^{k}" if k else str(c) for k, c in enumerate(self.coefficients) if c]
        return " + ".join(reversed(terms))


def poly_roots_mod(f: IntPolynomial, d: int) -> list[int]:
    if d < 1:
        raise ValueError("modulus must be >= 1")
    return [k for k in range(d) if f(k) % d == 0]


def count_xfx(f: IntPolynomial, ctx: PrimeContext) -> CountReport:
    """#{1 <= x <= p : x^f(x) = 1 (mod p)}, split by gcd(f(x), p-1)."""
    p = ctx.p
    xs = np.arange(1, p, dtype=np.int64)  # x = p is 0 mod p and never a solution
    e = f.eval_mod(xs, p - 1)
    hit = powmod_array(xs, e, p) == 1
    by_gcd = Counter(np.gcd(e[hit], p - 1).tolist())
    by_gcd = {int(d): int(c) for d, c in sorted(by_gcd.items())}
    return CountReport(
        params={"p": p, "f": str(f)},
        total=sum(by_gcd.values()),
        by_gcd=by_gcd,
    )


def count_xfx_scan(f: IntPolynomial, ctx: PrimeContext) -> int:
    """Plain loop over x <= p with the exponent kept as an unreduced integer."""
    p = ctx.p
    n = 0
    for x in range(1, p + 1):
        if x % p == 0:
            continue
        if pow(x, f(x), p) == 1:
            n += 1
    return n


def coverage_product(specs: list[SetSpec], ctx: PrimeContext) -> tuple[ResidueSet, ResidueSet]:
    """Iterated product of the realized sets and the exceptional set F_p^* minus it."""
    if not specs:
        raise InvalidSpec("coverage needs at least one set")
    sets = [s if isinstance(s, ResidueSet) else build_set(s, ctx) for s in specs]
    for s in sets:
        if 0 in s:
            raise InvalidSpec("coverage sets must lie in F_p^*")
    image = sets[0]
    for s in sets[1:]:
        if image.cardinality == ctx.p - 1:
            break
        image = product_set(image, s)
    return image, image.complement()


@dataclass(frozen=True)
class PrimeRange:
    """Primes q with lo < q <= hi (q < hi when ``include_hi`` is False)."""

    lo: float
    hi: float
    include_hi: bool = True

    def primes(self) -> list[int]:
        start = math.floor(self.lo) + 1
        stop = math.floor(self.hi)
        if not self.include_hi and stop == self.hi:
            stop -= 1
        return [q for q in range(max(start, 2), stop + 1) if is_prime(q)]


FactorSpec = Union[PrimeRange, Interval, ResidueSet]


def _factor_values(spec, p):
    if isinstance(spec, Interval):
        if spec.H < 1:
            raise InvalidSpec("interval factor needs H >= 1")
        return np.arange(spec.L + 1, spec.L + spec.H + 1, dtype=np.int64) % p
    if isinstance(spec, ResidueSet):
        return spec.elements()
    raise InvalidSpec(f"unsupported factor {spec!r}")


def _side(factors, ctx, work):
    """Prime tuples of one side and the residue histogram of its other factors."""
    p = ctx.p
    prime_lists = [f.primes() for f in factors if isinstance(f, PrimeRange)]
    hist = np.zeros(p, dtype=np.int64)
    hist[1] = 1
    idx = np.arange(p, dtype=np.int64)
    for f in factors:
        if isinstance(f, PrimeRange):
            continue
        values = _factor_values(f, p)
        work(p * len(values))
        new = np.zeros(p, dtype=np.int64)
        total = int(hist.sum())
        for v in values.tolist():
            if v == 0:
                new[0] += total
            else:
                new[idx * v % p] += hist
        hist = new
    return list(product(*prime_lists)), hist


def count_factored(left: list, right: list, ctx: PrimeContext, budget: int = DEFAULT_BUDGET) -> CountReport:
    """Tuples with prod(left) = prod(right) (mod p), split by which prime factors coincide."""
    p = ctx.p
    spent = [0]

    def work(n):
        spent[0] += n
        if spent[0] > budget:
            raise TooLarge(f"enumeration exceeds budget {budget}")

    ltuples, lhist = _side(left, ctx, work)
    rtuples, rhist = _side(right, ctx, work)
    work(len(ltuples) * len(rtuples))

    idx = np.arange(p, dtype=np.int64)
    cache = {}
    by_pattern = defaultdict(int)
    total = 0
    for tl in ltuples:
        pl = math.prod(tl) % p
        for tr in rtuples:
            pr = math.prod(tr) % p
            t = pl * pow(pr, -1, p) % p
            c = cache.get(t)
            if c is None:
                work(p)
                c = cache[t] = int((lhist * rhist[idx * t % p]).sum())
            if c:
                key = ",".join("eq" if a == b else "ne" for a, b in zip(tl, tr)) or "none"
                by_pattern[key] += c
                total += c
    return CountReport(
        params={"p": p, "left_primes": len(ltuples), "right_primes": len(rtuples)},
        total=total,
        method="factored",
        by_pattern=dict(sorted(by_pattern.items())),
    )

