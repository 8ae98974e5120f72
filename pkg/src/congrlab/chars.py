"""Dirichlet character sums and additive exponential sums modulo a prime.

Whole families of sums (every character at once, every frequency at once)
are discrete Fourier transforms of an indicator vector, so they are
evaluated with ``numpy.fft``; the single-value helpers evaluate directly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .arith import PrimeContext, discrete_log
from .checks import BoundCheck, make_check
from .errors import InvalidOrder, NotSubgroup
from .msets import ResidueSet, Subgroup, build_set


@dataclass(frozen=True)
class Character:
    """chi_j(g^k) = exp(2 pi i j k / (p - 1)); j = 0 is the principal character."""

    j: int
    ctx: PrimeContext

    def __post_init__(self):
        if not 0 <= self.j <= self.ctx.p - 2:
            raise ValueError(f"character index must lie in [0, p-2], got {self.j}")

    @property
    def principal(self) -> bool:
        return self.j == 0


def char_value(chi: Character, a: int) -> complex:
    p = chi.ctx.p
    if a % p == 0:
        return 0j
    k = discrete_log(a, chi.ctx)
    return cmath.exp(2j * math.pi * (chi.j * k % (p - 1)) / (p - 1))


def e_p(z: int, p: int) -> complex:
    return cmath.exp(2j * math.pi * (z % p) / p)


def log_histogram(values, ctx: PrimeContext) -> np.ndarray:
    """c[k] = number of the given integers congruent to g^k; multiples of p are dropped."""
    r = np.asarray(values, dtype=np.int64) % ctx.p
    logs = ctx.log_table[r[r != 0]]
    return np.bincount(logs, minlength=ctx.p - 1).astype(float)


def character_sums(values, ctx: PrimeContext) -> np.ndarray:
    """S[j] = sum over the values of chi_j, for every j in [0, p-2]."""
    c = log_histogram(values, ctx)
    return np.fft.ifft(c) * (ctx.p - 1)


def interval_character_sums(L: int, N: int, ctx: PrimeContext) -> np.ndarray:
    return character_sums(np.arange(L + 1, L + N + 1, dtype=np.int64), ctx)


def max_nonprincipal_interval_sum(L: int, N: int, ctx: PrimeContext) -> tuple[float, int]:
    """max over chi != chi_0 of |sum_{n=L+1}^{L+N} chi(n)|, with the maximizing index."""
    if N < 1 or N >= ctx.p:
        raise ValueError("need 1 <= N < p")
    mags = np.abs(interval_character_sums(L, N, ctx)[1:])
    j = int(np.argmax(mags))
    return float(mags[j]), j + 1


def burgess_check(L: int, N: int, r: int, ctx: PrimeContext, slack: float = 0.0, gate: float = 1.0) -> BoundCheck:
    if r < 1:
        raise ValueError("r must be >= 1")
    p = ctx.p
    lhs, j = max_nonprincipal_interval_sum(L, N, ctx)
    rhs = N ** (1 - 1 / r) * p ** ((r + 1) / (4 * r * r))
    return make_check("lemma5_burgess", lhs, rhs, p=p, slack=slack, gate=gate, L=L, N=N, r=r, argmax_j=j)


def additive_sums(G: ResidueSet) -> np.ndarray:
    """F[a] = sum_{x in G} e_p(a x) for a in [0, p-1] (up to conjugation, which keeps |F|)."""
    return np.fft.fft(G.mask.astype(float))


def subgroup_exp_sum_max(G: ResidueSet, ctx: PrimeContext) -> tuple[float, int]:
    """max over a != 0 of |sum_{x in G} e_p(a x)|."""
    if G.cardinality == 0:
        raise ValueError("set must be nonempty")
    mags = np.abs(additive_sums(G)[1:])
    a = int(np.argmax(mags))
    return float(mags[a]), a + 1


def is_subgroup(G: ResidueSet, ctx: PrimeContext) -> bool:
    d = G.cardinality
    if d == 0 or (ctx.p - 1) % d:
        return False
    return G == build_set(Subgroup(d), ctx)


def konyagin_check(G: ResidueSet, ctx: PrimeContext, slack: float = 0.0, gate: float = 1.0) -> BoundCheck:
    """Subgroup sum max against |G|^(29/36) p^(1/18); flags |G| >= sqrt(p) as out of hypothesis."""
    if not is_subgroup(G, ctx):
        raise NotSubgroup("konyagin_check needs a subgroup of F_p^*")
    p = ctx.p
    d = G.cardinality
    lhs, a = subgroup_exp_sum_max(G, ctx)
    rhs = d ** (29 / 36) * p ** (1 / 18)
    return make_check(
        "lemma6_konyagin",
        lhs,
        rhs,
        p=p,
        slack=slack,
        gate=gate,
        d=d,
        argmax_a=a,
        in_hypothesis=int(d * d < p),
    )


def avg_linear_sum(L: int, N: int, ctx: PrimeContext) -> float:
    """(1/p) sum_{a=1}^{p-1} |sum_{x=L+1}^{L+N} e_p(a x)|."""
    p = ctx.p
    if N < 1 or N > p:
        raise ValueError("need 1 <= N <= p")
    ind = np.zeros(p)
    ind[np.arange(L + 1, L + N + 1, dtype=np.int64) % p] = 1.0
    mags = np.abs(np.fft.fft(ind)[1:])
    return float(math.fsum(mags.tolist()) / p)


def erdos_turan_check(points, alpha: float, beta: float, K: int, C: float = 1.0) -> BoundCheck:
    """Discrepancy of the points on [alpha, beta] against the exponential-sum majorant."""
    if not 0 <= alpha <= beta <= 1:
        raise ValueError("need 0 <= alpha <= beta <= 1")
    if K < 1:
        raise ValueError("K must be >= 1")
    pts = np.asarray(points, dtype=float)
    d = len(pts)
    inside = int(np.count_nonzero((pts >= alpha) & (pts <= beta)))
    lhs = abs(inside - d * (beta - alpha))
    ks = np.arange(1, K + 1)
    sums = np.abs(np.exp(2j * math.pi * np.outer(ks, pts)).sum(axis=1))
    weights = 1 / K + np.minimum(beta - alpha, 1 / ks)
    base = d / K + math.fsum((weights * sums).tolist())
    return make_check(
        "lemma4_erdos_turan",
        lhs,
        base,
        gate=C,
        d=d,
        K=K,
        alpha=alpha,
        beta=beta,
        min_constant=lhs / base if base > 0 else math.inf,
    )


def theorem2_case3_rhs(d: int, x0: int, ctx: PrimeContext) -> float:
    """1 + (1/d) sum_{k=1}^{d} |sum_{h in G_d} e_p(k x0 h)|."""
    p = ctx.p
    if d < 1 or (p - 1) % d:
        raise InvalidOrder(f"{d} does not divide p-1={p - 1}")
    F = np.abs(additive_sums(build_set(Subgroup(d), ctx)))
    ks = np.arange(1, d + 1, dtype=np.int64)
    return 1.0 + math.fsum(F[ks * (x0 % p) % p].tolist()) / d
