"""Farey-fraction sets, their m-fold products, and reduction into F_p."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable

import numpy as np

from .arith import PrimeContext
from .checks import BoundCheck, make_check
from .errors import DenominatorDivisibleByP, OrderTooSmall, RangeTooLarge
from .msets import ResidueSet

# Fraction keeps num/den coprime and positive-denominator, which is exactly
# the canonical form set deduplication needs.
Rational = Fraction


class RationalSet:
    """Finite set of positive reduced fractions."""

    __slots__ = ("elements",)

    def __init__(self, elements: Iterable[Fraction]):
        elems = frozenset(Fraction(e) for e in elements)
        if any(e <= 0 for e in elems):
            raise ValueError("rational sets hold positive fractions only")
        self.elements = elems

    @property
    def Q(self) -> int:
        """Order bound: the largest numerator or denominator present."""
        return max((max(e.numerator, e.denominator) for e in self.elements), default=0)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(sorted(self.elements))

    def __contains__(self, x):
        return Fraction(x) in self.elements

    def __eq__(self, other):
        if isinstance(other, RationalSet):
            return self.elements == other.elements
        return NotImplemented

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        shown = ", ".join(str(e) for e in sorted(self.elements)[:6])
        return f"RationalSet(Q={self.Q}, n={len(self)}, {{{shown}{', ...' if len(self) > 6 else ''}}})"


def farey_set(Q: int) -> RationalSet:
    """All reduced r/s with 1 <= r, s <= Q."""
    if Q < 1:
        raise ValueError("Q must be >= 1")
    return RationalSet(
        Fraction(r, s) for r in range(1, Q + 1) for s in range(1, Q + 1) if math.gcd(r, s) == 1
    )


def _pairs(A: RationalSet) -> list[tuple[int, int]]:
    return [(e.numerator, e.denominator) for e in A.elements]


def rational_mfold(A: RationalSet, m: int) -> RationalSet:
    if m < 1:
        raise ValueError("m must be >= 1")
    base = _pairs(A)
    current = set(base)
    gcd = math.gcd
    for _ in range(m - 1):
        nxt = set()
        for a, b in current:
            for c, d in base:
                num, den = a * c, b * d
                g = gcd(num, den)
                nxt.add((num // g, den // g))
        current = nxt
    return RationalSet(Fraction(a, b) for a, b in current)


def map_to_fp(A: RationalSet, ctx: PrimeContext) -> ResidueSet:
    p = ctx.p
    residues = []
    for e in A.elements:
        if e.denominator % p == 0:
            raise DenominatorDivisibleByP(f"{e} has denominator divisible by {p}")
        residues.append(e.numerator * pow(e.denominator, -1, p) % p)
    return ResidueSet.from_elements(ctx, residues)


def build_Jd_set(H: int, d: int, U: ResidueSet) -> RationalSet:
    """{x/y : x, y <= H/d, gcd(x, y) = 1, x/y mod p in U}."""
    if d < 1 or d > H:
        raise ValueError(f"need 1 <= d <= H, got d={d}, H={H}")
    p = U.ctx.p
    M = H // d
    xs = np.arange(1, M + 1, dtype=np.int64)
    out = []
    for y in range(1, M + 1):
        ratios = xs * pow(y, -1, p) % p
        keep = U.mask[ratios] & (np.gcd(xs, y) == 1)
        out.extend(Fraction(int(x), y) for x in xs[keep])
    return RationalSet(out)


def ratio_multiplicities(X: int, Y: int, ctx: PrimeContext) -> np.ndarray:
    """mult[lam] = #{coprime (x, y): x <= X, y <= Y, x/y = lam (mod p)}."""
    p = ctx.p
    xs = np.arange(1, X + 1, dtype=np.int64)
    ys = np.arange(1, Y + 1, dtype=np.int64)
    inv = np.array([pow(int(y), -1, p) for y in ys], dtype=np.int64)
    xx, yy = np.meshgrid(xs, ys, indexing="ij")
    coprime = np.gcd(xx, yy) == 1
    lam = (xx * inv[None, :]) % p
    return np.bincount(lam[coprime], minlength=p)


def lemma3_uniqueness_check(X: int, Y: int, ctx: PrimeContext) -> BoundCheck:
    """With XY < p, every ratio class holds at most one coprime pair."""
    if X < 1 or Y < 1:
        raise ValueError("X and Y must be positive")
    if X * Y >= ctx.p:
        raise RangeTooLarge(f"XY={X * Y} must be below p={ctx.p}")
    mult = ratio_multiplicities(X, Y, ctx)
    worst = int(mult.max())
    return make_check(
        "lemma3", worst, 1, p=ctx.p, X=X, Y=Y, argmax=int(mult.argmax())
    )


def growth_report(A: RationalSet, m: int, Cm: float) -> BoundCheck:
    """|A^(m)| against exp(-Cm log Q / sqrt(log log Q)) |A|^m; records the least passing Cm."""
    Q = A.Q
    if Q < 16:
        raise OrderTooSmall(f"order bound Q={Q} is below 16")
    if m < 1:
        raise ValueError("m must be >= 1")
    t = math.log(Q) / math.sqrt(math.log(math.log(Q)))
    size = len(rational_mfold(A, m))
    rhs = math.exp(-Cm * t) * len(A) ** m
    # the inequality is strict, so this is an infimum rather than an attained minimum
    least = max(0.0, (m * math.log(len(A)) - math.log(size)) / t)
    return make_check(
        "lemma1",
        size,
        rhs,
        verdict="pass" if size > rhs else "fail",
        Q=Q,
        m=m,
        Cm=Cm,
        A=len(A),
        min_constant=least,
    )
