"""Two-dimensional congruence lattices, box bodies and successive minima.

Everything here is exact: lattice vectors are integer pairs and box norms
are :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import PrimeContext
from .checks import FAIL, PASS, BoundCheck, make_check
from .count import CountReport

# (2n+1)!! for n = 2
MINIMA_CONSTANT = 15


@dataclass(frozen=True)
class LatticeBasis2:
    v1: tuple[int, int]
    v2: tuple[int, int]

    def __post_init__(self):
        if self.det == 0:
            raise ValueError("basis vectors are linearly dependent")

    @property
    def det(self) -> int:
        return self.v1[0] * self.v2[1] - self.v1[1] * self.v2[0]

    def point(self, a: int, c: int) -> tuple[int, int]:
        return (a * self.v1[0] + c * self.v2[0], a * self.v1[1] + c * self.v2[1])

    def contains(self, u: int, v: int) -> bool:
        det = self.det
        a = u * self.v2[1] - v * self.v2[0]
        c = self.v1[0] * v - self.v1[1] * u
        return a % det == 0 and c % det == 0


@dataclass(frozen=True)
class Box2:
    """The body {(u, v): |u| <= X, |v| <= Y}."""

    X: Fraction
    Y: Fraction

    def __init__(self, X, Y):
        X, Y = Fraction(X), Fraction(Y)
        if X < 1 or Y < 1:
            raise ValueError("box half-widths must be >= 1")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)

    def norm(self, w) -> Fraction:
        """Smallest t with w in t*D."""
        return max(abs(w[0]) / self.X, abs(w[1]) / self.Y)

    def scaled(self, t) -> Box2:
        return Box2(self.X * t, self.Y * t)


def congruence_lattice(s0: int, ctx: PrimeContext) -> LatticeBasis2:
    """{(u, v): u = s0 v (mod p)}."""
    return LatticeBasis2((s0 % ctx.p, 1), (ctx.p, 0))


def gauss_reduce(basis: LatticeBasis2, box: Box2 | None = None) -> LatticeBasis2:
    """Lagrange-Gauss reduction for the inner product weighted by the box."""
    wu = box.Y**2 if box else 1
    wv = box.X**2 if box else 1

    def dot(a, b):
        return a[0] * b[0] * wu + a[1] * b[1] * wv

    b1, b2 = basis.v1, basis.v2
    if dot(b1, b1) > dot(b2, b2):
        b1, b2 = b2, b1
    while True:
        mu = round(Fraction(dot(b1, b2)) / dot(b1, b1))
        b2 = (b2[0] - mu * b1[0], b2[1] - mu * b1[1])
        if dot(b2, b2) >= dot(b1, b1):
            break
        b1, b2 = b2, b1
    return LatticeBasis2(b1, b2)


def _cross(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _line_candidates(b1, b2, box: Box2) -> set[int]:
    """Integers near the breakpoints of a -> norm(a*b1 + b2), plus neighbours."""
    X, Y = box.X, box.Y
    points = []
    if b1[0]:
        points.append(Fraction(-b2[0], b1[0]))
    if b1[1]:
        points.append(Fraction(-b2[1], b1[1]))
    for s in (1, -1):
        k = b1[0] / X - s * b1[1] / Y
        if k:
            points.append((s * b2[1] / Y - b2[0] / X) / k)
    out = {-1, 0, 1}
    for t in points:
        f = math.floor(t)
        out.update(range(f - 1, f + 3))
    return out


def successive_minima(basis: LatticeBasis2, box: Box2) -> tuple[Fraction, Fraction]:
    """Exact (lambda_1, lambda_2) of the box with respect to the lattice."""
    red = gauss_reduce(basis, box)
    b1, b2 = red.v1, red.v2
    # In the reduced basis, a shortest vector has both coefficients in {-1, 0, 1},
    # and a shortest vector independent of it has |coefficient of b2| <= 1.
    small = [red.point(a, c) for a in (-1, 0, 1) for c in (-1, 0, 1) if a or c]
    v1 = min(small, key=box.norm)
    lam1 = box.norm(v1)
    cands = [b1] + [red.point(a, 1) for a in _line_candidates(b1, b2, box)]
    lam2 = min(box.norm(w) for w in cands if _cross(v1, w) != 0)
    return lam1, lam2


def _a_interval(k, o, bound):
    """Integer a with |a*k + o| <= bound, vectorized over the offsets o."""
    if k == 0:
        ok = np.abs(o) <= bound
        big = np.iinfo(np.int64).max // 4
        return np.where(ok, -big, 1), np.where(ok, big, 0)
    if k < 0:
        k, o = -k, -o
    return -((bound + o) // k), (bound - o) // k


def count_points_in_box(basis: LatticeBasis2, box: Box2) -> int:
    """|D intersect Gamma|, origin included."""
    Xi, Yi = math.floor(box.X), math.floor(box.Y)
    red = gauss_reduce(basis, box)
    (b1u, b1v), (b2u, b2v) = red.v1, red.v2
    det = abs(red.det)
    cmax = (abs(b1u) * Yi + abs(b1v) * Xi) // det
    c = np.arange(-cmax, cmax + 1, dtype=np.int64)
    lo1, hi1 = _a_interval(b1u, c * b2u, Xi)
    lo2, hi2 = _a_interval(b1v, c * b2v, Yi)
    lo = np.maximum(lo1, lo2)
    hi = np.minimum(hi1, hi2)
    return int(np.clip(hi - lo + 1, 0, None).sum())


def count_coprime_box(s0: int, X: int, Y: int, ctx: PrimeContext) -> CountReport:
    """#{(x, y): 1 <= x <= X, 1 <= y <= Y, gcd(x, y) = 1, x = s0 y (mod p)}."""
    if X < 1 or Y < 1:
        raise ValueError("X and Y must be positive")
    p = ctx.p
    ys = np.arange(1, Y + 1, dtype=np.int64)
    first = s0 % p * ys % p
    first[first == 0] = p
    total = 0
    for k in range(X // p + 1):
        xs = first + k * p
        ok = xs <= X
        total += int(np.count_nonzero(np.gcd(xs[ok], ys[ok]) == 1))
    return CountReport(params={"p": p, "s0": s0 % p, "X": X, "Y": Y}, total=total)


def lemma2_check(s0: int, X: int, Y: int, ctx: PrimeContext) -> BoundCheck:
    J = count_coprime_box(s0, X, Y, ctx).total
    rhs = max(Fraction(1), Fraction(30 * X * Y, ctx.p))
    return make_check(
        "lemma2", J, rhs, p=ctx.p, verdict=PASS if J <= rhs else FAIL, s0=s0 % ctx.p, X=X, Y=Y
    )


def minima_product_check(
    basis: LatticeBasis2, box: Box2, intersection_count: int | None = None, p: int = 0
) -> BoundCheck:
    """min(l1, 1) min(l2, 1) <= 15 / |D intersect Gamma|."""
    if intersection_count is None:
        intersection_count = count_points_in_box(basis, box)
    lam1, lam2 = successive_minima(basis, box)
    lhs = min(lam1, 1) * min(lam2, 1)
    rhs = Fraction(MINIMA_CONSTANT, intersection_count)
    return make_check(
        "eq5_minima",
        lhs,
        rhs,
        p=p,
        verdict=PASS if lhs <= rhs else FAIL,
        X=str(box.X),
        Y=str(box.Y),
        lambda1=float(lam1),
        lambda2=float(lam2),
        points=intersection_count,
    )
