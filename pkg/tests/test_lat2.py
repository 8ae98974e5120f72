import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from congrlab.arith import make_context, primes_below
from congrlab.lat2 import (
    Box2,
    LatticeBasis2,
    congruence_lattice,
    count_coprime_box,
    count_points_in_box,
    gauss_reduce,
    lemma2_check,
    minima_product_check,
    successive_minima,
)


def lattice_points(s0, p, R):
    """All (u, v) with |u|, |v| <= R and u = s0 v (mod p)."""
    return [(u, v) for v in range(-R, R + 1) for u in range(-R, R + 1) if (u - s0 * v) % p == 0]


def brute_minima(s0, p, X, Y):
    box = Box2(X, Y)
    # lambda_2 <= p / min(X, Y) because (p, 0) and (0, p) are in the lattice
    R = p
    pts = [w for w in lattice_points(s0, p, R) if w != (0, 0)]
    pts.sort(key=box.norm)
    v1 = pts[0]
    lam2 = next(box.norm(w) for w in pts if v1[0] * w[1] - v1[1] * w[0] != 0)
    return box.norm(v1), lam2


def test_congruence_lattice_examples(ctx7):
    b = congruence_lattice(3, ctx7)
    assert (b.v1, b.v2, b.det) == ((3, 1), (7, 0), -7)
    assert congruence_lattice(0, ctx7).v1 == (0, 1)
    assert congruence_lattice(1, ctx7).v1 == (1, 1)


def test_minima_examples(ctx7):
    assert successive_minima(congruence_lattice(3, ctx7), Box2(2, 2)) == (1, F(3, 2))
    # (1,1) gives 1/7 and (4,-3) gives 4/7
    assert successive_minima(congruence_lattice(1, ctx7), Box2(7, 7)) == (F(1, 7), F(4, 7))
    assert brute_minima(1, 7, 7, 7) == (F(1, 7), F(4, 7))


@pytest.mark.parametrize("p", [7, 11, 13, 31])
def test_minima_exhaustive_small(p):
    for s0 in range(p):
        for X in (1, 2, 3, p // 2):
            for Y in (1, 2, 5):
                got = successive_minima(congruence_lattice(s0, make_context(p)), Box2(X, Y))
                assert got == brute_minima(s0, p, X, Y), (s0, X, Y)


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(primes_below(200)[1:]),
    st.integers(0, 10**6),
    st.fractions(1, 40, max_denominator=7),
    st.fractions(1, 40, max_denominator=7),
    st.integers(2, 9),
)
def test_minima_random_and_homogeneous(p, s0, X, Y, t):
    basis = congruence_lattice(s0, make_context(p))
    lam1, lam2 = successive_minima(basis, Box2(X, Y))
    assert (lam1, lam2) == brute_minima(s0 % p, p, X, Y)
    assert successive_minima(basis, Box2(X, Y).scaled(t)) == (lam1 / t, lam2 / t)
    # second theorem of Minkowski in the plane
    assert p <= 2 * lam1 * lam2 * X * Y


@settings(max_examples=50, deadline=None)
@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.data())
def test_gauss_reduce_preserves_lattice(a, b, c, d, data):
    if a * d - b * c == 0:
        return
    basis = LatticeBasis2((a, b), (c, d))
    X = data.draw(st.integers(1, 30))
    Y = data.draw(st.integers(1, 30))
    for red in (gauss_reduce(basis), gauss_reduce(basis, Box2(X, Y))):
        assert abs(red.det) == abs(basis.det)
        for _ in range(20):
            i, j = data.draw(st.integers(-9, 9)), data.draw(st.integers(-9, 9))
            assert red.contains(*basis.point(i, j))
            assert basis.contains(*red.point(i, j))


@pytest.mark.parametrize("p", [7, 31, 101])
def test_count_points_against_enumeration(p):
    ctx = make_context(p)
    rng = np.random.default_rng(p)
    for _ in range(25):
        s0 = int(rng.integers(0, p))
        X, Y = int(rng.integers(1, 2 * p)), int(rng.integers(1, 2 * p))
        brute = sum(
            1 for v in range(-Y, Y + 1) for u in range(-X, X + 1) if (u - s0 * v) % p == 0
        )
        assert count_points_in_box(congruence_lattice(s0, ctx), Box2(X, Y)) == brute


def test_count_coprime_examples(ctx7):
    assert count_coprime_box(3, 2, 3, ctx7).total == 1
    assert count_coprime_box(1, 1, 1, ctx7).total == 1
    assert count_coprime_box(5, 1, 1, ctx7).total == 0


@pytest.mark.parametrize("p", [11, 53, 101])
def test_coprime_box_brute_and_gcd_classes(p):
    ctx = make_context(p)
    for s0 in range(p):
        for X, Y in ((5, 7), (p + 3, 4), (p - 1, p - 1)):
            coprime = count_coprime_box(s0, X, Y, ctx).total
            brute = sum(
                1
                for x in range(1, X + 1)
                for y in range(1, Y + 1)
                if math.gcd(x, y) == 1 and (x - s0 * y) % p == 0
            )
            assert coprime == brute
            # all pairs split by gcd: class d (invertible mod p) is the coprime count
            # in the box shrunk by d
            everything = sum(1 for x in range(1, X + 1) for y in range(1, Y + 1) if (x - s0 * y) % p == 0)
            assert everything == sum(
                count_coprime_box(s0, X // d, Y // d, ctx).total for d in range(1, min(X, Y) + 1)
            )


def test_lemma2_examples(ctx7):
    c = lemma2_check(3, 2, 3, ctx7)
    assert (c.lhs, c.verdict) == (1, "pass")
    assert c.rhs == pytest.approx(180 / 7)
    assert lemma2_check(4, 1, 1, ctx7).verdict == "pass"
    ctx = make_context(101)
    assert all(lemma2_check(s0, 10, 10, ctx).verdict == "pass" for s0 in range(101))


def test_minima_product_examples(ctx7):
    basis = congruence_lattice(3, ctx7)
    c = minima_product_check(basis, Box2(2, 2))
    assert c.params["points"] == count_points_in_box(basis, Box2(2, 2))
    assert c.verdict == "pass"
    assert minima_product_check(basis, Box2(7, 7)).verdict == "pass"
    small = minima_product_check(congruence_lattice(3, make_context(101)), Box2(1, 1))
    assert small.params["lambda2"] > 1 and small.verdict == "pass"
