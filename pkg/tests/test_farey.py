from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from congrlab.arith import make_context
from congrlab.count import count_eq1
from congrlab.errors import DenominatorDivisibleByP, OrderTooSmall, RangeTooLarge
from congrlab.farey import (
    RationalSet,
    build_Jd_set,
    farey_set,
    growth_report,
    lemma3_uniqueness_check,
    map_to_fp,
    rational_mfold,
)
from congrlab.msets import ResidueSet


def totients(n):
    phi = np.arange(n + 1)
    for k in range(2, n + 1):
        if phi[k] == k:
            phi[k::k] -= phi[k::k] // k
    return phi


def test_farey_examples():
    assert farey_set(1) == RationalSet([F(1)])
    assert farey_set(2) == RationalSet([F(1), F(1, 2), F(2)])
    assert len(farey_set(3)) == 7


def test_farey_cardinality_totient():
    phi = totients(300)
    for Q in list(range(1, 60)) + [128, 300]:
        assert len(farey_set(Q)) == 2 * int(phi[1 : Q + 1].sum()) - 1


def test_mfold_examples():
    A = RationalSet([F(1, 2), F(2)])
    assert rational_mfold(A, 2) == RationalSet([F(1, 4), F(1), F(4)])
    assert rational_mfold(A, 1) == A
    assert rational_mfold(RationalSet([F(1)]), 5) == RationalSet([F(1)])


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.tuples(st.integers(1, 50), st.integers(1, 50)), min_size=1, max_size=8),
    st.integers(1, 2),
    st.integers(1, 2),
)
def test_mfold_associative(pairs, m1, m2):
    A = RationalSet(F(a, b) for a, b in pairs)
    # (A^(m1))^(m2) is the m1*m2 fold, and A^(m1+m2) = A^(m1) * A^(m2)
    B = rational_mfold(A, m1)
    C = rational_mfold(A, m2)
    prod = RationalSet(b * c for b in B.elements for c in C.elements)
    assert rational_mfold(A, m1 + m2) == prod
    assert rational_mfold(B, m2) == rational_mfold(A, m1 * m2)
    assert rational_mfold(A, m1 + m2).Q <= A.Q ** (m1 + m2)


def test_map_to_fp_examples(ctx7):
    assert set(map_to_fp(RationalSet([F(1, 2)]), ctx7)) == {4}
    assert set(map_to_fp(RationalSet([F(3), F(9)]), ctx7)) == {3, 2}
    assert len(map_to_fp(RationalSet([F(1, 2), F(4)]), ctx7)) == 1
    with pytest.raises(DenominatorDivisibleByP):
        map_to_fp(RationalSet([F(1, 7)]), ctx7)


def test_jd_examples(ctx7):
    one = ResidueSet.from_elements(ctx7, [1])
    assert build_Jd_set(2, 1, one) == RationalSet([F(1)])
    assert build_Jd_set(2, 2, one) == RationalSet([F(1)])
    assert build_Jd_set(2, 1, ResidueSet.from_elements(ctx7, [4])) == RationalSet([F(1, 2)])


@pytest.mark.parametrize("p", [101, 211, 499])
def test_jd_sets_partition_eq1(p):
    ctx = make_context(p)
    rng = np.random.default_rng(p)
    U = ResidueSet.from_elements(ctx, rng.integers(1, p, size=8).tolist())
    for H in (5, 12, 30):
        rep = count_eq1(H, U)
        for d in range(1, H + 1):
            Jd = build_Jd_set(H, d, U)
            assert len(Jd) == rep.by_gcd.get(d, 0)
            assert set(map_to_fp(Jd, ctx)) <= set(U)
        assert sum(len(build_Jd_set(H, d, U)) for d in range(1, H + 1)) == rep.total


def test_lemma3_examples(ctx7):
    assert lemma3_uniqueness_check(2, 3, ctx7).verdict == "pass"
    c = lemma3_uniqueness_check(1, 1, ctx7)
    assert (c.lhs, c.verdict) == (1, "pass")
    with pytest.raises(RangeTooLarge):
        lemma3_uniqueness_check(3, 3, ctx7)


def test_lemma3_brute_force_multiplicity():
    p = 97
    ctx = make_context(p)
    for X in range(1, 12):
        Y = (p - 1) // X
        seen = {}
        for x in range(1, X + 1):
            for y in range(1, Y + 1):
                if np.gcd(x, y) == 1:
                    lam = x * pow(y, -1, p) % p
                    seen[lam] = seen.get(lam, 0) + 1
        assert lemma3_uniqueness_check(X, Y, ctx).lhs == max(seen.values()) == 1


def test_growth_report():
    A = farey_set(16)
    c = growth_report(A, 1, 0.5)
    assert c.lhs == len(A) and c.verdict == "pass"
    c = growth_report(A, 2, 10)
    assert c.lhs == len(rational_mfold(A, 2))
    least = c.params["min_constant"]
    assert growth_report(A, 2, least + 1e-6).verdict == "pass"
    assert growth_report(A, 2, max(least - 1e-3, 1e-9)).verdict == "fail" or least < 1e-3
    with pytest.raises(OrderTooSmall):
        growth_report(RationalSet([F(1)]), 3, 1)
