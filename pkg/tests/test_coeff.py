from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qborel.coeff import (
    LaurentPoly, NonMonomialDivision, ONE, Q, QHAT, QHAT_INV, QhatFraction,
    RootOfUnityError, ZERO, laurent_add, laurent_eval, laurent_mul, qhat_fraction,
)

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
laurents = st.dictionaries(st.integers(-3, 3), rationals, max_size=4).map(LaurentPoly)


def P(d):
    return LaurentPoly(d)


def test_add_examples():
    assert laurent_add(Q, -Q) == ZERO
    assert laurent_add(QHAT, LaurentPoly.q(-1)) == Q
    assert laurent_add(LaurentPoly.q(2), LaurentPoly.const(3)) == P({2: 1, 0: 3})


def test_mul_examples():
    assert laurent_mul(QHAT, Q) == P({2: 1, 0: -1})
    assert laurent_mul(ONE, QHAT) == QHAT
    assert laurent_mul(QHAT, P({1: 1, -1: 1})) == P({2: 1, -2: -1})


def test_eval_examples():
    assert laurent_eval(QHAT, 2) == Fraction(3, 2)
    assert laurent_eval(ONE, Fraction(7, 3)) == 1
    assert laurent_eval(P({2: 1, 0: -1}), 2) == 3


def test_eval_guards():
    with pytest.raises(ZeroDivisionError):
        laurent_eval(Q, 0)
    for bad in (1, -1):
        assert laurent_eval(Q, bad) == bad
        with pytest.raises(RootOfUnityError):
            laurent_eval(Q, bad, specialization=True)


def test_division_only_by_monomials():
    with pytest.raises(NonMonomialDivision):
        QHAT.inverse()
    with pytest.raises(NonMonomialDivision):
        ONE / QHAT
    assert P({2: 3}).inverse() == P({-2: Fraction(1, 3)})
    assert (P({3: 2, 1: 4}) / P({1: 2})) == P({2: 1, 0: 2})


def test_canonical_text():
    assert str(P({2: 1, 0: -1, -1: 3})) == "q^2 - 1 + 3*q^-1"
    assert str(ZERO) == "0"
    assert str(P({1: Fraction(-1, 2)})) == "-1/2*q"


def test_json_round_trip():
    p = P({2: Fraction(1, 3), -4: -7})
    assert LaurentPoly.from_json(p.to_json()) == p


@settings(max_examples=1000, deadline=None)
@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert a + (-a) == ZERO


@settings(max_examples=500, deadline=None)
@given(laurents, laurents, st.sampled_from([Fraction(2), Fraction(5, 3)]))
def test_eval_is_homomorphism(a, b, x):
    assert (a * b).eval(x) == a.eval(x) * b.eval(x)
    assert (a + b).eval(x) == a.eval(x) + b.eval(x)


def test_qhat_fractions():
    assert str(-QHAT_INV) == "-qhat^-1"
    assert QHAT_INV * QHAT == ONE
    assert qhat_fraction(P({2: 1, 0: -1}), 1) == Q
    assert QHAT_INV.eval(2) == Fraction(2, 3)
    x = qhat_fraction(Q, 2)
    assert isinstance(x, QhatFraction) and x.k == 2
    assert x - x == ZERO
    assert (QHAT_INV + QHAT_INV) * QHAT == LaurentPoly.const(2)
    with pytest.raises(RootOfUnityError):
        QHAT_INV.eval(1)
