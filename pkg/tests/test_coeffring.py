"""Exact coefficient field: canonical forms, arithmetic, evaluation, profiling."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qhc.coeffring import (
    CoeffError,
    RatCoeff,
    RC_ONE,
    RC_Q,
    RC_T,
    RC_ZERO,
    coeff_arith,
    p_gcd,
    p_mul,
)

Q = RC_Q
T = RC_T
one = RC_ONE


def num(n):
    return RatCoeff.from_int(n)


# a modest pool of structured coefficients for property tests
monos = st.tuples(st.integers(-3, 3), st.integers(-2, 2), st.integers(-2, 2))


@st.composite
def coeffs(draw):
    terms = draw(st.lists(monos, min_size=0, max_size=4))
    acc = RC_ZERO
    for c, eq, et in terms:
        acc = acc + RatCoeff.monomial(c, eq, et)
    if draw(st.booleans()):
        acc = acc / (one + T * T)
    return acc


def test_cancellation_example():
    # (t - 1/t) * 1/(t^2 - 1) = 1/t
    a = T - T**-1
    b = (T * T - one).inverse()
    assert a * b == T**-1


def test_common_denominator_example():
    a = (one + T * T).inverse()
    b = (T * T) * (one + T * T).inverse()
    assert a + b == one


def test_mul_expand_example():
    # (q^-2 - 1) * q^2 = 1 - q^2
    assert (Q**-2 - one) * Q**2 == one - Q * Q


def test_eval_examples():
    a = Q**-2 - one
    assert a.eval(Fraction(2), Fraction(3)) == Fraction(-3, 4)
    b = (one + T * T).inverse()
    assert b.eval(Fraction(2), Fraction(1)) == Fraction(1, 2)
    assert one.eval(Fraction(7), Fraction(11)) == 1


def test_eval_vanishing_denominator_names_factor():
    a = (Q - one).inverse()
    with pytest.raises(CoeffError, match="q - 1"):
        a.eval(Fraction(1), Fraction(2))
    b = Q**-2
    with pytest.raises(CoeffError, match="q"):
        b.eval(Fraction(0), Fraction(2))


def test_denom_profile_examples():
    a = (Q**2 * T * (one + T * T)).inverse()
    p = a.denom_profile()
    assert (p.q_power, p.t_power, p.t2plus1_power) == (2, 1, 1)
    assert p.clean

    b = T - T**-1
    p = b.denom_profile()
    assert (p.q_power, p.t_power, p.t2plus1_power) == (0, 1, 0)
    assert p.clean

    c = (Q - one).inverse()
    p = c.denom_profile()
    assert (p.q_power, p.t_power, p.t2plus1_power) == (0, 0, 0)
    assert not p.clean
    assert str(p.residual) == "q - 1"


def test_coeff_arith_dispatch_and_div_by_zero():
    assert coeff_arith(Q, T, "mul") == Q * T
    with pytest.raises(CoeffError):
        coeff_arith(one, RC_ZERO, "div")


def test_canonical_sign():
    # denominators get a positive leading coefficient under graded lex q < t
    a = one / (RatCoeff.from_int(-1) * T + RC_ZERO)
    assert str(a) == "-1/t"
    assert a * T == num(-1)


@settings(max_examples=200, deadline=None)
@given(coeffs(), coeffs(), coeffs())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    if a:
        assert a * a.inverse() == one


@settings(max_examples=200, deadline=None)
@given(coeffs(), coeffs())
def test_eval_is_hom(a, b):
    q0, t0 = Fraction(3), Fraction(5)
    assert (a * b).eval(q0, t0) == a.eval(q0, t0) * b.eval(q0, t0)
    assert (a + b).eval(q0, t0) == a.eval(q0, t0) + b.eval(q0, t0)


@settings(max_examples=200, deadline=None)
@given(coeffs())
def test_canonicalization_idempotent(a):
    again = RatCoeff(dict(a.num), dict(a.den))
    assert again == a
    g = p_gcd(a.num, a.den)
    assert g == {(0, 0): 1} or not a.num


@settings(max_examples=100, deadline=None)
@given(coeffs(), coeffs())
def test_gcd_divides_products(a, b):
    if not a or not b:
        return
    f, g = p_mul(a.num, b.num), p_mul(a.num, b.den)
    d = p_gcd(f, g)
    # a.num divides the gcd of the two products
    from qhc.coeffring import p_exact_div
    p_exact_div(d, a.num)
