from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torusmix.circle import (
    IDENTITY,
    Arc,
    ArcProduct,
    RationalAngle,
    TorusPoint,
    angle_inv,
    angle_mul,
    angle_pow,
    angle_root,
    arc_contains,
    circle_dist,
    make_angle,
    parse_angle,
    torus_dist,
    torus_mul,
)
from torusmix.errors import RejectedInput

from .strategies import angles


def frac_mod1(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@pytest.mark.parametrize(
    "p, q, expected",
    [
        (0, 1, (0, 1)),
        (9, 8, (1, 8)),
        (-1, 4, (3, 4)),
        (6, -8, (1, 4)),
        (10, 5, (0, 1)),
    ],
)
def test_make_angle(p, q, expected):
    a = make_angle(p, q)
    assert (a.num, a.den) == expected
    # oracle: integer arithmetic over the common denominator
    assert a.as_fraction() == frac_mod1(Fraction(p, q))


def test_make_angle_zero_denominator():
    with pytest.raises(RejectedInput):
        make_angle(1, 0)


def test_angle_is_immutable():
    a = make_angle(1, 3)
    with pytest.raises(AttributeError):
        a.num = 2


@pytest.mark.parametrize(
    "a, b, expected",
    [((1, 2), (1, 2), (0, 1)), ((1, 3), (1, 3), (2, 3)), ((1, 6), (3, 4), (11, 12))],
)
def test_angle_mul(a, b, expected):
    assert angle_mul(make_angle(*a), make_angle(*b)) == make_angle(*expected)


def test_angle_pow_examples():
    assert angle_pow(make_angle(1, 8), 2) == make_angle(1, 4)
    assert angle_pow(make_angle(5, 7), 0) == IDENTITY
    assert angle_pow(make_angle(1, 3), -1) == make_angle(2, 3)


def test_angle_root_examples():
    assert angle_root(make_angle(1, 2), 2) == make_angle(1, 4)
    assert angle_root(IDENTITY, 7) == IDENTITY
    assert angle_root(make_angle(3, 4), 3) == make_angle(1, 4)
    with pytest.raises(RejectedInput):
        angle_root(make_angle(1, 2), 0)


def test_circle_dist_examples():
    assert circle_dist(make_angle(1, 4), make_angle(3, 4)) == Fraction(1, 2)
    assert circle_dist(make_angle(2, 9), make_angle(2, 9)) == 0
    assert circle_dist(make_angle(1, 8), make_angle(7, 8)) == Fraction(1, 4)


def test_arc_contains_examples():
    arc = Arc(IDENTITY, Fraction(1, 8))
    assert arc_contains(arc, make_angle(1, 16))
    assert not arc_contains(arc, make_angle(1, 8))
    assert not arc_contains(arc, make_angle(7, 8))
    full = Arc(IDENTITY, Fraction(1, 2))
    assert all(arc_contains(full, make_angle(j, 17)) for j in range(17))


@pytest.mark.parametrize("hw", [Fraction(0), Fraction(-1, 3), Fraction(3, 5)])
def test_arc_rejects_bad_halfwidth(hw):
    with pytest.raises(RejectedInput):
        Arc(IDENTITY, hw)


def test_parse_angle():
    assert parse_angle("3/4") == make_angle(3, 4)
    assert parse_angle("5") == IDENTITY
    assert parse_angle("-1/3") == make_angle(2, 3)
    for bad in ["1/0", "a/b", "1/2/3", ""]:
        with pytest.raises(RejectedInput):
            parse_angle(bad)


def test_arc_product_contains():
    box = ArcProduct((Arc(IDENTITY, Fraction(1, 8)), Arc(make_angle(1, 2), Fraction(1, 8))))
    assert box.contains(TorusPoint.of("1/16", "1/2"))
    assert not box.contains(TorusPoint.of("1/2", "1/2"))
    with pytest.raises(RejectedInput):
        box.contains(TorusPoint.of("0"))


@given(angles)
def test_invariants_hold(a):
    assert 0 <= a.num < a.den
    assert a == RationalAngle(a.num, a.den)


@given(angles, st.integers(-50, 50), st.integers(-50, 50))
def test_pow_of_pow(a, m, n):
    assert angle_pow(angle_pow(a, m), n) == angle_pow(a, m * n)


@given(angles, st.integers(1, 10**6))
def test_root_is_exact_section(a, n):
    r = angle_root(a, n)
    assert angle_pow(r, n) == a
    assert r.as_fraction() < Fraction(1, n)
    assert circle_dist(r, IDENTITY) < Fraction(1, n)


@given(angles, angles, angles)
def test_metric_axioms(a, b, c):
    assert 0 <= circle_dist(a, b) <= Fraction(1, 2)
    assert circle_dist(a, b) == circle_dist(b, a)
    assert (circle_dist(a, b) == 0) == (a == b)
    assert circle_dist(a, c) <= circle_dist(a, b) + circle_dist(b, c)


@given(angles, angles, angles)
def test_abelian_group_laws(a, b, c):
    assert angle_mul(a, b) == angle_mul(b, a)
    assert angle_mul(angle_mul(a, b), c) == angle_mul(a, angle_mul(b, c))
    assert angle_mul(a, IDENTITY) == a
    assert angle_mul(a, angle_inv(a)) == IDENTITY
    # oracle: Fraction addition mod 1
    assert angle_mul(a, b).as_fraction() == frac_mod1(a.as_fraction() + b.as_fraction())


@given(angles, angles)
def test_torus_ops(a, b):
    z, w = TorusPoint((a, b)), TorusPoint((b, a))
    assert torus_mul(z, w) == TorusPoint((angle_mul(a, b),) * 2)
    assert torus_dist(z, w) == circle_dist(a, b)
