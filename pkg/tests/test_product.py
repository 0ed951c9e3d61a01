import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from torusmix.circle import IDENTITY, TorusPoint, circle_dist, make_angle
from torusmix.criterion import criterion_check
from torusmix.endo import CirclePower, ExponentMatrix, PermPower, Permutation, apply
from torusmix.errors import RejectedInput
from torusmix.mixing import root_family_points
from torusmix.product import BaseGroup, ShiftExtension, TorusGroup, assembled_witnesses, torus_extension

from .strategies import angles

ext = torus_extension(CirclePower(2))


def seq(*values):
    return ext.seq(TorusPoint.of(v) for v in values)


def random_seq(rng, ext, max_len=6, den=720):
    d = ext.base.dim
    n = rng.randint(0, max_len)
    return ext.seq(
        TorusPoint(tuple(make_angle(rng.randrange(den), rng.randrange(1, den)) for _ in range(d)))
        for _ in range(n)
    )


def test_normalization_strips_trailing_identities():
    g = seq("1/2", "0", "0")
    assert g.entries == (TorusPoint.of("1/2"),)
    assert seq("0", "1/3").entries == (TorusPoint.of("0"), TorusPoint.of("1/3"))
    assert seq("0") == ext.identity


def test_big_phi_examples():
    assert ext.big_phi(ext.identity) == ext.identity
    assert ext.big_phi(seq("1/4", "1/3")) == seq("5/6")
    g0 = TorusPoint.of("3/7")
    assert ext.big_phi(ext.seq([g0])).entries[0] == apply(CirclePower(2), g0)


def test_big_psi_examples():
    assert ext.big_psi(ext.identity) == ext.identity
    assert ext.big_psi(seq("1/2")) == seq("0", "1/2")


def test_metric_examples():
    g = seq("1/3", "2/5")
    assert ext.metric(g, g) == 0
    assert ext.metric(seq("1/4"), seq("3/4")) == Fraction(1, 2)
    assert ext.metric(seq("0", "1/4"), seq("0", "3/4")) == Fraction(1, 4)


def test_closed_form_examples():
    h = seq("1/8", "1/4")
    assert ext.phi_iterate_closed_form(seq("1/5"), 0) == seq("1/5")
    assert ext.phi_iterate_closed_form(h, 2) == ext.identity
    assert ext.iterate(h, 2) == ext.identity
    with pytest.raises(RejectedInput):
        ext.phi_iterate_closed_form(seq("1/3", "1/3", "1/3"), 1)


def test_shrink_bound_examples():
    assert ext.shrink_bound_check(ext.identity, 3) == (0, True)
    assert ext.shrink_bound_check(seq("1/8", "1/4"), 2) == (0, True)
    value, ok = ext.shrink_bound_check(seq("1/3", "1/5"), 1)
    # Phi(h) = (2/3 + 1/5) = (13/15); Psi puts it at index 1: d(13/15, 0) / 2
    assert value == Fraction(2, 15) / 2 and ok


def test_c_tilde_hand_example():
    c = ext.c_tilde_element(seq("1/3"), 1)
    assert c == seq("1/3", "1/3")
    assert ext.big_phi(c) == ext.identity
    assert ext.c_tilde_element(ext.identity, 4) == ext.identity


def test_dense_sample_examples():
    H = [TorusPoint((a,)) for a in root_family_points(2, 2)]
    out = ext.dense_sample_d_tilde(H, 1, 4)
    assert out == [ext.identity, seq("1/4"), seq("1/2"), seq("3/4")]
    assert ext.dense_sample_d_tilde(H, 3, 0) == []
    many = ext.dense_sample_d_tilde(H, 3, None)
    assert len(many) == 64 and len(set(many)) == 64
    assert all(not g.entries or not g.entries[-1].is_identity for g in many)
    seeded = ext.dense_sample_d_tilde(H, 3, 10, seed=9)
    assert seeded == ext.dense_sample_d_tilde(H, 3, 10, seed=9)


def test_psi_phi_is_not_identity():
    g = seq("1/3", "0")
    assert ext.big_psi(ext.big_phi(g)) == seq("0", "2/3")
    assert ext.big_psi(ext.big_phi(g)) != g
    assert ext.big_phi(ext.big_psi(g)) == g


@pytest.mark.parametrize("f", [CirclePower(3), PermPower(Permutation((1, 0)), (2, 3)), ExponentMatrix(((1, 2), (1, 2)))])
def test_section_and_annihilation_on_tori(f):
    e = torus_extension(f)
    rng = random.Random(f.dim)
    for _ in range(100):
        g = random_seq(rng, e)
        assert e.big_phi(e.big_psi(g)) == g
        n = max(1, len(g))
        c = e.c_tilde_element(g, n)
        assert e.iterate(c, n) == e.identity
        assert e.metric(c, g) <= Fraction(1, 2**n)
        k = max(0, len(g) - 1) + rng.randint(0, 3)
        assert e.phi_iterate_closed_form(g, k) == e.iterate(g, k)
        value, ok = e.shrink_bound_check(g, k)
        assert ok and value <= Fraction(1, 2 ** (k + 1))


@given(st.lists(angles, max_size=6), st.lists(angles, max_size=6))
def test_big_phi_is_a_homomorphism(a, b):
    g = ext.seq(TorusPoint((x,)) for x in a)
    h = ext.seq(TorusPoint((x,)) for x in b)
    assert ext.big_phi(ext.mul(g, h)) == ext.mul(ext.big_phi(g), ext.big_phi(h))


@given(st.lists(angles, max_size=6), st.lists(angles, max_size=6), st.lists(angles, max_size=6))
def test_metric_axioms(a, b, c):
    g, h, k = (ext.seq(TorusPoint((x,)) for x in v) for v in (a, b, c))
    assert ext.metric(g, h) == ext.metric(h, g) >= 0
    assert (ext.metric(g, h) == 0) == (g == h)
    assert ext.metric(g, k) <= ext.metric(g, h) + ext.metric(h, k)
    # oracle: direct sum over padded coordinates
    n = max(len(a), len(b))
    pad = lambda v: list(v) + [IDENTITY] * (n - len(v))
    assert ext.metric(g, h) == sum((circle_dist(x, y) / 2**i for i, (x, y) in enumerate(zip(pad(a), pad(b)))),
                                   Fraction(0))


@given(st.lists(angles, max_size=6), st.integers(0, 10))
def test_right_shift_contracts(a, k):
    g = ext.seq(TorusPoint((x,)) for x in a)
    assert ext.metric(ext.psi_power(g, k), ext.identity) <= ext.metric(g, ext.identity) / 2**k


def test_coordinate_zero_compatibility():
    rng = random.Random(5)
    for _ in range(50):
        g = random_seq(rng, ext)
        head = ext.big_phi(g)
        expected = ext.base.mul(ext.base.phi(ext.coord(g, 0)), ext.coord(g, 1))
        assert ext.coord(head, 0) == expected
        single = ext.seq(g.entries[:1])
        assert ext.coord(ext.big_phi(single), 0) == ext.base.phi(ext.coord(single, 0))


def test_assembled_criterion_passes_with_exact_zeros():
    e = torus_extension(PermPower(Permutation((1, 0)), (2, 3)))
    H = [TorusPoint((a, b)) for a in root_family_points(2, 2) for b in root_family_points(3, 1)]
    F, Hs, psi = assembled_witnesses(e, H, support_len=3, count=20, seed=3)
    report = criterion_check(e, F, Hs, psi, horizon=12)
    assert report.passed
    assert report.cond_i.mode == "exact" and report.cond_i.settled_at is not None
    assert all(d == 0 for t in report.cond_iii.traces for _, d in t)


def test_identity_base_map_still_extends_to_a_passing_criterion():
    e = torus_extension(CirclePower(1))
    H = [TorusPoint((a,)) for a in root_family_points(2, 3)]
    F, Hs, psi = assembled_witnesses(e, H, support_len=2, count=10, seed=0)
    assert criterion_check(e, F, Hs, psi, horizon=12).passed


def test_non_group_base_is_rejected():
    class Semigroup(TorusGroup):
        abelian_group = False

    with pytest.raises(RejectedInput):
        ShiftExtension(Semigroup(CirclePower(2)))
    assert issubclass(TorusGroup, BaseGroup)


def test_sequence_entries_are_checked():
    with pytest.raises(RejectedInput):
        ext.seq([TorusPoint.of("1/2", "1/3")])
