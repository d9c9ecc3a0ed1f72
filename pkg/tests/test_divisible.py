from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prufer_forge.divisible import (
    PrueferVector,
    divisible_hull_from_cover,
    mult_by_p_check,
    torsion,
)
from prufer_forge.errors import CapExceeded
from prufer_forge.zpk import RingSpec


def vec(p, *coords):
    return PrueferVector(p, coords)


def test_add_examples():
    assert vec(2, F(1, 2), 0) + vec(2, F(1, 2), 0) == vec(2, 0, 0)
    assert vec(2, F(1, 4), F(1, 2)) + vec(2, F(1, 4), F(1, 2)) == vec(2, F(1, 2), 0)
    assert vec(3, F(1, 3), 0) + vec(3, F(1, 9), 0) == vec(3, F(4, 9), 0)
    with pytest.raises(ValueError):
        vec(2, F(1, 2)) + vec(2, 0, 0)


def test_rejects_wrong_denominators():
    with pytest.raises(ValueError):
        vec(2, F(1, 3))


def test_order_examples():
    assert vec(2, 0, 0).order() == 1
    assert vec(2, F(1, 4), F(1, 2)).order() == 4
    assert vec(2, F(1, 8), F(1, 2)).order() == 8


def test_json_round_trip():
    x = vec(3, F(2, 9), F(1, 3))
    data = x.to_json()
    assert data == {"p": 3, "coords": [{"num": 2, "den_exp": 2}, {"num": 1, "den_exp": 1}]}
    assert PrueferVector.from_json(data) == x


pvecs = st.builds(
    lambda p, nums: PrueferVector(p, tuple(F(a, p**e) for a, e in nums)),
    st.just(3),
    st.lists(st.tuples(st.integers(0, 80), st.integers(0, 4)), min_size=2, max_size=2),
)


@given(pvecs, pvecs, pvecs)
def test_abelian_group_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x + y == y + x
    assert (x + (-x)).is_zero()
    assert x + PrueferVector.zero(3, 2) == x


@given(pvecs)
def test_order_of_px(x):
    if x.order() > 1:
        assert (3 * x).order() == x.order() // 3


def test_torsion_examples():
    assert len(torsion(2, RingSpec(3, 1))) == 9
    t = torsion(1, RingSpec(2, 3))
    assert sorted(x.coords[0] for x in t) == [F(i, 8) for i in range(8)]
    t = torsion(2, RingSpec(2, 2))
    assert len(t) == 16 and all(4 % x.order() == 0 for x in t)
    with pytest.raises(CapExceeded):
        torsion(4, RingSpec(2, 3), cap=100)


def test_torsion_bijection_intertwines_addition():
    ring = RingSpec(3, 2)
    t = torsion(2, ring)
    elems = list(t)
    assert len({t.to_vector(x) for x in elems}) == 81
    for x in elems[::7]:
        for y in elems[::5]:
            s = t.to_vector(x + y)
            assert s == tuple((a + b) % 9 for a, b in zip(t.to_vector(x), t.to_vector(y)))
    assert t.to_vector(vec(3, F(1, 3), F(2, 9))) == (3, 2)


def test_torsion_closed_under_addition():
    t = torsion(2, RingSpec(2, 2))
    elems = set(t)
    assert all(x + y in elems for x in elems for y in elems)


def test_mult_by_p_examples():
    r = mult_by_p_check(1, RingSpec(2, 3))
    assert r["passed"] and r["image_size"] == 4 and r["kernel_size"] == 2
    r = mult_by_p_check(2, RingSpec(3, 2))
    assert r["passed"] and r["kernel_size"] == 9
    r = mult_by_p_check(1, RingSpec(5, 1))
    assert r["passed"] and r["image_size"] == 1 and r["kernel_size"] == 5


def test_hull_actions():
    hull = divisible_hull_from_cover([[[0, 1], [-1, 0]]], 2, 2)
    assert hull.act(vec(2, F(1, 2), 0), 0) == vec(2, 0, F(1, 2))
    ident = divisible_hull_from_cover([[[1, 0], [0, 1]]], 2, 3)
    for x in torsion(2, RingSpec(3, 1)):
        assert ident.act(x, 0) == x
    inv = divisible_hull_from_cover([[[-1]]], 1, 2)
    assert inv.act(vec(2, F(1, 4)), 0) == vec(2, F(3, 4))


def test_hull_rejects_bad_covers():
    with pytest.raises(TypeError):
        divisible_hull_from_cover([[[F(1, 2), 0], [0, 1]]], 2, 2)
    with pytest.raises(TypeError):
        divisible_hull_from_cover([[[0.5, 0], [0, 1]]], 2, 2)
    with pytest.raises(ValueError):
        divisible_hull_from_cover([[[2, 0], [0, 1]]], 2, 2)
    with pytest.raises(CapExceeded):
        # infinite order over Z
        divisible_hull_from_cover([[[1, 1], [0, 1]]], 2, 5, cap=200)


def test_hull_truncations_and_tower():
    hull = divisible_hull_from_cover([[[0, 1], [-1, 0]], [[-1, 0], [0, 1]]], 2, 2)
    for k in (1, 2, 3):
        assert hull.check_truncation(k)
    # action on M[8], reduced to M[4] through the bijections, equals the action on M[4]
    t3, t2 = torsion(2, RingSpec(2, 3)), torsion(2, RingSpec(2, 2))
    for x in t2:
        for i in range(2):
            y = hull.act(x, i)
            assert y in t2
            assert t2.to_vector(y) == tuple(a // 2 for a in t3.to_vector(y))
