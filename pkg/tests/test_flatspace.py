import numpy as np
import pytest
from hypothesis import given, strategies as hst

from conecalc.flatspace import diamond_box, leq, time_T


def test_leq_examples():
    assert leq((0, 0, 0), (1, 1, 1), 2)
    assert not leq((0, 0, 0), (1, 0, 2), 2)
    assert leq((0, 0), (1, 1), 1, "causal")
    assert not leq((0, 0), (1, 1), 1, "chronological")
    assert leq((0, 0), (2, 1), 1, "chronological")
    assert leq((3, 4), (3, 4), 1)


def test_leq_bad_mode():
    with pytest.raises(ValueError):
        leq((0, 0), (1, 0), 1, "lightlike")


@pytest.mark.parametrize("p, nu, expected", [((1, 2, 3), 2, 3), ((5, -7), 1, 5), ((0, 0, 0), 3, 0)])
def test_time_T(p, nu, expected):
    assert time_T(p, nu) == expected


def test_diamond_box_examples():
    b = diamond_box((0, 0), (2, 0), 1)
    np.testing.assert_allclose(b.lo, (0, -2 * np.sqrt(2)))
    np.testing.assert_allclose(b.hi, (2, 2 * np.sqrt(2)))
    b = diamond_box((0, 0), (1, 1), 2)
    assert b.lo == (0, 0) and b.hi == (1, 1)
    assert diamond_box((0, 0), (-1, 0), 1) is None


coords = hst.lists(hst.integers(-6, 6), min_size=3, max_size=3)


@given(coords, coords, coords, hst.integers(1, 3))
def test_order_transitive(a, b, c, nu):
    # integer coordinates keep the comparison exact
    if leq(a, b, nu) and leq(b, c, nu):
        assert leq(a, c, nu)


@given(coords, coords, hst.integers(1, 3))
def test_chronological_implies_causal(a, b, nu):
    if leq(a, b, nu, "chronological"):
        assert leq(a, b, nu, "causal")
        assert time_T(b, nu) > time_T(a, nu)


@given(coords, coords, hst.integers(1, 3))
def test_related_points_lie_in_box(a, b, nu):
    if leq(a, b, nu):
        assert diamond_box(a, b, nu).contains(np.array(b, float), atol=1e-12)


@given(coords, coords, coords, hst.integers(1, 3))
def test_closure_transitive_and_contains_order(a, b, c, nu):
    from conecalc.flatspace import leq_closure
    if leq(a, b, nu):
        assert leq_closure(a, b, nu)
    if leq_closure(a, b, nu) and leq_closure(b, c, nu):
        assert leq_closure(a, c, nu)
    if nu == 1:
        assert leq_closure(a, b, 1) == leq(a, b, 1)


def test_chord_order_fails_transitivity_nu2():
    assert leq((0, 0, 0), (1, 0, 1), 2) and leq((1, 0, 1), (1, 1, 2), 2)
    assert not leq((0, 0, 0), (1, 1, 2), 2)
