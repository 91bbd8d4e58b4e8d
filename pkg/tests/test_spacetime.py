import json

import numpy as np
import pytest

from conecalc import spacetime as st
from conecalc.bilinear import signature
from conecalc.boxes import Box
from conecalc.errors import DomainError, FrameDependenceError
from conecalc.scenarios import structure_from_recipe


@pytest.mark.parametrize("n, nu, diag", [(2, 1, [-1, 1]), (3, 2, [-1, -1, 1]), (2, 2, [-1, -1])])
def test_flat(n, nu, diag):
    s = st.flat(n, nu)
    np.testing.assert_array_equal(s.form_at(np.zeros(n)), np.diag(diag))
    np.testing.assert_array_equal(s.frame_at(np.zeros(n)), np.eye(n)[:nu])


@pytest.mark.parametrize("n, nu", [(2, 0), (2, 3), (17, 1)])
def test_flat_rejects(n, nu):
    with pytest.raises(ValueError):
        st.flat(n, nu)


def test_metric_from_frame_examples():
    h = st.MetricField.constant(np.eye(2), index=0)
    g = st.metric_from_frame(h, st.TimeFrame.constant([[1.0, 0.0]]))
    np.testing.assert_allclose(g.form_at(np.zeros(2)), np.diag([-1, 1]))
    g = st.metric_from_frame(h, st.TimeFrame.constant([[1.0, 1.0]]))
    np.testing.assert_allclose(g.form_at(np.zeros(2)), [[0, -1], [-1, 0]], atol=1e-15)
    h3 = st.MetricField.constant(np.eye(3), index=0)
    g = st.metric_from_frame(h3, st.TimeFrame.constant(np.eye(3)[:2]))
    np.testing.assert_allclose(g.form_at(np.zeros(3)), np.diag([-1, -1, 1]))


def test_metric_from_frame_dependent():
    h = st.MetricField.constant(np.eye(3), index=0)
    with pytest.raises(FrameDependenceError):
        st.metric_from_frame(h, st.TimeFrame.constant([[1.0, 0, 0], [2.0, 0, 0]]))


def test_metric_from_frame_signature_random():
    rng = np.random.default_rng(3)
    for _ in range(50):
        n = int(rng.integers(1, 6))
        nu = int(rng.integers(1, n + 1))
        a = rng.normal(size=(n, n))
        h = st.MetricField.constant(a @ a.T + n * np.eye(n), index=0)
        frame = st.TimeFrame.constant(rng.normal(size=(nu, n)))
        g = st.metric_from_frame(h, frame).form_at(np.zeros(n))
        assert signature(g) == (n - nu, nu, 0)
        xs = frame.vectors_at(np.zeros(n))
        hh = h.form_at(np.zeros(n))
        # g(X, X) = -h(X, X) on frame vectors
        np.testing.assert_allclose(xs @ g @ xs.T, -(xs @ hh @ xs.T), atol=1e-9)


def test_extend_negative_examples():
    s = st.extend_negative(st.flat(1, 1), 0.0)
    assert (s.n, s.nu) == (2, 2)
    np.testing.assert_array_equal(s.form_at(np.zeros(2)), np.diag([-1, -1]))
    np.testing.assert_array_equal(s.frame_at(np.zeros(2)), [[0, 1], [1, 0]])
    s = st.extend_negative(st.flat(2, 1), 0.5)
    np.testing.assert_array_equal(s.form_at(np.zeros(3)), np.diag([-1, -1, 1]))
    np.testing.assert_allclose(s.frame_at(np.zeros(3)), [[0, 1, 0], [1, -0.5, 0]])
    assert st.validate(s).passed


def test_extend_negative_notgh():
    s = st.extend_negative(st.minkowski_minus_future_cone(), 0.0)
    assert (s.n, s.nu) == (3, 2)
    assert not s.contains(np.zeros(3))
    assert s.contains(np.array([5.0, -1.0, 0.0]))
    np.testing.assert_array_equal(s.frame_at(np.zeros(3)), [[0, 1, 0], [1, 0, 0]])


def test_extend_positive():
    s = st.extend_positive(st.flat(2, 1))
    assert (s.n, s.nu) == (3, 1)
    np.testing.assert_array_equal(s.form_at(np.zeros(3)), np.diag([1, -1, 1]))
    s = st.extend_positive(st.flat(2, 2))
    assert signature(s.form_at(np.zeros(3))) == (1, 2, 0)
    w = st.warped_product(st.flat(2, 1), st.euclidean(1), lambda p: 2.0 + 0 * p[:, 0])
    e = st.extend_positive(w)
    assert (e.n, e.nu) == (w.n + 1, w.nu)
    assert st.validate(e).passed


def test_warped_product():
    one = lambda p: np.ones(len(p))
    two = lambda p: np.full(len(p), 2.0)
    s = st.warped_product(st.flat(2, 1), st.euclidean(1), one)
    np.testing.assert_array_equal(s.form_at(np.zeros(3)), np.diag([-1, 1, 1]))
    s = st.warped_product(st.flat(2, 1), st.euclidean(1), two)
    np.testing.assert_array_equal(s.form_at(np.zeros(3)), np.diag([-1, 1, 4]))
    s = st.warped_product(st.flat(2, 2), st.euclidean(2), one)
    assert (s.n, s.nu) == (4, 2)
    assert st.validate(s).passed
    with pytest.raises(ValueError):
        st.warped_product(st.flat(2, 1), st.euclidean(1), lambda p: -one(p))


def test_validate_examples():
    assert st.validate(st.flat(3, 2), n_probes=100).passed
    bad = st.with_frame(st.flat(2, 1), st.TimeFrame.constant([[0.0, 1.0]]))
    rep = st.validate(bad)
    assert not rep.passed
    assert rep.failures()[0].frame_norms == [1.0]
    dup = st.with_frame(st.flat(3, 2), st.TimeFrame.constant([[1.0, 0, 0], [1.0, 0, 0]]))
    rep = st.validate(dup)
    assert not rep.passed and not rep.failures()[0].frame_independent


def test_domain():
    s = st.minkowski_minus_future_cone()
    assert not s.contains(np.array([1.0, 0.0]))
    assert s.contains(np.array([-1.0, 0.0]))
    with pytest.raises(DomainError):
        s.require(np.array([0.0, 0.0]))
    p = st.punctured_product(2)
    assert not p.contains(np.array([3.0, 0.0, 0.0]))
    assert p.contains(np.array([3.0, 0.0, 1e-9]))


def test_conformal_scales_metric():
    s = st.conformal(st.flat(2, 1))
    p = np.array([0.7, 0.2])
    om = 1 + 0.5 * np.sin(0.7)
    np.testing.assert_allclose(s.form_at(p), om ** 2 * np.diag([-1, 1]))
    assert st.validate(s, box=Box((-3, -3), (3, 3))).passed


@pytest.mark.parametrize("make", [
    lambda: st.flat(3, 2),
    lambda: st.extend_negative(st.minkowski_minus_future_cone(), 0.0),
    lambda: st.extend_negative(st.flat(2, 1), 0.25),
    lambda: st.conformal(st.flat(2, 1)),
    lambda: st.punctured_product(2),
    lambda: st.extend_positive(st.flat(2, 2)),
])
def test_recipe_round_trip(make):
    s = make()
    back = structure_from_recipe(json.loads(json.dumps(s.recipe)))
    pts = np.random.default_rng(0).uniform(-2, 2, size=(20, s.n))
    np.testing.assert_array_equal(back.form_at(pts), s.form_at(pts))
    np.testing.assert_array_equal(back.frame_at(pts), s.frame_at(pts))
    np.testing.assert_array_equal(back.contains(pts), s.contains(pts))
