import numpy as np
import pytest
from hypothesis import given, settings, strategies as hst
from hypothesis.extra import numpy as hnp

from conecalc.bilinear import evaluate, gram_schmidt, positive_functional_vector, signature
from conecalc.errors import DimensionError, LinearDependenceError

MINK = np.diag([-1.0, 1.0])
OFFDIAG = np.array([[0.0, -1.0], [-1.0, 0.0]])


@pytest.mark.parametrize("form, v, expected", [
    (MINK, (1, 0), -1.0),
    (MINK, (1, 1), 0.0),
    (OFFDIAG, (1, 1), -2.0),
])
def test_evaluate_examples(form, v, expected):
    assert evaluate(form, v, v) == expected


def test_evaluate_dimension_mismatch():
    with pytest.raises(DimensionError):
        evaluate(MINK, (1, 0, 0), (1, 0))


@pytest.mark.parametrize("form, expected", [
    (np.diag([-1.0, -1.0, 1.0]), (1, 2, 0)),
    (np.eye(3), (3, 0, 0)),
    (OFFDIAG, (1, 1, 0)),
    (np.diag([1.0, 0.0, -1.0]), (1, 1, 1)),
])
def test_signature_examples(form, expected):
    assert signature(form, 1e-9) == expected


def test_gram_schmidt_examples():
    np.testing.assert_allclose(gram_schmidt([(1, 0), (0, 1)], np.eye(2)), [(1, 0), (0, 1)])
    np.testing.assert_allclose(gram_schmidt([(1, 0), (1, 1)], np.eye(2)), [(1, 0), (0, 1)])
    np.testing.assert_allclose(gram_schmidt([(1, 1), (1, 0)], np.eye(2)), [(1, 1), (0.5, -0.5)])


def test_gram_schmidt_dependent():
    with pytest.raises(LinearDependenceError):
        gram_schmidt([(1, 2), (2, 4)], np.eye(2))


def test_positive_functional_examples():
    np.testing.assert_allclose(positive_functional_vector([(1, 0), (0, 1)], np.eye(2)), (1, 1))
    np.testing.assert_allclose(positive_functional_vector([(1, 0), (-1, 1)], np.eye(2)), (1, 2))
    np.testing.assert_allclose(positive_functional_vector([(1,)], np.eye(1)), (1,))


def _spd(a):
    return a @ a.T + a.shape[0] * np.eye(a.shape[0])


mats = hst.integers(1, 5).flatmap(lambda m: hst.tuples(
    hnp.arrays(float, (m, m), elements=hst.floats(-3, 3)),
    hnp.arrays(float, (m, m), elements=hst.floats(-3, 3))))


@settings(max_examples=200, deadline=None)
@given(mats)
def test_gram_schmidt_orthogonal(pair):
    basis, a = pair
    inner = _spd(a)
    if np.linalg.svd(basis, compute_uv=False).min() < 1e-3 or np.linalg.cond(basis) > 1e6:
        return
    out = np.array(gram_schmidt(list(basis + 0.0), inner))
    gram = out @ inner @ out.T
    off = gram - np.diag(np.diag(gram))
    assert np.max(np.abs(off)) <= 1e-8 * np.max(np.abs(np.diag(gram)))


@settings(max_examples=200, deadline=None)
@given(mats)
def test_positive_functional_property(pair):
    basis, a = pair
    if np.linalg.svd(basis, compute_uv=False).min() < 1e-3 or np.linalg.cond(basis) > 1e6:
        return
    inner = _spd(a)
    v = positive_functional_vector(list(basis), inner)
    assert np.all(basis @ inner @ v > 0)


@given(hnp.arrays(float, (3, 3), elements=hst.floats(-5, 5)),
       hnp.arrays(float, 3, elements=hst.floats(-5, 5)),
       hnp.arrays(float, 3, elements=hst.floats(-5, 5)))
def test_evaluate_symmetric(a, v, w):
    assert evaluate(a + a.T, v, w) == evaluate(a + a.T, w, v)
