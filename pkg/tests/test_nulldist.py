import json

import numpy as np
import pytest

from conecalc import nulldist as nd
from conecalc import spacetime as st
from conecalc.boxes import Box
from conecalc.errors import ConeCalcError
from conecalc.lattice import GridSpec, PiecewisePath, build_graph
from conecalc.verify import beta_zigzag

GRID = GridSpec([(-2, 2), (-2, 2)], 0.25, r=2)


def test_null_length_examples():
    T = nd.canonical_T(1)
    assert nd.null_length(T, PiecewisePath([(0, 0), (1, 0)], ("future",))) == 1.0
    assert nd.null_length(T, PiecewisePath([(0.3, 0.1)], ())) == 0.0
    for j in (1, 3, 10):
        assert nd.null_length(nd.odd_power(1, 2), beta_zigzag(j)) == pytest.approx(
            1 / (4 * j * j), rel=1e-12)


def test_time_function_batch_and_single():
    tau = nd.composite_sum(nd.canonical_T(2))
    assert tau(np.array([1.0, 2.0, 3.0])) == 6.0
    np.testing.assert_array_equal(tau(np.array([[1.0, 2, 3], [0, 0, 1]])), [6.0, 1.0])
    assert tau.describe() == {"kind": "composite_sum", "base": {"kind": "canonical_T", "nu": 2}}


def test_estimate_examples():
    s = st.flat(2, 1)
    T = nd.canonical_T(1)
    a = nd.estimate(s, T, GRID, (0, 0), (1, 0))
    assert a.value == 1.0 and a.exact is False
    b = nd.estimate(s, T, GRID, (0, 0), (0, 1))
    assert b.value == 1.0
    assert b.witness.vertices[0].tolist() == [0, 0] and b.witness.vertices[-1].tolist() == [0, 1]
    assert nd.null_length(T, b.witness) == b.value


def test_estimate_witness_is_causal():
    from conecalc.lattice import validate_path
    s = st.flat(2, 1)
    res = nd.estimate(s, nd.canonical_T(1), GRID, (-1.5, 0.5), (0.75, -1.25))
    assert validate_path(s, res.witness).passed


def test_estimate_degenerate_tau_decreases():
    s = st.flat(3, 2)
    vals = []
    for h in (0.25, 0.125):
        grid = GridSpec([(-0.25, 0.25), (-0.25, 0.25), (0, 1)], h, r=2)
        vals.append(nd.estimate(s, nd.odd_power(1, 2), grid, (0, 0, 0), (0, 0, 1)).value)
    assert vals[1] < vals[0] <= 0.25 ** 2


def test_estimate_unreachable():
    s = st.punctured_product(1)
    res = nd.estimate(s, nd.product_t(), GRID, (-1, -1), (1, 1))
    assert not res.reachable
    d = res.to_dict()
    assert d["unreachable"] is True and d["value"] is None and d["diagnostic"]
    json.dumps(d)


def test_product_oracle_examples():
    e = nd.euclidean_dist
    assert nd.product_oracle(e, (0, 0, 0), (1, 3, 4)) == 5.0
    assert nd.product_oracle(e, (2, 0, 0), (5, 0, 0)) == 3.0
    assert nd.product_oracle(e, (1, 2, 3), (1, 2, 3)) == 0.0
    assert nd.oracle_result(e, (0, 0), (1, 2)).exact is True
    c = nd.circle_dist(4.0)
    assert nd.product_oracle(c, (0, 0.5), (0, 3.5)) == 1.0


def test_boundary_classify_examples():
    e = nd.euclidean_dist
    assert nd.boundary_classify(e, (0, 0), (1, 1)) == "causal_boundary"
    assert nd.boundary_classify(e, (0, 0), (2, 1)) == "chronological_interior"
    assert nd.boundary_classify(e, (0, 0), (1, 2)) == "exterior"


def test_two_sided_product_bounds():
    rng = np.random.default_rng(5)
    for _ in range(500):
        p, q = rng.normal(size=(2, 3))
        dt, ds = abs(q[0] - p[0]), nd.euclidean_dist(p[1:], q[1:])
        o = nd.product_oracle(nd.euclidean_dist, p, q)
        assert 0.5 * (dt + ds) <= o <= dt + ds


def test_symmetrized_keeps_zero_weights():
    g = build_graph(st.flat(2, 1), GridSpec([(0, 1), (0, 1)], 1.0, r=1))
    tau = nd.custom(lambda pts: np.zeros(len(pts)))
    mat = nd.symmetrized(g, tau)
    assert mat.nnz == 2 * g.n_edges
    res = nd.estimate(st.flat(2, 1), tau, g.grid, (0, 0), (1, 1), graph=g)
    assert res.value == 0.0 and res.reachable


def test_anti_lipschitz_examples():
    rep = nd.anti_lipschitz_probe(st.flat(3, 2), nd.canonical_T(2), Box((-1, -1, -1), (1, 1, 1)),
                                  n_pairs=2000)
    assert rep.min_ratio >= 0.5
    rep = nd.anti_lipschitz_probe(st.flat(2, 1), nd.odd_power(1, 1), Box((-1, -1), (1, 1)),
                                  n_pairs=10_000)
    assert rep.min_ratio < 1e-3
    with pytest.raises(ConeCalcError):
        nd.anti_lipschitz_probe(st.flat(2, 1), nd.canonical_T(1), Box((0, 0), (0, 1)))


def test_distance_result_json_stable():
    s = st.flat(2, 1)
    a = nd.estimate(s, nd.canonical_T(1), GRID, (0, 0), (0.5, 1.25)).to_dict()
    b = nd.estimate(s, nd.canonical_T(1), GRID, (0, 0), (0.5, 1.25)).to_dict()
    assert json.dumps(a, sort_keys=True) == json.dumps(b, sort_keys=True)
    assert a["schema"] == nd.SCHEMA
