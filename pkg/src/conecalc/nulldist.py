"""Time functions, null lengths and lattice estimates of the null distance.

The null length of a piecewise causal path is the total variation of a
time function along its breakpoints.  The null distance is the infimum over
all piecewise causal paths; :func:`estimate` restricts the infimum to
polygonal paths of a causal graph and therefore returns an upper bound.
"""
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .boxes import Box
from .cone import FB, FT, classify_codes
from .errors import ConeCalcError
from .lattice import GridSpec, PiecewisePath, build_graph

SCHEMA = "conecalc/distance-1"


@dataclass(frozen=True)
class TimeFunction:
    """A scalar field on points; ``fn`` is batched ``(N, n) -> (N,)``."""
    fn: Callable = field(repr=False)
    kind: str = "custom"
    params: dict = field(default_factory=dict)

    def __call__(self, points):
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            return float(self.fn(pts[None, :])[0])
        return np.asarray(self.fn(pts), dtype=float)

    def describe(self):
        return {"kind": self.kind, **self.params}


def canonical_T(nu):
    """``T(p) = p^1 + ... + p^nu``."""
    return TimeFunction(lambda pts: pts[:, :nu].sum(axis=1), "canonical_T", {"nu": nu})


def product_t():
    """The prepended product coordinate ``t(p) = p^0``."""
    return TimeFunction(lambda pts: pts[:, 0].copy(), "product_t")


def odd_power(k, nu):
    """``T^(2k+1)``: a time function whose null distance degenerates when ``nu < n``."""
    e = 2 * int(k) + 1
    return TimeFunction(lambda pts: pts[:, :nu].sum(axis=1) ** e, "odd_power", {"k": int(k), "nu": nu})


def composite_sum(tau_base):
    """``tau_base(pi(p)) + t`` on a product ``R x M`` with ``t`` prepended."""
    return TimeFunction(lambda pts: tau_base.fn(pts[:, 1:]) + pts[:, 0], "composite_sum",
                        {"base": tau_base.describe()})


def custom(fn):
    return TimeFunction(fn, "custom")


def null_length(tau, path):
    """Sum of ``|tau(v_i) - tau(v_{i-1})|`` over consecutive path vertices."""
    vals = tau(path.vertices)
    return float(np.sum(np.abs(np.diff(np.atleast_1d(vals)))))


@dataclass
class DistanceResult:
    value: Optional[float]
    witness: Optional[PiecewisePath]
    grid: Optional[GridSpec]
    exact: bool = False
    diagnostic: str = ""

    @property
    def reachable(self):
        return self.value is not None

    def to_dict(self):
        out = {
            "schema": SCHEMA,
            "value": self.value,
            "exact": self.exact,
            "grid": None if self.grid is None else {
                "h": self.grid.h, "r": self.grid.r,
                "box": [list(p) for p in self.grid.box.pairs()]},
            "witness": None if self.witness is None else self.witness.to_list(),
        }
        if self.witness is not None:
            out["directions"] = list(self.witness.directions)
        if not self.reachable:
            out["unreachable"] = True
            out["diagnostic"] = self.diagnostic
        return out


def edge_weights(graph, tau):
    vals = tau(graph.coords)
    return np.abs(vals[graph.dst] - vals[graph.src])


def symmetrized(graph, tau):
    """Undirected weighted graph; zero weights are kept as explicit entries."""
    w = edge_weights(graph, tau)
    a = np.minimum(graph.src, graph.dst)
    b = np.maximum(graph.src, graph.dst)
    order = np.lexsort((w, b, a))
    a, b, w = a[order], b[order], w[order]
    first = np.ones(len(a), dtype=bool)
    first[1:] = (a[1:] != a[:-1]) | (b[1:] != b[:-1])
    a, b, w = a[first], b[first], w[first]
    n = graph.n_nodes
    mat = sparse.csr_matrix((np.concatenate([w, w]),
                             (np.concatenate([a, b]), np.concatenate([b, a]))), shape=(n, n))
    return mat


def estimate(s, tau, grid, p, q, graph=None, max_nodes=None):
    """Upper estimate of the null distance between ``p`` and ``q``.

    Every causal edge ``a -> b`` becomes an undirected edge of weight
    ``|tau(b) - tau(a)|`` and the shortest path from ``p`` to ``q`` is
    returned together with its witness path.  Pass a prebuilt ``graph`` to
    reuse it across queries.
    """
    if graph is None:
        kw = {} if max_nodes is None else {"max_nodes": max_nodes}
        graph = build_graph(s, grid, **kw)
    i, j = graph.resolve(p), graph.resolve(q)
    mat = symmetrized(graph, tau)
    dist, pred = csgraph.dijkstra(mat, directed=False, indices=i, return_predecessors=True)
    if not np.isfinite(dist[j]):
        return DistanceResult(None, None, graph.grid, False,
                              "target is not connected to the source by piecewise causal edges")
    nodes = [j]
    while nodes[-1] != i:
        nodes.append(int(pred[nodes[-1]]))
    nodes.reverse()
    fwd = set(zip(graph.src.tolist(), graph.dst.tolist()))
    dirs = tuple("future" if (a, b) in fwd else "past" for a, b in zip(nodes[:-1], nodes[1:]))
    witness = PiecewisePath(graph.coords[nodes], dirs) if len(nodes) > 1 else \
        PiecewisePath(graph.coords[nodes], ())
    return DistanceResult(float(dist[j]), witness, graph.grid, False)


# -- Lorentzian products with a closed form ---------------------------------

def euclidean_dist(a, b):
    return float(np.linalg.norm(np.asarray(b, dtype=float) - np.asarray(a, dtype=float)))


def circle_dist(circumference):
    """Arc-length distance on a circle parametrized by ``[0, circumference)``."""
    def dist(a, b):
        d = abs(float(np.asarray(b).ravel()[0]) - float(np.asarray(a).ravel()[0])) % circumference
        return min(d, circumference - d)
    return dist


def product_oracle(base_dist, p, q):
    """Null distance of ``(R x Sigma, -dt^2 + sigma)`` for the time function ``t``.

    ``max(|t(q) - t(p)|, d_sigma(p_Sigma, q_Sigma))``, with ``t`` the first
    coordinate.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    return max(abs(q[0] - p[0]), float(base_dist(p[1:], q[1:])))


def oracle_result(base_dist, p, q):
    return DistanceResult(product_oracle(base_dist, p, q), None, None, exact=True)


def boundary_classify(base_dist, p, q, tol=1e-12):
    """Position of ``q`` relative to the causal future of ``p`` in a product.

    ``q`` is on the boundary of ``J+(p)`` exactly when the time separation
    equals the fiber distance.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    dt = q[0] - p[0]
    if dt < -tol:
        raise ValueError("q must not lie in the past of p's time slice")
    d = float(base_dist(p[1:], q[1:]))
    if abs(dt - d) <= tol:
        return "causal_boundary"
    return "chronological_interior" if dt > d else "exterior"


# -- anti-Lipschitz probing ---------------------------------------------------

@dataclass
class AntiLipschitzReport:
    min_ratio: float
    worst_pair: tuple
    n_pairs: int


def anti_lipschitz_probe(s, tau, region, n_pairs=10_000, seed=0, max_tries=50):
    """Sample causal pairs in ``region`` and report ``min (tau(q)-tau(p)) / |q-p|``.

    Pairs are ``q = p + c`` with ``c`` future causal at ``p`` and chord
    lengths drawn log-uniformly between ``1e-4`` and the box diameter, so
    that both short and long chords are probed.  A minimum ratio bounded
    away from zero supports anti-Lipschitz behaviour; a vanishing one flags
    degeneracy.
    """
    region = region if isinstance(region, Box) else Box.from_pairs(region)
    if region.is_degenerate():
        raise ConeCalcError("region is degenerate: it contains no causal pairs")
    rng = np.random.default_rng(seed)
    diam = float(np.linalg.norm(region.widths))
    ps, qs = [], []
    need = n_pairs
    for _ in range(max_tries):
        if need <= 0:
            break
        m = 4 * need
        p = region.sample(rng, m)
        d = rng.normal(size=(m, region.dim))
        d /= np.linalg.norm(d, axis=1, keepdims=True)
        d *= np.exp(rng.uniform(np.log(1e-4 * diam), np.log(diam), size=(m, 1)))
        q = p + d
        ok = region.contains(q) & s.contains(p) & s.contains(q)
        codes = classify_codes(s, p, d, tol=0.0)
        ok &= (codes == FT) | (codes == FB)
        ps.append(p[ok][:need])
        qs.append(q[ok][:need])
        need -= int(ok.sum())
    p = np.concatenate(ps)[:n_pairs]
    q = np.concatenate(qs)[:n_pairs]
    if len(p) == 0:
        raise ConeCalcError("no causal pairs found in the region")
    ratio = (tau(q) - tau(p)) / np.linalg.norm(q - p, axis=1)
    k = int(np.argmin(ratio))
    return AntiLipschitzReport(float(ratio[k]), (p[k].tolist(), q[k].tolist()), len(p))
