"""Causal graphs on coordinate lattices.

A :class:`GridSpec` fixes a box, a spacing ``h`` and a stencil radius ``r``.
Nodes are the lattice points inside the structure's domain; a directed edge
``a -> b`` joins nodes whose integer offset lies in the stencil (Chebyshev
radius ``r``, coprime components) when the chord ``b - a`` is future
directed causal at the segment midpoint.  Because the cone is invariant
under positive scaling, chords are classified through their integer offset,
which is free of coordinate round-off.
"""
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd

import numpy as np
from scipy import sparse
from scipy.sparse import csgraph

from .boxes import Box
from .cone import CODES, FB, FT, PB, PT, classify_codes, products
from .errors import DomainError, GridError

DEFAULT_MAX_NODES = 2_000_000
SCHEMA = "conecalc/graph-1"


@dataclass(frozen=True)
class GridSpec:
    box: Box
    h: float
    periodic: tuple = ()
    r: int = 2

    def __post_init__(self):
        box = self.box if isinstance(self.box, Box) else Box.from_pairs(self.box)
        object.__setattr__(self, "box", box)
        if not self.h > 0:
            raise GridError("spacing h must be positive")
        if self.r < 1:
            raise GridError("stencil radius must be at least 1")
        periodic = tuple(bool(x) for x in self.periodic) or (False,) * box.dim
        if len(periodic) != box.dim:
            raise GridError("periodic flags must match the box dimension")
        object.__setattr__(self, "periodic", periodic)
        if box.is_degenerate():
            raise GridError("grid box is degenerate along some axis")
        for w, per in zip(box.widths, periodic):
            if per and abs(w / self.h - round(w / self.h)) > 1e-9 * max(1.0, w / self.h):
                raise GridError("periodic axes need an integer number of cells")

    @property
    def dim(self):
        return self.box.dim

    @property
    def shape(self):
        out = []
        for w, per in zip(self.box.widths, self.periodic):
            cells = w / self.h
            out.append(int(round(cells)) if per else int(np.floor(cells + 1e-9)) + 1)
        return tuple(out)

    @property
    def size(self):
        return int(np.prod(self.shape, dtype=np.int64))

    def points(self, idx):
        return np.asarray(self.box.lo) + np.asarray(idx, dtype=float) * self.h

    def to_dict(self):
        return {"h": self.h, "r": self.r, "box": [list(p) for p in self.box.pairs()],
                "periodic": list(self.periodic)}


def stencil(n, r):
    """Integer offsets of Chebyshev norm ``<= r`` with coprime components."""
    out = []
    for k in product(range(-r, r + 1), repeat=n):
        if any(k) and gcd(*[abs(c) for c in k]) == 1:
            out.append(k)
    return np.array(out, dtype=np.int64).reshape(-1, n)


def _half_stencil(n, r):
    ks = stencil(n, r)
    first = ks[np.arange(len(ks)), np.argmax(ks != 0, axis=1)]
    return ks[first > 0]


@dataclass(frozen=True, eq=False)
class CausalGraph:
    structure: object = field(repr=False)
    grid: GridSpec
    index: np.ndarray = field(repr=False)      # (N, n) integer lattice indices
    coords: np.ndarray = field(repr=False)     # (N, n) coordinates
    lookup: np.ndarray = field(repr=False)     # lattice linear index -> node id or -1
    src: np.ndarray = field(repr=False)
    dst: np.ndarray = field(repr=False)
    timelike: np.ndarray = field(repr=False)

    @property
    def n_nodes(self):
        return len(self.coords)

    @property
    def n_edges(self):
        return len(self.src)

    @cached_property
    def adjacency(self):
        n = self.n_nodes
        return sparse.csr_matrix((np.ones(self.n_edges, dtype=np.int8), (self.src, self.dst)),
                                 shape=(n, n))

    @cached_property
    def reverse_adjacency(self):
        return self.adjacency.T.tocsr()

    def node_at(self, point):
        """Snap ``point`` to the nearest node (ties toward the lower index)."""
        p = np.asarray(point, dtype=float)
        if p.shape != (self.grid.dim,):
            raise GridError(f"point {p.tolist()} has the wrong dimension")
        u = (p - np.asarray(self.grid.box.lo)) / self.grid.h
        i = np.ceil(u - 0.5).astype(np.int64)
        if np.any(np.abs(u - i) > 0.5 + 1e-9):
            raise GridError(f"point {p.tolist()} is not representable on the grid")
        shape = np.array(self.grid.shape)
        per = np.array(self.grid.periodic)
        i = np.where(per, np.mod(i, shape), i)
        if np.any(i < 0) or np.any(i >= shape):
            raise GridError(f"point {p.tolist()} lies outside the grid box")
        node = int(self.lookup[np.ravel_multi_index(tuple(i), self.grid.shape)])
        if node < 0:
            raise DomainError(f"lattice point near {p.tolist()} is outside the domain")
        return node

    def resolve(self, p):
        if isinstance(p, (int, np.integer)):
            if not 0 <= p < self.n_nodes:
                raise GridError(f"unknown node {p}")
            return int(p)
        return self.node_at(p)

    def to_dict(self):
        return {
            "schema": SCHEMA,
            "grid": self.grid.to_dict(),
            "nodes": self.coords.tolist(),
            "edges": [[int(a), int(b), bool(t)]
                      for a, b, t in zip(self.src, self.dst, self.timelike)],
        }


def build_graph(s, grid, max_nodes=DEFAULT_MAX_NODES):
    """Discretize ``s`` on ``grid`` into a :class:`CausalGraph`.

    Edge admission uses tolerance 0: null chords are admitted.  An edge also
    needs its midpoint inside the domain.  Node and edge order is
    deterministic (edges sorted by source, then target).
    """
    if grid.dim != s.n:
        raise GridError("grid and structure dimensions differ")
    shape = grid.shape
    total = grid.size
    if total > max_nodes:
        raise GridError(f"grid has {total} lattice points, above the cap of {max_nodes}")
    idx = np.indices(shape).reshape(len(shape), -1).T.astype(np.int64)
    pts = grid.points(idx)
    inside = np.asarray(s.domain(pts), dtype=bool)
    if not inside.any():
        raise GridError("no lattice point lies in the domain")
    lookup = np.full(total, -1, dtype=np.int64)
    lookup[inside] = np.arange(int(inside.sum()))
    node_idx = idx[inside]
    node_pts = pts[inside]

    shape_arr = np.array(shape)
    per = np.array(grid.periodic)
    lo = np.asarray(grid.box.lo)
    period = shape_arr * grid.h
    srcs, dsts, tls = [], [], []
    for k in _half_stencil(s.n, grid.r):
        m = np.mod(k, shape_arr)
        m = np.where(m > shape_arr / 2, m - shape_arr, m)
        km = np.where(per, m, k)
        if not km.any():
            continue
        tgt = node_idx + km
        ok = np.all(per | ((tgt >= 0) & (tgt < shape_arr)), axis=1)
        tgt = np.where(per, np.mod(tgt, shape_arr), tgt)
        src_ids = np.flatnonzero(ok)
        if len(src_ids) == 0:
            continue
        tgt_ids = lookup[np.ravel_multi_index(tgt[ok].T, shape)]
        keep = tgt_ids >= 0
        src_ids, tgt_ids = src_ids[keep], tgt_ids[keep]
        if len(src_ids) == 0:
            continue
        mid = node_pts[src_ids] + 0.5 * grid.h * km
        mid = np.where(per, lo + np.mod(mid - lo, period), mid)
        in_dom = np.asarray(s.domain(mid), dtype=bool)
        src_ids, tgt_ids, mid = src_ids[in_dom], tgt_ids[in_dom], mid[in_dom]
        if len(src_ids) == 0:
            continue
        codes = classify_codes(s, mid, km.astype(float), tol=0.0)
        fut = (codes == FT) | (codes == FB)
        past = (codes == PT) | (codes == PB)
        srcs += [src_ids[fut], tgt_ids[past]]
        dsts += [tgt_ids[fut], src_ids[past]]
        tls += [codes[fut] == FT, codes[past] == PT]

    if srcs:
        src = np.concatenate(srcs)
        dst = np.concatenate(dsts)
        tl = np.concatenate(tls)
    else:
        src = dst = np.zeros(0, dtype=np.int64)
        tl = np.zeros(0, dtype=bool)
    keep = src != dst
    src, dst, tl = src[keep], dst[keep], tl[keep]
    order = np.lexsort((dst, src))
    src, dst, tl = src[order], dst[order], tl[order]
    if len(src):
        first = np.ones(len(src), dtype=bool)
        first[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
        group = np.cumsum(first) - 1
        tl = np.bincount(group, weights=tl.astype(float)) > 0
        src, dst = src[first], dst[first]
    return CausalGraph(s, grid, node_idx, node_pts, lookup, src, dst, tl)


def reach(graph, p, direction="future"):
    """Sorted node ids of the discrete causal future (or past) of ``p``, ``p`` included."""
    start = graph.resolve(p)
    if direction == "future":
        adj = graph.adjacency
    elif direction == "past":
        adj = graph.reverse_adjacency
    else:
        raise ValueError(f"unknown direction {direction!r}")
    nodes = csgraph.breadth_first_order(adj, start, directed=True, return_predecessors=False)
    return np.sort(nodes)


def diamond(graph, p, q):
    """Sorted node ids of ``J+(p) & J-(q)`` on the graph."""
    return np.intersect1d(reach(graph, p, "future"), reach(graph, q, "past"))


def find_closed_timelike(graph):
    """A directed cycle of timelike edges as a node list ``[u, ..., u]``, or ``None``."""
    sel = graph.timelike
    n = graph.n_nodes
    adj = sparse.csr_matrix((np.ones(int(sel.sum()), dtype=np.int8),
                             (graph.src[sel], graph.dst[sel])), shape=(n, n))
    _, labels = csgraph.connected_components(adj, directed=True, connection="strong")
    sizes = np.bincount(labels)
    big = np.flatnonzero(sizes[labels] > 1)
    if len(big) == 0:
        return None
    u = int(big[0])
    comp = labels == labels[u]
    order, pred = csgraph.breadth_first_order(adj, u, directed=True, return_predecessors=True)
    # an edge w -> u with w reachable from u closes the cycle
    preds_of_u = adj[:, u].nonzero()[0]
    closing = [int(w) for w in np.sort(preds_of_u) if comp[w] and (w == u or pred[w] >= 0)]
    w = closing[0]
    path = [w]
    while path[-1] != u:
        path.append(int(pred[path[-1]]))
    path.reverse()
    return path + [u]


# -- piecewise paths --------------------------------------------------------

@dataclass(frozen=True)
class PiecewisePath:
    vertices: np.ndarray
    directions: tuple

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        object.__setattr__(self, "vertices", v)
        dirs = tuple(self.directions)
        object.__setattr__(self, "directions", dirs)
        if len(dirs) != len(v) - 1:
            raise ValueError("need exactly one direction per segment")
        if any(d not in ("future", "past") for d in dirs):
            raise ValueError("directions must be 'future' or 'past'")
        if len(v) > 1 and np.any(np.all(v[1:] == v[:-1], axis=1)):
            raise ValueError("consecutive vertices must be distinct")

    def __len__(self):
        return len(self.directions)

    def concat(self, other):
        if not np.array_equal(self.vertices[-1], other.vertices[0]):
            raise ValueError("paths do not join")
        return PiecewisePath(np.vstack([self.vertices, other.vertices[1:]]),
                             self.directions + other.directions)

    def to_list(self):
        return self.vertices.tolist()


@dataclass
class SegmentCheck:
    index: int
    direction: str
    classes: list
    products: list
    ok: bool


@dataclass
class PathReport:
    segments: list

    @property
    def passed(self):
        return all(seg.ok for seg in self.segments)


def validate_path(s, path, samples_per_segment=3, tol=1e-12):
    """Check that every segment chord is causal in its declared direction.

    The chord is classified at ``samples_per_segment`` interior points of
    each segment, so variable metrics are sampled along the segment.
    """
    if samples_per_segment < 1:
        raise ValueError("need at least one sample per segment")
    verts = path.vertices
    if not np.all(s.contains(verts)):
        raise DomainError("path vertices must lie in the domain")
    ts = np.arange(1, samples_per_segment + 1) / (samples_per_segment + 1)
    segments = []
    for i, direction in enumerate(path.directions):
        a, b = verts[i], verts[i + 1]
        chord = b - a
        pts = a + ts[:, None] * chord
        codes = classify_codes(s, pts, chord, tol)
        classes = [CODES[c] for c in codes]
        q0, qi = products(np.asarray(s.form_at(pts)), np.asarray(s.frame_at(pts)), chord)
        if direction == "future":
            ok = all(c.is_future for c in classes)
        else:
            ok = all(c.is_past for c in classes)
        ok = ok and bool(np.all(s.contains(pts)))
        segments.append(SegmentCheck(i, direction, [c.value for c in classes],
                                     [[float(a0)] + list(map(float, ai)) for a0, ai in zip(q0, qi)],
                                     ok))
    return PathReport(segments)
