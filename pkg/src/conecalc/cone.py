"""Pointwise cone queries: classify tangent vectors against the time frame.

A nonzero ``v`` at ``p`` is future directed causal when ``g(v, v) <= 0`` and
``g(v, X_i) <= 0`` for every frame field, and future directed timelike when
all of these inequalities are strict.  Past directed flips the frame
inequalities.  For ``nu >= 2`` many vectors with ``g(v, v) <= 0`` are neither
future nor past directed; they are reported as ``UNDIRECTED_CAUSAL``.
"""
from enum import Enum

import numpy as np

from .bilinear import positive_functional_vector
from .errors import ConeCalcError, FrameDependenceError, LinearDependenceError, WitnessError

CLOSED_FORM_TOL = 1e-12
COMPOSED_TOL = 1e-9


class ConeClass(Enum):
    FUTURE_TIMELIKE = "FutureTimelike"
    FUTURE_BOUNDARY = "FutureBoundary"
    PAST_TIMELIKE = "PastTimelike"
    PAST_BOUNDARY = "PastBoundary"
    UNDIRECTED_CAUSAL = "UndirectedCausal"
    SPACELIKE = "Spacelike"
    ZERO = "Zero"

    @property
    def is_future(self):
        return self in (ConeClass.FUTURE_TIMELIKE, ConeClass.FUTURE_BOUNDARY)

    @property
    def is_past(self):
        return self in (ConeClass.PAST_TIMELIKE, ConeClass.PAST_BOUNDARY)

    def flipped(self):
        return _FLIP.get(self, self)


_FLIP = {
    ConeClass.FUTURE_TIMELIKE: ConeClass.PAST_TIMELIKE,
    ConeClass.PAST_TIMELIKE: ConeClass.FUTURE_TIMELIKE,
    ConeClass.FUTURE_BOUNDARY: ConeClass.PAST_BOUNDARY,
    ConeClass.PAST_BOUNDARY: ConeClass.FUTURE_BOUNDARY,
}

# integer codes used by the vectorized classifier, in ConeClass order
CODES = list(ConeClass)
FT, FB, PT, PB, UC, SL, ZR = range(7)


def products(forms, frames, vectors):
    """Return ``g(v, v)`` and ``g(v, X_i)`` for batches.

    ``forms`` is ``(N, n, n)``, ``frames`` is ``(N, nu, n)`` and ``vectors``
    is ``(n,)`` or ``(N, n)``.
    """
    v = np.broadcast_to(np.asarray(vectors, dtype=float), forms.shape[:2])
    gv = np.einsum("nij,nj->ni", forms, v)
    q0 = np.einsum("ni,ni->n", v, gv)
    qi = np.einsum("nki,ni->nk", frames, gv)
    return q0, qi


def codes_from_products(q0, qi, vnorm, tol):
    """Vectorized classification; returns integer codes indexing ``CODES``."""
    q0 = np.asarray(q0)
    qi = np.asarray(qi)
    out = np.full(q0.shape, UC, dtype=np.int8)
    fb = np.all(qi <= tol, axis=-1)
    pb = np.all(qi >= -tol, axis=-1)
    out[pb] = PB
    out[fb] = FB
    neg = q0 < -tol
    out[neg & np.all(qi > tol, axis=-1)] = PT
    out[neg & np.all(qi < -tol, axis=-1)] = FT
    out[q0 > tol] = SL
    out[np.asarray(vnorm) <= tol] = ZR
    return out


def classify_codes(s, points, vectors, tol=CLOSED_FORM_TOL):
    """Classify ``vectors`` at ``points`` (batched); returns integer codes."""
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    forms = np.asarray(s.form_at(pts), dtype=float)
    frames = np.asarray(s.frame_at(pts), dtype=float)
    q0, qi = products(forms, frames, vectors)
    vnorm = np.linalg.norm(np.broadcast_to(np.asarray(vectors, dtype=float), pts.shape), axis=-1)
    return codes_from_products(q0, qi, vnorm, tol)


def cone_products(s, p, v):
    """Raw inequality values ``(g(v, v), [g(v, X_i)])`` at ``p``."""
    s.require(p)
    q0, qi = products(s.form_at(np.atleast_2d(p)), s.frame_at(np.atleast_2d(p)), v)
    return float(q0[0]), qi[0].tolist()


def classify(s, p, v, tol=CLOSED_FORM_TOL):
    """Cone class of the tangent vector ``v`` at the point ``p``."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    s.require(p)
    return CODES[int(classify_codes(s, p, v, tol)[0])]


def interior_vector(s, p):
    """A future directed timelike vector in the span of the frame at ``p``.

    Works in frame coordinates: with ``G_ij = -g(X_i, X_j)`` (positive
    definite on a valid frame) a coefficient vector ``c`` with
    ``(G c)_i > 0`` gives ``v = sum c_i X_i`` satisfying ``g(v, X_i) < 0``,
    and ``g(v, v) = -c^T G c < 0``.
    """
    s.require(p)
    g = s.form_at(p)
    xs = s.frame_at(p)
    gram = -(xs @ g @ xs.T)
    gram = 0.5 * (gram + gram.T)
    try:
        c = positive_functional_vector(list(np.eye(s.nu)), gram)
    except LinearDependenceError as exc:
        raise FrameDependenceError(f"frame degenerate at {np.asarray(p).tolist()}",
                                   point=np.asarray(p)) from exc
    v = c @ xs
    if classify(s, p, v, 0.0) is not ConeClass.FUTURE_TIMELIKE:
        raise ConeCalcError(f"frame at {np.asarray(p).tolist()} does not span a timelike subspace")
    return v


def strict_witness(s, p, v, tol=0.0):
    """Smallest frame index ``j`` (counting from 1) with ``g(v, X_j) < -tol``.

    For any future directed causal ``v`` such an index exists; failing to
    find one means the input was not future causal or round-off dominated.
    """
    cls = classify(s, p, v, tol)
    if not cls.is_future:
        raise ValueError(f"vector is {cls.value}, not future directed causal")
    _, qi = cone_products(s, p, v)
    for j, q in enumerate(qi, start=1):
        if q < -tol:
            return j
    raise WitnessError(f"no strictly negative frame product for {np.asarray(v).tolist()}")
