"""Closed-form causal structure of flat R^(n-nu, nu).

Coordinates ``0 .. nu-1`` are the negative (time) directions.  These exact
formulas are the baseline against which the lattice computations are
compared.
"""
import numpy as np

from .boxes import Box
from .errors import DimensionError


def _split(p, q, nu):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if p.shape != q.shape or p.ndim != 1:
        raise DimensionError("p and q must be vectors of equal length")
    if not 0 < nu <= p.size:
        raise ValueError(f"invalid index nu={nu} for dimension {p.size}")
    d = q - p
    return d[:nu], d[nu:]


def leq(p, q, nu, mode="causal"):
    """Causal (``p <= q``) or chronological (``p << q``) order.

    ``p <= q`` iff ``q^i >= p^i`` for the time coordinates and the summed
    squared time displacement dominates the spatial one (or ``p == q``).
    The chronological relation asks for all inequalities strictly.
    """
    dt, dx = _split(p, q, nu)
    time_sq = float(np.sum(dt ** 2))
    space_sq = float(np.sum(dx ** 2))
    if mode == "causal":
        if not np.any(dt) and not np.any(dx):
            return True
        return bool(np.all(dt >= 0) and time_sq >= space_sq)
    if mode == "chronological":
        return bool(np.all(dt > 0) and time_sq > space_sq)
    raise ValueError(f"unknown mode {mode!r}")


def leq_closure(p, q, nu):
    """Transitive closure of :func:`leq`: reachability by piecewise causal chords.

    For ``nu >= 2`` the pointwise cone is not convex (``(1, 0, 1)`` and
    ``(0, 1, 1)`` are null in ``R^(1,2)`` while their sum is spacelike), so
    chains of causal chords reach further than single chords.  The set of
    finite sums of causal vectors is ``{dt >= 0, |dx| <= sum(dt)}``; for
    ``nu = 1`` this coincides with :func:`leq`.
    """
    dt, dx = _split(p, q, nu)
    return bool(np.all(dt >= 0) and np.sqrt(np.sum(dx ** 2)) <= np.sum(dt))


def time_T(p, nu):
    """Canonical time function: the sum of the first ``nu`` coordinates."""
    p = np.asarray(p, dtype=float)
    if nu > p.shape[-1]:
        raise ValueError("nu exceeds the dimension")
    return p[..., :nu].sum(axis=-1)


def diamond_box(p, q, nu):
    """Bounding box of the causal diamond ``J+(p) & J-(q)``, or ``None``.

    Time coordinates range over ``[p^i, q^i]``; the spatial ones over
    ``p^j +- sqrt(R)`` with ``R = 2 nu max_i (q^i - p^i)^2``.  ``None`` is
    returned only when some time coordinate decreases; the box may be
    non-empty while the diamond is (spacelike ``p, q``).
    """
    dt, _ = _split(p, q, nu)
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.any(dt < 0):
        return None
    radius = np.sqrt(2 * nu * float(np.max(dt ** 2)))
    lo = np.concatenate([p[:nu], p[nu:] - radius])
    hi = np.concatenate([q[:nu], p[nu:] + radius])
    return Box(tuple(lo), tuple(hi))
