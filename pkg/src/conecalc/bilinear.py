"""Floating point linear algebra for symmetric bilinear forms of any signature.

Vectors are 1-D ``numpy`` arrays, forms are symmetric ``(n, n)`` arrays.
"""
import numpy as np

from .errors import DimensionError, LinearDependenceError

#: relative residual below which a vector counts as dependent on its predecessors
DEPENDENCE_RTOL = 1e-10


def as_vec(v):
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size == 0:
        raise DimensionError(f"expected a non-empty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite")
    return v


def as_form(form):
    a = np.asarray(form, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if not np.array_equal(a, a.T):
        raise ValueError("bilinear form must be stored symmetrically")
    return a


def evaluate(form, v, w):
    """Return ``v^T form w``.

    The result is symmetric in ``v`` and ``w`` bit for bit: both orders are
    accumulated and added, and floating point addition commutes.
    """
    a = np.asarray(form, dtype=float)
    v = as_vec(v)
    w = as_vec(w)
    n = a.shape[0]
    if a.shape != (n, n) or v.shape != (n,) or w.shape != (n,):
        raise DimensionError(
            f"form {a.shape} incompatible with vectors {v.shape}, {w.shape}")
    return 0.5 * (float((v @ a) @ w) + float((w @ a) @ v))


def signature(form, tol=1e-9):
    """Count eigenvalues above ``tol``, below ``-tol`` and in between.

    Returns
    -------
    (n_pos, n_neg, n_zero) : tuple of int
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.asarray(form, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    eig = np.linalg.eigvalsh(0.5 * (a + a.T))
    n_pos = int(np.sum(eig > tol))
    n_neg = int(np.sum(eig < -tol))
    return n_pos, n_neg, a.shape[0] - n_pos - n_neg


def _check_basis(basis, inner):
    inner = np.asarray(inner, dtype=float)
    vecs = [as_vec(b) for b in basis]
    if not vecs:
        raise ValueError("basis must be non-empty")
    n = vecs[0].size
    if inner.shape != (n, n) or any(b.size != n for b in vecs):
        raise DimensionError("basis vectors and inner product disagree in dimension")
    return vecs, inner


def gram_schmidt(basis, inner):
    """Orthogonalize ``basis`` with respect to the positive definite ``inner``.

    The output is orthogonal but not normalized, and keeps the flag of
    partial spans: ``span(e_1..e_k) == span(b_1..b_k)`` for every ``k``.
    Each projection is done twice (modified Gram-Schmidt with one
    re-orthogonalization sweep), which keeps the off-diagonal products at
    round-off level for moderately ill-conditioned input.

    Raises
    ------
    LinearDependenceError
        If some ``b_k`` lies in the span of its predecessors up to a
        relative residual of ``DEPENDENCE_RTOL``.
    """
    vecs, inner = _check_basis(basis, inner)
    out = []
    for k, b in enumerate(vecs):
        size = np.sqrt(max(b @ inner @ b, 0.0))
        e = b.copy()
        for _ in range(2):
            for f in out:
                e = e - ((e @ inner @ f) / (f @ inner @ f)) * f
        resid = np.sqrt(max(e @ inner @ e, 0.0))
        if size == 0.0 or resid < DEPENDENCE_RTOL * size:
            raise LinearDependenceError(
                f"basis vector {k} is linearly dependent on its predecessors "
                f"(residual {resid:.3e}, norm {size:.3e})")
        out.append(e)
    return out


def positive_functional_vector(basis, inner):
    """Find ``v`` with ``inner(v, b_i) > 0`` for every basis vector ``b_i``.

    Built inductively: start from ``v = b_1`` and, after Gram-Schmidt, add a
    multiple ``a`` of the new orthogonal direction ``e_m`` so that the new
    product becomes positive without disturbing the earlier ones (``e_m`` is
    orthogonal to ``b_1..b_{m-1}``).  ``a`` is chosen so that
    ``inner(v, b_m) = max(1, |inner(v_prev, b_m)|)`` in exact arithmetic,
    i.e. comfortably inside the open condition.
    """
    vecs, inner = _check_basis(basis, inner)
    es = gram_schmidt(vecs, inner)
    v = vecs[0].copy()
    for b, e in zip(vecs[1:], es[1:]):
        prev = float(v @ inner @ b)
        be = float(b @ inner @ e)
        a = (-prev + max(1.0, abs(prev))) / be
        v = v + a * e
    return v
