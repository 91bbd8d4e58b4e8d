"""Semi-Riemannian spacetime structures on coordinate domains.

A structure bundles three pointwise objects:

* a :class:`MetricField` giving the symmetric form ``g_p`` at each point,
* a :class:`TimeFrame` of ``nu`` timelike vector fields ``X_1 .. X_nu``,
* a domain predicate selecting the points that belong to the manifold.

All three are stored as *batched* callables: they receive an ``(N, n)``
array of points and return ``(N, n, n)`` forms, ``(N, nu, n)`` frames or an
``(N,)`` boolean mask respectively.  Single points are accepted everywhere
through the ``*_at`` helpers.  Derived structures (products, warped
products, conformal rescalings) compose these callables lazily.
"""
from dataclasses import dataclass, field, replace
from typing import Callable, Optional

import numpy as np

from .bilinear import evaluate, gram_schmidt, signature
from .boxes import Box
from .errors import DimensionError, DomainError, FrameDependenceError, LinearDependenceError

MAX_DIM = 16

METRIC_KINDS = ("flat", "frame_derived", "product_neg", "product_pos", "warped",
                "conformal_scaled", "custom")


def _batch(points, n):
    pts = np.asarray(points, dtype=float)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.ndim != 2 or pts.shape[1] != n:
        raise DimensionError(f"expected points of dimension {n}, got shape {np.shape(points)}")
    return pts, single


def pointwise(fn):
    """Lift a single-point callable to the batched calling convention."""
    def batched(pts):
        return np.stack([np.asarray(fn(p), dtype=float) for p in pts])
    return batched


def full_domain(pts):
    return np.ones(len(pts), dtype=bool)


@dataclass(frozen=True)
class MetricField:
    """Symmetric form field of dimension ``n`` and index ``index``."""
    n: int
    index: int
    kind: str
    fn: Callable = field(repr=False)

    def __post_init__(self):
        if self.kind not in METRIC_KINDS:
            raise ValueError(f"unknown metric kind {self.kind!r}")
        if not 0 <= self.index <= self.n:
            raise ValueError(f"index {self.index} out of range for dimension {self.n}")

    def form_at(self, points):
        pts, single = _batch(points, self.n)
        forms = np.asarray(self.fn(pts), dtype=float)
        return forms[0] if single else forms

    @classmethod
    def constant(cls, form, index=None, kind="flat"):
        form = np.array(form, dtype=float)
        n = form.shape[0]
        if index is None:
            index = signature(form)[1]
        return cls(n, index, kind, lambda pts: np.broadcast_to(form, (len(pts), n, n)))


def euclidean(m):
    """The positive definite identity form on R^m."""
    return MetricField.constant(np.eye(m), index=0)


@dataclass(frozen=True)
class TimeFrame:
    """``nu`` vector fields on an ``n``-dimensional domain."""
    n: int
    nu: int
    fn: Callable = field(repr=False)

    def vectors_at(self, points):
        pts, single = _batch(points, self.n)
        vecs = np.asarray(self.fn(pts), dtype=float)
        return vecs[0] if single else vecs

    @classmethod
    def constant(cls, vectors):
        vecs = np.array(vectors, dtype=float)
        if vecs.ndim != 2:
            raise DimensionError("constant frame needs a (nu, n) array")
        nu, n = vecs.shape
        return cls(n, nu, lambda pts: np.broadcast_to(vecs, (len(pts), nu, n)))


@dataclass(frozen=True)
class SpacetimeStructure:
    metric: MetricField
    frame: TimeFrame
    domain: Callable = field(default=full_domain, repr=False)
    recipe: Optional[dict] = None

    def __post_init__(self):
        if self.frame.nu != self.metric.index:
            raise ValueError(
                f"frame has {self.frame.nu} fields but the metric has index {self.metric.index}")
        if self.frame.n != self.metric.n:
            raise DimensionError("frame and metric live in different dimensions")

    @property
    def n(self):
        return self.metric.n

    @property
    def nu(self):
        return self.metric.index

    def contains(self, points):
        pts, single = _batch(points, self.n)
        mask = np.asarray(self.domain(pts), dtype=bool)
        return bool(mask[0]) if single else mask

    def require(self, point):
        if not self.contains(point):
            raise DomainError(f"point {np.asarray(point).tolist()} is outside the domain")

    def form_at(self, points):
        return self.metric.form_at(points)

    def frame_at(self, points):
        return self.frame.vectors_at(points)


# -- constructors -----------------------------------------------------------

def flat(n, nu):
    """R^(n-nu, nu): ``diag(-1 x nu, +1 x (n-nu))`` with frame ``E_1 .. E_nu``."""
    n, nu = int(n), int(nu)
    if not 0 < nu <= n <= MAX_DIM:
        raise ValueError(f"need 0 < nu <= n <= {MAX_DIM}, got n={n}, nu={nu}")
    form = np.diag([-1.0] * nu + [1.0] * (n - nu))
    metric = MetricField.constant(form, index=nu, kind="flat")
    frame = TimeFrame.constant(np.eye(n)[:nu])
    return SpacetimeStructure(metric, frame, full_domain, {"kind": "flat", "n": n, "nu": nu})


def _check_frame_independent(frame, inner_at, points):
    for p in np.atleast_2d(points):
        vecs = frame.vectors_at(p)
        try:
            gram_schmidt(list(vecs), inner_at(p))
        except LinearDependenceError as exc:
            raise FrameDependenceError(
                f"frame is linearly dependent at {p.tolist()}: {exc}", point=p) from exc


def metric_from_frame(h, frame, probes=None):
    """Flip the frame directions of a positive definite field ``h``.

    Returns ``g(v, w) = h(v, w) - 2 h(Pv, Pw)`` with ``P`` the
    ``h``-orthogonal projection onto the span of the frame, so that ``g``
    agrees with ``-h`` on the frame span and with ``h`` on its orthogonal
    complement.  Independence of the frame is verified at ``probes`` (the
    origin by default).
    """
    if frame.n != h.n:
        raise DimensionError("frame and background metric disagree in dimension")
    _check_frame_independent(frame, h.form_at, np.zeros((1, h.n)) if probes is None else probes)

    def fn(pts):
        hh = np.asarray(h.fn(pts), dtype=float)
        x = np.asarray(frame.fn(pts), dtype=float)          # (N, nu, n)
        hx = hh @ np.swapaxes(x, 1, 2)                       # (N, n, nu)
        gram = x @ hx                                        # (N, nu, nu)
        try:
            coef = np.linalg.solve(gram, np.swapaxes(hx, 1, 2))  # (N, nu, n)
        except np.linalg.LinAlgError as exc:
            raise FrameDependenceError("frame is degenerate at some evaluation point") from exc
        g = hh - 2.0 * hx @ coef
        return 0.5 * (g + np.swapaxes(g, 1, 2))

    return MetricField(h.n, frame.nu, "frame_derived", fn)


def frame_derived(h, frame, domain=full_domain, probes=None):
    return SpacetimeStructure(metric_from_frame(h, frame, probes), frame, domain)


def extend_negative(s, eps=0.0):
    """``R x M`` with metric ``-dt^2 + g`` and extra field ``d_t - eps (X_1 + ... + X_nu)``.

    The new coordinate is prepended.  ``eps = 0`` gives the orthogonal
    extension; ``eps > 0`` makes ``t`` a temporal function.
    """
    eps = float(eps)
    if eps < 0:
        raise ValueError("eps must be non-negative")
    n, nu = s.n, s.nu

    def metric_fn(pts):
        base = s.metric.fn(pts[:, 1:])
        out = np.zeros((len(pts), n + 1, n + 1))
        out[:, 0, 0] = -1.0
        out[:, 1:, 1:] = base
        return out

    def frame_fn(pts):
        base = np.asarray(s.frame.fn(pts[:, 1:]), dtype=float)
        out = np.zeros((len(pts), nu + 1, n + 1))
        out[:, :nu, 1:] = base
        out[:, nu, 0] = 1.0
        out[:, nu, 1:] = -eps * base.sum(axis=1)
        return out

    recipe = None if s.recipe is None else {"kind": "extend_negative", "base": s.recipe, "eps": eps}
    return SpacetimeStructure(
        MetricField(n + 1, nu + 1, "product_neg", metric_fn),
        TimeFrame(n + 1, nu + 1, frame_fn),
        lambda pts: s.domain(pts[:, 1:]),
        recipe,
    )


def extend_positive(s):
    """``R x M`` with metric ``dt^2 + g`` and the lifted frame (index unchanged)."""
    n, nu = s.n, s.nu

    def metric_fn(pts):
        base = s.metric.fn(pts[:, 1:])
        out = np.zeros((len(pts), n + 1, n + 1))
        out[:, 0, 0] = 1.0
        out[:, 1:, 1:] = base
        return out

    def frame_fn(pts):
        base = np.asarray(s.frame.fn(pts[:, 1:]), dtype=float)
        out = np.zeros((len(pts), nu, n + 1))
        out[:, :, 1:] = base
        return out

    recipe = None if s.recipe is None else {"kind": "extend_positive", "base": s.recipe}
    return SpacetimeStructure(
        MetricField(n + 1, nu, "product_pos", metric_fn),
        TimeFrame(n + 1, nu, frame_fn),
        lambda pts: s.domain(pts[:, 1:]),
        recipe,
    )


def warped_product(s, sigma, f, probes=None):
    """``M x Sigma`` with metric ``g + f^2 sigma``; ``f`` is evaluated on ``M``.

    ``f`` is batched (``(N, n) -> (N,)``).  Positivity of ``f`` is checked
    at ``probes`` (points of ``M``; the origin by default).
    """
    n, nu, m = s.n, s.nu, sigma.n
    if probes is None:
        probes = np.zeros((1, n))
    probes = np.atleast_2d(np.asarray(probes, dtype=float))
    vals = np.asarray(f(probes), dtype=float)
    if np.any(vals <= 0):
        bad = probes[np.argmax(vals <= 0)]
        raise ValueError(f"warp function is not positive at {bad.tolist()}")

    def metric_fn(pts):
        pm, ps = pts[:, :n], pts[:, n:]
        out = np.zeros((len(pts), n + m, n + m))
        out[:, :n, :n] = s.metric.fn(pm)
        out[:, n:, n:] = (np.asarray(f(pm), dtype=float) ** 2)[:, None, None] * sigma.fn(ps)
        return out

    def frame_fn(pts):
        base = np.asarray(s.frame.fn(pts[:, :n]), dtype=float)
        out = np.zeros((len(pts), nu, n + m))
        out[:, :, :n] = base
        return out

    return SpacetimeStructure(
        MetricField(n + m, nu, "warped", metric_fn),
        TimeFrame(n + m, nu, frame_fn),
        lambda pts: s.domain(pts[:, :n]),
    )


def half_sine_factor(pts):
    """Conformal factor ``1 + sin(p^1) / 2`` (first coordinate)."""
    return 1.0 + 0.5 * np.sin(pts[:, 0])


def conformal(s, omega=half_sine_factor):
    """Rescale the metric to ``omega(p)^2 g_p``; frame and domain unchanged."""
    def metric_fn(pts):
        om = np.asarray(omega(pts), dtype=float)
        if np.any(om <= 0):
            raise ValueError("conformal factor must be positive")
        return (om ** 2)[:, None, None] * s.metric.fn(pts)

    recipe = None
    if s.recipe is not None and omega is half_sine_factor:
        recipe = {"kind": "conformal", "base": s.recipe, "omega": "half_sine"}
    return SpacetimeStructure(
        MetricField(s.n, s.nu, "conformal_scaled", metric_fn), s.frame, s.domain, recipe)


def with_frame(s, frame):
    return SpacetimeStructure(s.metric, frame, s.domain)


def with_domain(s, domain, recipe=None):
    return replace(s, domain=domain, recipe=recipe)


def minkowski_minus_future_cone():
    """Two-dimensional Minkowski space with ``J+(0) = {x >= |y|}`` removed."""
    base = flat(2, 1)
    return with_domain(base, lambda pts: ~(pts[:, 0] >= np.abs(pts[:, 1])),
                       {"kind": "notgh_base"})


def punctured_product(m=1):
    """``R x (R^m minus the origin)`` with the Minkowski metric ``-dt^2 + |dx|^2``."""
    base = flat(m + 1, 1)
    return with_domain(base, lambda pts: np.any(pts[:, 1:] != 0.0, axis=1),
                       {"kind": "punctured", "m": int(m)})


# -- validation -------------------------------------------------------------

@dataclass
class ProbeCheck:
    point: list
    signature: tuple
    signature_ok: bool
    frame_norms: list
    frame_negative: bool
    frame_independent: bool

    @property
    def passed(self):
        return self.signature_ok and self.frame_negative and self.frame_independent


@dataclass
class ValidationReport:
    checks: list

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]


def validate(s, probes=None, box=None, n_probes=100, seed=0, tol=1e-9):
    """Check signature, frame negativity and frame independence at probe points.

    Either pass explicit ``probes`` (all inside the domain) or a ``box`` from
    which ``n_probes`` uniform in-domain points are drawn.
    """
    if probes is None:
        if box is None:
            box = Box([-1.0] * s.n, [1.0] * s.n)
        rng = np.random.default_rng(seed)
        cand = box.sample(rng, 4 * n_probes)
        probes = cand[s.contains(cand)][:n_probes]
    probes = np.atleast_2d(np.asarray(probes, dtype=float))
    if len(probes) == 0:
        raise ValueError("no probe points")
    if not np.all(s.contains(probes)):
        raise DomainError("probe points must lie in the domain")

    expected = (s.n - s.nu, s.nu, 0)
    checks = []
    for p in probes:
        g = s.form_at(p)
        xs = s.frame_at(p)
        sig = signature(g, tol)
        norms = [evaluate(g, x, x) for x in xs]
        try:
            gram_schmidt(list(xs), np.eye(s.n))
            independent = True
        except LinearDependenceError:
            independent = False
        checks.append(ProbeCheck(p.tolist(), sig, sig == expected, norms,
                                 all(q < 0 for q in norms), independent))
    return ValidationReport(checks)
