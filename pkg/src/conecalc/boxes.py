"""Axis-aligned coordinate boxes."""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Box:
    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo = tuple(float(x) for x in self.lo)
        hi = tuple(float(x) for x in self.hi)
        if len(lo) != len(hi):
            raise ValueError("lo and hi must have the same length")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"box bounds are inverted: {lo} > {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def from_pairs(cls, pairs):
        pairs = [tuple(p) for p in pairs]
        return cls(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    @property
    def dim(self):
        return len(self.lo)

    @property
    def widths(self):
        return np.subtract(self.hi, self.lo)

    def pairs(self):
        return [(a, b) for a, b in zip(self.lo, self.hi)]

    def is_degenerate(self):
        return bool(np.any(self.widths <= 0))

    def contains(self, points, atol=0.0):
        """Vectorized membership; ``points`` has shape ``(n,)`` or ``(N, n)``."""
        pts = np.asarray(points, dtype=float)
        inside = (pts >= np.asarray(self.lo) - atol) & (pts <= np.asarray(self.hi) + atol)
        return inside.all(axis=-1)

    def sample(self, rng, size):
        return rng.uniform(self.lo, self.hi, size=(size, self.dim))

    def to_dict(self):
        return {"lo": list(self.lo), "hi": list(self.hi)}
