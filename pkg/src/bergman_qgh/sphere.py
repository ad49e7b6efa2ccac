"""Deterministic point samples on the unit sphere S^{2d-1} in C^d.

Points are stored as complex arrays of shape ``(n, d)``; the real embedding
interleaves coordinates, ``z_k = x_{2k-1} + i x_{2k}``.  Distances are chordal
(Euclidean in R^{2d}).
"""

from __future__ import annotations

from functools import cached_property

import numpy as np
from scipy.spatial import cKDTree

from .errors import InputError

__all__ = ["SphereSampler", "to_real", "from_real", "axis_points"]


def to_real(z: np.ndarray) -> np.ndarray:
    z = np.atleast_2d(np.asarray(z, dtype=complex))
    out = np.empty((z.shape[0], 2 * z.shape[1]))
    out[:, 0::2] = z.real
    out[:, 1::2] = z.imag
    return out


def from_real(x: np.ndarray) -> np.ndarray:
    x = np.atleast_2d(np.asarray(x, dtype=float))
    if x.shape[1] % 2:
        raise InputError("real coordinates must have even length 2d")
    return x[:, 0::2] + 1j * x[:, 1::2]


def axis_points(d: int) -> np.ndarray:
    """The 4d points ``+-e_k`` and ``+-i e_k``."""
    pts = []
    for k in range(d):
        for c in (1, -1, 1j, -1j):
            p = np.zeros(d, dtype=complex)
            p[k] = c
            pts.append(p)
    return np.array(pts)


class SphereSampler:
    """Seeded uniform sample of S^{2d-1}, optionally augmented with the axis points.

    Uniform points are normalized standard Gaussians in R^{2d}; with the same
    seed, a larger ``n_points`` yields a superset of a smaller one.
    """

    def __init__(self, d: int, n_points: int = 2000, seed: int = 0, include_axes: bool = True,
                 extra_points=None):
        if d < 1:
            raise InputError("dimension d must be >= 1")
        if n_points < 0:
            raise InputError("n_points must be >= 0")
        self.d = d
        self.n_points = n_points
        self.seed = seed
        self.include_axes = include_axes
        rng = np.random.default_rng(seed)
        g = rng.standard_normal((n_points, 2 * d))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        parts = []
        if extra_points is not None and len(extra_points):
            extra = np.atleast_2d(np.asarray(extra_points, dtype=complex))
            if extra.shape[1] != d:
                raise InputError("extra points have the wrong dimension")
            if np.any(np.abs(np.linalg.norm(extra, axis=1) - 1) > 1e-12):
                raise InputError("extra points must lie on the unit sphere")
            parts.append(extra)
        if include_axes:
            parts.append(axis_points(d))
        parts.append(from_real(g) if n_points else np.zeros((0, d), dtype=complex))
        self.points = np.concatenate(parts, axis=0)
        if len(self.points) == 0:
            raise InputError("empty sample set")

    def __len__(self):
        return len(self.points)

    @cached_property
    def real_points(self) -> np.ndarray:
        return to_real(self.points)

    @cached_property
    def mesh(self) -> float:
        """Covering-radius bound for the sample.

        Exact for the circle (half the largest angular gap, as a chord).  For
        d >= 2 it is the estimate ``2 * max nearest-neighbour distance``.
        """
        x = self.real_points
        if len(x) < 2:
            return 2.0
        if self.d == 1:
            theta = np.sort(np.angle(self.points[:, 0]))
            gaps = np.diff(np.concatenate([theta, [theta[0] + 2 * np.pi]]))
            return float(2 * np.sin(gaps.max() / 4))
        dist, _ = cKDTree(x).query(x, k=2)
        return float(min(2.0, 2 * dist[:, 1].max()))

    def __repr__(self):
        return (f"SphereSampler(d={self.d}, n_points={self.n_points}, seed={self.seed}, "
                f"include_axes={self.include_axes})")
