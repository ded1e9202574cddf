"""Haar-uniform sampling helpers for spheres and the orthogonal group."""
from __future__ import annotations

import numpy as np


def unit_sphere_point(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Uniform point on the unit sphere S^{dim-1}, via normalized Gaussians."""
    while True:
        v = rng.standard_normal(dim)
        norm = np.linalg.norm(v)
        if norm > 1e-12:
            return v / norm


def random_orthogonal(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Haar-uniform element of O(n), via QR of a Gaussian matrix.

    The R factor's diagonal signs are absorbed into Q so the distribution is
    exactly Haar rather than QR-convention biased.
    """
    a = rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(a)
    return q * np.where(np.diag(r) < 0, -1.0, 1.0)
