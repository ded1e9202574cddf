"""Classical turnpike/beltway layer and the half-circle bridge into O(2).

Points on the line, known only through their unordered pairwise distances,
embed into the unit circle by a_i -> (cos(pi a_i / M), sin(pi a_i / M)) for
any M at least the diameter of the set; inner products of embedded points
are cos(pi |a_i - a_j| / M), so line distances and circle inner products
determine each other.  This turns line instances into binary signals whose
second-moment invariants encode exactly the difference multiset.
"""
from __future__ import annotations

import numpy as np

from .errors import DegenerateParameters, ScaleError
from .signals import DEFAULT_TOL, SparseSignal, Tolerances


def _as_line_set(values, eps: float = DEFAULT_TOL.eps_match) -> np.ndarray:
    a = np.asarray(values, dtype=float).ravel()
    if a.size < 1 or not np.isfinite(a).all():
        raise ValueError("a line set needs at least one finite position")
    s = np.sort(a)
    if a.size > 1 and np.min(np.diff(s)) <= eps:
        raise ValueError("line positions must be pairwise distinct")
    return a


def difference_multiset(values) -> np.ndarray:
    """Sorted multiset of the k(k-1)/2 pairwise absolute differences."""
    a = _as_line_set(values)
    diffs = [abs(a[i] - a[j]) for i in range(a.size) for j in range(i + 1, a.size)]
    return np.sort(np.asarray(diffs))


def embed_half_circle(values, scale: float | None = None) -> SparseSignal:
    """Embed line positions into the unit circle as a binary signal.

    scale defaults to the set's diameter (the tight choice); it must be at
    least the maximum pairwise distance, else inner products no longer
    determine distances and a ScaleError is raised.
    """
    a = _as_line_set(values)
    diam = float(a.max() - a.min()) if a.size > 1 else 0.0
    if scale is None:
        scale = diam if diam > 0 else 1.0
    if scale <= 0:
        raise ScaleError("embedding scale must be positive")
    if scale < diam - DEFAULT_TOL.eps_match:
        raise ScaleError(
            f"scale {scale:.12g} is below the maximum pairwise distance {diam:.12g}"
        )
    angles = np.pi * a / scale
    points = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    return SparseSignal(np.ones(a.size), points)


def piccard_sets(a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
    """The parametric six-point pair sharing a difference multiset.

    Returns (P, Q) with
        P = {0, a, b - 2a, 2b - 2a, 2b, 3b - a}
        Q = {0, a, 2a + b, a + 2b, 2b - a, 3b - a}
    sorted ascending.  These are the only collision-free line sets not
    determined by their differences; for a generic parameter choice the two
    sets are homometric but not related by shift or reflection.  Raises
    DegenerateParameters when either formula produces fewer than six
    distinct values.
    """
    p = np.array([0.0, a, b - 2 * a, 2 * b - 2 * a, 2 * b, 3 * b - a])
    q = np.array([0.0, a, 2 * a + b, a + 2 * b, 2 * b - a, 3 * b - a])
    eps = DEFAULT_TOL.eps_match
    for name, s in (("P", p), ("Q", q)):
        ss = np.sort(s)
        if np.min(np.diff(ss)) <= eps:
            raise DegenerateParameters(
                f"{name}-set has coinciding elements for parameters ({a}, {b})"
            )
    return np.sort(p), np.sort(q)


def turnpike_equivalent(s, t, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff two line sets agree up to translation and reflection."""
    a = np.sort(_as_line_set(s, tol.eps_match))
    b = np.sort(_as_line_set(t, tol.eps_match))
    if a.size != b.size:
        return False
    a = a - a[0]
    for cand in (b, -b[::-1]):
        shifted = cand - cand[0]
        if np.all(np.abs(shifted - a) <= tol.eps_match):
            return True
    return False
