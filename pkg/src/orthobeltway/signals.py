"""Geometry kernel: weighted point sets, Gram matrices, and orbit operations.

A sparse signal is a finite sum of weighted point masses in R^n.  The
orthogonal group O(n) acts on the support points; everything observable
through the second moment is a function of the Gram matrix of the support
and of the pairwise weight products, so this module centers on producing,
factoring, and comparing Gram matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import (
    DegeneratePartner,
    DimensionError,
    NoRealSolution,
    NotPSD,
    PreconditionError,
    RankExceeded,
)


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used across the package.

    eps_match: absolute tolerance for value matching (weights, inner
        products, invariant entries).
    eps_psd: eigenvalue negativity threshold, relative to the largest
        eigenvalue, below which a matrix is rejected as not PSD.
    eps_rank: relative eigenvalue threshold for numerical rank.
    """

    eps_match: float = 1e-9
    eps_psd: float = 1e-8
    eps_rank: float = 1e-8

    def __post_init__(self) -> None:
        if min(self.eps_match, self.eps_psd, self.eps_rank) <= 0:
            raise ValueError("all tolerances must be strictly positive")


DEFAULT_TOL = Tolerances()


def _readonly(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class SparseSignal:
    """k weighted point masses in R^n.

    weights: shape (k,), all non-zero.
    points: shape (k, n), rows are the support points, pairwise distinct.
    """

    weights: np.ndarray
    points: np.ndarray

    def __post_init__(self) -> None:
        w = _readonly(np.atleast_1d(self.weights))
        p = _readonly(np.atleast_2d(self.points))
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "points", p)
        if w.ndim != 1 or p.ndim != 2 or p.shape[0] != w.shape[0]:
            raise ValueError("weights must be (k,), points must be (k, n)")
        if w.shape[0] < 1 or p.shape[1] < 1:
            raise ValueError("need k >= 1 points in dimension n >= 1")
        if not (np.isfinite(w).all() and np.isfinite(p).all()):
            raise ValueError("weights and points must be finite")
        if np.any(w == 0.0):
            raise ValueError("weights must be non-zero")
        eps = DEFAULT_TOL.eps_match
        for i in range(p.shape[0]):
            d = np.linalg.norm(p[i + 1 :] - p[i], axis=1)
            if d.size and d.min() <= eps:
                raise ValueError("support points must be pairwise distinct")

    @property
    def k(self) -> int:
        return self.weights.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def transformed(self, g: np.ndarray) -> "SparseSignal":
        """Apply an orthogonal map g (n x n) to every support point."""
        return SparseSignal(self.weights, self.points @ np.asarray(g, float).T)

    def negated(self) -> "SparseSignal":
        """Flip the sign of every weight (the Z2 ambiguity of second moments)."""
        return SparseSignal(-self.weights, self.points)

    def permuted(self, order) -> "SparseSignal":
        """Relabel the support points; stays in the same orbit."""
        idx = np.asarray(order, dtype=int)
        return SparseSignal(self.weights[idx], self.points[idx])


def gram_matrix(signal: SparseSignal) -> np.ndarray:
    """Gram matrix of the support: entry (i, j) is the inner product t_i . t_j."""
    g = signal.points @ signal.points.T
    return (g + g.T) / 2.0


def psd_factor(gram: np.ndarray, max_dim: int, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Factor a PSD Gram matrix into k points in R^max_dim.

    Eigen-factorization with eigenvalues sorted descending; the returned
    points are nonzero only in the first rank(gram) coordinates.  Small
    negative eigenvalues (within eps_psd relative to the largest) are
    clamped to zero so numerical noise cannot reject feasible inputs.

    Raises NotPSD when an eigenvalue falls below -eps_psd * lambda_max, and
    RankExceeded when the numerical rank exceeds max_dim.
    """
    a = np.asarray(gram, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("gram must be a square matrix")
    if max_dim < 1:
        raise ValueError("max_dim must be positive")
    a = (a + a.T) / 2.0
    evals, evecs = np.linalg.eigh(a)
    lam_max = float(evals[-1])
    floor = -tol.eps_psd * max(lam_max, 0.0)
    if evals[0] < floor:
        raise NotPSD(
            f"eigenvalue {evals[0]:.6g} below threshold {floor:.6g}"
        )
    evals = np.clip(evals, 0.0, None)
    rank = int(np.count_nonzero(evals > tol.eps_rank * lam_max)) if lam_max > 0 else 0
    if rank > max_dim:
        raise RankExceeded(f"numerical rank {rank} exceeds target dimension {max_dim}")
    order = np.argsort(evals)[::-1][:rank]
    k = a.shape[0]
    points = np.zeros((k, max_dim))
    points[:, :rank] = evecs[:, order] * np.sqrt(evals[order])
    return points


def reduce_to_triangular(signal: SparseSignal) -> SparseSignal:
    """Rotate a signal so its point matrix is upper triangular.

    The k x n point matrix X (points as columns) is replaced by g X for an
    orthogonal g chosen so that the result is upper triangular with
    non-negative diagonal; the Gram matrix, hence the orbit, is unchanged.
    Requires k <= n.
    """
    k, n = signal.k, signal.dim
    if k > n:
        raise DimensionError(f"need k <= n to triangularize, got k={k}, n={n}")
    x = signal.points.T  # n x k, columns are points
    _, r = np.linalg.qr(x, mode="reduced")  # r is k x k
    signs = np.where(np.diag(r) < 0, -1.0, 1.0)
    r = np.triu(r * signs[:, None])  # exact zeros below the diagonal
    points = np.zeros((k, n))
    points[:, :k] = r.T
    return SparseSignal(signal.weights, points)


def orbit_equivalent(
    x: SparseSignal, y: SparseSignal, tol: Tolerances = DEFAULT_TOL
) -> bool:
    """Decide whether two signals lie in the same O(n)-orbit.

    True iff some relabeling of y's support matches x's weights exactly and
    reproduces x's Gram matrix entrywise within eps_match.  The search is a
    backtracking permutation search pruned by (weight, squared-magnitude)
    compatibility, exact at desk scale (k up to around 12).
    """
    if x.k != y.k:
        return False
    k = x.k
    eps = tol.eps_match
    a = gram_matrix(x)
    b = gram_matrix(y)
    cand = [
        [
            j
            for j in range(k)
            if abs(x.weights[i] - y.weights[j]) <= eps
            and abs(a[i, i] - b[j, j]) <= eps
        ]
        for i in range(k)
    ]
    if any(not c for c in cand):
        return False
    # assign the most constrained x-index first
    order = sorted(range(k), key=lambda i: len(cand[i]))
    assign = [-1] * k  # x index -> y index
    used = [False] * k

    def extend(pos: int) -> bool:
        if pos == k:
            return True
        i = order[pos]
        for j in cand[i]:
            if used[j]:
                continue
            ok = True
            for prev in order[:pos]:
                if abs(a[i, prev] - b[j, assign[prev]]) > eps:
                    ok = False
                    break
            if ok:
                assign[i] = j
                used[j] = True
                if extend(pos + 1):
                    return True
                used[j] = False
                assign[i] = -1
        return False

    return extend(0)


def homometric_partner(
    signal: SparseSignal, tol: Tolerances = DEFAULT_TOL
) -> SparseSignal:
    """Build a second-moment twin of a binary signal by a single-point swap.

    Requires all weights equal to 1, linearly independent support with
    3 <= k <= n, and two support points of equal magnitude.  The signal is
    rotated to triangular form with the equal-magnitude pair first; the last
    point t_k is then replaced by the s_k solving

        t_1 . s_k = t_2 . t_k,   t_2 . s_k = t_1 . t_k,
        t_i . s_k = t_i . t_k    (3 <= i <= k-1),   |s_k| = |t_k|,

    which swaps two Gram entries tied to equal diagonal values and therefore
    preserves the full invariant set.  The first k-1 coordinates come from
    forward substitution against the triangular basis; the last coordinate is
    the positive square root of the norm residual (the negative root gives a
    reflection, i.e. the same orbit).
    """
    eps = tol.eps_match
    k, n = signal.k, signal.dim
    if k > n:
        raise PreconditionError(f"need k <= n, got k={k}, n={n}")
    if k < 3:
        raise PreconditionError("swap construction needs k >= 3")
    if np.any(np.abs(signal.weights - 1.0) > eps):
        raise PreconditionError("signal must be binary (all weights 1)")
    norms = np.linalg.norm(signal.points, axis=1)
    pair = None
    for i in range(k):
        for j in range(i + 1, k):
            if abs(norms[i] - norms[j]) <= eps:
                pair = (i, j)
                break
        if pair:
            break
    if pair is None:
        raise PreconditionError("no pair of equal-magnitude support points")
    order = list(pair) + [i for i in range(k) if i not in pair]
    tri = reduce_to_triangular(signal.permuted(order))
    x = tri.points.T[:k, :]  # k x k upper triangular, columns are points
    diag = np.abs(np.diag(x))
    if diag.min() <= tol.eps_rank * max(diag.max(), 1.0):
        raise PreconditionError("support points must be linearly independent")
    t_last = x[:, k - 1]
    b = np.empty(k - 1)
    b[0] = x[:, 1] @ t_last
    b[1] = x[:, 0] @ t_last
    for i in range(2, k - 1):
        b[i] = x[:, i] @ t_last
    if abs(b[0] - b[1]) <= eps:
        raise DegeneratePartner("swapped inner products coincide")
    # rows of the system matrix are the first k-1 points, truncated to the
    # first k-1 coordinates, hence lower triangular
    m = x[: k - 1, : k - 1].T
    s_head = solve_triangular(m, b, lower=True)
    residual = float(t_last @ t_last - s_head @ s_head)
    if residual < -eps:
        raise NoRealSolution(f"norm residual {residual:.6g} is negative")
    s_full = np.zeros(n)
    s_full[: k - 1] = s_head
    s_full[k - 1] = np.sqrt(max(residual, 0.0))
    points = tri.points.copy()
    points[k - 1] = s_full
    partner = SparseSignal(tri.weights, points)
    if orbit_equivalent(signal, partner, tol):
        raise DegeneratePartner("swap construction lands in the input orbit")
    return partner
