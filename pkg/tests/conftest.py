"""Shared random-instance generators for the test suite."""
from __future__ import annotations

import numpy as np
import pytest
from scipy.linalg import solve_triangular

from orthobeltway import SparseSignal, is_collision_free, unit_sphere_point


def random_radially_cf_signal(
    rng: np.random.Generator, n: int, k: int | None = None
) -> SparseSignal:
    """Random signal with pairwise distinct magnitudes (and hence collision-free
    for generic directions)."""
    k = n if k is None else k
    while True:
        mags = np.sort(0.5 + 2.5 * rng.random(k))
        if np.min(np.diff(mags)) < 0.05:
            continue
        points = np.stack([unit_sphere_point(rng, n) * m for m in mags])
        weights = rng.choice([-1.0, 1.0], k) * (0.5 + 2.0 * rng.random(k))
        signal = SparseSignal(weights, points)
        if is_collision_free(signal):
            return signal


# (n, k, block sizes): shapes whose assignment spaces stay small enough for
# exhaustive enumeration in a test loop
BLOCK_TEMPLATES = [
    (2, 4, (4,)),
    (2, 5, (3, 2)),
    (3, 4, (2, 2)),
    (3, 4, (4,)),
    (4, 4, (4,)),
    (3, 5, (2, 2, 1)),
    (3, 6, (2, 2, 2)),
]


def random_blocked_signal(
    rng: np.random.Generator,
    template=None,
    distinct_weight_products: bool = False,
) -> SparseSignal:
    """Random collision-free signal with repeated magnitudes.

    Block sizes follow one of BLOCK_TEMPLATES; points of one block share a
    magnitude.  With distinct_weight_products=True the weights are chosen as
    scaled powers of two so all pairwise products differ.
    """
    n, k, blocks = template if template is not None else (
        BLOCK_TEMPLATES[rng.integers(len(BLOCK_TEMPLATES))]
    )
    while True:
        mags = np.sort(0.8 + 2.0 * rng.random(len(blocks)))
        if len(mags) > 1 and np.min(np.diff(mags)) < 0.2:
            continue
        rows = []
        for mag, r in zip(mags, blocks):
            for _ in range(r):
                rows.append(unit_sphere_point(rng, n) * mag)
        points = np.stack(rows)
        if distinct_weight_products:
            # prime weights: w_i w_j all distinct by unique factorization
            weights = np.array([2.0, 3.0, 5.0, 7.0, 11.0, 13.0][:k]) * (
                0.8 + 0.4 * rng.random()
            )
        else:
            weights = rng.choice([-1.0, 1.0], k) * (0.5 + 2.0 * rng.random(k))
        try:
            signal = SparseSignal(weights, points)
        except ValueError:
            continue
        if is_collision_free(signal):
            return signal


def random_swap_input(rng: np.random.Generator, k: int = 4) -> SparseSignal:
    """Binary triangular signal with |t_1| = |t_2| and the last diagonal entry
    scaled so the swap construction has a positive norm residual."""
    while True:
        x = np.triu(rng.standard_normal((k, k)))
        diag = np.abs(np.diag(x))
        if diag.min() < 0.3:
            continue
        x[:, 0] /= np.linalg.norm(x[:, 0])
        x[:, 1] /= np.linalg.norm(x[:, 1])
        t_last = x[:, k - 1]
        b = np.array(
            [x[:, 1] @ t_last, x[:, 0] @ t_last]
            + [x[:, i] @ t_last for i in range(2, k - 1)]
        )
        if abs(b[0] - b[1]) < 1e-3:
            continue
        # the first k-1 swap coordinates do not depend on the last diagonal
        # entry, so it can always be grown until the residual is positive
        s = solve_triangular(x[: k - 1, : k - 1].T, b, lower=True)
        need = float(s @ s - t_last[: k - 1] @ t_last[: k - 1])
        x[k - 1, k - 1] = np.sqrt(max(need, 0.0) + 0.3 + rng.random())
        try:
            signal = SparseSignal(np.ones(k), x.T)
        except ValueError:
            continue
        if is_collision_free(signal):
            return signal


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
