"""Inverse problem: from an invariant set back to signal orbits.

Three routes, in increasing generality:

* unique recovery when all support magnitudes are distinct (every
  off-diagonal triple addresses one Gram entry);
* direct addressing by weight products when those are pairwise distinct;
* full backtracking enumeration of all Gram-entry assignments compatible
  with the magnitude partition, filtered by weight consistency and by
  PSD-with-bounded-rank factorability, deduplicated up to relabelings.

The combinatorial bound on the number of orbits is the product, over
magnitude classes of size r with r >= 2, of binom(r, 2)! / r!, times the
product over class pairs of (r_a * r_b)!.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

import numpy as np

from .errors import (
    BudgetExceeded,
    CollisionError,
    InconsistentWeights,
    InvalidInvariantSet,
    NotCollisionFree,
    NotPSD,
    NotRadiallyCollisionFree,
    RankExceeded,
    WeightProductsNotDistinct,
)
from .invariants import (
    InvariantSet,
    MagnitudePartition,
    invariant_sets_equal,
    magnitude_partition,
    second_moment_invariants,
)
from .signals import DEFAULT_TOL, SparseSignal, Tolerances, gram_matrix, orbit_equivalent, psd_factor

DEFAULT_WORK_CAP = 10**8
# above this many block-preserving relabelings, duplicate detection falls
# back to pairwise orbit-equivalence tests instead of canonical forms
_CANONICAL_GROUP_CAP = 100_000


@dataclass(frozen=True)
class RecoveryResult:
    """Orbit representatives consistent with a queried invariant set.

    bound is the combinatorial upper bound on the number of orbits;
    truncated marks an enumeration stopped at max_results; sign_ambiguous
    marks that at least one orbit is recovered only up to a global weight
    sign (flipping all weights changes the signal but not its invariants).
    """

    orbits: tuple
    bound: int
    truncated: bool
    sign_ambiguous: bool


def orbit_count_bound(partition) -> int:
    """Exact combinatorial bound on the number of orbits sharing a moment.

    Accepts a MagnitudePartition or a bare sequence of multiplicities.
    Evaluates prod_{r_p >= 2} binom(r_p, 2)!/r_p! * prod_{a<b} (r_a r_b)!
    in exact arbitrary-precision arithmetic.  For k < 3 the bound is 1.
    """
    if isinstance(partition, MagnitudePartition):
        mult = partition.multiplicities
    else:
        mult = tuple(int(r) for r in partition)
    if not mult or any(r < 1 for r in mult):
        raise ValueError("multiplicities must be positive integers")
    if sum(mult) < 3:
        return 1
    value = Fraction(1)
    for r in mult:
        if r >= 2:
            value *= Fraction(math.factorial(math.comb(r, 2)), math.factorial(r))
    for a in range(len(mult)):
        for b in range(a + 1, len(mult)):
            value *= math.factorial(mult[a] * mult[b])
    if value.denominator != 1:
        raise ValueError(f"bound is not integral for multiplicities {mult}")
    return int(value)


def weight_products_distinct(weights, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff the pairwise products w_i w_j (i < j) are pairwise distinct."""
    w = np.asarray(weights, dtype=float)
    if np.any(w == 0.0):
        raise ValueError("weights must be non-zero")
    prods = sorted(
        float(w[i] * w[j]) for i in range(len(w)) for j in range(i + 1, len(w))
    )
    return all(b - a > tol.eps_match for a, b in zip(prods, prods[1:]))


class _Layout:
    """Index layout shared by the recovery routes.

    Support indices are ordered by (magnitude block, diagonal weight
    product); each off-diagonal entry belongs to the pool of one block pair.
    """

    def __init__(self, inv: InvariantSet, tol: Tolerances):
        eps = tol.eps_match
        self.inv = inv
        self.tol = tol
        self.k = inv.k
        self.partition = magnitude_partition(inv, tol)
        mags = self.partition.magnitudes
        diag = []
        for e in inv.diagonal(eps):
            if e.wprod <= eps:
                raise InconsistentWeights(
                    f"diagonal weight product {e.wprod:.6g} cannot be a squared weight"
                )
            m = math.sqrt(max(e.triple.a, 0.0))
            blk = min(range(len(mags)), key=lambda p: abs(mags[p] - m))
            diag.append((blk, e.wprod, e.triple.a))
        diag.sort()
        self.block_of = [d[0] for d in diag]
        self.diag_wprod = np.array([d[1] for d in diag])
        self.diag_a = np.array([d[2] for d in diag])
        self.blocks = [
            [i for i in range(self.k) if self.block_of[i] == p]
            for p in range(len(mags))
        ]
        # relabeling classes: runs of indices sharing block and diagonal
        # weight product (within eps); exchanging them relabels the signal
        self.classes = []
        for block in self.blocks:
            start = 0
            while start < len(block):
                end = start
                while (
                    end + 1 < len(block)
                    and abs(self.diag_wprod[block[end + 1]] - self.diag_wprod[block[start]])
                    <= eps
                ):
                    end += 1
                self.classes.append(block[start : end + 1])
                start = end + 1
        # snap within-block squared magnitudes and within-class weight
        # products to one representative: members agree within eps_match by
        # construction, and exact equality is what lets relabeled Gram
        # candidates share a canonical form
        self.diag_a_snapped = self.diag_a.copy()
        for block in self.blocks:
            self.diag_a_snapped[block] = self.diag_a[block[0]]
        self.diag_wprod_snapped = self.diag_wprod.copy()
        for cls in self.classes:
            self.diag_wprod_snapped[cls] = self.diag_wprod[cls[0]]
        self.abs_w = np.sqrt(self.diag_wprod_snapped)

    def block_of_value(self, sq_mag: float) -> int:
        mags = self.partition.magnitudes
        m = math.sqrt(max(sq_mag, 0.0))
        blk = min(range(len(mags)), key=lambda p: abs(mags[p] - m))
        if abs(mags[blk] - m) > self.tol.eps_match * (1.0 + mags[blk]):
            raise InvalidInvariantSet(
                f"off-diagonal magnitude {m:.12g} matches no diagonal magnitude"
            )
        return blk

    def pools(self) -> dict:
        """Off-diagonal entries grouped by block pair, with count validation."""
        eps = self.tol.eps_match
        pools: dict = {}
        for e in self.inv.off_diagonal(eps):
            key = (self.block_of_value(e.triple.a), self.block_of_value(e.triple.b))
            key = (min(key), max(key))
            pools.setdefault(key, []).append((e.triple.c, e.wprod))
        mult = self.partition.multiplicities
        for (p, q), values in pools.items():
            expect = math.comb(mult[p], 2) if p == q else mult[p] * mult[q]
            if len(values) != expect:
                raise InvalidInvariantSet(
                    f"block pair {(p, q)} has {len(values)} entries, expected {expect}"
                )
        for p in range(len(mult)):
            if mult[p] >= 2 and (p, p) not in pools:
                raise InvalidInvariantSet(f"missing within-block entries for block {p}")
        for values in pools.values():
            values.sort()
        return pools


def _check_offdiag_distinct(inv: InvariantSet, tol: Tolerances) -> None:
    eps = tol.eps_match
    off = [e.triple for e in inv.off_diagonal(eps)]
    for i in range(len(off)):
        for j in range(i + 1, len(off)):
            if all(abs(off[i][m] - off[j][m]) <= eps for m in range(3)):
                raise NotCollisionFree(
                    "invariant set contains coinciding pair orbits"
                )


def _resolve_signs(wp: np.ndarray, abs_w: np.ndarray, eps: float):
    """Sign vector s (s_0 = +1 per component) with s_i s_j matching sign(wp_ij).

    Returns None if no sign assignment reproduces every off-diagonal product
    within tolerance.
    """
    k = len(abs_w)
    signs = np.zeros(k, dtype=int)
    for root in range(k):
        if signs[root]:
            continue
        signs[root] = 1
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(k):
                if i == j or abs(wp[i, j]) <= eps:
                    continue
                want = signs[i] * (1 if wp[i, j] > 0 else -1)
                if signs[j] == 0:
                    signs[j] = want
                    stack.append(j)
                elif signs[j] != want:
                    return None
    w = signs * abs_w
    for i in range(k):
        for j in range(i + 1, k):
            if abs(w[i] * w[j] - wp[i, j]) > eps * (1.0 + abs(wp[i, j])):
                return None
    return w


def recover_unique(
    inv: InvariantSet, n: int, tol: Tolerances = DEFAULT_TOL
) -> SparseSignal:
    """Unique orbit recovery for radially collision-free invariant sets.

    With all magnitudes distinct, each off-diagonal triple (a, b, c)
    addresses exactly one Gram entry, so the Gram matrix is assembled
    directly and factored.  Weight magnitudes come from the diagonal
    products; signs are fixed by the off-diagonal products relative to
    w_1 > 0, leaving only the global sign ambiguity.
    """
    layout = _Layout(inv, tol)
    if any(r > 1 for r in layout.partition.multiplicities):
        raise NotRadiallyCollisionFree(
            "unique recovery requires pairwise distinct magnitudes"
        )
    k = inv.k
    eps = tol.eps_match
    gram = np.diag(layout.diag_a)
    wp = np.diag(layout.diag_wprod)
    seen = np.eye(k, dtype=bool)
    for e in inv.off_diagonal(eps):
        i = layout.block_of_value(e.triple.a)
        j = layout.block_of_value(e.triple.b)
        if i == j or seen[i, j]:
            raise InvalidInvariantSet("off-diagonal triples do not address distinct entries")
        gram[i, j] = gram[j, i] = e.triple.c
        wp[i, j] = wp[j, i] = e.wprod
        seen[i, j] = seen[j, i] = True
    if not seen.all():
        raise InvalidInvariantSet("invariant set does not cover every Gram entry")
    points = psd_factor(gram, n, tol)
    w = _resolve_signs(wp, layout.abs_w, eps)
    if w is None:
        raise InconsistentWeights("off-diagonal products do not factor as w_i w_j")
    return SparseSignal(w, points)


def recover_distinct_weight_products(
    inv: InvariantSet, n: int, tol: Tolerances = DEFAULT_TOL
) -> SparseSignal:
    """Recovery by weight-product addressing (collision-free support).

    When the pairwise weight products are pairwise distinct, each
    off-diagonal entry is matched to the unique index pair whose weight
    magnitudes and block magnitudes fit it, so the Gram matrix is assembled
    without enumeration.  The result is unique up to the global weight sign.
    """
    _check_offdiag_distinct(inv, tol)
    layout = _Layout(inv, tol)
    k = inv.k
    eps = tol.eps_match
    off = list(inv.off_diagonal(eps))
    prods = sorted(e.wprod for e in off)
    if any(b - a <= eps for a, b in zip(prods, prods[1:])):
        raise WeightProductsNotDistinct("pairwise weight products are not distinct")

    candidates = []
    for e in off:
        blk = (layout.block_of_value(e.triple.a), layout.block_of_value(e.triple.b))
        pairs = [
            (i, j)
            for i in range(k)
            for j in range(i + 1, k)
            if sorted((layout.block_of[i], layout.block_of[j])) == sorted(blk)
            and abs(layout.abs_w[i] * layout.abs_w[j] - abs(e.wprod))
            <= eps * (1.0 + abs(e.wprod))
        ]
        if not pairs:
            raise InvalidInvariantSet(
                "an off-diagonal entry matches no index pair by magnitude and weight"
            )
        candidates.append(pairs)

    order = sorted(range(len(off)), key=lambda idx: len(candidates[idx]))
    gram0 = np.diag(layout.diag_a)
    wp0 = np.diag(layout.diag_wprod)
    taken = [[False] * k for _ in range(k)]
    result = None
    factor_error = None

    def assign(pos: int):
        nonlocal result, factor_error
        if result is not None:
            return
        if pos == len(order):
            w = _resolve_signs(wp0, layout.abs_w, eps)
            if w is None:
                return
            try:
                points = psd_factor(gram0, n, tol)
                signal = SparseSignal(w, points)
            except (NotPSD, RankExceeded) as exc:
                factor_error = exc
                return
            except ValueError:
                return
            try:
                if invariant_sets_equal(
                    second_moment_invariants(signal, tol), inv, tol
                ):
                    result = signal
            except CollisionError:
                return
            return
        e = off[order[pos]]
        for i, j in candidates[order[pos]]:
            if taken[i][j]:
                continue
            taken[i][j] = True
            gram0[i, j] = gram0[j, i] = e.triple.c
            wp0[i, j] = wp0[j, i] = e.wprod
            assign(pos + 1)
            taken[i][j] = False
            if result is not None:
                return
        return

    assign(0)
    if result is None:
        if factor_error is not None:
            raise factor_error
        raise InvalidInvariantSet("no consistent weight-product assignment exists")
    return result


def _leading_minor_ok(gram: np.ndarray, size: int, n: int, tol: Tolerances) -> bool:
    evals = np.linalg.eigvalsh(gram[:size, :size])
    lam_max = float(evals[-1])
    if evals[0] < -tol.eps_psd * max(lam_max, 0.0):
        return False
    if size <= n:
        return True
    rank = int(np.count_nonzero(evals > tol.eps_rank * lam_max)) if lam_max > 0 else 0
    return rank <= n


def _principal_3x3_det(gram: np.ndarray, u: int, v: int, j: int) -> float:
    duu, dvv, djj = gram[u, u], gram[v, v], gram[j, j]
    auv, auj, avj = gram[u, v], gram[u, j], gram[v, j]
    return (
        duu * dvv * djj
        + 2.0 * auv * auj * avj
        - duu * avj * avj
        - dvv * auj * auj
        - djj * auv * auv
    )


def _relabeling_group(layout: _Layout):
    """Index permutations preserving magnitude block and diagonal weight product."""
    classes = layout.classes
    size = 1
    for c in classes:
        size *= math.factorial(len(c))
        if size > _CANONICAL_GROUP_CAP:
            return None
    perms = []
    for combo in product(*(permutations(c) for c in classes)):
        perm = list(range(layout.k))
        for cls, image in zip(classes, combo):
            for src, dst in zip(cls, image):
                perm[src] = dst
        perms.append(perm)
    return perms


def enumerate_orbits(
    inv: InvariantSet,
    n: int,
    max_results: int = 128,
    tol: Tolerances = DEFAULT_TOL,
    work_cap: int = DEFAULT_WORK_CAP,
) -> RecoveryResult:
    """Enumerate all signal orbits consistent with a collision-free invariant set.

    The Gram diagonal is fixed by the sorted magnitudes; the off-diagonal
    values of each block pair are assigned to that pair's positions in all
    multiset-distinct ways by backtracking in leading-minor order.  Partial
    assignments are pruned by weight-magnitude consistency per entry, by a
    rank-2 principal-minor determinant test when n = 2, and by a PSD /
    rank <= n eigenvalue test on every completed leading minor.  Survivors
    are deduplicated up to magnitude- and weight-preserving relabelings.

    Raises NotCollisionFree for inputs with coinciding pair orbits and
    BudgetExceeded when the backtracking exceeds work_cap nodes.
    """
    if max_results < 1:
        raise ValueError("max_results must be positive")
    _check_offdiag_distinct(inv, tol)
    layout = _Layout(inv, tol)
    k = inv.k
    eps = tol.eps_match
    bound = orbit_count_bound(layout.partition)
    pools = layout.pools()

    block_of = layout.block_of
    positions = [(i, j) for j in range(1, k) for i in range(j)]
    pool_key = {
        (i, j): tuple(sorted((block_of[i], block_of[j]))) for (i, j) in positions
    }
    used = {key: [False] * len(vals) for key, vals in pools.items()}

    gram = np.diag(layout.diag_a_snapped)
    wp = np.diag(layout.diag_wprod_snapped)
    abs_w = layout.abs_w

    perms = _relabeling_group(layout)
    canonical_keys: set = set()
    if perms is not None:
        flat_idx = np.array(
            [[p[i] * k + p[j] for i in range(k) for j in range(k)] for p in perms]
        )

    orbits: list = []
    truncated = False
    nodes = 0
    det_scale = max(float(layout.diag_a.max()), 1.0) ** 3

    def accept_leaf() -> None:
        nonlocal truncated
        w = _resolve_signs(wp, abs_w, eps)
        if w is None:
            return
        key = None
        if perms is not None:
            rows = np.hstack([gram.ravel()[flat_idx], wp.ravel()[flat_idx]])
            key = min(rows[i].tobytes() for i in range(rows.shape[0]))
            if key in canonical_keys:
                return
        try:
            points = psd_factor(gram, n, tol)
            signal = SparseSignal(w, points)
        except (NotPSD, RankExceeded, ValueError):
            return
        try:
            if not invariant_sets_equal(second_moment_invariants(signal, tol), inv, tol):
                return
        except CollisionError:
            return
        if perms is None:
            if any(orbit_equivalent(signal, o, tol) for o in orbits):
                return
        else:
            canonical_keys.add(key)
        orbits.append(signal)
        if len(orbits) >= max_results:
            truncated = True

    def extend(pos: int) -> None:
        nonlocal nodes
        if truncated:
            return
        if pos == len(positions):
            accept_leaf()
            return
        i, j = positions[pos]
        key = pool_key[(i, j)]
        values = pools[key]
        flags = used[key]
        previous = None
        for idx, (c, p) in enumerate(values):
            if flags[idx] or (c, p) == previous:
                continue
            nodes += 1
            if nodes > work_cap:
                raise BudgetExceeded(f"enumeration exceeded {work_cap} nodes")
            previous = (c, p)
            if abs(abs(p) - abs_w[i] * abs_w[j]) > eps * (1.0 + abs(p)):
                continue
            gram[i, j] = gram[j, i] = c
            wp[i, j] = wp[j, i] = p
            ok = True
            if n == 2:
                for u in range(i):
                    if abs(_principal_3x3_det(gram, u, i, j)) > 1e-7 * det_scale:
                        ok = False
                        break
            if ok and i == j - 1:
                ok = _leading_minor_ok(gram, j + 1, n, tol)
            if ok:
                flags[idx] = True
                extend(pos + 1)
                flags[idx] = False
            if truncated:
                break
        gram[i, j] = gram[j, i] = 0.0
        wp[i, j] = wp[j, i] = 0.0

    extend(0)

    ordered = tuple(
        sorted(orbits, key=lambda o: tuple(gram_matrix(o).ravel()) + tuple(o.weights))
    )
    sign_ambiguous = any(
        not orbit_equivalent(o, o.negated(), tol) for o in ordered
    )
    return RecoveryResult(
        orbits=ordered, bound=bound, truncated=truncated, sign_ambiguous=sign_ambiguous
    )
