"""Finite encoding of the second moment over O(n).

The second moment of a weighted point-mass signal is supported on the
O(n)-orbits of support-point pairs.  The orbit of an unordered pair is
pinned down by the canonical triple (smaller squared magnitude, larger
squared magnitude, inner product), so for collision-free supports the whole
moment reduces to a finite multiset of (triple, weight product) entries.
That multiset is what recovery consumes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CollisionError, DimensionMismatch, InvalidInvariantSet
from .signals import DEFAULT_TOL, SparseSignal, Tolerances


class OrbitTriple(NamedTuple):
    """Canonical descriptor of the O(n)-orbit of an unordered point pair."""

    a: float  # smaller squared magnitude
    b: float  # larger squared magnitude
    c: float  # inner product

    def is_diagonal(self, eps: float) -> bool:
        return abs(self.a - self.b) <= eps and abs(self.c - self.a) <= eps


class InvariantEntry(NamedTuple):
    """One pair orbit of the support together with its weight product."""

    triple: OrbitTriple
    wprod: float

    def key(self) -> tuple:
        return (*self.triple, self.wprod)


@dataclass(frozen=True)
class InvariantSet:
    """Multiset encoding of a second moment: one entry per unordered pair.

    Diagonal pairs (i, i) are included with triple (a, a, a) and weight
    product w_i^2, so a valid set has k(k+1)/2 entries of which exactly k
    are diagonal.  Entries are stored sorted by (a, b, c, wprod).
    """

    k: int
    entries: tuple

    def __post_init__(self) -> None:
        entries = tuple(sorted(self.entries, key=InvariantEntry.key))
        object.__setattr__(self, "entries", entries)
        expected = self.k * (self.k + 1) // 2
        if self.k < 1 or len(entries) != expected:
            raise InvalidInvariantSet(
                f"need k(k+1)/2 = {expected} entries for k={self.k}, got {len(entries)}"
            )
        eps = DEFAULT_TOL.eps_match
        for e in entries:
            if e.triple.a > e.triple.b + eps:
                raise InvalidInvariantSet("triple must have a <= b")
        if len(self.diagonal()) != self.k:
            raise InvalidInvariantSet(
                f"expected {self.k} diagonal entries (a = b = c)"
            )

    def diagonal(self, eps: float = DEFAULT_TOL.eps_match) -> tuple:
        return tuple(e for e in self.entries if e.triple.is_diagonal(eps))

    def off_diagonal(self, eps: float = DEFAULT_TOL.eps_match) -> tuple:
        return tuple(e for e in self.entries if not e.triple.is_diagonal(eps))


@dataclass(frozen=True)
class MagnitudePartition:
    """Distinct support magnitudes z_1 < ... < z_q with multiplicities r_p."""

    magnitudes: tuple
    multiplicities: tuple

    def __post_init__(self) -> None:
        if len(self.magnitudes) != len(self.multiplicities) or not self.magnitudes:
            raise ValueError("magnitudes and multiplicities must align and be non-empty")
        if any(r < 1 for r in self.multiplicities):
            raise ValueError("multiplicities must be positive")
        if any(
            self.magnitudes[p] >= self.magnitudes[p + 1]
            for p in range(len(self.magnitudes) - 1)
        ):
            raise ValueError("magnitudes must be strictly increasing")

    @property
    def k(self) -> int:
        return int(sum(self.multiplicities))


def pair_orbit_triple(t_i: np.ndarray, t_j: np.ndarray) -> OrbitTriple:
    """Canonical (|t_i|^2, |t_j|^2, t_i . t_j) sorted so the result is pair-symmetric."""
    t_i = np.asarray(t_i, float)
    t_j = np.asarray(t_j, float)
    if t_i.shape != t_j.shape:
        raise DimensionMismatch(f"points of dimension {t_i.shape} vs {t_j.shape}")
    aa = float(t_i @ t_i)
    bb = float(t_j @ t_j)
    c = float(t_i @ t_j)
    return OrbitTriple(min(aa, bb), max(aa, bb), c)


def _support_triples(signal: SparseSignal) -> list:
    pts = signal.points
    return [
        pair_orbit_triple(pts[i], pts[j])
        for i in range(signal.k)
        for j in range(i + 1, signal.k)
    ]


def is_collision_free(signal: SparseSignal, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True iff all unordered support pairs lie in pairwise distinct O(n)-orbits.

    Two pairs share an orbit exactly when their canonical triples agree, so
    this reduces to pairwise distinctness of the k(k-1)/2 triples.
    """
    triples = _support_triples(signal)
    eps = tol.eps_match
    for i in range(len(triples)):
        for j in range(i + 1, len(triples)):
            if all(abs(triples[i][m] - triples[j][m]) <= eps for m in range(3)):
                return False
    return True


def is_radially_collision_free(
    signal: SparseSignal, tol: Tolerances = DEFAULT_TOL
) -> bool:
    """True iff all support magnitudes are pairwise distinct."""
    norms = np.sort(np.linalg.norm(signal.points, axis=1))
    return bool(np.all(np.diff(norms) > tol.eps_match))


def second_moment_invariants(
    signal: SparseSignal, tol: Tolerances = DEFAULT_TOL
) -> InvariantSet:
    """Finite encoding of the signal's second moment over O(n).

    One entry per unordered support pair (i <= j): the pair's canonical
    orbit triple together with the weight product w_i w_j.  Refuses signals
    that are not collision-free, because coinciding pair orbits would merge
    their weights and the encoding would no longer determine the moment.
    """
    if not is_collision_free(signal, tol):
        raise CollisionError("signal support is not collision-free")
    pts, w = signal.points, signal.weights
    entries = []
    for i in range(signal.k):
        for j in range(i, signal.k):
            entries.append(
                InvariantEntry(pair_orbit_triple(pts[i], pts[j]), float(w[i] * w[j]))
            )
    return InvariantSet(signal.k, tuple(entries))


def magnitude_partition(
    inv: InvariantSet, tol: Tolerances = DEFAULT_TOL
) -> MagnitudePartition:
    """Cluster the diagonal magnitudes of an invariant set.

    Reads the k diagonal triples (a, a, a), takes magnitudes sqrt(a), and
    merges values within eps_match into one cluster.
    """
    mags = sorted(math.sqrt(max(e.triple.a, 0.0)) for e in inv.diagonal(tol.eps_match))
    magnitudes = [mags[0]]
    counts = [1]
    for m in mags[1:]:
        if m - magnitudes[-1] <= tol.eps_match:
            counts[-1] += 1
        else:
            magnitudes.append(m)
            counts.append(1)
    return MagnitudePartition(tuple(magnitudes), tuple(counts))


def invariant_sets_equal(
    x: InvariantSet, y: InvariantSet, tol: Tolerances = DEFAULT_TOL
) -> bool:
    """Multiset equality of two invariant sets within eps_match per component.

    Entries are compared as 4-vectors (a, b, c, wprod); equality holds iff a
    perfect matching pairs every entry of x with a distinct entry of y whose
    components all agree within eps_match.  Entries are sorted first, so the
    matching search only ever visits near ties.
    """
    if x.k != y.k or len(x.entries) != len(y.entries):
        return False
    eps = tol.eps_match
    xs = [e.key() for e in x.entries]
    ys = [e.key() for e in y.entries]
    n = len(xs)
    compat = [
        [j for j in range(n) if all(abs(xs[i][m] - ys[j][m]) <= eps for m in range(4))]
        for i in range(n)
    ]
    # maximum bipartite matching via augmenting paths; sorted inputs keep the
    # compatibility lists tiny, so this is effectively linear in practice
    match_of_y = [-1] * n

    def augment(i: int, seen: list) -> bool:
        for j in compat[i]:
            if seen[j]:
                continue
            seen[j] = True
            if match_of_y[j] == -1 or augment(match_of_y[j], seen):
                match_of_y[j] = i
                return True
        return False

    for i in range(n):
        if not augment(i, [False] * n):
            return False
    return True
