"""Tests for line sets, difference multisets, and the half-circle bridge."""
import numpy as np
import pytest

from orthobeltway import (
    DegenerateParameters,
    ScaleError,
    difference_multiset,
    embed_half_circle,
    invariant_sets_equal,
    is_collision_free,
    orbit_equivalent,
    pair_orbit_triple,
    piccard_sets,
    second_moment_invariants,
    turnpike_equivalent,
)

P_INTS = [0, 1, 8, 11, 13, 17]
Q_INTS = [0, 1, 4, 10, 12, 17]


class TestDifferenceMultiset:
    def test_three_points(self):
        assert np.array_equal(difference_multiset([0, 1, 3]), [1.0, 2.0, 3.0])

    def test_single_point(self):
        assert difference_multiset([0.0]).size == 0

    def test_homometric_integer_pair(self):
        assert np.array_equal(difference_multiset(P_INTS), difference_multiset(Q_INTS))

    def test_rejects_duplicates(self):
        with pytest.raises(ValueError):
            difference_multiset([0.0, 0.0, 1.0])


class TestEmbedHalfCircle:
    def test_zero_maps_to_east(self):
        s = embed_half_circle([0.0, 8.5], 17.0)
        assert np.allclose(s.points[0], [1.0, 0.0])

    def test_scale_maps_to_west(self):
        s = embed_half_circle([0.0, 17.0], 17.0)
        assert np.allclose(s.points[1], [-1.0, 0.0], atol=1e-15)

    def test_inner_products_encode_distances(self, rng):
        for _ in range(25):
            vals = np.sort(rng.random(5)) * 10
            if np.min(np.diff(vals)) < 1e-3:
                continue
            scale = float(vals[-1] - vals[0]) + rng.random()
            s = embed_half_circle(vals, scale)
            for i in range(5):
                for j in range(i + 1, 5):
                    t = pair_orbit_triple(s.points[i], s.points[j])
                    expected = np.cos(np.pi * abs(vals[i] - vals[j]) / scale)
                    assert abs(t.c - expected) < 1e-12

    def test_default_scale_is_tight(self):
        s = embed_half_circle([3.0, 5.0, 9.0])
        # diameter 6: the extremes land antipodally
        assert abs(s.points[0] @ s.points[2] - (-1.0)) < 1e-12

    def test_scale_below_diameter_rejected(self):
        with pytest.raises(ScaleError):
            embed_half_circle([0.0, 10.0], 9.0)

    def test_weights_are_unit(self):
        s = embed_half_circle(P_INTS, 17.0)
        assert np.array_equal(s.weights, np.ones(6))


class TestPiccardSets:
    def test_reference_parameters(self):
        p, q = piccard_sets(1.0, 6.0)
        assert np.array_equal(p, [0, 1, 4, 10, 12, 17])
        assert np.array_equal(q, [0, 1, 8, 11, 13, 17])

    def test_difference_multisets_agree(self, rng):
        for _ in range(50):
            a = float(rng.uniform(0.2, 2.0))
            b = float(rng.uniform(3.0, 9.0))
            try:
                p, q = piccard_sets(a, b)
            except DegenerateParameters:
                continue
            assert np.allclose(difference_multiset(p), difference_multiset(q), atol=1e-9)
            assert not turnpike_equivalent(p, q)

    def test_degenerate_parameters(self):
        with pytest.raises(DegenerateParameters):
            piccard_sets(1.0, 1.0)


class TestTurnpikeEquivalent:
    def test_reflection_and_shift(self):
        assert turnpike_equivalent([0, 1, 3], [5, 7, 8])

    def test_homometric_pair_not_equivalent(self):
        assert not turnpike_equivalent(P_INTS, Q_INTS)

    def test_self(self):
        assert turnpike_equivalent([0.5, 2.5, 7.0], [0.5, 2.5, 7.0])

    def test_different_sizes(self):
        assert not turnpike_equivalent([0, 1], [0, 1, 2])


class TestTransferProperties:
    def test_equivalence_transfers_to_orbits(self, rng):
        for _ in range(100):
            vals = np.sort(rng.random(4)) * 8
            if np.min(np.diff(vals)) < 1e-2:
                continue
            shift = float(rng.uniform(-5, 5))
            other = -vals[::-1] + shift if rng.random() < 0.5 else vals + shift
            scale = float(max(vals.max() - vals.min(), other.max() - other.min())) + 1.0
            assert turnpike_equivalent(vals, other)
            assert orbit_equivalent(
                embed_half_circle(vals, scale), embed_half_circle(other, scale)
            )

    def test_homometric_transfer(self, rng):
        for _ in range(25):
            a = float(rng.uniform(0.2, 2.0))
            b = float(rng.uniform(3.0, 9.0))
            try:
                p, q = piccard_sets(a, b)
            except DegenerateParameters:
                continue
            scale = float(p.max() - p.min())
            ep, eq = embed_half_circle(p, scale), embed_half_circle(q, scale)
            if not is_collision_free(ep):
                continue
            assert invariant_sets_equal(
                second_moment_invariants(ep), second_moment_invariants(eq)
            )

    def test_collision_freeness_transfer(self, rng):
        for _ in range(100):
            vals = np.round(np.sort(rng.choice(25, size=5, replace=False)).astype(float), 0)
            scale = float(vals.max() - vals.min())
            if scale < 1:
                continue
            s = embed_half_circle(vals, scale)
            diffs = difference_multiset(vals)
            line_cf = bool(np.all(np.diff(diffs) > 1e-9))
            assert is_collision_free(s) == line_cf
