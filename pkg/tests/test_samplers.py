import math
from fractions import Fraction

import numpy as np
import pytest
from scipy import integrate, stats

from auctionlab import (
    MarginalSpec,
    NotMultiple,
    RngStream,
    draw_k_bidder,
    draw_simplex,
    draw_triple,
    draw_two_bidder,
    marginal_cdf,
    pair_density,
    spread_density,
    triple_density,
    triple_from_uniforms,
    validate_sequence,
)
from auctionlab.harness import KS_FACTOR, ks_distance

N_KS = 200_000
KS_THRESHOLD = KS_FACTOR / math.sqrt(N_KS)


def range_mass_quadrature(d):
    """Integral of the triple density over {max - min <= d}, reduced to the
    ordered region: the middle coordinate integrates to (hi - lo) because the
    density depends only on the range (6 orderings)."""

    def inner(lo):
        top = min(lo + d, 1 / 3)
        val, _ = integrate.quad(
            lambda hi: (hi - lo) * spread_density(2 * (hi - lo)), lo, top, limit=200
        )
        return val

    val, _ = integrate.quad(inner, 0.0, 1 / 3, limit=200)
    return 6 * val


class TestTripleDecompositionOracle:
    """Pre-verification of the sampler's range decomposition against
    quadrature of the density itself."""

    @pytest.mark.parametrize("d", [0.05, 0.1, 1 / 6, 0.25, 0.32])
    def test_range_cdf_is_27_d_cubed(self, d):
        assert range_mass_quadrature(d) == pytest.approx(27 * d**3, abs=1e-9)

    def test_density_constant_given_range(self):
        # conditional on the range, (min, middle) carry no density variation
        d = 0.21
        reference = triple_density(0.0, 0.0 + 0.07, d)
        for lo in (0.0, 0.04, 0.11):
            for mid_frac in (0.13, 0.55, 0.92):
                val = triple_density(lo, lo + mid_frac * d, lo + d)
                assert val == pytest.approx(reference)


class TestTripleFromUniforms:
    def test_unit_input_forces_full_range(self):
        x, y, z = triple_from_uniforms(1.0, 0.0, 0.5)
        assert max(x, y, z) - min(x, y, z) == pytest.approx(1 / 3)

    def test_one_eighth_forces_half_range(self):
        x, y, z = triple_from_uniforms(1 / 8, 0.3, 0.5)
        assert max(x, y, z) - min(x, y, z) == pytest.approx(1 / 6)

    def test_permutations_cover_all_orders(self):
        seen = {triple_from_uniforms(0.5, 0.5, 0.5, p) for p in range(6)}
        assert len(seen) == 6


class TestDrawTriple:
    def test_within_cube(self):
        tri = draw_triple(RngStream(5), size=1000)
        assert tri.shape == (1000, 3)
        assert np.all(tri >= 0.0) and np.all(tri <= 1 / 3)

    def test_scalar_draw(self):
        x, y, z = draw_triple(RngStream(5))
        assert 0 <= min(x, y, z) and max(x, y, z) <= 1 / 3

    def test_empirical_range_cdf(self):
        tri = draw_triple(RngStream(6), size=N_KS)
        rng_vals = tri.max(axis=1) - tri.min(axis=1)
        dist = ks_distance(rng_vals, lambda v: 27 * np.clip(v, 0, 1 / 3) ** 3)
        assert dist <= KS_THRESHOLD

    def test_difference_coordinate_uniform(self):
        # each (3/n)-scaled bid coordinate is built from x - y + 1/3, which
        # must be uniform on [0, 2/3]
        tri = draw_triple(RngStream(7), size=N_KS)
        t = tri[:, 0] - tri[:, 1] + 1 / 3
        dist = ks_distance(t, lambda v: np.clip(v / (2 / 3), 0, 1))
        assert dist <= KS_THRESHOLD

    def test_pair_histogram_matches_closed_density(self):
        # chi-squared on the 16 interior cells of a 6x6 grid over (x, y)
        edges = np.linspace(0.0, 1 / 3, 7)
        tri = draw_triple(RngStream(8), size=N_KS)
        counts, _, _ = np.histogram2d(tri[:, 0], tri[:, 1], bins=[edges, edges])
        interior = [(i, j) for i in range(1, 5) for j in range(1, 5)]
        expected, observed = [], []
        for i, j in interior:
            prob, _ = integrate.dblquad(
                pair_density, edges[i], edges[i + 1],
                lambda _x: edges[j], lambda _x: edges[j + 1],
                epsabs=1e-10,
            )
            expected.append(prob * N_KS)
            observed.append(counts[i, j])
        rest_expected = N_KS - sum(expected)
        rest_observed = N_KS - sum(observed)
        chi2 = sum(
            (o - e) ** 2 / e
            for o, e in zip(observed + [rest_observed], expected + [rest_expected])
        )
        assert chi2 < stats.chi2.ppf(0.999, len(interior))


class TestDrawTwoBidder:
    def test_even_structure(self):
        seq = draw_two_bidder(4, RngStream(9))
        b = [bid.base for bid in seq.bids]
        assert b[0] == b[1] and b[2] == b[3]
        assert b[0] + b[2] == Fraction(1, 2)
        assert seq.base_total == 1
        validate_sequence(seq)

    def test_odd_structure(self):
        seq = draw_two_bidder(5, RngStream(10))
        b = [bid.base for bid in seq.bids]
        assert b[0] + b[1] == Fraction(2, 5)
        assert sum(b[2:]) == Fraction(3, 5)
        assert seq.base_total == 1

    def test_three_objects_is_pure_triple(self):
        seq = draw_two_bidder(3, RngStream(11))
        assert seq.base_total == 1
        assert all(0 < bid.base < Fraction(2, 3) for bid in seq.bids)

    def test_rejects_tiny_n(self):
        with pytest.raises(ValueError):
            draw_two_bidder(1, RngStream(0))

    @pytest.mark.parametrize("n", [2, 4, 5, 3])
    def test_vectorized_rows_sum_to_one(self, n):
        draws = draw_two_bidder(n, RngStream(12), size=20_000)
        assert draws.shape == (20_000, n)
        assert np.max(np.abs(draws.sum(axis=1) - 1.0)) <= 1e-12
        assert np.all(draws > 0.0)

    @pytest.mark.parametrize("n", [4, 5, 3])
    def test_marginals_match_cdf(self, n):
        spec = MarginalSpec(n, 2)
        draws = draw_two_bidder(n, RngStream(13), size=N_KS)
        cdf = lambda v: np.array([marginal_cdf(spec, t) for t in np.atleast_1d(v)])
        for c in range(n):
            assert ks_distance(draws[:, c], cdf) <= KS_THRESHOLD


class TestDrawSimplex:
    def test_sum_and_positivity(self):
        draws = draw_simplex(3, RngStream(14), size=20_000)
        assert np.max(np.abs(draws.sum(axis=1) - 1.0)) <= 1e-12
        assert np.all(draws > 0.0)

    def test_two_coordinates_uniform(self):
        draws = draw_simplex(2, RngStream(15), size=N_KS)
        dist = ks_distance(draws[:, 0], lambda v: np.clip(v, 0, 1))
        assert dist <= KS_THRESHOLD

    def test_three_bidder_quantile(self):
        # P(b_1 <= 1/4) = sqrt(1/4) = 1/2 when n = k = 3
        draws = draw_simplex(3, RngStream(16), size=N_KS)
        p = np.mean(draws[:, 0] <= 0.25)
        stderr = math.sqrt(0.5 * 0.5 / N_KS)
        assert abs(p - 0.5) <= 3 * stderr

    def test_scalar(self):
        vals = draw_simplex(4, RngStream(17))
        assert vals.shape == (4,)
        assert math.fsum(vals) == pytest.approx(1.0, abs=1e-12)


class TestDrawKBidder:
    def test_not_multiple(self):
        with pytest.raises(NotMultiple):
            draw_k_bidder(5, 3, RngStream(0))

    def test_group_replication(self):
        seq = draw_k_bidder(6, 3, RngStream(18))
        b = [bid.base for bid in seq.bids]
        assert b[:3] == b[3:]
        assert seq.base_total == 1
        validate_sequence(seq)

    def test_n_equals_k_matches_simplex_sampler(self):
        seq = draw_k_bidder(3, 3, RngStream(19))
        direct = draw_simplex(3, RngStream(19))
        assert [float(b.base) for b in seq.bids] == pytest.approx(list(direct))

    def test_marginal_quantile(self):
        # P(b_1 <= 1/8) = sqrt((6/3) * (1/8)) = 1/2 at n=6, k=3
        draws = draw_k_bidder(6, 3, RngStream(20), size=N_KS)
        p = np.mean(draws[:, 0] <= 1 / 8)
        stderr = math.sqrt(0.5 * 0.5 / N_KS)
        assert abs(p - 0.5) <= 3 * stderr

    @pytest.mark.parametrize("n,k", [(6, 3), (4, 4)])
    def test_marginals_match_cdf(self, n, k):
        spec = MarginalSpec(n, k)
        draws = draw_k_bidder(n, k, RngStream(21), size=N_KS)
        cdf = lambda v: np.array([marginal_cdf(spec, t) for t in np.atleast_1d(v)])
        for c in range(n):
            assert ks_distance(draws[:, c], cdf) <= KS_THRESHOLD


class TestDeterminism:
    def test_identical_streams_identical_draws(self):
        a = draw_two_bidder(5, RngStream(42, 3), size=1000)
        b = draw_two_bidder(5, RngStream(42, 3), size=1000)
        assert np.array_equal(a, b)

    def test_scalar_replay(self):
        assert draw_two_bidder(5, RngStream(42, 3)) == draw_two_bidder(
            5, RngStream(42, 3)
        )

    def test_distinct_streams_differ(self):
        a = draw_two_bidder(5, RngStream(42, 0), size=10)
        b = draw_two_bidder(5, RngStream(42, 1), size=10)
        assert not np.array_equal(a, b)

    def test_sequential_draws_advance(self):
        rng = RngStream(1)
        assert draw_triple(rng) != draw_triple(rng)


class TestGroupScaling:
    def test_groups_are_the_scaled_simplex_draw(self):
        seq = draw_k_bidder(6, 3, RngStream(33))
        direct = draw_simplex(3, RngStream(33))
        group = [float(b.base) for b in seq.bids[:3]]
        assert group == pytest.approx([v / 2 for v in direct])


class TestSeedHandling:
    def test_negative_seed_is_deterministic(self):
        a = draw_two_bidder(4, RngStream(-3, 1), size=50)
        b = draw_two_bidder(4, RngStream(-3, 1), size=50)
        assert np.array_equal(a, b)
