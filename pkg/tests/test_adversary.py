import math
import random
from fractions import Fraction

import numpy as np
import pytest

from auctionlab import (
    DomainError,
    GroupAuction,
    MarginalSpec,
    NotMultiple,
    OverBudget,
    RngStream,
    copycat_value,
    draw_two_bidder,
    group_wins,
    wins_vs_marginal,
)


class TestWinsVsMarginal:
    def test_even_split_two_bidder(self):
        spec = MarginalSpec(4, 2)
        value = wins_vs_marginal(spec, [Fraction(1, 4)] * 4)
        assert value == Fraction(2)

    def test_two_capped_wins(self):
        spec = MarginalSpec(4, 2)
        value = wins_vs_marginal(spec, [Fraction(1, 2), Fraction(1, 2), 0, 0])
        assert value == Fraction(2)

    def test_three_bidder_even_split(self):
        spec = MarginalSpec(3, 3)
        assert wins_vs_marginal(spec, [Fraction(1, 3)] * 3) == Fraction(1)

    def test_over_budget(self):
        with pytest.raises(OverBudget):
            wins_vs_marginal(MarginalSpec(4, 2), [Fraction(1, 2)] * 4)

    def test_negative_amount(self):
        with pytest.raises(DomainError):
            wins_vs_marginal(MarginalSpec(4, 2), [Fraction(-1, 4), 0, 0, 0])

    def test_float_inputs_give_float(self):
        value = wins_vs_marginal(MarginalSpec(4, 2), [0.25, 0.25, 0.25, 0.25])
        assert isinstance(value, float) and value == pytest.approx(2.0)

    def test_upper_bound_and_equality_condition(self):
        rng = random.Random(3)
        for _ in range(200):
            k = rng.randint(2, 5)
            n = k * rng.randint(1, 4)
            spec = MarginalSpec(n, k)
            weights = [rng.randint(0, 8) for _ in range(n)]
            scale = max(sum(weights), 1) * rng.choice((1, 1, 2))
            amounts = [Fraction(w, scale) for w in weights]
            value = wins_vs_marginal(spec, amounts)
            assert value <= Fraction(n, k)
            saturated = sum(amounts) == 1 and all(a <= spec.cap for a in amounts)
            assert (value == Fraction(n, k)) == saturated

    def test_closed_form_matches_sampler_monte_carlo(self):
        # links the linear closed form to the actual two-bidder sampler
        spec = MarginalSpec(5, 2)
        amounts = [Fraction(3, 10), Fraction(1, 5), Fraction(1, 5), Fraction(1, 10), Fraction(1, 10)]
        exact = wins_vs_marginal(spec, amounts)
        samples = 200_000
        draws = draw_two_bidder(5, RngStream(23), size=samples)
        a = np.array([float(x) for x in amounts])
        wins = (a > draws).sum(axis=1)
        mean = wins.mean()
        stderr = wins.std(ddof=1) / math.sqrt(samples)
        assert abs(mean - float(exact)) <= 3 * stderr


class TestGroupWins:
    def test_two_groups(self):
        auction = GroupAuction((1, 2), 2)
        value = group_wins(auction, [Fraction(1, 3), Fraction(1, 3)])
        assert value == Fraction(3, 2)

    def test_all_zero(self):
        assert group_wins(GroupAuction((1, 2), 2), [0, 0]) == 0

    def test_three_unit_groups(self):
        assert group_wins(GroupAuction((1, 1, 1), 3), [Fraction(1, 3)] * 3) == 1

    def test_cap_enforced(self):
        with pytest.raises(DomainError):
            group_wins(GroupAuction((1, 2), 2), [Fraction(3, 4), 0])

    def test_over_budget(self):
        with pytest.raises(OverBudget):
            group_wins(GroupAuction((2, 2), 2), [Fraction(1, 2), Fraction(1, 2)])

    def test_feasible_maximum_is_n_over_k(self):
        rng = random.Random(5)
        for _ in range(100):
            m = rng.randint(1, 4)
            k = rng.randint(2, 4)
            sizes = tuple(Fraction(rng.randint(1, 8), rng.randint(1, 3)) for _ in range(m))
            auction = GroupAuction(sizes, k)
            n = auction.total
            cap = Fraction(k) / n
            # random feasible point: scale a random direction to the budget
            direction = [Fraction(rng.randint(0, 6)) for _ in range(m)]
            spend = sum(s * d for s, d in zip(sizes, direction))
            if spend == 0:
                continue
            lam = min(Fraction(1) / spend, min(cap / d for d in direction if d > 0))
            amounts = [d * lam for d in direction]
            assert group_wins(auction, amounts) <= n / Fraction(k)
            # spending the whole budget below the cap attains the maximum
            assert group_wins(auction, [Fraction(1) / n] * m) == n / Fraction(k)


class TestCopycat:
    def test_not_multiple(self):
        with pytest.raises(NotMultiple):
            copycat_value(MarginalSpec(5, 3), samples=100)

    def test_two_bidder_even(self):
        r = copycat_value(MarginalSpec(4, 2), samples=100_000, seed=1)
        assert r.expected == Fraction(2)
        assert r.within <= 3.0

    def test_two_bidder_odd(self):
        r = copycat_value(MarginalSpec(5, 2), samples=100_000, seed=2)
        assert r.expected == Fraction(5, 2)
        assert r.within <= 3.0

    def test_three_bidder(self):
        r = copycat_value(MarginalSpec(3, 3), samples=100_000, seed=3)
        assert r.expected == Fraction(1)
        assert r.within <= 3.0

    def test_deterministic(self):
        a = copycat_value(MarginalSpec(6, 3), samples=50_000, seed=9)
        b = copycat_value(MarginalSpec(6, 3), samples=50_000, seed=9)
        assert (a.mean, a.stderr) == (b.mean, b.stderr)
