"""Expected wins of an informed adversary against the marginal strategies.

The closed forms are exact rational whenever the inputs are rational; the
copycat estimator is Monte Carlo with deterministic seeded streams.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence

import numpy as np

from .errors import DomainError, NotMultiple, OverBudget
from .marginals import MarginalSpec
from .montecarlo import WinTally, chunks, win_counts
from .samplers import RngStream, draw_k_bidder, draw_two_bidder

FLOAT_BUDGET_SLACK = 1e-12


def _all_rational(values) -> bool:
    return all(isinstance(v, Rational) for v in values)


def wins_vs_marginal(spec: MarginalSpec, amounts: Sequence):
    """Expected objects won by bidding ``amounts`` against k-1 independent
    draws from the optimal marginal strategy.

    Each object is won with probability min(1, (n/k) * a_i): the marginal
    CDF raised to the k-1 opponents collapses to a linear form, and ties
    carry zero probability under the continuous marginal (a bid exactly at
    the cap k/n wins outright).  At most n/k in total for any feasible
    split, with equality iff the amounts total 1 and none exceeds the cap.
    """
    n, k = spec.n, spec.k
    if len(amounts) != n:
        raise ValueError(f"expected {n} amounts, got {len(amounts)}")
    if _all_rational(amounts):
        vals = [Fraction(a) for a in amounts]
        if any(a < 0 for a in vals):
            raise DomainError("amounts must be nonnegative")
        if sum(vals) > 1:
            raise OverBudget(f"amounts total {sum(vals)} > 1")
        slope = Fraction(n, k)
        return sum(min(Fraction(1), slope * a) for a in vals)
    vals = [float(a) for a in amounts]
    if any(a < 0 for a in vals):
        raise DomainError("amounts must be nonnegative")
    if sum(vals) > 1.0 + FLOAT_BUDGET_SLACK:
        raise OverBudget(f"amounts total {sum(vals)} > 1")
    slope = n / k
    return sum(min(1.0, slope * a) for a in vals)


@dataclass(frozen=True)
class GroupAuction:
    """Objects partitioned into groups of (possibly fractional) sizes; the
    highest bid on a group takes all of it."""

    sizes: tuple
    k: int

    def __post_init__(self) -> None:
        if len(self.sizes) == 0:
            raise ValueError("need at least one group")
        if any(s <= 0 for s in self.sizes):
            raise ValueError("group sizes must be positive")
        if self.k < 2:
            raise ValueError("need at least two bidders")

    @property
    def total(self):
        return sum(self.sizes)


def group_wins(auction: GroupAuction, amounts: Sequence):
    """Expected objects won by bidding size_i * a_i on group i against
    disadvantaged bidders whose per-group factors follow the marginal CDF.

    Each group i is won with probability (n/k) * a_i, yielding size_i
    objects; the feasible maximum over all splits is exactly n/k.
    """
    if len(amounts) != len(auction.sizes):
        raise ValueError(
            f"expected {len(auction.sizes)} amounts, got {len(amounts)}"
        )
    exact = _all_rational(amounts) and _all_rational(auction.sizes)
    if exact:
        sizes = [Fraction(s) for s in auction.sizes]
        vals = [Fraction(a) for a in amounts]
        n = sum(sizes)
        cap = Fraction(auction.k) / n
        one = Fraction(1)
    else:
        sizes = [float(s) for s in auction.sizes]
        vals = [float(a) for a in amounts]
        n = sum(sizes)
        cap = auction.k / n + FLOAT_BUDGET_SLACK
        one = 1.0 + FLOAT_BUDGET_SLACK
    for a in vals:
        if a < 0 or a > cap:
            raise DomainError(f"group amount {a} outside [0, k/n]")
    spend = sum(s * a for s, a in zip(sizes, vals))
    if spend > one:
        raise OverBudget(f"group bids total {spend} > 1")
    slope = n / Fraction(auction.k) if exact else n / auction.k
    return sum(s * slope * a for s, a in zip(sizes, vals))


@dataclass(frozen=True)
class CopycatEstimate:
    """Monte Carlo mean and standard error of the copycat adversary's wins."""

    mean: float
    stderr: float
    expected: Fraction
    samples: int

    @property
    def within(self) -> float:
        """Multiples of stderr separating the estimate from its expectation.

        Zero when the gap itself is zero; the paired even-n construction has
        genuinely zero variance, so stderr can legitimately vanish.
        """
        gap = abs(self.mean - float(self.expected))
        if gap == 0.0:
            return 0.0
        return gap / self.stderr if self.stderr > 0 else float("inf")


def copycat_value(spec: MarginalSpec, samples: int = 1_000_000, seed: int = 0) -> CopycatEstimate:
    """Estimate the adversary's wins when every bidder, adversary included,
    draws from the optimal strategy for (n, k).

    By symmetry of the zero-sum auction the expectation is exactly n/k.
    Requires k = 2 (any n) or k | n, matching the available samplers.
    """
    n, k = spec.n, spec.k
    if k != 2 and n % k:
        raise NotMultiple(f"no sampler for k={k}, n={n}: k must divide n")
    tally = WinTally(k)
    for index, length in chunks(samples):
        rng = RngStream(seed, index)
        if k == 2:
            stack = [draw_two_bidder(n, rng, size=length) for _ in range(k)]
        else:
            stack = [draw_k_bidder(n, k, rng, size=length) for _ in range(k)]
        wins = win_counts(np.stack(stack), None, rng.generator)
        tally.add(wins)
    return CopycatEstimate(
        mean=tally.mean(0),
        stderr=tally.stderr(0),
        expected=Fraction(n, k),
        samples=samples,
    )
