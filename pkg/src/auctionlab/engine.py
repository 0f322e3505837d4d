"""Exact one-shot auction resolution with symbolic-infinitesimal bids.

Bid amounts are rationals plus an integer multiple of a symbolic
infinitesimal ``eps`` (a positive amount smaller than any real gap), so
tie-breaking shifts can be expressed without spending real budget and
without floating-point corruption of ties.  Floating-point amounts are
embedded by their exact binary value, never rounded.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Sequence, Union

from .errors import LengthMismatch, OverBudget, ZeroBid

AmountLike = Union[int, float, str, Fraction]


def as_fraction(value: AmountLike) -> Fraction:
    """Exact embedding of an amount: floats map to their binary value,
    strings like "0.6" or "3/5" to their decimal-exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float, str, Rational)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact amount")


@dataclass(frozen=True, order=True)
class Bid:
    """An amount plus an integer coefficient on the symbolic infinitesimal.

    Ordering is lexicographic on (base, eps): the infinitesimal breaks ties
    between equal base amounts but can never overcome a base difference.
    A bid is positive when base > 0, or base = 0 with eps > 0.
    """

    base: Fraction
    eps: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", as_fraction(self.base))
        object.__setattr__(self, "eps", operator.index(self.eps))
        if self.base < 0:
            raise ValueError("bid base amount must be nonnegative")

    @property
    def is_positive(self) -> bool:
        return self.base > 0 or (self.base == 0 and self.eps > 0)

    def __str__(self) -> str:
        if self.eps == 0:
            return str(self.base)
        sign = "+" if self.eps > 0 else "-"
        mag = abs(self.eps)
        eps_part = "eps" if mag == 1 else f"{mag}*eps"
        return f"{self.base}{sign}{eps_part}"


def _as_bid(item) -> Bid:
    if isinstance(item, Bid):
        return item
    if isinstance(item, tuple) and len(item) == 2:
        return Bid(as_fraction(item[0]), item[1])
    return Bid(as_fraction(item))


@dataclass(frozen=True)
class BidSequence:
    """An ordered list of bids for the n objects, one unit budget in total."""

    bids: tuple[Bid, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "bids", tuple(_as_bid(b) for b in self.bids))

    @classmethod
    def of(cls, *amounts) -> "BidSequence":
        return cls(tuple(amounts))

    @property
    def n(self) -> int:
        return len(self.bids)

    @property
    def base_total(self) -> Fraction:
        return sum((b.base for b in self.bids), Fraction(0))

    @property
    def eps_total(self) -> int:
        return sum(b.eps for b in self.bids)

    @property
    def is_feasible(self) -> bool:
        """Within budget for every real instantiation of the infinitesimal."""
        total = self.base_total
        return total < 1 or (total == 1 and self.eps_total <= 0)


def compare_bids(a: Bid, b: Bid) -> int:
    """Three-way lexicographic comparison on (base, eps): -1, 0 or +1."""
    if (a.base, a.eps) < (b.base, b.eps):
        return -1
    if (a.base, a.eps) > (b.base, b.eps):
        return 1
    return 0


def validate_sequence(seq: BidSequence) -> None:
    """Raise ZeroBid or OverBudget on the first violated rule."""
    for i, bid in enumerate(seq.bids):
        if not bid.is_positive:
            raise ZeroBid(f"bid {i} ({bid}) is not strictly positive")
    if not seq.is_feasible:
        raise OverBudget(
            f"bids total {seq.base_total} with net infinitesimal {seq.eps_total:+d}"
        )


@dataclass(frozen=True)
class Outcome:
    """Per-bidder expected object counts; components always total n exactly."""

    expected_wins: tuple[Fraction, ...]

    @property
    def total(self) -> Fraction:
        return sum(self.expected_wins, Fraction(0))


def resolve(profiles: Sequence[BidSequence]) -> Outcome:
    """Score one sealed-bid auction of n objects among k bidders.

    Each object goes to its highest bid; m bidders tied at the top each
    collect 1/m.  Exact rational throughout.
    """
    if not profiles:
        raise ValueError("at least one bid sequence is required")
    n = profiles[0].n
    for p in profiles:
        if p.n != n:
            raise LengthMismatch(f"expected {n} bids per sequence, got {p.n}")
    wins = [Fraction(0)] * len(profiles)
    for i in range(n):
        bids = [p.bids[i] for p in profiles]
        top = max(bids)
        winners = [j for j, bid in enumerate(bids) if bid == top]
        share = Fraction(1, len(winners))
        for j in winners:
            wins[j] += share
    return Outcome(tuple(wins))
