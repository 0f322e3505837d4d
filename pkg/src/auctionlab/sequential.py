"""Round-by-round auctions with budget depletion.

Objects are sold one per round to the highest sealed bid; the winner pays
his bid from his remaining budget.  With deterministic strategies the run
is resolved exactly by evolving a distribution over states, branching on
ties; a sampled mode runs one seeded trajectory for randomized strategies.
A bidder may pass (distinct from the forbidden zero bid); an object every
bidder passes on goes unsold.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .engine import as_fraction
from .errors import NotMultiple, OverBudget, ZeroBid


@dataclass(frozen=True)
class RoundResult:
    """Public record of one round: who won and what he paid (None = unsold)."""

    winner: Optional[int]
    price: Optional[Fraction]


@dataclass(frozen=True)
class RoundView:
    """Everything a strategy may look at when asked for a bid: the round
    number, own identity and budget, all public budgets and win counts, and
    the full history of winners and prices."""

    round_index: int
    n: int
    k: int
    bidder: int
    budgets: tuple[Fraction, ...]
    wins: tuple[int, ...]
    history: tuple[RoundResult, ...]

    @property
    def budget(self) -> Fraction:
        return self.budgets[self.bidder]


Strategy = Callable[[RoundView], Optional[Fraction]]


def steady_strategy(n: int, k: int) -> Strategy:
    """Bid k/n every round while the budget allows, then pass.

    For k | n this guarantees at least n/k objects against any opponents.
    """
    if n % k:
        raise NotMultiple(f"{k} bidders do not divide {n} objects")
    amount = Fraction(k, n)

    def strategy(view: RoundView) -> Optional[Fraction]:
        return amount if view.budget >= amount else None

    return strategy


def scripted_strategy(amounts: Sequence) -> Strategy:
    """Bid a fixed per-round amount, passing when the script runs out, says
    0/None, or the remaining budget cannot cover the amount."""
    script = [None if a in (None, 0) else as_fraction(a) for a in amounts]

    def strategy(view: RoundView) -> Optional[Fraction]:
        i = view.round_index - 1
        if i >= len(script):
            return None
        amount = script[i]
        if amount is None or amount <= 0 or amount > view.budget:
            return None
        return amount

    return strategy


def pass_strategy(view: RoundView) -> Optional[Fraction]:
    """Never bids."""
    return None


def _collect_bids(
    strategies: Sequence[Strategy],
    round_index: int,
    n: int,
    budgets: tuple[Fraction, ...],
    wins: tuple[int, ...],
    history: tuple[RoundResult, ...],
) -> list[Optional[Fraction]]:
    k = len(strategies)
    bids: list[Optional[Fraction]] = []
    for b, strategy in enumerate(strategies):
        view = RoundView(round_index, n, k, b, budgets, wins, history)
        amount = strategy(view)
        if amount is not None:
            amount = as_fraction(amount)
            if amount <= 0:
                raise ZeroBid(f"bidder {b} bid {amount}; strategies must pass instead")
            if amount > budgets[b]:
                raise OverBudget(f"bidder {b} bid {amount} over budget {budgets[b]}")
        bids.append(amount)
    return bids


def run_sequential(
    strategies: Sequence[Strategy],
    n: int,
    k: int,
    seed=0,
    mode: str = "exact",
):
    """Auction n objects sequentially among k strategies.

    mode="exact" (deterministic strategies only) returns per-bidder expected
    wins as Fractions, with ties branching the state distribution.
    mode="sample" returns one trajectory's integer win counts, ties resolved
    by a generator seeded with ``seed`` (any numpy seed material).
    """
    if len(strategies) != k:
        raise ValueError(f"expected {k} strategies, got {len(strategies)}")
    if mode == "sample":
        return _run_sampled(strategies, n, k, seed)
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")

    start = (
        (Fraction(1),) * k,
        (0,) * k,
        (),
    )
    dist: dict[tuple, Fraction] = {start: Fraction(1)}
    for round_index in range(1, n + 1):
        nxt: dict[tuple, Fraction] = {}
        for (budgets, wins, history), prob in dist.items():
            bids = _collect_bids(strategies, round_index, n, budgets, wins, history)
            live = [(b, a) for b, a in enumerate(bids) if a is not None]
            if not live:
                key = (budgets, wins, history + (RoundResult(None, None),))
                nxt[key] = nxt.get(key, Fraction(0)) + prob
                continue
            top = max(a for _, a in live)
            winners = [b for b, a in live if a == top]
            share = prob / len(winners)
            for w in winners:
                new_budgets = tuple(
                    v - top if b == w else v for b, v in enumerate(budgets)
                )
                new_wins = tuple(c + 1 if b == w else c for b, c in enumerate(wins))
                key = (new_budgets, new_wins, history + (RoundResult(w, top),))
                nxt[key] = nxt.get(key, Fraction(0)) + share
        dist = nxt

    expected = [Fraction(0)] * k
    for (_, wins, _), prob in dist.items():
        for b in range(k):
            expected[b] += prob * wins[b]
    return tuple(expected)


def _run_sampled(strategies, n: int, k: int, seed) -> tuple[int, ...]:
    gen = np.random.default_rng(seed)
    budgets = (Fraction(1),) * k
    wins = (0,) * k
    history: tuple[RoundResult, ...] = ()
    for round_index in range(1, n + 1):
        bids = _collect_bids(strategies, round_index, n, budgets, wins, history)
        live = [(b, a) for b, a in enumerate(bids) if a is not None]
        if not live:
            history += (RoundResult(None, None),)
            continue
        top = max(a for _, a in live)
        winners = [b for b, a in live if a == top]
        w = winners[int(gen.integers(len(winners)))]
        budgets = tuple(v - top if b == w else v for b, v in enumerate(budgets))
        wins = tuple(c + 1 if b == w else c for b, c in enumerate(wins))
        history += (RoundResult(w, top),)
    return wins
