"""Position-randomized bidding: a deterministic initial bid list followed by
a random permutation assigning bids to objects.

Everything in this module is exact rational arithmetic; no floats enter any
game value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .engine import Bid, BidSequence
from .errors import Infeasible, LengthMismatch, NotDoublyStochastic


@dataclass(frozen=True)
class InitialBids:
    """The rank-power ladder: bid i is i**(k-1) / weight_total, where
    weight_total sums i**(k-1) over i = 1..n.  Strictly increasing, strictly
    positive, and totalling exactly 1."""

    n: int
    k: int
    weight_total: int
    bids: tuple[Fraction, ...]

    def as_sequence(self) -> BidSequence:
        return BidSequence(tuple(Bid(b) for b in self.bids))


def initial_bids(n: int, k: int) -> InitialBids:
    """Optimal initial sequence within the position-randomized class."""
    if k < 2 or n < k:
        raise ValueError("need n >= k >= 2")
    weights = [i ** (k - 1) for i in range(1, n + 1)]
    total = sum(weights)
    return InitialBids(
        n=n,
        k=k,
        weight_total=total,
        bids=tuple(Fraction(w, total) for w in weights),
    )


class PermutationMarginals:
    """Doubly stochastic placement probabilities: entry (q, r) is the chance
    that initial bid q lands on object r.  Expected wins depend on the
    permutation distribution only through these marginals, because objects
    are scored independently and bidders permute independently."""

    def __init__(self, rows: Iterable[Iterable]):
        mat = tuple(tuple(Fraction(v) for v in row) for row in rows)
        n = len(mat)
        if n == 0 or any(len(row) != n for row in mat):
            raise LengthMismatch("placement matrix must be square")
        for row in mat:
            if any(v < 0 for v in row):
                raise NotDoublyStochastic("entries must be nonnegative")
            if sum(row) != 1:
                raise NotDoublyStochastic(f"row sums to {sum(row)}, not 1")
        for c in range(n):
            col = sum(row[c] for row in mat)
            if col != 1:
                raise NotDoublyStochastic(f"column {c} sums to {col}, not 1")
        self.rows = mat
        self.n = n

    def __getitem__(self, qr) -> Fraction:
        q, r = qr
        return self.rows[q][r]

    def __eq__(self, other) -> bool:
        return isinstance(other, PermutationMarginals) and self.rows == other.rows

    def column(self, r: int) -> tuple[Fraction, ...]:
        return tuple(row[r] for row in self.rows)

    @classmethod
    def identity(cls, n: int) -> "PermutationMarginals":
        return cls(
            [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        )

    @classmethod
    def uniform(cls, n: int) -> "PermutationMarginals":
        return cls([[Fraction(1, n)] * n for _ in range(n)])


def rank_win_expectation(n: int, k: int, p: int) -> Fraction:
    """Expected objects won by one bid placed at ladder rank p, when each of
    the k-1 disadvantaged bidders places a uniformly random ladder rank on
    the same object.

    Summation over the number of opponents tying at rank p:

        sum_{i=0}^{k-1} 1/(i+1) * C(k-1, i) * (1/n)**i * ((p-1)/n)**(k-1-i)

    which telescopes to (p**k - (p-1)**k) / (k * n**(k-1)).
    """
    if not 1 <= p <= n:
        raise ValueError(f"rank {p} outside 1..{n}")
    return sum(
        (
            Fraction(comb(k - 1, i), i + 1)
            * Fraction(1, n) ** i
            * Fraction(p - 1, n) ** (k - 1 - i)
            for i in range(k)
        ),
        Fraction(0),
    )


def _tie_aware_win(
    bid: Bid, bids: Sequence[Bid], col: Sequence[Fraction], opponents: int
) -> Fraction:
    """Chance that ``bid`` takes an object where each of ``opponents``
    independent bidders places one of ``bids`` with probabilities ``col``,
    splitting ties equally."""
    beat = sum((c for b, c in zip(bids, col) if b < bid), Fraction(0))
    tie = sum((c for b, c in zip(bids, col) if b == bid), Fraction(0))
    return sum(
        (
            Fraction(comb(opponents, i), i + 1) * tie**i * beat ** (opponents - i)
            for i in range(opponents + 1)
        ),
        Fraction(0),
    )


def expected_wins_perm(
    k: int,
    a_init: BidSequence,
    b_init: BidSequence,
    q_marginals: PermutationMarginals,
    p_marginals: PermutationMarginals,
) -> Fraction:
    """Adversary's exact expected wins when he places his initial bids with
    marginals Q while each of the k-1 disadvantaged bidders independently
    places the common ``b_init`` with marginals P.

    Q = identity means no permutation; uniform marginals recover the fully
    random placement on either side.
    """
    n = a_init.n
    if b_init.n != n or q_marginals.n != n or p_marginals.n != n:
        raise LengthMismatch("bid sequences and matrices must share size n")
    total = Fraction(0)
    for r in range(n):
        col = p_marginals.column(r)
        for q in range(n):
            weight = q_marginals[q, r]
            if weight == 0:
                continue
            total += weight * _tie_aware_win(a_init.bids[q], b_init.bids, col, k - 1)
    return total


@dataclass(frozen=True)
class BestResponse:
    """Exact adversary optimum and a bid multiset attaining it."""

    n: int
    k: int
    value: Fraction
    witness: tuple[Bid, ...]

    def witness_sequence(self) -> BidSequence:
        return BidSequence(self.witness)


def best_response(n: int, k: int) -> BestResponse:
    """Exact best response to the ladder under uniform permutation, by
    dynamic programming over integer budget units.

    The adversary's candidate bids are the ladder values shifted up by one
    infinitesimal, plus the bare infinitesimal.  A bid one tick above rank i
    costs i**(k-1) units of 1/weight_total and wins i**(k-1) units of
    1/n**(k-1); the bare infinitesimal costs and wins nothing.  Every
    candidate carries +eps, so the strict budget admits at most
    weight_total - 1 cost units across the n picks.  The optimum equals
    (weight_total - 1) / n**(k-1).
    """
    ladder = initial_bids(n, k)
    cap = ladder.weight_total - 1
    unit_of = {i: i ** (k - 1) for i in range(2, n + 1)}
    mask = (1 << (cap + 1)) - 1

    # reach[c] holds a bitmask: bit u set iff u units are spendable with
    # exactly c picks (the bare-infinitesimal pick keeps it monotone in c).
    reach = [1]
    for _ in range(n):
        prev = reach[-1]
        nxt = prev
        for u in unit_of.values():
            nxt |= (prev << u) & mask
        reach.append(nxt)

    best = reach[n].bit_length() - 1

    witness: list[Bid] = []
    remaining = best
    for picks_left in range(n, 0, -1):
        chosen = None
        for i in range(n, 1, -1):
            u = unit_of[i]
            if remaining >= u and (reach[picks_left - 1] >> (remaining - u)) & 1:
                chosen = i
                break
        if chosen is None:
            witness.append(Bid(Fraction(0), +1))
        else:
            witness.append(Bid(ladder.bids[chosen - 1], +1))
            remaining -= unit_of[chosen]
    assert remaining == 0

    return BestResponse(
        n=n,
        k=k,
        value=Fraction(best, n ** (k - 1)),
        witness=tuple(sorted(witness)),
    )


def undercut_sequence(b_sorted: BidSequence) -> BidSequence:
    """Shift the lowest bid down by n-1 infinitesimals and every other bid
    up by one: beats each higher bid at zero extra budget while keeping the
    sequence exactly feasible (net infinitesimal zero).
    """
    bids = b_sorted.bids
    n = len(bids)
    if n < 2:
        raise ValueError("need at least two bids")
    if any(bids[i] > bids[i + 1] for i in range(n - 1)):
        raise ValueError("bids must be sorted ascending")
    if b_sorted.base_total != 1:
        raise ValueError(f"bids must total exactly 1, got {b_sorted.base_total}")
    first = bids[0]
    if first.base == 0:
        raise Infeasible("cannot undercut a zero-amount lowest bid")
    out = [Bid(first.base, first.eps - (n - 1))]
    out += [Bid(b.base, b.eps + 1) for b in bids[1:]]
    return BidSequence(tuple(out))
