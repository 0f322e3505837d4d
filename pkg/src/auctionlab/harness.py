"""Scenario orchestration: Monte Carlo estimates, exact baselines and
empirical-distribution statistics.

Bidder 0 is the adversary in every mode; bidders 1..k-1 are the
disadvantaged bidders playing the library strategy for the mode.  Reports
are deterministic: identical scenarios reproduce identical estimates and
statistics (only the elapsed-time metadata varies).
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from ._version import VERSION
from .adversary import GroupAuction, group_wins, wins_vs_marginal
from .engine import Bid, BidSequence, as_fraction
from .errors import EmptySample, ScenarioError
from .marginals import MarginalSpec, marginal_cdf
from .montecarlo import WinTally, chunks, win_counts
from .position_randomized import (
    PermutationMarginals,
    best_response,
    expected_wins_perm,
    initial_bids,
    undercut_sequence,
)
from .samplers import RngStream, draw_k_bidder, draw_two_bidder
from .sequential import run_sequential, scripted_strategy, steady_strategy

MODES = ("two-bidder", "k-bidder", "position-randomized", "sequential", "group")

# one-sided 99.9% Kolmogorov-Smirnov critical value: KS_FACTOR / sqrt(N)
KS_FACTOR = 1.95

SEQUENTIAL_TRIAL_CAP = 10_000


@dataclass(frozen=True)
class AdversaryPlan:
    """How bidder 0 plays: a library strategy by name, or fixed amounts.

    kinds: "copycat" (same sampler as the disadvantaged bidders), "fixed"
    (given per-object or per-group amounts; per-round script in sequential
    mode), "dp-optimal" / "undercut" (position-randomized mode), "steady"
    (sequential mode).
    """

    kind: str
    bids: Optional[tuple[Fraction, ...]] = None

    @classmethod
    def fixed(cls, amounts) -> "AdversaryPlan":
        return cls("fixed", tuple(as_fraction(a) for a in amounts))


@dataclass(frozen=True)
class Scenario:
    """One verification run: a mode, auction size, adversary and sampling plan."""

    mode: str
    n: int
    k: int = 2
    adversary: AdversaryPlan = AdversaryPlan("copycat")
    samples: int = 1_000_000
    seed: int = 0
    group_sizes: Optional[tuple] = None
    ks_stats: bool = False

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ScenarioError(f"unknown mode {self.mode!r}; choose from {MODES}")
        if self.k < 2:
            raise ScenarioError("need at least two bidders")
        if self.samples < 1:
            raise ScenarioError("need at least one sample")
        kind = self.adversary.kind
        if self.mode == "two-bidder":
            if self.k != 2:
                raise ScenarioError("two-bidder mode requires k = 2")
            if self.n < 2:
                raise ScenarioError("two-bidder mode requires n >= 2")
            self._check_kind(kind, ("copycat", "fixed"))
            if kind == "fixed":
                self._check_fixed_amounts(self.n)
        elif self.mode == "k-bidder":
            if self.n % self.k:
                raise ScenarioError("k-bidder mode requires k | n")
            self._check_kind(kind, ("copycat", "fixed"))
            if kind == "fixed":
                self._check_fixed_amounts(self.n)
        elif self.mode == "position-randomized":
            if self.n < self.k:
                raise ScenarioError("position-randomized mode requires n >= k")
            self._check_kind(kind, ("dp-optimal", "undercut", "fixed"))
            if kind == "fixed":
                self._check_fixed_amounts(self.n)
        elif self.mode == "sequential":
            if self.n % self.k:
                raise ScenarioError("sequential mode requires k | n (steady bidders)")
            self._check_kind(kind, ("fixed", "steady"))
            if kind == "fixed" and self.adversary.bids is None:
                raise ScenarioError("fixed adversary needs a bid script")
        elif self.mode == "group":
            if not self.group_sizes:
                raise ScenarioError("group mode requires group_sizes")
            if any(s <= 0 for s in self.group_sizes):
                raise ScenarioError("group sizes must be positive")
            self._check_kind(kind, ("fixed",))
            if self.adversary.bids is None or len(self.adversary.bids) != len(
                self.group_sizes
            ):
                raise ScenarioError(
                    f"fixed adversary needs {len(self.group_sizes)} group amounts"
                )

    def _check_kind(self, kind: str, allowed: tuple[str, ...]) -> None:
        if kind not in allowed:
            raise ScenarioError(
                f"adversary kind {kind!r} not supported in {self.mode} mode"
            )

    def _check_fixed_amounts(self, n: int) -> None:
        bids = self.adversary.bids
        if bids is None or len(bids) != n:
            raise ScenarioError(f"fixed adversary needs {n} amounts")
        if any(b < 0 for b in bids):
            raise ScenarioError("fixed adversary amounts must be nonnegative")
        if sum(bids) > 1:
            raise ScenarioError("fixed adversary amounts exceed the unit budget")

    def to_json_dict(self) -> dict:
        return {
            "mode": self.mode,
            "n": self.n,
            "k": self.k,
            "adversary": {
                "kind": self.adversary.kind,
                "bids": None
                if self.adversary.bids is None
                else [fraction_json(as_fraction(b)) for b in self.adversary.bids],
            },
            "samples": self.samples,
            "seed": self.seed,
            "group_sizes": None
            if self.group_sizes is None
            else [fraction_json(as_fraction(s)) for s in self.group_sizes],
        }


def fraction_json(value: Optional[Fraction]) -> Optional[dict]:
    """Lossless rational serialization: numerator/denominator plus decimal."""
    if value is None:
        return None
    return {
        "num": value.numerator,
        "den": value.denominator,
        "decimal": format(float(value), ".17g"),
    }


@dataclass(frozen=True)
class BidderEstimate:
    bidder: int
    mean: float
    stderr: float


@dataclass
class Report:
    """Estimates, exact values and statistics from one scenario run."""

    scenario: Scenario
    estimates: tuple[BidderEstimate, ...]
    exact: tuple[Optional[Fraction], ...]
    statistics: dict
    meta: dict

    def to_json_dict(self) -> dict:
        return {
            "scenario": self.scenario.to_json_dict(),
            "estimates": [
                {"bidder": e.bidder, "mean": e.mean, "stderr": e.stderr}
                for e in self.estimates
            ],
            "exact": [fraction_json(f) for f in self.exact],
            "statistics": self.statistics,
            "meta": self.meta,
        }

    def to_csv_rows(self) -> list[list]:
        rows = [["bidder", "mean", "stderr", "exact_num", "exact_den"]]
        means = {e.bidder: e for e in self.estimates}
        for b in range(max(len(self.exact), len(self.estimates))):
            est = means.get(b)
            exact = self.exact[b] if b < len(self.exact) else None
            rows.append(
                [
                    b,
                    "" if est is None else repr(est.mean),
                    "" if est is None else repr(est.stderr),
                    "" if exact is None else exact.numerator,
                    "" if exact is None else exact.denominator,
                ]
            )
        return rows


def ks_distance(sample, cdf: Callable) -> float:
    """Sup-norm distance between a sample's empirical CDF and ``cdf``.

    Both functions are compared at the sample points' right limits, so a
    theoretical CDF that steps exactly where the sample does scores 0; for
    a continuous CDF this differs from the two-sided supremum by at most
    1/N, far below the critical values used here.
    """
    values = np.sort(np.asarray(sample, dtype=float))
    size = values.size
    if size == 0:
        raise EmptySample("cannot compute a KS distance on an empty sample")
    try:
        theory = np.asarray(cdf(values), dtype=float)
        if theory.shape != values.shape:
            raise TypeError
    except (TypeError, ValueError):
        theory = np.array([cdf(v) for v in values], dtype=float)
    empirical = np.arange(1, size + 1) / size
    return float(np.max(np.abs(theory - empirical)))


def estimate(scenario: Scenario) -> Report:
    """Run a scenario: Monte Carlo estimates plus exact values where a
    closed form exists."""
    scenario.validate()
    start = time.perf_counter()
    if scenario.mode in ("two-bidder", "k-bidder"):
        estimates, exact, statistics, used = _marginal_mode(scenario)
    elif scenario.mode == "position-randomized":
        estimates, exact, statistics, used = _position_mode(scenario)
    elif scenario.mode == "sequential":
        estimates, exact, statistics, used = _sequential_mode(scenario)
    else:
        estimates, exact, statistics, used = _group_mode(scenario)
    meta = {
        "seed": scenario.seed,
        "samples": used,
        "version": VERSION,
        "elapsed_s": time.perf_counter() - start,
    }
    return Report(scenario, estimates, exact, statistics, meta)


def _tally_estimates(tally: WinTally) -> tuple[BidderEstimate, ...]:
    return tuple(
        BidderEstimate(b, tally.mean(b), tally.stderr(b)) for b in range(tally.k)
    )


def _disadvantaged_split(n, adversary_value: Fraction, k: int) -> list[Fraction]:
    """Exact per-bidder values: the k-1 symmetric bidders share n - value."""
    share = (as_fraction(n) - adversary_value) / (k - 1)
    return [adversary_value] + [share] * (k - 1)


def _sampler_for(scenario: Scenario):
    if scenario.mode == "two-bidder":
        return lambda rng, m: draw_two_bidder(scenario.n, rng, size=m)
    return lambda rng, m: draw_k_bidder(scenario.n, scenario.k, rng, size=m)


def _marginal_mode(scenario: Scenario):
    n, k = scenario.n, scenario.k
    spec = MarginalSpec(n, k)
    fixed = scenario.adversary.kind == "fixed"
    draw = _sampler_for(scenario)
    if fixed:
        adversary_value = wins_vs_marginal(spec, list(scenario.adversary.bids))
        adversary_row = np.array([float(b) for b in scenario.adversary.bids])
    else:
        adversary_value = Fraction(n, k)
    exact = _disadvantaged_split(n, adversary_value, k)

    tally = WinTally(k)
    coords: list[np.ndarray] = []
    for index, length in chunks(scenario.samples):
        rng = RngStream(scenario.seed, index)
        layers = []
        if fixed:
            layers.append(np.broadcast_to(adversary_row, (length, n)))
        else:
            layers.append(draw(rng, length))
        layers.extend(draw(rng, length) for _ in range(k - 1))
        stack = np.stack(layers)
        tally.add(win_counts(stack, None, rng.generator))
        if scenario.ks_stats:
            coords.append(stack[k - 1])

    statistics: dict = {"ks": None}
    if scenario.ks_stats:
        statistics["ks"] = _ks_table(np.vstack(coords), spec)
    return _tally_estimates(tally), tuple(exact), statistics, scenario.samples


def _ks_table(draws: np.ndarray, spec: MarginalSpec) -> dict:
    threshold = KS_FACTOR / math.sqrt(draws.shape[0])
    cdf = lambda v: np.array([marginal_cdf(spec, x) for x in np.atleast_1d(v)])
    entries = []
    for c in range(draws.shape[1]):
        distance = ks_distance(draws[:, c], cdf)
        entries.append(
            {
                "coordinate": c,
                "distance": distance,
                "threshold": threshold,
                "passed": distance <= threshold,
            }
        )
    return {
        "entries": entries,
        "max_sum_error": float(np.max(np.abs(draws.sum(axis=1) - 1.0))),
    }


def _position_mode(scenario: Scenario):
    n, k = scenario.n, scenario.k
    ladder = initial_bids(n, k)
    ladder_seq = ladder.as_sequence()
    kind = scenario.adversary.kind
    if kind == "dp-optimal":
        response = best_response(n, k)
        adversary_seq = BidSequence(response.witness)
        adversary_value = response.value
    else:
        if kind == "undercut":
            adversary_seq = undercut_sequence(ladder_seq)
        else:
            adversary_seq = BidSequence(
                tuple(Bid(as_fraction(b)) for b in scenario.adversary.bids)
            )
        adversary_value = expected_wins_perm(
            k,
            adversary_seq,
            ladder_seq,
            PermutationMarginals.identity(n),
            PermutationMarginals.uniform(n),
        )
    exact = _disadvantaged_split(n, adversary_value, k)

    adversary_base = np.array([float(b.base) for b in adversary_seq.bids])
    adversary_eps = np.array([b.eps for b in adversary_seq.bids], dtype=np.int64)
    ladder_row = np.array([float(c) for c in ladder.bids])

    tally = WinTally(k)
    for index, length in chunks(scenario.samples):
        rng = RngStream(scenario.seed, index)
        gen = rng.generator
        base = np.empty((k, length, n))
        eps = np.zeros((k, length, n), dtype=np.int64)
        base[0] = adversary_base
        eps[0] = adversary_eps
        for b in range(1, k):
            base[b] = gen.permuted(
                np.broadcast_to(ladder_row, (length, n)).copy(), axis=1
            )
        tally.add(win_counts(base, eps, gen))
    return _tally_estimates(tally), tuple(exact), {"ks": None}, scenario.samples


def _sequential_mode(scenario: Scenario):
    n, k = scenario.n, scenario.k
    if scenario.adversary.kind == "fixed":
        opponent = scripted_strategy(list(scenario.adversary.bids))
    else:
        opponent = steady_strategy(n, k)
    strategies = [opponent] + [steady_strategy(n, k) for _ in range(k - 1)]
    exact = run_sequential(strategies, n, k, mode="exact")

    trials = min(scenario.samples, SEQUENTIAL_TRIAL_CAP)
    tally = WinTally(k)
    block = np.empty((k, trials), dtype=np.int64)
    for t in range(trials):
        wins = run_sequential(strategies, n, k, seed=[scenario.seed, t], mode="sample")
        block[:, t] = wins
    tally.add(block)
    return _tally_estimates(tally), tuple(exact), {"ks": None}, trials


def _group_mode(scenario: Scenario):
    sizes = tuple(as_fraction(s) for s in scenario.group_sizes)
    auction = GroupAuction(sizes, scenario.k)
    value = group_wins(auction, list(scenario.adversary.bids))
    exact = _disadvantaged_split(auction.total, value, scenario.k)
    # no sampler exists for the grouped joint distribution; exact values only
    return (), tuple(exact), {"ks": None}, 0
