"""Named verification suites behind the ``verify`` CLI subcommand.

Each suite re-derives a claim numerically (quadrature, enumeration or Monte
Carlo) and compares it against the closed forms and samplers, reporting one
check row per claim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .adversary import copycat_value
from .errors import ScenarioError
from .harness import KS_FACTOR, ks_distance
from .marginals import (
    MarginalSpec,
    marginal_cdf,
    pair_density,
    simplex_normalizer,
    triple_density,
)
from .position_randomized import (
    PermutationMarginals,
    best_response,
    expected_wins_perm,
    initial_bids,
    undercut_sequence,
)
from .samplers import RngStream, draw_k_bidder, draw_two_bidder
from .sequential import run_sequential, scripted_strategy, steady_strategy


@dataclass(frozen=True)
class Check:
    """One named verification with its observed value and pass threshold."""

    name: str
    value: float
    threshold: float
    passed: bool


def _check(name: str, value: float, threshold: float) -> Check:
    return Check(name, float(value), float(threshold), bool(value <= threshold))


def triple_cube_integral(nodes_xy: int = 200, nodes_z: int = 60) -> float:
    """Numeric integral of the triple density over [0, 1/3]^3.

    Tensor Gauss-Legendre over (x, y) with the inner z-integral split at its
    kinks z = min(x, y) and z = max(x, y); the edge singularities are
    integrable and the interior nodes never touch them.
    """
    pts, wts = np.polynomial.legendre.leggauss(nodes_xy)
    grid = (pts + 1.0) / 6.0
    weight = wts / 6.0
    x = grid[:, None]
    y = grid[None, :]
    lo = np.minimum(x, y)
    hi = np.maximum(x, y)
    zp, zw = np.polynomial.legendre.leggauss(nodes_z)
    zp = (zp + 1.0) / 2.0

    def piece(a, b):
        length = b - a
        total = np.zeros_like(lo)
        for t, w in zip(zp, zw):
            z = a + t * length
            v = np.abs(x - y) + np.abs(y - z) + np.abs(z - x)
            total += w * (40.5 * v / (2.0 - 3.0 * v))
        return total * length / 2.0

    inner = (
        piece(np.zeros_like(lo), lo)
        + piece(lo, hi)
        + piece(hi, np.full_like(lo, 1.0 / 3.0))
    )
    return float(np.einsum("i,j,ij->", weight, weight, inner))


def pair_density_quadrature(x: float, y: float) -> float:
    """Independent oracle for the closed-form pair density: adaptive
    quadrature of the triple density over the third coordinate."""
    value, _ = integrate.quad(
        lambda z: triple_density(x, y, z),
        0.0,
        1.0 / 3.0,
        points=[min(x, y), max(x, y)],
        limit=200,
        epsabs=1e-12,
        epsrel=1e-12,
    )
    return value


def simplex_normalizer_quadrature(k: int, nodes: int = 48) -> float:
    """Numeric simplex integral of prod(b_i)^(1/(k-1) - 1) by nested
    Gauss-Jacobi quadrature.

    Each level integrates one coordinate x over (0, c) against the weight
    x**(a-1) * (c-x)**(j*a-1) that captures the endpoint singularities, with
    the remaining smooth factor evaluated by recursing into the next level.
    """
    from scipy.special import roots_jacobi

    a = 1.0 / (k - 1)

    def level(j: int, c: np.ndarray) -> np.ndarray:
        # integral over the last j free coordinates given remaining mass c
        if j == 0:
            return c ** (a - 1)
        t, w = roots_jacobi(nodes, j * a - 1.0, a - 1.0)
        x = np.multiply.outer(0.5 * (1.0 + t), c)
        rest = c - x
        smooth = level(j - 1, rest.ravel()).reshape(rest.shape)
        smooth /= rest ** (j * a - 1.0)
        return (0.5 * c) ** ((j + 1) * a - 1.0) * np.tensordot(w, smooth, axes=1)

    return float(level(k - 1, np.array([1.0]))[0])


def density_suite(points_per_axis: int = 10) -> list[Check]:
    """Quadrature checks: the triple density integrates to 1, its pair
    marginal matches the closed form on an interior grid, and the simplex
    normalizer matches numeric integration for k in {2, 3, 4}."""
    checks = [
        _check("triple_density_cube_integral", abs(triple_cube_integral() - 1.0), 1e-3)
    ]
    offsets = (np.arange(points_per_axis) + 0.5) / points_per_axis / 3.0
    worst = 0.0
    for x in offsets:
        for y in offsets:
            worst = max(worst, abs(pair_density(x, y) - pair_density_quadrature(x, y)))
    checks.append(
        _check(f"pair_density_vs_quadrature_{points_per_axis**2}pts", worst, 1e-9)
    )
    for k in (2, 3, 4):
        rel = abs(simplex_normalizer(k) - simplex_normalizer_quadrature(k))
        rel /= simplex_normalizer(k)
        checks.append(_check(f"simplex_normalizer_k{k}", rel, 1e-3))
    return checks


def marginal_suite(n: int, k: int, samples: int = 1_000_000, seed: int = 0) -> list[Check]:
    """Sampler marginals: per-coordinate KS distance against the closed-form
    CDF at the 99.9% critical value, plus the exact-sum property."""
    spec = MarginalSpec(n, k)
    rng = RngStream(seed, 0)
    if k == 2:
        draws = draw_two_bidder(n, rng, size=samples)
    else:
        draws = draw_k_bidder(n, k, rng, size=samples)
    threshold = KS_FACTOR / math.sqrt(samples)
    cdf = lambda v: np.array([marginal_cdf(spec, t) for t in np.atleast_1d(v)])
    checks = []
    for c in range(n):
        checks.append(
            _check(f"ks_coordinate_{c}", ks_distance(draws[:, c], cdf), threshold)
        )
    checks.append(
        _check("max_sum_error", float(np.max(np.abs(draws.sum(axis=1) - 1.0))), 1e-12)
    )
    return checks


def position_suite(max_n: int = 12, max_k: int = 5) -> list[Check]:
    """Exact identities of the position-randomized solver: the dynamic
    program equals (weight_total - 1) / n**(k-1) and equals the undercut
    sequence's expected wins, for every size in range."""
    worst_formula = 0
    worst_undercut = 0
    for k in range(2, max_k + 1):
        for n in range(k, max_n + 1):
            ladder = initial_bids(n, k)
            response = best_response(n, k)
            formula = Fraction(ladder.weight_total - 1, n ** (k - 1))
            if response.value != formula:
                worst_formula += 1
            undercut_val = expected_wins_perm(
                k,
                undercut_sequence(ladder.as_sequence()),
                ladder.as_sequence(),
                PermutationMarginals.identity(n),
                PermutationMarginals.uniform(n),
            )
            if undercut_val != response.value:
                worst_undercut += 1
    return [
        _check("best_response_formula_mismatches", worst_formula, 0),
        _check("undercut_value_mismatches", worst_undercut, 0),
    ]


def copycat_suite(n: int, k: int, samples: int = 1_000_000, seed: int = 0) -> list[Check]:
    """The copycat adversary's Monte Carlo mean sits within three standard
    errors of n/k."""
    result = copycat_value(MarginalSpec(n, k), samples=samples, seed=seed)
    return [_check(f"copycat_{n}_{k}_stderr_multiples", result.within, 3.0)]


def sequential_suite(n: int, k: int, trials: int = 2_000, seed: int = 0) -> list[Check]:
    """The steady strategy never falls below n/k expected objects against
    randomized opponent scripts."""
    gen = np.random.default_rng([seed, 777])
    target = Fraction(n, k)
    violations = 0
    for _ in range(trials):
        scripts = []
        for _ in range(k - 1):
            raw = gen.integers(0, 33, size=n)
            scripts.append(scripted_strategy([Fraction(int(v), 32) for v in raw]))
        strategies = scripts + [steady_strategy(n, k)]
        wins = run_sequential(strategies, n, k, mode="exact")
        if wins[-1] < target:
            violations += 1
    return [_check(f"steady_floor_violations_{n}_{k}", violations, 0)]


def run_suite(name: str, n: int = 4, k: int = 2, samples: int = 1_000_000, seed: int = 0) -> list[Check]:
    if name == "marginals":
        return marginal_suite(n, k, samples, seed)
    if name == "density":
        return density_suite()
    if name == "position":
        return position_suite()
    if name == "copycat":
        return copycat_suite(n, k, samples, seed)
    if name == "sequential":
        return sequential_suite(n, k, min(samples, 2_000), seed)
    if name == "all":
        checks = density_suite()
        checks += marginal_suite(n, k, samples, seed)
        checks += position_suite()
        checks += copycat_suite(n, k, samples, seed)
        checks += sequential_suite(n, k, min(samples, 2_000), seed)
        return checks
    raise ScenarioError(
        f"unknown suite {name!r}; choose marginals, density, position, "
        "copycat, sequential or all"
    )
