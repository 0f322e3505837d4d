"""Seeded generators realizing the optimal bidding distributions.

Scalar draws return exact objects (BidSequence with rational amounts whose
total is exactly 1); vectorized draws (``size=N``) return float arrays for
Monte Carlo work, row-normalized so every sequence sums to 1 within 1e-12.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .engine import Bid, BidSequence
from .errors import NotMultiple

ONE_THIRD = 1.0 / 3.0

_PERMS3 = np.array(list(itertools.permutations(range(3))), dtype=np.intp)

SUM_TOLERANCE = 1e-12


class RngStream:
    """Deterministic random stream: identical (seed, stream) pairs replay
    identical draw sequences bit for bit.  Parallel work should use one
    stream id per task."""

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        self._gen = np.random.default_rng(
            [self.seed % 2**64, self.stream % 2**64]
        )

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream={self.stream})"

    @property
    def generator(self) -> np.random.Generator:
        return self._gen


def _gen_of(rng) -> np.random.Generator:
    if isinstance(rng, RngStream):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    raise TypeError("rng must be an RngStream or numpy Generator")


def triple_from_uniforms(u: float, v: float, w: float, perm_index: int = 0):
    """Deterministic core of the triple draw, for given unit-cube inputs.

    The range d = max - min has CDF 27*d**3, so d = (1/3) * u**(1/3);
    conditional on d, the minimum is uniform on [0, 1/3 - d] and the middle
    value uniform on [min, min + d].  ``perm_index`` selects one of the six
    assignments of (min, middle, max) to the coordinates.
    """
    d = ONE_THIRD * float(u) ** (1.0 / 3.0)
    lo = float(v) * (ONE_THIRD - d)
    mid = lo + float(w) * d
    vals = (lo, mid, lo + d)
    p = _PERMS3[perm_index % 6]
    return (vals[p[0]], vals[p[1]], vals[p[2]])


def draw_triple(rng, size: int | None = None):
    """Sample (x, y, z) from the joint triple density on [0, 1/3]^3.

    Uses the range decomposition above rather than rejection: the density is
    unbounded where max - min approaches 1/3, so no finite rejection
    envelope exists.  Returns a 3-tuple, or an (N, 3) array when ``size``
    is given.
    """
    gen = _gen_of(rng)
    if size is None:
        u, v, w = gen.random(3)
        perm = int(gen.integers(6))
        return triple_from_uniforms(u, v, w, perm)
    n = int(size)
    u = gen.random(n)
    v = gen.random(n)
    w = gen.random(n)
    d = ONE_THIRD * np.cbrt(u)
    lo = v * (ONE_THIRD - d)
    mid = lo + w * d
    tri = np.stack([lo, mid, lo + d], axis=1)
    perm = gen.integers(0, 6, n)
    return np.take_along_axis(tri, _PERMS3[perm], axis=1)


def _triple_bids_exact(n: int, xyz) -> list[Fraction]:
    """The three bids (3/n)(x-y+1/3), (3/n)(y-z+1/3), (3/n)(z-x+1/3).

    Built in rational arithmetic so the three always total exactly 3/n.
    """
    x, y, z = (Fraction(c) for c in xyz)
    scale = Fraction(3, n)
    third = Fraction(1, 3)
    return [scale * (x - y + third), scale * (y - z + third), scale * (z - x + third)]


def draw_two_bidder(n: int, rng, size: int | None = None):
    """Sample an n-bid sequence whose every coordinate is uniform on [0, 2/n]
    and whose total is exactly 1.

    Even n = 2m: one uniform draw b on [0, 2/n]; m copies of b followed by
    m copies of 2/n - b.  Odd n = 2m+1: m-1 copies of each, then the three
    bids derived from a triple draw.  For n = 3 the paired bids vanish and
    the sequence is the derived triple alone.  The measure-zero event of a
    zero bid is resampled away.
    """
    if n < 2:
        raise ValueError("need at least two objects")
    gen = _gen_of(rng)
    if size is None:
        return _two_bidder_one(n, gen)
    return _two_bidder_array(n, gen, int(size))


def _two_bidder_one(n: int, gen: np.random.Generator) -> BidSequence:
    pair_cap = Fraction(2, n)
    while True:
        b1 = Fraction(float(gen.random()) * 2.0 / n)
        if n % 2 == 0:
            m = n // 2
            bids = [b1] * m + [pair_cap - b1] * m
        else:
            m = (n - 1) // 2
            xyz = draw_triple(gen)
            bids = [b1] * (m - 1) + [pair_cap - b1] * (m - 1)
            bids += _triple_bids_exact(n, xyz)
        if all(b > 0 for b in bids):
            seq = BidSequence(tuple(Bid(b) for b in bids))
            assert seq.base_total == 1
            return seq


def _two_bidder_array(n: int, gen: np.random.Generator, size: int) -> np.ndarray:
    b1 = gen.random(size) * (2.0 / n)
    if n % 2 == 0:
        m = n // 2
        cols = [b1] * m + [2.0 / n - b1] * m
        out = np.stack(cols, axis=1)
    else:
        m = (n - 1) // 2
        tri = draw_triple(gen, size)
        x, y, z = tri[:, 0], tri[:, 1], tri[:, 2]
        scale = 3.0 / n
        cols = [b1] * (m - 1) + [2.0 / n - b1] * (m - 1)
        cols += [
            scale * (x - y + ONE_THIRD),
            scale * (y - z + ONE_THIRD),
            scale * (z - x + ONE_THIRD),
        ]
        out = np.stack(cols, axis=1)
    return _renormalize_rows(out, gen, lambda g, m: _two_bidder_array(n, g, m))


def draw_simplex(k: int, rng, size: int | None = None):
    """Sample k positive reals summing to 1 from the simplex bid density.

    Normalizes k independent Gamma(1/(k-1), 1) variates; each coordinate's
    CDF is t ** (1/(k-1)).  For k = 2 the first coordinate is uniform.
    Zero coordinates (gamma underflow) are resampled.
    """
    if k < 2:
        raise ValueError("need at least two bidders")
    gen = _gen_of(rng)
    shape = 1.0 / (k - 1)
    if size is None:
        while True:
            g = gen.standard_gamma(shape, k)
            total = g.sum()
            if np.all(g > 0.0) and total > 0.0:
                return g / total
    n = int(size)
    g = gen.standard_gamma(shape, (n, k))
    bad = np.any(g <= 0.0, axis=1)
    while np.any(bad):
        g[bad] = gen.standard_gamma(shape, (int(bad.sum()), k))
        bad = np.any(g <= 0.0, axis=1)
    return g / g.sum(axis=1, keepdims=True)


def draw_k_bidder(n: int, k: int, rng, size: int | None = None):
    """Sample an n-bid sequence with per-coordinate CDF ((n/k)*b)**(1/(k-1)).

    Requires k | n.  One simplex draw is copied to all n/k groups of k
    objects and every bid is scaled by k/n, preserving the marginal shape
    while the total stays exactly 1.
    """
    if n % k:
        raise NotMultiple(f"{k} bidders do not divide {n} objects")
    m = n // k
    gen = _gen_of(rng)
    if size is None:
        group = draw_simplex(k, gen)
        fracs = [Fraction(float(g)) for g in group]
        total = sum(fracs)
        bids = [f / (m * total) for f in fracs] * m
        seq = BidSequence(tuple(Bid(b) for b in bids))
        assert seq.base_total == 1
        return seq
    groups = draw_simplex(k, gen, size)
    out = np.tile(groups / m, (1, m))
    return _renormalize_rows(out, gen, lambda g, s: draw_k_bidder(n, k, g, s))


def _renormalize_rows(out: np.ndarray, gen, redraw) -> np.ndarray:
    """Force rows to sum to 1, asserting the correction is within tolerance;
    rows containing a zero bid (measure-zero) are redrawn."""
    sums = out.sum(axis=1)
    assert np.max(np.abs(sums - 1.0)) <= SUM_TOLERANCE
    out /= sums[:, None]
    bad = np.any(out <= 0.0, axis=1)
    while np.any(bad):
        out[bad] = redraw(gen, int(bad.sum()))
        bad = np.any(out <= 0.0, axis=1)
    return out
