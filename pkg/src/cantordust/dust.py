"""Projection of a price signal onto the price axis and its box cover.

The signal's closes, projected onto the vertical axis, form a dust of
points on a segment. The short bottom segment of falling prices below
the heavy stable-price cluster is cut away, the remainder is normalized
to the unit interval and covered with L equal boxes whose integer
weights count the days spent in each price band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_box_count
from .ingest import Signal


@dataclass(frozen=True, eq=False)
class PriceDust:
    """Multiset of prices (the projection) with its extremes."""

    values: np.ndarray
    p_minus: float
    p_plus: float

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class TrimReport:
    """What the heavy-floor trim did.

    heavy_cluster_size counts provisional boxes within 50% of the maximal
    weight (diagnostic only); cut_price is the lower edge of the heaviest
    provisional box, below which points were discarded.
    """

    heavy_cluster_size: int
    discarded_points: int
    cut_price: float


@dataclass(frozen=True, eq=False)
class BoxCover:
    """L adjacent equal boxes over [0, 1] with integer day-count weights.

    Box i spans [i/L, (i+1)/L), the last box closed at 1. Index 0 is the
    cheapest price band, index L-1 the most expensive.
    """

    weights: np.ndarray
    T_kept: int
    pruned: bool = False

    def __post_init__(self):
        w = np.asarray(self.weights)
        if w.ndim != 1 or len(w) < 2:
            raise ValueError("cover needs a 1-D weight vector of length >= 2")
        if np.any(w < 0):
            raise ValueError("box weights must be non-negative")
        if int(w.sum()) != self.T_kept:
            raise ValueError(f"weights sum to {int(w.sum())}, expected T_kept={self.T_kept}")

    @property
    def L(self) -> int:
        return len(self.weights)

    @property
    def l(self) -> float:
        return 1.0 / self.L

    def occupied(self) -> np.ndarray:
        """Indices of non-empty boxes, ascending."""
        return np.flatnonzero(self.weights)


def project(signal: Signal) -> PriceDust:
    """Project the signal onto the price axis, discarding time."""
    values = signal.closes
    return PriceDust(values=values, p_minus=float(values.min()), p_plus=float(values.max()))


def default_box_count(T: int) -> int:
    """Largest box count not exceeding the square root of the sample size."""
    if T < 4:
        raise ValueError(f"need at least 4 points for a 2-box cover, got {T}")
    return math.isqrt(T)


def _box_indices(values: np.ndarray, lo: float, hi: float, L: int) -> np.ndarray:
    # half-open boxes, last box closed at hi
    x = (values - lo) / (hi - lo)
    return np.minimum((x * L).astype(int), L - 1)


def trim_and_normalize(dust: PriceDust, L: int) -> tuple[PriceDust, TrimReport]:
    """Cut the falling-price floor and rescale the rest to [0, 1].

    A provisional cover of [p_minus, p_plus] with L boxes locates the
    heaviest box (lowest index on ties); every point strictly below that
    box's lower edge is discarded. The retained minimum maps to 0 and
    p_plus to 1. Idempotent: a second pass cuts nothing.
    """
    L = check_box_count(L)
    if not dust.p_plus > dust.p_minus:
        raise ValueError("zero price range")
    values = np.asarray(dust.values, dtype=float)
    idx = _box_indices(values, dust.p_minus, dust.p_plus, L)
    provisional = np.bincount(idx, minlength=L)
    heavy = int(np.argmax(provisional))
    cluster = int(np.sum(provisional >= provisional[heavy] / 2))
    cut = dust.p_minus + heavy * (dust.p_plus - dust.p_minus) / L
    kept = values[values >= cut]
    discarded = len(values) - len(kept)
    lo = float(kept.min())
    normalized = (kept - lo) / (dust.p_plus - lo)
    report = TrimReport(heavy_cluster_size=cluster, discarded_points=discarded, cut_price=cut)
    return PriceDust(values=normalized, p_minus=0.0, p_plus=1.0), report


def cover(dust: PriceDust, L: int) -> BoxCover:
    """Cover a unit-normalized dust with L equal boxes and count members."""
    L = check_box_count(L)
    values = np.asarray(dust.values, dtype=float)
    if len(values) == 0:
        raise ValueError("empty dust")
    if values.min() < 0.0 or values.max() > 1.0:
        raise ValueError("dust must be normalized to [0, 1] before covering")
    idx = _box_indices(values, 0.0, 1.0, L)
    weights = np.bincount(idx, minlength=L)
    return BoxCover(weights=weights, T_kept=len(values))


def prune_isolated(box_cover: BoxCover, iso_weight: int = 1) -> BoxCover:
    """Drop isolated near-empty boxes before histogram estimation.

    A box is pruned when its weight is <= iso_weight and both immediate
    neighbors are empty (a single empty neighbor suffices at the ends).
    Isolated points carry no dimensional information, so the histogram
    path discards them; the thermodynamic path keeps every box. The
    heaviest box is never pruned.
    """
    w = np.asarray(box_cover.weights).copy()
    L = len(w)
    wmax = int(w.max())
    original = box_cover.weights
    for i in range(L):
        wi = int(original[i])
        if wi == 0 or wi > iso_weight or wi == wmax:
            continue
        left_empty = i == 0 or original[i - 1] == 0
        right_empty = i == L - 1 or original[i + 1] == 0
        if left_empty and right_empty:
            w[i] = 0
    return BoxCover(weights=w, T_kept=int(w.sum()), pruned=True)
