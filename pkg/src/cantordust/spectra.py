"""Singularity spectra of a weighted box cover.

Two estimates are computed from the same cover. The histogram spectrum
bins the per-box concentrations alpha and takes log-counts directly;
the thermodynamic (Lagrangian) spectrum sweeps a moment order q and
evaluates the partition function

    tau(q) = log(sum_i p_i^q) / log(l)

together with the moment-weighted pair

    alpha(q) = sum_i m_i(q) log(p_i) / log(l)
    f(q)     = sum_i m_i(q) log(m_i(q)) / log(l),   m_i(q) = p_i^q / sum_j p_j^q

which realizes alpha = tau'(q) and f = q*alpha - tau exactly for the
finite cover, with no step-size tuning. ``legendre_check`` verifies the
derivative identity against central differences as a diagnostic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._validation import check_bin_count
from .dust import BoxCover


class DegenerateMeasureError(ValueError):
    """The cover carries no usable multifractal structure (e.g. uniform)."""


@dataclass(frozen=True, eq=False)
class AlphaList:
    """Per-box concentrations alpha = log(p_i)/log(l) for non-empty boxes.

    Arrays are parallel and ordered by ascending box index; that order is
    the summation order everywhere downstream, keeping results
    deterministic.
    """

    box_index: np.ndarray
    p: np.ndarray
    alpha: np.ndarray
    l: float

    def __len__(self) -> int:
        return len(self.alpha)

    @property
    def alpha_min(self) -> float:
        return float(self.alpha.min())

    @property
    def alpha_max(self) -> float:
        return float(self.alpha.max())


@dataclass(frozen=True)
class AlphaBin:
    """One Delta-alpha interval of the histogram spectrum."""

    alpha_lo: float
    alpha_hi: float
    n_alpha: int
    f_star: float | None
    mean_weight: float | None
    member_alphas: tuple[float, ...]


@dataclass(frozen=True)
class HistogramSpectrum:
    """Spectrum-by-definition: f* = log(N_alpha) / log(1/l) per alpha bin."""

    bins: tuple[AlphaBin, ...]
    B: int
    l: float

    @property
    def alpha_min(self) -> float:
        return self.bins[0].alpha_lo

    @property
    def alpha_max(self) -> float:
        return self.bins[-1].alpha_hi

    def bin_containing(self, alpha: float) -> int:
        """Index of the bin holding ``alpha``, clamped into range."""
        width = (self.alpha_max - self.alpha_min) / self.B
        i = int((alpha - self.alpha_min) / width)
        return min(max(i, 0), self.B - 1)


@dataclass(frozen=True, eq=False)
class ThermoSpectrum:
    """Sampled Lagrangian curve {(q, tau(q), alpha(q), f(q))}."""

    q: np.ndarray
    tau: np.ndarray
    alpha: np.ndarray
    f: np.ndarray
    l: float

    def __len__(self) -> int:
        return len(self.q)

    def index_of(self, q: float) -> int:
        hits = np.flatnonzero(np.isclose(self.q, q, rtol=0.0, atol=1e-12))
        if len(hits) == 0:
            raise ValueError(f"spectrum has no sample at q={q}")
        return int(hits[0])

    def at(self, q: float) -> tuple[float, float, float]:
        """(tau, alpha, f) at an exact grid value q."""
        i = self.index_of(q)
        return float(self.tau[i]), float(self.alpha[i]), float(self.f[i])


@dataclass(frozen=True)
class BiMultifractalSplit:
    """Histogram spectrum split at the q=1 / q=0 concentration scales."""

    f1: HistogramSpectrum
    f2: HistogramSpectrum
    alpha1: float
    alpha0: float


def alphas(box_cover: BoxCover) -> AlphaList:
    """Concentrations of all non-empty boxes, ascending box index."""
    w = np.asarray(box_cover.weights, dtype=float)
    occupied = np.flatnonzero(w)
    if len(occupied) == 0:
        raise ValueError("cover has no occupied boxes")
    l = box_cover.l
    if not l < 1.0:
        raise ValueError("box width must be < 1 for concentrations to be defined")
    p = w[occupied] / box_cover.T_kept
    alpha = np.log(p) / math.log(l)
    return AlphaList(box_index=occupied, p=p, alpha=alpha, l=l)


def default_bin_count(L: int) -> int:
    """Largest bin count not exceeding the square root of the box count."""
    if L < 4:
        raise ValueError(f"need at least 4 boxes for 2 bins, got {L}")
    return math.isqrt(L)


def histogram_spectrum(alpha_list: AlphaList, B: int, box_cover: BoxCover) -> HistogramSpectrum:
    """Bin the concentrations into B equal Delta-alpha intervals.

    Per bin: N_alpha members, f* = log(N_alpha)/log(1/l), and the plain
    arithmetic mean of the member boxes' day counts (the typical holding
    time at that concentration level). Bins are lower-closed with ties
    going to the higher bin; the top bin is closed above.
    """
    B = check_bin_count(B)
    if len(alpha_list) < 2:
        raise DegenerateMeasureError("need at least 2 occupied boxes to bin")
    a = alpha_list.alpha
    amin, amax = alpha_list.alpha_min, alpha_list.alpha_max
    if amax == amin:
        raise DegenerateMeasureError("monofractal: zero alpha range")
    width = (amax - amin) / B
    idx = np.minimum(((a - amin) / width).astype(int), B - 1)
    weights = np.asarray(box_cover.weights, dtype=float)[alpha_list.box_index]
    log_inv_l = math.log(1.0 / alpha_list.l)

    bins = []
    for b in range(B):
        mask = idx == b
        n = int(mask.sum())
        members = tuple(float(x) for x in a[mask])
        if n:
            f_star = math.log(n) / log_inv_l
            mean_w = float(weights[mask].mean())
        else:
            f_star = None
            mean_w = None
        bins.append(AlphaBin(alpha_lo=amin + b * width,
                             alpha_hi=amin + (b + 1) * width,
                             n_alpha=n, f_star=f_star, mean_weight=mean_w,
                             member_alphas=members))
    return HistogramSpectrum(bins=tuple(bins), B=B, l=alpha_list.l)


def default_q_grid(q_lo: int = -10, q_hi: int = 10) -> np.ndarray:
    """Integer moment orders; integer-only grids keep the curve's extremes
    from piling up into a falsely filled arc."""
    if not q_lo <= 0 < 1 <= q_hi:
        raise ValueError(f"grid must span q=0 and q=1, got [{q_lo}, {q_hi}]")
    return np.arange(q_lo, q_hi + 1, dtype=float)


def thermo_spectrum(alpha_list: AlphaList, q_grid=None) -> ThermoSpectrum:
    """Evaluate the Lagrangian spectrum on a q grid.

    Moments are computed with a max-log shift so large |q| cannot
    overflow; summation is in ascending box order for determinism.
    """
    if q_grid is None:
        q_grid = default_q_grid()
    q_grid = np.asarray(q_grid, dtype=float)
    if q_grid.ndim != 1 or len(q_grid) == 0:
        raise ValueError("q_grid must be a non-empty 1-D sequence")
    if np.any(np.diff(q_grid) <= 0):
        raise ValueError("q_grid must be strictly increasing")
    if len(alpha_list) < 2:
        raise DegenerateMeasureError("need at least 2 occupied boxes")

    logp = np.log(alpha_list.p)
    logl = math.log(alpha_list.l)
    taus = np.empty(len(q_grid))
    als = np.empty(len(q_grid))
    fs = np.empty(len(q_grid))
    for j, q in enumerate(q_grid):
        x = q * logp
        shift = x.max()
        e = np.exp(x - shift)
        s = float(e.sum())
        m = e / s
        log_m = (x - shift) - math.log(s)
        tau = (shift + math.log(s)) / logl
        alpha_q = float((m * logp).sum()) / logl
        f_q = float((m * log_m).sum()) / logl
        if not (math.isfinite(tau) and math.isfinite(alpha_q) and math.isfinite(f_q)):
            raise ArithmeticError(f"moment evaluation failed at q={q}")
        taus[j], als[j], fs[j] = tau, alpha_q, f_q
    return ThermoSpectrum(q=q_grid, tau=taus, alpha=als, f=fs, l=alpha_list.l)


def legendre_check(spec: ThermoSpectrum) -> float:
    """Max deviation of alpha(q) from the central difference of tau(q).

    Purely a self-consistency diagnostic: the direct moment form is the
    derivative evaluated exactly, so the residual measures only the
    difference quotient's truncation, shrinking ~4x when the grid step
    halves.
    """
    if len(spec) < 3:
        raise ValueError("need at least 3 samples for a central difference")
    steps = np.diff(spec.q)
    h = float(steps[0])
    if not np.allclose(steps, h, rtol=0.0, atol=1e-12):
        raise ValueError("legendre_check requires a uniformly spaced q grid")
    central = (spec.tau[2:] - spec.tau[:-2]) / (2.0 * h)
    return float(np.abs(spec.alpha[1:-1] - central).max())


def split_bimultifractal(hist: HistogramSpectrum, thermo: ThermoSpectrum) -> BiMultifractalSplit:
    """Split the histogram members at the alpha(q=1) / alpha(q=0) scales.

    Members at or below alpha(q=1) form the heavy-side spectrum, members
    at or above alpha(q=0) the light-side one; members strictly inside
    the gap join the side of the nearer boundary. Each side is re-binned
    over its own range with max(2, B//2) bins. The Lagrangian curve acts
    as an upper envelope of both sides.
    """
    _, alpha1, _ = thermo.at(1.0)
    _, alpha0, _ = thermo.at(0.0)
    if alpha1 >= alpha0:
        raise DegenerateMeasureError("degenerate split (uniform-like measure)")

    side1_a, side2_a = [], []
    for b in hist.bins:
        for a in b.member_alphas:
            if a <= alpha1:
                side1_a.append(a)
            elif a >= alpha0:
                side2_a.append(a)
            elif a - alpha1 <= alpha0 - a:
                side1_a.append(a)
            else:
                side2_a.append(a)
    B_side = max(2, hist.B // 2)
    f1 = _rebin_side(side1_a, B_side, hist.l, "heavy")
    f2 = _rebin_side(side2_a, B_side, hist.l, "light")
    return BiMultifractalSplit(f1=f1, f2=f2, alpha1=alpha1, alpha0=alpha0)


def _rebin_side(alphas_side: list[float], B: int, l: float, name: str) -> HistogramSpectrum:
    if len(alphas_side) < 2:
        raise DegenerateMeasureError(f"{name} side of the split has fewer than 2 members")
    a = np.asarray(sorted(alphas_side))
    amin, amax = float(a.min()), float(a.max())
    if amax == amin:
        raise DegenerateMeasureError(f"{name} side of the split has zero alpha range")
    width = (amax - amin) / B
    idx = np.minimum(((a - amin) / width).astype(int), B - 1)
    log_inv_l = math.log(1.0 / l)
    bins = []
    for b in range(B):
        mask = idx == b
        n = int(mask.sum())
        bins.append(AlphaBin(alpha_lo=amin + b * width, alpha_hi=amin + (b + 1) * width,
                             n_alpha=n,
                             f_star=(math.log(n) / log_inv_l) if n else None,
                             mean_weight=None,
                             member_alphas=tuple(float(x) for x in a[mask])))
    return HistogramSpectrum(bins=tuple(bins), B=B, l=l)
