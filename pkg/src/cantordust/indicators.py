"""Early-warning indicators: instability quotient, gap, asymmetry, dispersion.

The instability quotient works on unprocessed data: per alpha bin it
divides the raw box count N_alpha by the bin's average day weight, the
empirical stand-in for the ideal P^(k-r) ladder. In the ideal cascade
this quotient grows with no curvature change up to the spectrum's apex;
an interior inflection in its graph is the raw-data crash signature.
The remaining three indicators read the Lagrangian curve: the gap
between the q=1 and q=0 samples, the height difference of the curve's
two tails, and the isolated-box dispersion near the top price.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .binomial import ModelSpectrum
from .dust import BoxCover
from .spectra import HistogramSpectrum, ThermoSpectrum


@dataclass(frozen=True)
class ProfileRow:
    bin_index: int
    n_alpha: int
    mean_weight: float
    q_instability: float


@dataclass(frozen=True)
class InstabilityProfile:
    """Quotient rows from alpha_min up to the bin holding alpha(q=0).

    The bin-to-level correspondence treats consecutive alpha bins as
    consecutive r levels of the ideal cascade with k fixed; that mapping
    is a modeling assumption, not a derived fact. p_hat is the geometric
    mean of consecutive mean-weight ratios; the arithmetic mean is kept
    alongside because typical hand calculations use it.
    """

    rows: tuple[ProfileRow, ...]
    p_hat: float
    p_hat_arithmetic: float
    inflection_index: int | None


@dataclass(frozen=True)
class Thresholds:
    """Verdict thresholds; a flag raises only when its value strictly exceeds."""

    gap: float = 3.0
    asymmetry: float = 0.2
    dispersion: int = 2


@dataclass(frozen=True)
class WarningReport:
    gap_ratio: float | None
    asymmetry: float
    dispersion_count: int
    f_alpha_max: float
    q_inflection_present: bool
    flags: dict = field(default_factory=dict)
    thresholds: Thresholds = field(default_factory=Thresholds)


def instability_profile(hist: HistogramSpectrum, thermo: ThermoSpectrum) -> InstabilityProfile:
    """Quotients N_alpha / mean_weight over the rising branch of the spectrum.

    Rows cover the histogram bins from alpha_min through the bin that
    contains the thermodynamic alpha(q=0) (clamped into the histogram
    range); empty bins carry no average weight and are skipped. With
    fewer than 3 rows curvature cannot be tested and the inflection is
    reported absent.
    """
    _, alpha0, _ = thermo.at(0.0)
    last_bin = hist.bin_containing(alpha0)
    rows = []
    for i, b in enumerate(hist.bins[: last_bin + 1]):
        if b.n_alpha == 0:
            continue
        rows.append(ProfileRow(bin_index=i, n_alpha=b.n_alpha, mean_weight=b.mean_weight,
                               q_instability=b.n_alpha / b.mean_weight))
    means = [r.mean_weight for r in rows]
    ratios = [means[i] / means[i + 1] for i in range(len(means) - 1)]
    if ratios:
        p_geo = float(np.exp(np.mean(np.log(ratios))))
        p_ari = float(np.mean(ratios))
    else:
        p_geo = p_ari = float("nan")
    profile = InstabilityProfile(rows=tuple(rows), p_hat=p_geo, p_hat_arithmetic=p_ari,
                                 inflection_index=None)
    inflection = detect_inflection(profile)
    return InstabilityProfile(rows=tuple(rows), p_hat=p_geo, p_hat_arithmetic=p_ari,
                              inflection_index=inflection)


def detect_inflection(profile: InstabilityProfile) -> int | None:
    """First row index where the quotient's discrete curvature flips sign.

    Second differences of Q over the row sequence are scanned pairwise;
    the returned index is the center row of the later difference (the
    bin where growth resumes after stalling). None when curvature never
    changes sign, the stable-cascade case.
    """
    q = [r.q_instability for r in profile.rows]
    if len(q) < 3:
        return None
    d2 = [q[i + 1] - 2.0 * q[i] + q[i - 1] for i in range(1, len(q) - 1)]
    for j in range(1, len(d2)):
        if d2[j - 1] * d2[j] < 0:
            return profile.rows[j + 1].bin_index
    return None


def gap_ratio(thermo: ThermoSpectrum) -> float:
    """Distance between the q=1 and q=0 samples, in units of the typical
    step along the q >= 1 branch.

    The branch must be sampled at every integer q from 1 to the grid
    top. A uniform-like measure collapses the branch to a point and the
    statistic is undefined.
    """
    q_hi = int(round(float(thermo.q.max())))
    if q_hi < 1:
        raise ValueError("grid must extend to q >= 1")
    pts = {}
    for q in range(0, q_hi + 1):
        _, a, f = thermo.at(float(q))
        pts[q] = (a, f)
    d = math.hypot(pts[1][0] - pts[0][0], pts[1][1] - pts[0][1])
    steps = [math.hypot(pts[q + 1][0] - pts[q][0], pts[q + 1][1] - pts[q][1])
             for q in range(1, q_hi)]
    if not steps:
        raise ValueError("need samples beyond q=1 to scale the gap")
    m = float(np.median(steps))
    if m == 0.0:
        raise ValueError("degenerate branch: all q >= 1 samples coincide")
    return d / m


def asymmetry(spectrum: ThermoSpectrum | ModelSpectrum) -> float:
    """Height difference between the light-price and heavy-price ends.

    f at the most-negative-q sample minus f at the most-positive-q one;
    the ideal cascade's mirror symmetry makes this exactly zero, crash
    covers push it positive through their dispersed light boxes.
    """
    if isinstance(spectrum, ModelSpectrum):
        return spectrum.rows[-1].f - spectrum.rows[0].f
    i_lo = int(np.argmin(spectrum.q))
    i_hi = int(np.argmax(spectrum.q))
    return float(spectrum.f[i_lo] - spectrum.f[i_hi])


def dispersion(box_cover: BoxCover, thermo: ThermoSpectrum,
               zone_fraction: float = 0.25) -> tuple[int, float]:
    """Isolated occupied boxes in the top price zone, plus f at alpha_max.

    Counts occupied boxes whose neighbors are both empty (one empty
    neighbor suffices at the ends) among the top ``zone_fraction`` of
    box indices. The companion value is f at the most-negative q of the
    spectrum, which weights exactly those dispersed boxes. Requires the
    unpruned cover: pruning removes the very boxes being counted.
    """
    if box_cover.pruned:
        raise ValueError("dispersion requires the unpruned cover")
    if not 0.0 < zone_fraction <= 1.0:
        raise ValueError(f"zone_fraction must be in (0, 1], got {zone_fraction}")
    w = box_cover.weights
    L = len(w)
    zone_start = math.ceil(L * (1.0 - zone_fraction))
    count = 0
    for i in range(zone_start, L):
        if w[i] == 0:
            continue
        left_empty = i == 0 or w[i - 1] == 0
        right_empty = i == L - 1 or w[i + 1] == 0
        if left_empty and right_empty:
            count += 1
    i_lo = int(np.argmin(thermo.q))
    return count, float(thermo.f[i_lo])


def compose_report(profile: InstabilityProfile | None, gap: float | None,
                   asym: float, disp: tuple[int, float],
                   thresholds: Thresholds = Thresholds()) -> WarningReport:
    """Assemble the per-indicator verdicts into one report.

    A pure function of its inputs: flags are strict threshold
    comparisons (so +inf thresholds silence everything), and the
    quotient inflection is reported as data, not as a thresholded flag.
    """
    disp_count, f_alpha_max = disp
    flags = {
        "gap": gap is not None and gap > thresholds.gap,
        "asymmetry": asym > thresholds.asymmetry,
        "dispersion": disp_count > thresholds.dispersion,
    }
    return WarningReport(
        gap_ratio=gap,
        asymmetry=asym,
        dispersion_count=disp_count,
        f_alpha_max=f_alpha_max,
        q_inflection_present=profile is not None and profile.inflection_index is not None,
        flags=flags,
        thresholds=thresholds,
    )
