"""End-to-end analysis: prices in, spectra and warning report out.

The two spectral paths deliberately diverge after the cover is built:
the histogram spectrum consumes the isolated-box-pruned cover, the
thermodynamic spectrum the raw one (it cares how many boxes carry each
concentration, not where they sit). Degenerate inputs (uniform or
near-uniform measures) are legitimate: the affected estimators are
skipped and the report comes back with every flag false.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_prices, check_unit_values
from .dust import (BoxCover, PriceDust, TrimReport, cover, default_box_count, project,
                   prune_isolated, trim_and_normalize)
from .indicators import (InstabilityProfile, Thresholds, WarningReport, asymmetry,
                         compose_report, dispersion, gap_ratio, instability_profile)
from .ingest import Signal
from .spectra import (AlphaList, BiMultifractalSplit, DegenerateMeasureError,
                      HistogramSpectrum, ThermoSpectrum, alphas, default_bin_count,
                      default_q_grid, histogram_spectrum, split_bimultifractal,
                      thermo_spectrum)


@dataclass(frozen=True)
class AnalysisConfig:
    """Knobs of the pipeline; None picks the square-root defaults."""

    n_boxes: int | None = None
    n_bins: int | None = None
    q_lo: int = -10
    q_hi: int = 10
    iso_weight: int = 1
    trim: bool = True
    zone_fraction: float = 0.25
    thresholds: Thresholds = field(default_factory=Thresholds)

    def __post_init__(self):
        if not self.q_lo <= 0 < 1 <= self.q_hi:
            raise ValueError(f"q grid must span 0 and 1, got [{self.q_lo}, {self.q_hi}]")
        if self.n_boxes is not None and self.n_boxes < 4:
            raise ValueError(f"n_boxes must be >= 4, got {self.n_boxes}")
        if self.n_bins is not None and self.n_bins < 2:
            raise ValueError(f"n_bins must be >= 2, got {self.n_bins}")
        if self.iso_weight < 0:
            raise ValueError("iso_weight must be non-negative")


@dataclass(frozen=True, eq=False)
class AnalysisResult:
    label: str
    n_points: int
    n_boxes: int
    n_bins: int
    dust: PriceDust
    trim_report: TrimReport | None
    cover: BoxCover
    pruned_cover: BoxCover
    alpha_list: AlphaList
    thermo: ThermoSpectrum
    histogram: HistogramSpectrum | None
    split: BiMultifractalSplit | None
    profile: InstabilityProfile | None
    report: WarningReport
    config: AnalysisConfig


def analyze_prices(values, label: str = "", config: AnalysisConfig = AnalysisConfig()) -> AnalysisResult:
    """Run the full pipeline on a raw positive price series."""
    prices = check_prices(values)
    raw = PriceDust(values=prices, p_minus=float(prices.min()), p_plus=float(prices.max()))
    L = config.n_boxes if config.n_boxes is not None else default_box_count(len(prices))
    if config.trim:
        dust, trim_report = trim_and_normalize(raw, L)
    else:
        if raw.p_plus > raw.p_minus:
            normalized = (prices - raw.p_minus) / (raw.p_plus - raw.p_minus)
        else:
            raise ValueError("zero price range")
        dust = PriceDust(values=normalized, p_minus=0.0, p_plus=1.0)
        trim_report = None
    return _analyze_dust(dust, trim_report, L, label, config, n_points=len(prices))


def analyze_signal(signal: Signal, config: AnalysisConfig = AnalysisConfig()) -> AnalysisResult:
    """Pipeline entry for a parsed date-stamped window."""
    return analyze_prices(signal.closes, label=signal.label, config=config)


def analyze_unit_dust(values, label: str = "", config: AnalysisConfig = AnalysisConfig()) -> AnalysisResult:
    """Pipeline entry for a dust already living on [0, 1] (e.g. cascade output).

    No trim, no rescale: the values are covered as-is so synthetic
    measures keep their exact grid alignment.
    """
    unit = check_unit_values(values)
    L = config.n_boxes if config.n_boxes is not None else default_box_count(len(unit))
    dust = PriceDust(values=unit, p_minus=float(unit.min()), p_plus=float(unit.max()))
    return _analyze_dust(dust, None, L, label, config, n_points=len(unit))


def _analyze_dust(dust: PriceDust, trim_report: TrimReport | None, L: int, label: str,
                  config: AnalysisConfig, n_points: int) -> AnalysisResult:
    raw_cover = cover(dust, L)
    pruned = prune_isolated(raw_cover, iso_weight=config.iso_weight)
    alpha_raw = alphas(raw_cover)
    thermo = thermo_spectrum(alpha_raw, default_q_grid(config.q_lo, config.q_hi))
    B = config.n_bins if config.n_bins is not None else default_bin_count(L)

    histogram = split = profile = None
    try:
        alpha_pruned = alphas(pruned)
        histogram = histogram_spectrum(alpha_pruned, B, pruned)
    except DegenerateMeasureError:
        pass
    if histogram is not None:
        try:
            split = split_bimultifractal(histogram, thermo)
        except DegenerateMeasureError:
            pass
        profile = instability_profile(histogram, thermo)

    try:
        gap = gap_ratio(thermo)
    except ValueError:
        gap = None
    asym = asymmetry(thermo)
    disp = dispersion(raw_cover, thermo, zone_fraction=config.zone_fraction)
    report = compose_report(profile, gap, asym, disp, thresholds=config.thresholds)

    return AnalysisResult(
        label=label, n_points=n_points, n_boxes=L, n_bins=B,
        dust=dust, trim_report=trim_report, cover=raw_cover, pruned_cover=pruned,
        alpha_list=alpha_raw, thermo=thermo, histogram=histogram, split=split,
        profile=profile, report=report, config=config,
    )
