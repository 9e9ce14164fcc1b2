"""Scikit-learn style front end for the analysis pipeline."""

from __future__ import annotations

from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError

from ._validation import check_prices
from .indicators import Thresholds
from .pipeline import AnalysisConfig, analyze_prices


class CantorDustAnalyzer(BaseEstimator):
    """Multifractal crash-signature analyzer for a daily price window.

    ``fit(X)`` takes the window's closes as a 1-D array (or a single
    column), projects them onto the price axis, builds the box cover and
    both singularity spectra, and derives the early-warning indicators.
    Results are exposed as fitted attributes; ``get_params`` /
    ``set_params`` follow the usual estimator contract so the analyzer
    drops into grid searches and pipelines that only tune parameters.

    Parameters
    ----------
    n_boxes : int or None
        Boxes covering the normalized price segment; None uses
        isqrt(n_samples), the largest count the sample size supports.
    n_bins : int or None
        Alpha histogram bins; None uses isqrt(n_boxes).
    q_lo, q_hi : int
        Integer moment-order range for the thermodynamic spectrum.
    iso_weight : int
        Boxes at or below this weight with empty neighbors are pruned
        from the histogram path.
    trim : bool
        Cut the falling-price floor below the heaviest provisional box
        before normalizing. Disable for data already shaped as a dust.
    gap_threshold, asymmetry_threshold, dispersion_threshold : float, float, int
        Verdict thresholds echoed into the report.
    zone_fraction : float
        Top fraction of box indices scanned for dispersed boxes.

    Attributes
    ----------
    cover_, pruned_cover_ : BoxCover
    alpha_list_ : AlphaList
    thermo_ : ThermoSpectrum
    histogram_ : HistogramSpectrum or None
    split_ : BiMultifractalSplit or None
    profile_ : InstabilityProfile or None
    report_ : WarningReport
    trim_report_ : TrimReport or None
    n_boxes_, n_bins_ : int resolved parameter values

    Examples
    --------
    >>> import numpy as np
    >>> from cantordust import CantorDustAnalyzer
    >>> prices = np.linspace(100.0, 250.0, 400)
    >>> analyzer = CantorDustAnalyzer().fit(prices)
    >>> analyzer.report_.flags
    {'gap': False, 'asymmetry': False, 'dispersion': False}
    """

    def __init__(self, n_boxes=None, n_bins=None, q_lo=-10, q_hi=10, iso_weight=1,
                 trim=True, gap_threshold=3.0, asymmetry_threshold=0.2,
                 dispersion_threshold=2, zone_fraction=0.25):
        self.n_boxes = n_boxes
        self.n_bins = n_bins
        self.q_lo = q_lo
        self.q_hi = q_hi
        self.iso_weight = iso_weight
        self.trim = trim
        self.gap_threshold = gap_threshold
        self.asymmetry_threshold = asymmetry_threshold
        self.dispersion_threshold = dispersion_threshold
        self.zone_fraction = zone_fraction

    def _config(self) -> AnalysisConfig:
        return AnalysisConfig(
            n_boxes=self.n_boxes,
            n_bins=self.n_bins,
            q_lo=self.q_lo,
            q_hi=self.q_hi,
            iso_weight=self.iso_weight,
            trim=self.trim,
            zone_fraction=self.zone_fraction,
            thresholds=Thresholds(gap=self.gap_threshold,
                                  asymmetry=self.asymmetry_threshold,
                                  dispersion=self.dispersion_threshold),
        )

    def fit(self, X, y=None):
        """Analyze the price window; y is ignored (present for API parity)."""
        prices = check_prices(X)
        result = analyze_prices(prices, config=self._config())
        self.result_ = result
        self.cover_ = result.cover
        self.pruned_cover_ = result.pruned_cover
        self.alpha_list_ = result.alpha_list
        self.thermo_ = result.thermo
        self.histogram_ = result.histogram
        self.split_ = result.split
        self.profile_ = result.profile
        self.report_ = result.report
        self.trim_report_ = result.trim_report
        self.n_boxes_ = result.n_boxes
        self.n_bins_ = result.n_bins
        return self

    def warning_flags(self) -> dict:
        """Verdict flags of the fitted window."""
        if not hasattr(self, "report_"):
            raise NotFittedError("call fit before reading results")
        return dict(self.report_.flags)
