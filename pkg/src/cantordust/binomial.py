"""Exact binomial cascade reference model.

Two constructions serve as oracle and synthetic-data source. The
classic one endows the two children of each subdivision step with mass
fractions p and 1-p, giving cells of measure p^(k-r) (1-p)^r at depth
k. The integer-weight variant replaces the fractions with a ratio
P > 1, so cell weights run P^k, P^(k-1), ..., 1 with binomial
multiplicities and total mass (P+1)^k. Both have straight-line
concentrations alpha(r) = A r + B and the symmetric log-binomial
spectrum f(r) = log C(k, r) / log L.

Weights and totals are kept in exact rational arithmetic whenever P is
rational, so the model is strictly more trustworthy than the floating
estimators it checks. Depth is capped at k = 1000: beyond that the
binomial coefficients exceed float range when rows are materialized.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from ._validation import check_probability
from .spectra import AlphaList

MAX_DEPTH = 1000


@dataclass(frozen=True)
class BinomialParams:
    """Integer-weight cascade parameters: ratio P > 1, depth k, L subdivisions."""

    P: Fraction | float
    k: int
    L: int

    def __post_init__(self):
        if isinstance(self.P, int):
            object.__setattr__(self, "P", Fraction(self.P))
        if not self.P > 1:
            raise ValueError(f"P must exceed 1, got {self.P}")
        if self.k < 1:
            raise ValueError(f"depth k must be >= 1, got {self.k}")
        if self.k > MAX_DEPTH:
            raise ValueError(f"depth k={self.k} exceeds the exact-arithmetic cap {MAX_DEPTH}")
        if self.L < 2:
            raise ValueError(f"L must be >= 2, got {self.L}")

    @property
    def exact(self) -> bool:
        return isinstance(self.P, Fraction)


@dataclass(frozen=True)
class ModelRow:
    """One concentration level r of the ideal cascade."""

    r: int
    alpha: float
    f: float
    n: int
    weight: Fraction | float
    q_instability: float


@dataclass(frozen=True)
class ModelSpectrum:
    """All levels r = 0..k with the line coefficients alpha = A r + B."""

    rows: tuple[ModelRow, ...]
    A: float
    B_offset: float
    params: BinomialParams

    def total_weight(self) -> Fraction | float:
        return sum(row.n * row.weight for row in self.rows)

    @property
    def alpha_values(self) -> np.ndarray:
        return np.array([row.alpha for row in self.rows])

    @property
    def f_values(self) -> np.ndarray:
        return np.array([row.f for row in self.rows])


def model_spectrum(params: BinomialParams) -> ModelSpectrum:
    """Evaluate the integer-weight cascade closed forms row by row.

    Verifies the total-mass identity sum_r C(k,r) P^(k-r) = (P+1)^k before
    returning (exactly for rational P).
    """
    P, k, L = params.P, params.k, params.L
    log_L = math.log(L)
    log_P = math.log(P) if not isinstance(P, Fraction) else _log_fraction(P)
    A = log_P / log_L
    B = k * (_log_fraction((P + 1) / P) if isinstance(P, Fraction) else math.log((P + 1) / P)) / log_L

    rows = []
    for r in range(k + 1):
        n = math.comb(k, r)
        weight = P ** (k - r)
        alpha_r = A * r + B
        f_r = math.log(n) / log_L
        q_r = n / weight if not isinstance(weight, Fraction) else float(Fraction(n) / weight)
        rows.append(ModelRow(r=r, alpha=alpha_r, f=f_r, n=n, weight=weight,
                             q_instability=float(q_r)))
    spectrum = ModelSpectrum(rows=tuple(rows), A=A, B_offset=B, params=params)

    total = spectrum.total_weight()
    expected = (P + 1) ** k
    if isinstance(total, Fraction) and isinstance(expected, Fraction):
        if total != expected:
            raise ArithmeticError(f"total mass {total} != (P+1)^k = {expected}")
    elif not math.isclose(float(total), float(expected), rel_tol=1e-12):
        raise ArithmeticError(f"total mass {total} != (P+1)^k = {expected}")
    return spectrum


def _log_fraction(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


@dataclass(frozen=True)
class CantorModelRow:
    r: int
    alpha: float
    f: float
    n: int
    measure: float


@dataclass(frozen=True)
class CantorModelSpectrum:
    """Middle-thirds construction with child masses p and 1-p."""

    rows: tuple[CantorModelRow, ...]
    p: float
    k: int


def ternary_cantor_spectrum(p_r: float, k: int) -> CantorModelSpectrum:
    """Closed-form spectrum of the two-mass middle-thirds cascade.

    Cells at depth k have width 3^-k and measure p^(k-r) (1-p)^r, C(k,r)
    of each. p = 1/2 is rejected: every cell then carries equal mass and
    the spectrum collapses to a point on the support.
    """
    p = check_probability(p_r, "p_r")
    if p == 0.5:
        raise ValueError("degenerate (monofractal on support): p_r = 1/2")
    if not 1 <= k <= MAX_DEPTH:
        raise ValueError(f"depth k must be in [1, {MAX_DEPTH}], got {k}")
    log_cell = k * math.log(1.0 / 3.0)
    rows = []
    for r in range(k + 1):
        measure = p ** (k - r) * (1 - p) ** r
        alpha_r = ((k - r) * math.log(p) + r * math.log(1 - p)) / log_cell
        f_r = math.log(math.comb(k, r)) / (k * math.log(3.0))
        rows.append(CantorModelRow(r=r, alpha=alpha_r, f=f_r, n=math.comb(k, r),
                                   measure=measure))
    return CantorModelSpectrum(rows=tuple(rows), p=p, k=k)


def generate_cascade(p_r: float, k: int, samples: int, seed: int) -> np.ndarray:
    """Sample a dyadic two-mass cascade measure on [0, 1].

    Each draw descends k halving levels, stepping into the left child
    with probability p_r, then lands uniformly inside the final cell of
    width 2^-k. Output is deterministic for a given seed.
    """
    p = check_probability(p_r, "p_r")
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    if not 1 <= k <= 60:
        raise ValueError(f"cascade depth must be in [1, 60], got {k}")
    rng = np.random.default_rng(seed)
    right = rng.random((samples, k)) >= p
    scales = 0.5 ** np.arange(1, k + 1)
    base = right @ scales
    return base + rng.random(samples) * 0.5 ** k


def dyadic_alpha_list(p_r: float, k: int) -> AlphaList:
    """Exact cell probabilities of the depth-k dyadic cascade as an AlphaList.

    Bridges the closed-form measure into the spectra estimators: cell i
    (binary digits read as left/right choices) has probability
    p^(k - popcount(i)) (1-p)^popcount(i) and width 2^-k.
    """
    p = check_probability(p_r, "p_r")
    if not 1 <= k <= 24:
        raise ValueError(f"materializing 2^k cells needs k in [1, 24], got {k}")
    L = 2 ** k
    idx = np.arange(L)
    rights = np.array([int(i).bit_count() for i in idx])
    logp = (k - rights) * math.log(p) + rights * math.log(1 - p)
    probs = np.exp(logp)
    return AlphaList(box_index=idx, p=probs, alpha=logp / math.log(1.0 / L), l=1.0 / L)
