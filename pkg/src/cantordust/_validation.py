"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np


def check_prices(X) -> np.ndarray:
    """Coerce X to a 1-D float array of strictly positive prices.

    Accepts lists, tuples, 1-D arrays, or single-column 2-D arrays
    (the sklearn ``(n_samples, 1)`` convention).
    """
    arr = np.asarray(X, dtype=float)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D price series, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("empty price series")
    if not np.all(np.isfinite(arr)):
        raise ValueError("price series contains NaN or infinite values")
    if np.any(arr <= 0):
        bad = int(np.argmax(arr <= 0))
        raise ValueError(f"non-positive price {arr[bad]} at position {bad}")
    return arr


def check_unit_values(X) -> np.ndarray:
    """Coerce X to a 1-D float array with all values inside [0, 1]."""
    arr = np.asarray(X, dtype=float)
    if arr.ndim != 1:
        raise ValueError(f"expected a 1-D value array, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("empty value array")
    if not np.all(np.isfinite(arr)):
        raise ValueError("values contain NaN or infinite entries")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError("values must lie inside the unit interval [0, 1]")
    return arr


def check_box_count(L: int, minimum: int = 2) -> int:
    L = int(L)
    if L < minimum:
        raise ValueError(f"box count must be >= {minimum}, got {L}")
    return L


def check_bin_count(B: int) -> int:
    B = int(B)
    if B < 2:
        raise ValueError(f"bin count must be >= 2, got {B}")
    return B


def check_probability(p: float, name: str = "p") -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise ValueError(f"{name} must lie strictly inside (0, 1), got {p}")
    return p
