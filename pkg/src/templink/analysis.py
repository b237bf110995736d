"""Degree histograms and log-log power-law tail fits."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = ["DegreeHistogram", "PowerLawFit", "degree_histogram", "fit_power_law",
           "default_kmin", "format_histogram"]


@dataclass(frozen=True)
class DegreeHistogram:
    k_low: np.ndarray
    k_high: np.ndarray
    density: np.ndarray
    binning: str
    total_nodes: int
    default_kmin: float = 1.0

    @property
    def centres(self) -> np.ndarray:
        if self.binning == "log":
            return np.sqrt(self.k_low * self.k_high)
        return 0.5 * (self.k_low + self.k_high)

    @property
    def widths(self) -> np.ndarray:
        return self.k_high - self.k_low

    def mass(self) -> float:
        return float(np.sum(self.density * self.widths))


@dataclass(frozen=True)
class PowerLawFit:
    gamma: float
    k_min: float
    r_squared: float
    points_used: int
    intercept: float = 0.0


def default_kmin(deg) -> float:
    """10th percentile of the nonzero degrees."""
    deg = np.asarray(deg, dtype=np.float64)
    pos = deg[deg > 0]
    if pos.size == 0:
        raise ValueError("no nonzero degrees")
    return float(np.percentile(pos, 10))


def degree_histogram(deg, binning: str = "log", include_zero: bool = False,
                     ratio: float = 1.5, width: float = 1.0) -> DegreeHistogram:
    """Empirical degree density P(k).

    ``binning="log"`` uses edges ``k0, k0*ratio, k0*ratio**2, ...`` with
    ``k0 = 1`` (or the smallest positive degree, if weighted degrees fall
    below one); zero degrees cannot be log-binned.  ``binning="linear"``
    uses bins of ``width`` starting at 0 when zeros are included, otherwise
    at the bin holding the smallest positive degree.  Density is
    ``count / (total * bin_width)``, so ``sum(density * width) == 1``.
    """
    deg = np.asarray(deg, dtype=np.float64)
    if deg.size == 0:
        raise ValueError("empty degree vector")
    if binning not in ("log", "linear"):
        raise ValueError(f"unknown binning {binning!r}")
    pos = deg[deg > 0]
    if include_zero:
        if binning == "log" and pos.size < deg.size:
            raise ValueError("zero degrees cannot be placed in logarithmic bins")
        values = deg
    else:
        if pos.size == 0:
            raise ValueError("all degrees are zero")
        values = pos
    kmax = values.max()

    if binning == "log":
        if ratio <= 1:
            raise ValueError("log bin ratio must exceed 1")
        start = min(1.0, values.min())
        n_bins = max(1, int(math.floor(math.log(kmax / start) / math.log(ratio))) + 1)
        edges = start * ratio ** np.arange(n_bins + 1)
        while edges[-1] <= kmax:  # guard against rounding in the power
            edges = np.append(edges, edges[-1] * ratio)
    else:
        if width <= 0:
            raise ValueError("bin width must be positive")
        start = 0.0 if include_zero else math.floor(values.min() / width) * width
        n_bins = int(math.floor((kmax - start) / width)) + 1
        edges = start + width * np.arange(n_bins + 1)

    idx = np.searchsorted(edges, values, side="right") - 1
    counts = np.bincount(idx, minlength=len(edges) - 1)[: len(edges) - 1]
    widths = np.diff(edges)
    density = counts / (values.size * widths)
    kmin = default_kmin(deg) if pos.size else 0.0
    return DegreeHistogram(edges[:-1], edges[1:], density, binning, int(values.size), kmin)


def fit_power_law(hist: DegreeHistogram, k_min: Optional[float] = None) -> PowerLawFit:
    """Least-squares line through (log centre, log density) of the tail.

    Uses the non-empty bins whose lower edge is at least ``k_min``
    (default: ``hist.default_kmin``).  ``gamma`` is minus the slope.
    """
    if k_min is None:
        k_min = hist.default_kmin
    use = (hist.density > 0) & (hist.k_low >= k_min)
    if np.count_nonzero(use) < 3:
        raise ValueError(f"need at least 3 non-empty bins at k >= {k_min}")
    x = np.log(hist.centres[use])
    y = np.log(hist.density[use])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - np.sum(resid ** 2) / ss_tot if ss_tot > 0 else 1.0
    return PowerLawFit(float(-slope), float(k_min), float(r2), int(use.sum()), float(intercept))


def format_histogram(hist: DegreeHistogram, fit: Optional[PowerLawFit] = None) -> str:
    """Plot-ready ``k_centre density`` lines and a trailing fit comment."""
    lines = [f"{c:.6g} {d:.6e}" for c, d in zip(hist.centres, hist.density) if d > 0]
    if fit is not None:
        lines.append(f"# gamma={fit.gamma:.4f} kmin={fit.k_min:g} r2={fit.r_squared:.4f}")
    return "\n".join(lines) + "\n"
