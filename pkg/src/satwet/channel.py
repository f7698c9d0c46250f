"""Shadowed-Rician fading and its moment-matched gamma surrogate."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class FadingParams:
    """Shadowed-Rician parameters.

    Attributes
    ----------
    m : float
        Shadowing severity (Nakagami parameter of the LoS amplitude).
    b0 : float
        Average power of the scatter component.
    omega : float
        Average power of the line-of-sight component.
    """

    m: float = 19.4
    b0: float = 0.158
    omega: float = 1.29

    def __post_init__(self) -> None:
        if not (math.isfinite(self.m) and self.m > 0.0):
            raise ValueError(f"m must be positive and finite, got {self.m!r}")
        if not (math.isfinite(self.b0) and self.b0 > 0.0):
            raise ValueError(f"b0 must be positive and finite, got {self.b0!r}")
        if not (math.isfinite(self.omega) and self.omega >= 0.0):
            raise ValueError(f"omega must be non-negative and finite, got {self.omega!r}")


@dataclass(frozen=True)
class GammaApprox:
    alpha_s: float
    beta_s: float

    def __post_init__(self) -> None:
        if not (self.alpha_s > 0.0 and self.beta_s > 0.0):
            raise ValueError("gamma shape and scale must be positive")


def gamma_params(fading: FadingParams) -> GammaApprox:
    m, b0, om = fading.m, fading.b0, fading.omega
    mean = 2.0 * b0 + om
    denom = 4.0 * m * b0 * b0 + 4.0 * m * b0 * om + om * om
    return GammaApprox(alpha_s=m * mean * mean / denom, beta_s=denom / (m * mean))


def mean_channel_power(approx: GammaApprox) -> float:
    return approx.alpha_s * approx.beta_s


def sample_channel_power(approx: GammaApprox, seed: int, n: int) -> np.ndarray:
    """Draw ``n`` i.i.d. channel power gains from the gamma surrogate.

    Output is fully determined by ``seed``. Used only as a Monte-Carlo
    check of :func:`mean_channel_power`; the energy pipeline never samples.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(seed)
    return rng.gamma(shape=approx.alpha_s, scale=approx.beta_s, size=n)
