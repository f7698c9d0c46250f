"""Self-checks run by ``satwet validate``.

Each check compares an analytic result against an independent route
(adaptive quadrature, an algebraic identity, or Monte-Carlo sampling).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from satwet.channel import FadingParams, gamma_params, mean_channel_power, sample_channel_power
from satwet.energy import closed_form_energy, in_plane_energy, numeric_energy
from satwet.geometry import OrbitGeometry, angular_velocity, horizon_angle


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def random_pass_tuples(n: int, seed: int = 0):
    """Yield ``(geom, mu, window_s)`` with H in [160, 2000] km, offset in [0, 5] deg."""
    rng = np.random.default_rng(seed)
    produced = 0
    while produced < n:
        geom = OrbitGeometry(
            altitude_m=float(rng.uniform(160e3, 2000e3)),
            azimuth_offset_rad=math.radians(float(rng.uniform(0.0, 5.0))),
        )
        theta_h = horizon_angle(geom)
        if theta_h == 0.0:
            continue
        window = float(rng.uniform(0.0, 1.0)) * theta_h / angular_velocity(geom)
        if window == 0.0:
            continue
        mu = float(10.0 ** rng.uniform(3.0, 8.0))
        produced += 1
        yield geom, mu, window


def check_closed_form(n: int = 1000, seed: int = 0, tol: float = 1e-9) -> CheckResult:
    worst = 0.0
    for geom, mu, window in random_pass_tuples(n, seed):
        exact = closed_form_energy(geom, mu, window, "half")
        oracle = numeric_energy(geom, mu, window, "half", rel_tol=1e-11)
        worst = max(worst, abs(exact - oracle) / oracle)
    return CheckResult("closed-form-vs-quadrature", worst <= tol,
                       f"n={n} worst_rel_err={worst:.3e} tol={tol:g}")


def check_in_plane_identity(n: int = 100, seed: int = 1, tol: float = 1e-12) -> CheckResult:
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n):
        geom = OrbitGeometry(altitude_m=float(rng.uniform(160e3, 2000e3)))
        window = float(rng.uniform(1e-3, 1.0)) * horizon_angle(geom) / angular_velocity(geom)
        general = closed_form_energy(geom, 1.0, window, "half")
        special = in_plane_energy(geom, 1.0, window)
        worst = max(worst, abs(general - special) / special)
    return CheckResult("zero-offset-identity", worst <= tol,
                       f"n={n} worst_rel_err={worst:.3e} tol={tol:g}")


def check_channel_mean(n: int = 1_000_000, seed: int = 2024) -> CheckResult:
    fading = FadingParams()
    approx = gamma_params(fading)
    mean = mean_channel_power(approx)
    identity_err = abs(mean - (2 * fading.b0 + fading.omega)) / mean
    draws = sample_channel_power(approx, seed, n)
    stderr = math.sqrt(approx.alpha_s) * approx.beta_s / math.sqrt(n)
    z = abs(float(draws.mean()) - mean) / stderr
    ok = z <= 3.0 and identity_err <= 1e-12
    return CheckResult("channel-monte-carlo", ok,
                       f"n={n} sample_mean={draws.mean():.6f} analytic={mean:.6f} z={z:.2f} "
                       f"identity_rel_err={identity_err:.1e}")


def run_all(quick: bool = False) -> list[CheckResult]:
    return [
        check_closed_form(n=200 if quick else 1000),
        check_in_plane_identity(),
        check_channel_mean(n=100_000 if quick else 1_000_000),
    ]
