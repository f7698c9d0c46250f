"""Link budget, harvested energy over a pass, array gain and efficiencies."""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, replace
from typing import Literal

from satwet import quadrature
from satwet.channel import FadingParams, GammaApprox, gamma_params, mean_channel_power
from satwet.geometry import (
    OrbitGeometry,
    angular_velocity,
    cutoff_angle,
    horizon_angle,
)
from satwet.units import dbm_to_w, wavelength

log = logging.getLogger(__name__)

PassMode = Literal["half", "full"]
GainConvention = Literal["MN2", "(MN)^2"]

PASS_MODES = ("half", "full")
GAIN_CONVENTIONS = ("MN2", "(MN)^2")

# Above this received power the linear harvester model is no longer trusted.
SATURATION_WARN_W = dbm_to_w(-3.0)


@dataclass(frozen=True)
class LinkBudget:
    tx_power_w: float = 10.0
    tx_gain: float = 1e5
    rx_gain: float = 10.0
    carrier_hz: float = 868e6
    harvest_efficiency: float = 0.7
    sensitivity_w: float = 0.0  # 0 means an ideal circuit

    def __post_init__(self) -> None:
        for name in ("tx_power_w", "tx_gain", "rx_gain", "carrier_hz"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if not 0.0 < self.harvest_efficiency <= 1.0:
            raise ValueError("harvest_efficiency must lie in (0, 1]")
        if not (math.isfinite(self.sensitivity_w) and self.sensitivity_w >= 0.0):
            raise ValueError("sensitivity_w must be non-negative and finite")

    @property
    def eirp_product(self) -> float:
        """P_t * G_T * G_R."""
        return self.tx_power_w * self.tx_gain * self.rx_gain


@dataclass(frozen=True)
class ArrayConfig:
    num_satellites: int = 10
    antennas_per_satellite: int = 4
    phase_error_var: float = 0.0
    gain_convention: GainConvention = "MN2"

    def __post_init__(self) -> None:
        if self.num_satellites < 1 or self.antennas_per_satellite < 1:
            raise ValueError("num_satellites and antennas_per_satellite must be >= 1")
        if not self.phase_error_var >= 0.0:
            raise ValueError("phase_error_var must be non-negative")
        if self.gain_convention not in GAIN_CONVENTIONS:
            raise ValueError(f"gain_convention must be one of {GAIN_CONVENTIONS}")


@dataclass(frozen=True)
class PassResult:
    window_s: float
    cutoff_distance_m: float
    cutoff_angle_rad: float
    harvested_j: float
    upper_bound_j: float
    efficiency: float
    window_limited_by: Literal["sensitivity", "horizon", "none"]
    visible: bool
    array_gain: float
    peak_received_w: float
    pass_mode: PassMode
    warnings: tuple[str, ...] = ()

    @property
    def feasible(self) -> bool:
        return self.harvested_j > 0.0

    def to_dict(self) -> dict:
        out = asdict(self)
        out["warnings"] = list(self.warnings)
        return out


def mu_coefficient(link: LinkBudget, approx: GammaApprox) -> float:
    """eta_h * P_t G_T G_R * (lambda / 4 pi)**2 * mean channel gain, in W m^2."""
    lam = wavelength(link.carrier_hz)
    return (
        link.harvest_efficiency
        * link.eirp_product
        * (lam / (4.0 * math.pi)) ** 2
        * mean_channel_power(approx)
    )


def received_power(
    link: LinkBudget, approx: GammaApprox, distance_m: float, array_gain: float = 1.0
) -> float:
    """Mean received RF power (before harvester efficiency) at ``distance_m``."""
    if not distance_m > 0.0:
        raise ValueError("distance_m must be positive")
    lam = wavelength(link.carrier_hz)
    return (
        array_gain
        * link.eirp_product
        * (lam / (4.0 * math.pi * distance_m)) ** 2
        * mean_channel_power(approx)
    )


def harvested_power(received_w: float, link: LinkBudget) -> float:
    if received_w < link.sensitivity_w:
        return 0.0
    return link.harvest_efficiency * received_w


def cutoff_distance(link: LinkBudget, approx: GammaApprox, array_gain: float = 1.0) -> float:
    """Distance at which received power equals the sensitivity; ``inf`` for an ideal circuit."""
    if link.sensitivity_w == 0.0:
        return math.inf
    lam = wavelength(link.carrier_hz)
    return (lam / (4.0 * math.pi)) * math.sqrt(
        array_gain * link.eirp_product * mean_channel_power(approx) / link.sensitivity_w
    )


def _check_mode(pass_mode: str) -> int:
    if pass_mode not in PASS_MODES:
        raise ValueError(f"pass_mode must be one of {PASS_MODES}, got {pass_mode!r}")
    return 2 if pass_mode == "full" else 1


def closed_form_integral(a: float, b: float, omega: float, mu: float, window_s: float,
                         a_minus_b: float | None = None) -> float:
    """mu * integral_0^T dt / (a - b cos(omega t)) via the tangent half-angle substitution.

    ``a_minus_b`` may be supplied when it is known more accurately than the
    direct difference.
    """
    x = omega * window_s
    if window_s < 0.0:
        raise ValueError("window_s must be non-negative")
    if x >= math.pi:
        raise ValueError("omega * window_s must stay below pi")
    if window_s == 0.0:
        return 0.0
    amb = a - b if a_minus_b is None else a_minus_b
    apb = a + b
    root = math.sqrt(amb * apb)
    return 2.0 * mu / (omega * root) * math.atan(math.sqrt(apb / amb) * math.tan(x / 2.0))


def numeric_integral(a: float, b: float, omega: float, mu: float, window_s: float,
                     rel_tol: float = 1e-10) -> float:
    """Same integral as :func:`closed_form_integral`, by adaptive quadrature."""
    if not 0.0 < rel_tol <= 1e-3:
        raise ValueError("rel_tol must lie in (0, 1e-3]")
    if window_s == 0.0:
        return 0.0
    value, _ = quadrature.integrate(
        lambda t: mu / (a - b * math.cos(omega * t)), 0.0, window_s, rel_tol=rel_tol
    )
    return value


def closed_form_energy(geom: OrbitGeometry, mu: float, window_s: float,
                       pass_mode: PassMode = "full") -> float:
    """Energy harvested within ``window_s`` of closest approach (one side, or both)."""
    factor = _check_mode(pass_mode)
    a, b = geom.constants()
    e = closed_form_integral(a, b, angular_velocity(geom), mu, window_s,
                             a_minus_b=geom.closest_approach_sq())
    return factor * e


def numeric_energy(geom: OrbitGeometry, mu: float, window_s: float,
                   pass_mode: PassMode = "full", rel_tol: float = 1e-10) -> float:
    factor = _check_mode(pass_mode)
    a, b = geom.constants()
    return factor * numeric_integral(a, b, angular_velocity(geom), mu, window_s, rel_tol)


def in_plane_energy(geom: OrbitGeometry, mu: float, window_s: float) -> float:
    """Half-pass energy for a device on the ground track, in arccot form.

    Ignores ``geom.azimuth_offset_rad``; this is the zero-offset expression.
    """
    if window_s == 0.0:
        return 0.0
    h, r = geom.altitude_m, geom.earth_radius_m
    w = angular_velocity(geom)
    cot = 1.0 / math.tan(w * window_s / 2.0)
    return mu * (math.pi - 2.0 * math.atan(h * cot / (h + 2.0 * r))) / (h * h * w + 2.0 * h * r * w)


def coherent_gain(cfg: ArrayConfig) -> float:
    """Array gain with perfect phase alignment."""
    return array_gain(replace(cfg, phase_error_var=0.0))


def array_gain(cfg: ArrayConfig) -> float:
    """Power gain of the grid under i.i.d. per-satellite phase errors.

    Self terms add incoherently, cross terms are attenuated by
    ``exp(-phase_error_var)``. With zero error this is ``M*N**2`` (or
    ``(M*N)**2`` under the alternative convention).
    """
    n, m = cfg.num_satellites, cfg.antennas_per_satellite
    per_sat = m if cfg.gain_convention == "MN2" else m * m
    return per_sat * (n + n * (n - 1) * math.exp(-cfg.phase_error_var))


def misalignment_efficiency(cfg: ArrayConfig) -> float:
    n = cfg.num_satellites
    return (1.0 + (n - 1) * math.exp(-cfg.phase_error_var)) / n


def mrt_upper_bound(geom: OrbitGeometry, mu: float, cfg: ArrayConfig, window_s: float) -> float:
    """Full-pass, zero-offset, phase-aligned energy bound.

    ``mu`` is the single-antenna coefficient; the coherent array gain is
    applied here. The offset and phase error stored in ``geom``/``cfg``
    are ignored.
    """
    return 2.0 * coherent_gain(cfg) * in_plane_energy(geom, mu, window_s)


def compute_pass(geom: OrbitGeometry, link: LinkBudget, fading: FadingParams,
                 cfg: ArrayConfig, pass_mode: PassMode = "full") -> PassResult:
    _check_mode(pass_mode)
    approx = gamma_params(fading)
    gain = array_gain(cfg)
    d_c = cutoff_distance(link, approx, gain)
    theta_c = cutoff_angle(geom, d_c)
    theta_h = horizon_angle(geom)
    omega = angular_velocity(geom)
    window = min(theta_c, theta_h) / omega

    if window == 0.0:
        limited_by = "none"
    elif theta_c < theta_h:
        limited_by = "sensitivity"
    else:
        limited_by = "horizon"

    mu_single = mu_coefficient(link, approx)
    mu = gain * mu_single
    harvested = closed_form_energy(geom, mu, window, pass_mode)
    ideal = closed_form_energy(geom, mu, theta_h / omega, pass_mode)
    efficiency = min(1.0, harvested / ideal) if ideal > 0.0 else 0.0
    bound = mrt_upper_bound(geom, mu_single, cfg, window)

    peak = received_power(link, approx, math.sqrt(geom.closest_approach_sq()), gain)
    notes: list[str] = []
    if theta_h == 0.0:
        notes.append("no-visibility")
    if peak > SATURATION_WARN_W:
        msg = "received-power-above-minus-3dBm"
        log.debug("peak received power %.3g W exceeds the linear harvester region", peak)
        notes.append(msg)

    return PassResult(
        window_s=window,
        cutoff_distance_m=d_c,
        cutoff_angle_rad=theta_c,
        harvested_j=harvested,
        upper_bound_j=bound,
        efficiency=efficiency,
        window_limited_by=limited_by,
        visible=theta_h > 0.0,
        array_gain=gain,
        peak_received_w=peak,
        pass_mode=pass_mode,
        warnings=tuple(notes),
    )


def charging_efficiency(geom: OrbitGeometry, link: LinkBudget, fading: FadingParams,
                        cfg: ArrayConfig, pass_mode: PassMode = "full") -> float:
    """Harvested energy relative to an ideal zero-threshold circuit on the same pass."""
    actual = compute_pass(geom, link, fading, cfg, pass_mode).harvested_j
    ideal = compute_pass(geom, replace(link, sensitivity_w=0.0), fading, cfg, pass_mode).harvested_j
    if ideal <= 0.0:
        return 0.0
    return min(1.0, actual / ideal)

