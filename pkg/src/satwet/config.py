"""Flat key/value parameter sets and their conversion to SI domain objects.

Flat keys use engineering units (km, dBm, dB, MHz, degrees). They are the
vocabulary of config files, ``--set`` overrides and sweep axes; nothing
below this layer sees a dB value.
"""

from __future__ import annotations

import configparser
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from satwet.channel import FadingParams
from satwet.energy import (
    GAIN_CONVENTIONS,
    PASS_MODES,
    ArrayConfig,
    LinkBudget,
    PassMode,
    PassResult,
    compute_pass,
)
from satwet.geometry import EARTH_MASS_KG, GRAV_CONST, OrbitGeometry
from satwet.units import db_to_linear, dbm_to_w, linear_to_db, w_to_dbm


class ConfigError(ValueError):
    pass


# Simulation defaults; M = 4 antennas per satellite, ideal harvester circuit.
DEFAULTS: dict[str, Any] = {
    "earth_radius_km": 6378.0,
    "altitude_km": 200.0,
    "grav_const": GRAV_CONST,
    "earth_mass_kg": EARTH_MASS_KG,
    "azimuth_deg": 0.0,
    "tx_power_dbm": 40.0,
    "tx_gain_db": 50.0,
    "rx_gain_db": 10.0,
    "carrier_mhz": 868.0,
    "harvest_efficiency": 0.7,
    "sensitivity_dbm": "ideal",
    "m": 19.4,
    "b0": 0.158,
    "omega": 1.29,
    "num_satellites": 10,
    "antennas_per_satellite": 4,
    "phase_error_var": 0.0,
    "pass_mode": "full",
    "gain_convention": "MN2",
}

VALID_KEYS = tuple(DEFAULTS)
_INT_KEYS = {"num_satellites", "antennas_per_satellite"}
_STR_KEYS = {"pass_mode", "gain_convention"}


def parse_value(key: str, raw: Any) -> Any:
    """Coerce one flat value to its canonical Python type."""
    if key not in DEFAULTS:
        raise ConfigError(f"unknown parameter {key!r}; valid keys: {', '.join(VALID_KEYS)}")
    text = raw.strip() if isinstance(raw, str) else raw
    if key == "sensitivity_dbm":
        if isinstance(text, str) and text.lower() in ("ideal", "none", "-inf"):
            return "ideal"
        if isinstance(text, float) and text == -math.inf:
            return "ideal"
    if key in _STR_KEYS:
        allowed = PASS_MODES if key == "pass_mode" else GAIN_CONVENTIONS
        if text not in allowed:
            raise ConfigError(f"{key} must be one of {allowed}, got {text!r}")
        return text
    try:
        if key in _INT_KEYS:
            number = float(text)
            if not number.is_integer():
                raise ValueError
            return int(number)
        return float(text)
    except (TypeError, ValueError):
        raise ConfigError(f"bad value for {key}: {raw!r}") from None


@dataclass(frozen=True)
class Scenario:
    """A fully resolved parameter set for one pass."""

    geometry: OrbitGeometry = field(default_factory=OrbitGeometry)
    link: LinkBudget = field(default_factory=LinkBudget)
    fading: FadingParams = field(default_factory=FadingParams)
    array: ArrayConfig = field(default_factory=ArrayConfig)
    pass_mode: PassMode = "full"

    @classmethod
    def from_flat(cls, values: Mapping[str, Any] | None = None) -> "Scenario":
        flat = dict(DEFAULTS)
        for key, raw in (values or {}).items():
            flat[key] = parse_value(key, raw)
        flat = {k: parse_value(k, v) for k, v in flat.items()}
        sens = flat["sensitivity_dbm"]
        try:
            return cls(
                geometry=OrbitGeometry(
                    altitude_m=flat["altitude_km"] * 1e3,
                    azimuth_offset_rad=math.radians(flat["azimuth_deg"]),
                    earth_radius_m=flat["earth_radius_km"] * 1e3,
                    grav_const=flat["grav_const"],
                    earth_mass_kg=flat["earth_mass_kg"],
                ),
                link=LinkBudget(
                    tx_power_w=dbm_to_w(flat["tx_power_dbm"]),
                    tx_gain=db_to_linear(flat["tx_gain_db"]),
                    rx_gain=db_to_linear(flat["rx_gain_db"]),
                    carrier_hz=flat["carrier_mhz"] * 1e6,
                    harvest_efficiency=flat["harvest_efficiency"],
                    sensitivity_w=0.0 if sens == "ideal" else dbm_to_w(sens),
                ),
                fading=FadingParams(m=flat["m"], b0=flat["b0"], omega=flat["omega"]),
                array=ArrayConfig(
                    num_satellites=flat["num_satellites"],
                    antennas_per_satellite=flat["antennas_per_satellite"],
                    phase_error_var=flat["phase_error_var"],
                    gain_convention=flat["gain_convention"],
                ),
                pass_mode=flat["pass_mode"],
            )
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def to_flat(self) -> dict[str, Any]:
        g, link, f, a = self.geometry, self.link, self.fading, self.array
        return {
            "earth_radius_km": g.earth_radius_m / 1e3,
            "altitude_km": g.altitude_m / 1e3,
            "grav_const": g.grav_const,
            "earth_mass_kg": g.earth_mass_kg,
            "azimuth_deg": math.degrees(g.azimuth_offset_rad),
            "tx_power_dbm": w_to_dbm(link.tx_power_w),
            "tx_gain_db": linear_to_db(link.tx_gain),
            "rx_gain_db": linear_to_db(link.rx_gain),
            "carrier_mhz": link.carrier_hz / 1e6,
            "harvest_efficiency": link.harvest_efficiency,
            "sensitivity_dbm": "ideal" if link.sensitivity_w == 0.0 else w_to_dbm(link.sensitivity_w),
            "m": f.m,
            "b0": f.b0,
            "omega": f.omega,
            "num_satellites": a.num_satellites,
            "antennas_per_satellite": a.antennas_per_satellite,
            "phase_error_var": a.phase_error_var,
            "pass_mode": self.pass_mode,
            "gain_convention": a.gain_convention,
        }

    def with_flat(self, **overrides: Any) -> "Scenario":
        """Apply flat-key overrides on top of this scenario."""
        flat = self.to_flat()
        flat.update(overrides)
        return Scenario.from_flat(flat)

    def run(self) -> PassResult:
        return compute_pass(self.geometry, self.link, self.fading, self.array, self.pass_mode)


def read_config(path: str | Path) -> tuple[dict[str, str], dict[str, str]]:
    """Read a key/value config file.

    Top-level ``key = value`` lines are parameters; an optional ``[sweep]``
    section describes a sweep. ``#`` starts a comment. Returns
    ``(parameters, sweep_section)`` as raw strings.
    """
    text = Path(path).read_text()
    parser = configparser.ConfigParser(
        comment_prefixes=("#", ";"), inline_comment_prefixes=("#",), interpolation=None
    )
    parser.optionxform = str  # keep key case
    try:
        parser.read_string("[params]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None
    unknown = [s for s in parser.sections() if s not in ("params", "sweep")]
    if unknown:
        raise ConfigError(f"unknown config section(s): {unknown}")
    params = dict(parser["params"])
    for key in params:
        parse_value(key, params[key])
    sweep = dict(parser["sweep"]) if parser.has_section("sweep") else {}
    return params, sweep


def parse_assignments(items: list[str]) -> dict[str, str]:
    """Turn ``["key=value", ...]`` into a dict, validating keys."""
    out: dict[str, str] = {}
    for item in items:
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"override {item!r} is not of the form key=value")
        parse_value(key, value)
        out[key] = value.strip()
    return out
