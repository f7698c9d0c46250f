"""Unit conversions used at the configuration and output boundaries.

Everything inside the package works in SI base units (m, s, rad, W, Hz, J).
"""

from __future__ import annotations

import math

SPEED_OF_LIGHT = 2.998e8  # m/s


def dbm_to_w(p_dbm: float) -> float:
    return 10.0 ** (p_dbm / 10.0) / 1000.0


def w_to_dbm(p_w: float) -> float:
    """Watts to dBm; zero power maps to ``-inf``."""
    if p_w <= 0.0:
        return -math.inf
    return 10.0 * math.log10(p_w * 1000.0)


def db_to_linear(g_db: float) -> float:
    return 10.0 ** (g_db / 10.0)


def linear_to_db(g: float) -> float:
    return 10.0 * math.log10(g)


def wavelength(carrier_hz: float) -> float:
    return SPEED_OF_LIGHT / carrier_hz
