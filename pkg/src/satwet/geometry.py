"""Pass geometry for a circular orbit seen from a fixed ground device.

Time ``t = 0`` is the closest-approach (zenith-crossing) instant and the
pass is symmetric about it. The device sits at a constant angular offset
``azimuth_offset_rad`` from the orbital plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EARTH_RADIUS_M = 6.378e6
GRAV_CONST = 6.67e-11
EARTH_MASS_KG = 5.97e24


@dataclass(frozen=True)
class OrbitGeometry:
    altitude_m: float = 200e3
    azimuth_offset_rad: float = 0.0
    earth_radius_m: float = EARTH_RADIUS_M
    grav_const: float = GRAV_CONST
    earth_mass_kg: float = EARTH_MASS_KG

    def __post_init__(self) -> None:
        for name in ("earth_radius_m", "altitude_m", "grav_const", "earth_mass_kg"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        phi = self.azimuth_offset_rad
        if not (math.isfinite(phi) and 0.0 <= phi < math.pi / 2):
            raise ValueError(f"azimuth_offset_rad must lie in [0, pi/2), got {phi!r}")

    @property
    def orbit_radius_m(self) -> float:
        return self.earth_radius_m + self.altitude_m

    def constants(self) -> tuple[float, float]:
        """Return ``(A, B)`` such that ``d(t)**2 = A - B*cos(omega*t)``."""
        r, rs = self.earth_radius_m, self.orbit_radius_m
        return rs * rs + r * r, 2.0 * rs * r * math.cos(self.azimuth_offset_rad)

    def closest_approach_sq(self) -> float:
        """``A - B`` evaluated without cancellation (equals ``H**2`` at zero offset)."""
        r, rs = self.earth_radius_m, self.orbit_radius_m
        s = math.sin(self.azimuth_offset_rad / 2.0)
        return self.altitude_m**2 + 4.0 * r * rs * s * s


def angular_velocity(geom: OrbitGeometry) -> float:
    """Orbital angular rate sqrt(G*M / (R+H)**3) in rad/s."""
    return math.sqrt(geom.grav_const * geom.earth_mass_kg / geom.orbit_radius_m**3)


def slant_range(geom: OrbitGeometry, t: float) -> float:
    """Satellite-to-device distance ``t`` seconds from closest approach."""
    _, b = geom.constants()
    s = math.sin(angular_velocity(geom) * t / 2.0)
    # A - B*cos(x) == (A - B) + 2*B*sin(x/2)**2
    return math.sqrt(geom.closest_approach_sq() + 2.0 * b * s * s)


def horizon_angle(geom: OrbitGeometry) -> float:
    """Orbital angle at which the satellite sets below the device horizon.

    Returns 0 when the pass never rises above the horizon.
    """
    arg = geom.earth_radius_m / (geom.orbit_radius_m * math.cos(geom.azimuth_offset_rad))
    if arg >= 1.0:
        return 0.0
    return math.acos(arg)


def cutoff_angle(geom: OrbitGeometry, cutoff_distance_m: float) -> float:
    """Orbital angle at which the slant range reaches ``cutoff_distance_m``.

    Clamped to 0 if the distance is shorter than the closest approach and
    to pi if it is never reached within the half orbit. An infinite
    distance gives pi.
    """
    if cutoff_distance_m < 0.0:
        raise ValueError("cutoff_distance_m must be non-negative")
    _, b = geom.constants()
    if math.isinf(cutoff_distance_m):
        return math.pi
    # 1 - cos(theta) computed directly to keep small angles accurate
    one_minus_cos = (cutoff_distance_m**2 - geom.closest_approach_sq()) / b
    if one_minus_cos <= 0.0:
        return 0.0
    if one_minus_cos >= 2.0:
        return math.pi
    return 2.0 * math.asin(math.sqrt(one_minus_cos / 2.0))


def charging_window(geom: OrbitGeometry, cutoff_distance_m: float) -> float:
    """Half-pass charging duration limited by sensitivity and by the horizon."""
    theta = min(cutoff_angle(geom, cutoff_distance_m), horizon_angle(geom))
    return theta / angular_velocity(geom)
