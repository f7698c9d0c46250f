"""Feasibility limits: smallest grid, highest carrier, highest orbit.

A configuration is feasible when the pass harvests a non-zero amount of
energy. Every predicate used here is monotone in its free variable, so the
limits are found by bracketing and bisection.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Literal

from satwet.config import Scenario

Outcome = Literal["found", "cap", "infeasible"]

DEFAULT_MAX_SATELLITES = 10_000
DEFAULT_FREQ_RANGE_HZ = (100e6, 100e9)
DEFAULT_ALTITUDE_RANGE_M = (160e3, 36_000e3)
FREQ_RESOLUTION_HZ = 1e6
ALTITUDE_RESOLUTION_M = 1e3


@dataclass(frozen=True)
class Feasibility:
    """Result of a feasibility search.

    ``outcome`` is ``"found"`` when ``value`` is a genuine limit,
    ``"cap"`` when the predicate still holds (min-type: still fails) at the
    search cap, and ``"infeasible"`` when a max-type search fails already
    at its lower bound. ``value`` is ``None`` unless found.
    """

    free_variable: str
    outcome: Outcome
    value: float | int | None
    bracket: tuple[float, float]
    evaluations: int


def is_feasible(scenario: Scenario) -> bool:
    return scenario.run().harvested_j > 0.0


class _Counter:
    def __init__(self, pred: Callable[[float], bool]):
        self.pred = pred
        self.calls = 0

    def __call__(self, x: float) -> bool:
        self.calls += 1
        return self.pred(x)


def _with_satellites(base: Scenario, n: int) -> Scenario:
    return replace(base, array=replace(base.array, num_satellites=n))


def _with_carrier(base: Scenario, f: float) -> Scenario:
    return replace(base, link=replace(base.link, carrier_hz=f))


def _with_altitude(base: Scenario, h: float) -> Scenario:
    return replace(base, geometry=replace(base.geometry, altitude_m=h))


def min_satellites(base: Scenario, cap: int = DEFAULT_MAX_SATELLITES) -> Feasibility:
    """Smallest grid size that harvests any energy (exponential then binary search)."""
    pred = _Counter(lambda n: is_feasible(_with_satellites(base, int(n))))
    if pred(1):
        return Feasibility("num_satellites", "found", 1, (1, 1), pred.calls)
    lo, hi = 1, 2
    while not pred(hi):
        if hi >= cap:
            return Feasibility("num_satellites", "cap", None, (1, cap), pred.calls)
        lo, hi = hi, min(2 * hi, cap)
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid
    return Feasibility("num_satellites", "found", hi, (lo, hi), pred.calls)


def _bisect_max(pred: Callable[[float], bool], lo: float, hi: float, resolution: float,
                name: str) -> Feasibility:
    counted = _Counter(pred)
    if not counted(lo):
        return Feasibility(name, "infeasible", None, (lo, hi), counted.calls)
    if counted(hi):
        return Feasibility(name, "cap", None, (lo, hi), counted.calls)
    a, b = lo, hi  # pred(a) true, pred(b) false
    while b - a > resolution:
        mid = 0.5 * (a + b)
        if counted(mid):
            a = mid
        else:
            b = mid
    return Feasibility(name, "found", a, (lo, hi), counted.calls)


def max_frequency(base: Scenario, search: tuple[float, float] = DEFAULT_FREQ_RANGE_HZ,
                  resolution: float = FREQ_RESOLUTION_HZ) -> Feasibility:
    """Highest carrier frequency (Hz) with non-zero harvest."""
    return _bisect_max(lambda f: is_feasible(_with_carrier(base, f)),
                       search[0], search[1], resolution, "carrier_hz")


def max_altitude(base: Scenario, search: tuple[float, float] = DEFAULT_ALTITUDE_RANGE_M,
                 resolution: float = ALTITUDE_RESOLUTION_M) -> Feasibility:
    """Highest orbit altitude (m) with non-zero harvest."""
    return _bisect_max(lambda h: is_feasible(_with_altitude(base, h)),
                       search[0], search[1], resolution, "altitude_m")


SOLVERS = {
    "min-satellites": min_satellites,
    "max-frequency": max_frequency,
    "max-altitude": max_altitude,
}


def format_value(result: Feasibility) -> str:
    if result.value is None:
        return result.outcome
    if result.free_variable == "carrier_hz":
        return f"{result.value / 1e6:.3f} MHz"
    if result.free_variable == "altitude_m":
        return f"{result.value / 1e3:.3f} km"
    return str(result.value)

