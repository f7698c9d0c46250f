"""Print the feasibility limits next to the values quoted in the text.

The "practical" circuit uses a -10 dBm sensitivity.
"""

from dataclasses import replace

from satwet.config import Scenario
from satwet.solvers import format_value, max_altitude, max_frequency, min_satellites

ROWS = [
    ("min satellites, P_th=-10 dBm", min_satellites, {"sensitivity_dbm": -10}, "9"),
    ("min satellites, P_th=-5 dBm", min_satellites, {"sensitivity_dbm": -5}, "16"),
    ("max frequency, N=10", max_frequency, {"sensitivity_dbm": -10, "num_satellites": 10}, "950 MHz"),
    ("max frequency, N=20", max_frequency, {"sensitivity_dbm": -10, "num_satellites": 20}, "1.9 GHz"),
    ("max altitude, N=10", max_altitude, {"sensitivity_dbm": -10, "num_satellites": 10}, "220 km"),
    ("max altitude, N=20", max_altitude, {"sensitivity_dbm": -10, "num_satellites": 20}, "440 km"),
]


def highest_carrier_above(energy_j: float, base: Scenario) -> float:
    """Highest carrier (Hz) at which the pass still harvests ``energy_j``; energy falls with f."""
    lo, hi = 50e6, 5e9
    while hi - lo > 1e5:
        mid = 0.5 * (lo + hi)
        if replace(base, link=replace(base.link, carrier_hz=mid)).run().harvested_j > energy_j:
            lo = mid
        else:
            hi = mid
    return lo


def main() -> None:
    width = max(len(r[0]) for r in ROWS)
    for label, solver, flat, quoted in ROWS:
        result = solver(Scenario.from_flat(flat))
        print(f"{label:<{width}}  model {format_value(result):>14}   quoted {quoted}")

    ideal = Scenario.from_flat()
    print(f"\nN=10, M=4, ideal circuit, 868 MHz: {ideal.run().harvested_j * 1e3:.3f} mJ per full pass")
    f10 = highest_carrier_above(10e-3, ideal)
    print(f"pass energy exceeds 10 mJ below {f10 / 1e6:.1f} MHz")


if __name__ == "__main__":
    main()
