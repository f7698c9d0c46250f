"""Exit criteria for the package, one test per criterion.

Each test records a PASS/FAIL line that is printed in the terminal summary.
"""

import math
import time
from contextlib import contextmanager
from dataclasses import replace

import numpy as np

from conftest import ACCEPTANCE_LINES
from satwet.channel import FadingParams, gamma_params, mean_channel_power, sample_channel_power
from satwet.cli import main
from satwet.config import Scenario
from satwet.energy import (
    ArrayConfig,
    LinkBudget,
    array_gain,
    closed_form_energy,
    compute_pass,
    in_plane_energy,
    misalignment_efficiency,
    numeric_energy,
    received_power,
)
from satwet.geometry import OrbitGeometry, angular_velocity, horizon_angle
from satwet.scenario import csv_body
from satwet.solvers import max_altitude, max_frequency, min_satellites
from satwet.units import dbm_to_w, w_to_dbm
from satwet.validation import random_pass_tuples


@contextmanager
def criterion(number: int, title: str, budget_s: float):
    """Time the body, record one summary line, and enforce the runtime budget."""
    detail: dict[str, str] = {}
    start = time.perf_counter()
    ok = False
    try:
        yield detail
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = elapsed < budget_s
        status = "PASS" if ok and within else "FAIL"
        ACCEPTANCE_LINES.append(
            f"[{status}] C{number:<2} {title}: {detail.get('msg', '')} ({elapsed:.2f}s / {budget_s:g}s)"
        )
    assert within, f"runtime {elapsed:.2f}s exceeds {budget_s}s"


def test_c01_closed_form_matches_quadrature():
    with criterion(1, "closed form vs quadrature, 1000 tuples", 10.0) as d:
        worst = 0.0
        for geom, mu, window in random_pass_tuples(1000, seed=12345):
            exact = closed_form_energy(geom, mu, window, "full")
            oracle = numeric_energy(geom, mu, window, "full", rel_tol=1e-11)
            worst = max(worst, abs(exact - oracle) / oracle)
        d["msg"] = f"worst rel err {worst:.2e} (tol 1e-9)"
        assert worst <= 1e-9


def test_c02_zero_offset_identity():
    with criterion(2, "general form == in-plane form at zero offset", 1.0) as d:
        rng = np.random.default_rng(99)
        worst = 0.0
        for _ in range(100):
            geom = OrbitGeometry(altitude_m=float(rng.uniform(160e3, 2000e3)))
            window = float(rng.uniform(1e-3, 1.0)) * horizon_angle(geom) / angular_velocity(geom)
            general = closed_form_energy(geom, 1.0, window, "half")
            special = in_plane_energy(geom, 1.0, window)
            worst = max(worst, abs(general - special) / special)
        d["msg"] = f"worst rel err {worst:.2e} (tol 1e-12)"
        assert worst <= 1e-12


def test_c03_minimum_constellation_size():
    with criterion(3, "min satellites 9 / 16 (+-1)", 5.0) as d:
        n10 = min_satellites(Scenario.from_flat({"sensitivity_dbm": -10})).value
        n5 = min_satellites(Scenario.from_flat({"sensitivity_dbm": -5})).value
        d["msg"] = f"P_th=-10 dBm -> {n10}, P_th=-5 dBm -> {n5}"
        assert abs(n10 - 9) <= 1
        assert abs(n5 - 16) <= 1


def test_c04_maximum_frequency():
    with criterion(4, "max frequency 950 MHz / 1.9 GHz (+-10%)", 5.0) as d:
        f10 = max_frequency(Scenario.from_flat({"sensitivity_dbm": -10, "num_satellites": 10})).value
        f20 = max_frequency(Scenario.from_flat({"sensitivity_dbm": -10, "num_satellites": 20})).value
        d["msg"] = f"N=10 -> {f10 / 1e6:.1f} MHz, N=20 -> {f20 / 1e6:.1f} MHz"
        assert abs(f10 - 950e6) <= 0.1 * 950e6
        assert abs(f20 - 1.9e9) <= 0.1 * 1.9e9


def test_c05_maximum_altitude():
    with criterion(5, "max altitude 220 / 440 km (+-10%)", 5.0) as d:
        h10 = max_altitude(Scenario.from_flat({"sensitivity_dbm": -10, "num_satellites": 10})).value
        h20 = max_altitude(Scenario.from_flat({"sensitivity_dbm": -10, "num_satellites": 20})).value
        d["msg"] = f"N=10 -> {h10 / 1e3:.1f} km, N=20 -> {h20 / 1e3:.1f} km"
        assert abs(h10 - 220e3) <= 0.1 * 220e3
        assert abs(h20 - 440e3) <= 0.1 * 440e3


def test_c06_received_power_spot_check():
    with criterion(6, "received power N=20, d=200 km ~ -3 dBm (+-1 dB)", 1.0) as d:
        gain = array_gain(ArrayConfig(num_satellites=20, antennas_per_satellite=4))
        p = w_to_dbm(received_power(LinkBudget(), gamma_params(FadingParams()), 200e3, gain))
        d["msg"] = f"{p:.2f} dBm"
        assert abs(p - (-3.0)) <= 1.0


def test_c07_headline_energy():
    with criterion(7, "E_h > 10 mJ, N=10, M=4, ideal, 868 MHz", 1.0) as d:
        res = Scenario.from_flat().run()
        d["msg"] = f"E_h = {res.harvested_j * 1e3:.3f} mJ"
        assert res.harvested_j > 10e-3


def test_c08_channel_oracle():
    with criterion(8, "Monte-Carlo mean within 3 SE of 1.606; identity 1e-12", 5.0) as d:
        fading = FadingParams()
        approx = gamma_params(fading)
        mean = mean_channel_power(approx)
        n = 1_000_000
        draws = sample_channel_power(approx, seed=20240601, n=n)
        se = math.sqrt(approx.alpha_s) * approx.beta_s / math.sqrt(n)
        z = abs(draws.mean() - 1.606) / se
        ident = abs(mean - (2 * fading.b0 + fading.omega)) / mean
        d["msg"] = f"sample mean {draws.mean():.5f}, z = {z:.2f}, identity err {ident:.1e}"
        assert z <= 3.0
        assert ident <= 1e-12


def _non_decreasing(xs):
    return all(b >= a * (1 - 1e-12) for a, b in zip(xs, xs[1:]))


def _non_increasing(xs):
    return all(b <= a * (1 + 1e-12) for a, b in zip(xs, xs[1:]))


def test_c09_monotonicity_suite():
    with criterion(9, "monotonicity, efficiency range, misalignment limits", 10.0) as d:
        checks = {}
        for p_th in ("ideal", -10.0):
            base = Scenario.from_flat({"sensitivity_dbm": p_th, "num_satellites": 20})
            tag = f"[P_th={p_th}]"

            def energy(**flat):
                return base.with_flat(**flat).run().harvested_j

            checks[f"N {tag}"] = _non_decreasing([energy(num_satellites=n) for n in range(1, 61)])
            checks[f"M {tag}"] = _non_decreasing([energy(antennas_per_satellite=m) for m in range(1, 33)])
            checks[f"P_t {tag}"] = _non_decreasing([energy(tx_power_dbm=p) for p in np.arange(20, 60, 0.25)])
            checks[f"f {tag}"] = _non_increasing([energy(carrier_mhz=f) for f in np.arange(100, 5000, 20)])
            checks[f"phi {tag}"] = _non_increasing([energy(azimuth_deg=a) for a in np.arange(0, 10, 0.05)])
            checks[f"sigma {tag}"] = _non_increasing([energy(phase_error_var=v) for v in np.arange(0, 6, 0.05)])

            effs = [
                base.with_flat(azimuth_deg=a, num_satellites=n).run().efficiency
                for a in np.arange(0, 5, 0.25) for n in (5, 10, 20, 40)
            ]
            checks[f"eta_c in [0,1] {tag}"] = all(0.0 <= e <= 1.0 for e in effs)

        base = Scenario.from_flat({"sensitivity_dbm": -10.0, "num_satellites": 20})
        checks["P_th"] = _non_increasing(
            [base.with_flat(sensitivity_dbm=p).run().harvested_j for p in np.arange(-40, 0, 0.25)])
        geom = base.geometry
        t_max = horizon_angle(geom) / angular_velocity(geom)
        checks["T"] = _non_decreasing(
            [closed_form_energy(geom, 1.0, t) for t in np.linspace(0, t_max, 400)])

        for n in (1, 2, 10, 50):
            cfg = ArrayConfig(n, 4)
            checks[f"misalign(0)=1 N={n}"] = abs(misalignment_efficiency(cfg) - 1.0) <= 1e-6
            big = replace(cfg, phase_error_var=60.0)
            checks[f"misalign(inf)=1/N N={n}"] = abs(misalignment_efficiency(big) - 1.0 / n) <= 1e-6

        failed = [k for k, v in checks.items() if not v]
        d["msg"] = f"{len(checks) - len(failed)}/{len(checks)} checks" + (f", failed: {failed}" if failed else "")
        assert not failed


def test_c10_figure_determinism(tmp_path):
    with criterion(10, "figure fig2 CSV bodies byte-identical", 5.0) as d:
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["figure", "fig2", "-o", str(a)]) == 0
        assert main(["figure", "fig2", "-o", str(b)]) == 0
        same = csv_body(a.read_text()).encode() == csv_body(b.read_text()).encode()
        d["msg"] = f"{len(csv_body(a.read_text()).splitlines())} lines, identical={same}"
        assert same
