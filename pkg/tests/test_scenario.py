import json
import math

import pytest

from satwet.config import ConfigError, Scenario, parse_assignments, read_config
from satwet.scenario import (
    FIGURES,
    Overlay,
    SweepSpec,
    builtin_figure,
    csv_body,
    frange,
    parse_overlays,
    parse_values,
    run_sweep,
    spec_from_config,
    to_csv,
    to_json,
)


def test_defaults_round_trip():
    scenario = Scenario.from_flat()
    assert scenario.geometry.altitude_m == 200e3
    assert scenario.link.tx_power_w == pytest.approx(10.0)
    assert scenario.link.tx_gain == pytest.approx(1e5)
    assert scenario.link.sensitivity_w == 0.0
    assert scenario.array.antennas_per_satellite == 4
    again = Scenario.from_flat(scenario.to_flat())
    assert again.run().harvested_j == pytest.approx(scenario.run().harvested_j, rel=1e-12)


def test_unknown_and_bad_keys_rejected():
    with pytest.raises(ConfigError, match="valid keys"):
        Scenario.from_flat({"altitude": 300})
    with pytest.raises(ConfigError):
        Scenario.from_flat({"num_satellites": 2.5})
    with pytest.raises(ConfigError):
        Scenario.from_flat({"pass_mode": "double"})
    with pytest.raises(ConfigError):
        Scenario.from_flat({"azimuth_deg": 95})
    with pytest.raises(ConfigError):
        parse_assignments(["altitude_km"])


def test_read_config(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(
        "# profile\naltitude_km = 300\nsensitivity_dbm = -10  # practical\n"
        "[sweep]\naxis = num_satellites\nvalues = 1:5:1\n"
        "overlays = near: azimuth_deg=0; far: azimuth_deg=1\noutputs = harvested_j, window_s\n"
    )
    params, sweep = read_config(path)
    assert params == {"altitude_km": "300", "sensitivity_dbm": "-10"}
    spec = spec_from_config(params, sweep)
    assert spec.values == (1, 2, 3, 4, 5)
    assert [o.label for o in spec.overlays] == ["near", "far"]
    result = run_sweep(spec)
    assert result.columns == ("num_satellites", "near:harvested_j", "near:window_s", "near:status",
                              "far:harvested_j", "far:window_s", "far:status")
    assert result.metadata["parameters"]["altitude_km"] == 300.0


def test_read_config_rejects_unknown_key(tmp_path):
    path = tmp_path / "bad.cfg"
    path.write_text("altitude_kms = 300\n")
    with pytest.raises(ConfigError):
        read_config(path)


def test_parsers():
    assert frange(0, 1, 0.1)[-1] == 1.0 and len(frange(0, 1, 0.1)) == 11
    assert parse_values("1, 2,4") == (1.0, 2.0, 4.0)
    ov = parse_overlays("sensitivity_dbm=-10,azimuth_deg=1")
    assert ov[0].overrides == {"sensitivity_dbm": "-10", "azimuth_deg": "1"}
    assert parse_overlays("") == (Overlay("base"),)


@pytest.mark.parametrize(
    "spec",
    [
        SweepSpec(axis="bogus", values=(1.0,)),
        SweepSpec(axis="altitude_km", values=()),
        SweepSpec(axis="altitude_km", values=(200.0, 300.0, 250.0)),
        SweepSpec(axis="altitude_km", values=(200.0, math.inf)),
        SweepSpec(axis="altitude_km", values=(200.0,), outputs=("power",)),
        SweepSpec(axis="altitude_km", values=(200.0,), overlays=(Overlay("a", {"nope": 1}),)),
    ],
)
def test_invalid_specs(spec):
    with pytest.raises(ConfigError):
        spec.validate()


def test_single_point_sweep_equals_direct_call():
    spec = SweepSpec(axis="altitude_km", values=(250.0,),
                     outputs=("harvested_j", "efficiency", "window_s", "received_dbm"))
    result = run_sweep(spec)
    direct = Scenario.from_flat({"altitude_km": 250.0}).run()
    assert len(result.rows) == 1
    row = result.rows[0]
    assert row[1] == direct.harvested_j
    assert row[2] == direct.efficiency
    assert row[3] == direct.window_s
    assert row[5] == "ok"


def test_bad_cells_reported_without_aborting():
    spec = SweepSpec(axis="azimuth_deg", values=(0.0, 45.0, 95.0))
    result = run_sweep(spec)
    status = result.column("base:status")
    assert status[0] == "ok"
    assert status[1] == "infeasible" and result.column("base:harvested_j")[1] == 0.0
    assert status[2].startswith("error:") and math.isnan(result.column("base:harvested_j")[2])


@pytest.mark.parametrize("name", FIGURES)
def test_builtin_figures_validate_and_run(name):
    spec = builtin_figure(name)
    spec.validate()
    result = run_sweep(spec)
    assert len(result.rows) == len(spec.values)
    for row in result.rows:
        assert len(row) == len(result.columns)
        assert all(not (isinstance(v, float) and math.isnan(v)) for v in row)


def test_builtin_unknown():
    with pytest.raises(ConfigError):
        builtin_figure("fig9")


def test_fig3_and_fig4_layout():
    fig3 = builtin_figure("fig3")
    assert fig3.axis == "carrier_mhz"
    assert {o.label for o in fig3.overlays} == {"N=10/ideal", "N=10/practical", "N=20/ideal", "N=20/practical"}
    assert builtin_figure("fig4").axis == "altitude_km"


def test_fig2_onsets():
    result = run_sweep(builtin_figure("fig2"))
    ns = result.column("num_satellites")
    for label, expected in (("Pth=-10dBm/phi=0deg", 9), ("Pth=-5dBm/phi=0deg", 16)):
        status = result.column(f"{label}:status")
        onset = ns[status.index("ok")]
        assert abs(onset - expected) <= 1
        assert all(s == "infeasible" for s in status[: status.index("ok")])
    assert all(s == "ok" for s in result.column("Pth=0/phi=0deg:status"))


def test_fig5b_decay():
    result = run_sweep(builtin_figure("fig5b"))
    for n in (5, 10, 20):
        eff = result.column(f"N={n}:misalignment_efficiency")
        assert eff[0] == 1.0
        assert all(b < a for a, b in zip(eff, eff[1:]))
        assert eff[-1] > 1.0 / n


def test_serialization_deterministic():
    result1 = run_sweep(builtin_figure("fig5a"))
    result2 = run_sweep(builtin_figure("fig5a"))
    assert csv_body(to_csv(result1)) == csv_body(to_csv(result2))
    text = to_csv(result1)
    assert text.startswith("# name: fig5a\n")
    header = csv_body(text).splitlines()[0].split(",")
    assert header == list(result1.columns)
    doc = json.loads(to_json(result1))
    assert doc["columns"] == list(result1.columns)
    assert len(doc["rows"]) == len(result1.rows)
