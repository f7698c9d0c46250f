"""Declarative parameter sweeps and their CSV / JSON serialization."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Mapping, Sequence

from satwet.config import DEFAULTS, ConfigError, Scenario, parse_value
from satwet.energy import misalignment_efficiency
from satwet.units import w_to_dbm

OUTPUTS = ("harvested_j", "efficiency", "received_dbm", "window_s", "misalignment_efficiency")


@dataclass(frozen=True)
class Overlay:
    label: str
    overrides: Mapping[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class SweepSpec:
    axis: str
    values: tuple[float, ...]
    overlays: tuple[Overlay, ...] = (Overlay("base"),)
    outputs: tuple[str, ...] = ("harvested_j",)
    base: Mapping[str, Any] = field(default_factory=dict)
    name: str = "sweep"

    def validate(self) -> None:
        if self.axis not in DEFAULTS:
            raise ConfigError(f"unknown sweep axis {self.axis!r}")
        if not self.values:
            raise ConfigError("sweep axis has no values")
        if not all(math.isfinite(v) for v in self.values):
            raise ConfigError("sweep axis values must be finite")
        steps = [b - a for a, b in zip(self.values, self.values[1:])]
        if steps and not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
            raise ConfigError("sweep axis values must be strictly monotone")
        for key in self.base:
            parse_value(key, self.base[key])
        labels = [o.label for o in self.overlays]
        if len(set(labels)) != len(labels):
            raise ConfigError("overlay labels must be unique")
        for overlay in self.overlays:
            for key, value in overlay.overrides.items():
                parse_value(key, value)
        for out in self.outputs:
            if out not in OUTPUTS:
                raise ConfigError(f"unknown output {out!r}; choose from {OUTPUTS}")

    def resolved_base(self) -> dict[str, Any]:
        flat = dict(DEFAULTS)
        flat.update({k: parse_value(k, v) for k, v in self.base.items()})
        return flat


@dataclass(frozen=True)
class SweepResult:
    columns: tuple[str, ...]
    rows: tuple[tuple[Any, ...], ...]
    metadata: dict[str, Any]

    def column(self, name: str) -> list[Any]:
        i = self.columns.index(name)
        return [row[i] for row in self.rows]


def _cell(flat: Mapping[str, Any], outputs: Sequence[str]) -> tuple[list[float], str]:
    try:
        scenario = Scenario.from_flat(flat)
        result = scenario.run()
    except ValueError as exc:
        reason = str(exc).replace(",", ";").replace("\n", " ")
        return [math.nan] * len(outputs), f"error: {reason}"
    values = []
    for out in outputs:
        if out == "harvested_j":
            values.append(result.harvested_j)
        elif out == "efficiency":
            values.append(result.efficiency)
        elif out == "received_dbm":
            values.append(w_to_dbm(result.peak_received_w))
        elif out == "window_s":
            values.append(result.window_s)
        else:
            values.append(misalignment_efficiency(scenario.array))
    return values, ("ok" if result.harvested_j > 0.0 else "infeasible")


def run_sweep(spec: SweepSpec) -> SweepResult:
    """Evaluate every (axis value, overlay) cell.

    Cells that fail validation carry NaN outputs and an ``error: ...``
    status; infeasible cells carry zero energy and status ``infeasible``.
    """
    spec.validate()
    base = spec.resolved_base()
    columns = [spec.axis]
    for overlay in spec.overlays:
        columns += [f"{overlay.label}:{out}" for out in spec.outputs]
        columns.append(f"{overlay.label}:status")

    rows = []
    for value in spec.values:
        try:
            row: list[Any] = [parse_value(spec.axis, value)]
        except ConfigError:
            row = [value]
        for overlay in spec.overlays:
            flat = dict(base)
            flat.update({k: parse_value(k, v) for k, v in overlay.overrides.items()})
            flat[spec.axis] = value
            values, status = _cell(flat, spec.outputs)
            row += values
            row.append(status)
        rows.append(tuple(row))

    metadata = {
        "name": spec.name,
        "axis": spec.axis,
        "overlays": {o.label: dict(o.overrides) for o in spec.overlays},
        "outputs": list(spec.outputs),
        "parameters": base,
        "version": _version(),
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
    }
    return SweepResult(tuple(columns), tuple(rows), metadata)


def _version() -> str:
    from satwet import __version__

    return __version__


def _fmt(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def to_csv(result: SweepResult, extra_meta: Mapping[str, Any] | None = None) -> str:
    """CSV with a ``#``-prefixed metadata block followed by header and rows."""
    meta = dict(result.metadata)
    meta.update(extra_meta or {})
    buf = io.StringIO()
    for key, value in meta.items():
        text = json.dumps(value, sort_keys=True) if isinstance(value, (dict, list)) else str(value)
        buf.write(f"# {key}: {text}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(result.columns)
    for row in result.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def to_json(result: SweepResult, extra_meta: Mapping[str, Any] | None = None) -> str:
    meta = dict(result.metadata)
    meta.update(extra_meta or {})
    rows = [
        {col: (None if isinstance(v, float) and math.isnan(v) else v) for col, v in zip(result.columns, row)}
        for row in result.rows
    ]
    return json.dumps({"metadata": meta, "columns": list(result.columns), "rows": rows},
                      indent=2, sort_keys=False) + "\n"


def csv_body(text: str) -> str:
    """Strip the metadata comment block."""
    return "".join(line for line in text.splitlines(keepends=True) if not line.startswith("#"))


def frange(start: float, stop: float, step: float) -> tuple[float, ...]:
    """Inclusive, drift-free arithmetic range."""
    if step <= 0:
        raise ConfigError("range step must be positive")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(round(start + i * step, 12) for i in range(count))


def parse_values(text: str) -> tuple[float, ...]:
    """``"1:30:1"`` (inclusive range) or ``"0, 1, 2.5"`` (explicit list)."""
    text = text.strip()
    if ":" in text:
        parts = [float(p) for p in text.split(":")]
        if len(parts) != 3:
            raise ConfigError(f"range must be start:stop:step, got {text!r}")
        return frange(*parts)
    return tuple(float(p) for p in text.split(",") if p.strip())


def parse_overlays(text: str) -> tuple[Overlay, ...]:
    """``"label: key=value, key=value; label2: key=value"``; label is optional."""
    overlays = []
    for i, chunk in enumerate(p.strip() for p in text.split(";")):
        if not chunk:
            continue
        label, sep, body = chunk.partition(":")
        if not sep or "=" in label:
            label, body = "", chunk
        overrides = {}
        for item in body.split(","):
            if not item.strip():
                continue
            key, eq, value = item.partition("=")
            if not eq:
                raise ConfigError(f"bad overlay assignment {item!r}")
            overrides[key.strip()] = value.strip()
        label = label.strip() or "_".join(f"{k}={v}" for k, v in overrides.items()) or f"overlay{i}"
        overlays.append(Overlay(label, overrides))
    return tuple(overlays) or (Overlay("base"),)


def spec_from_config(params: Mapping[str, Any], sweep: Mapping[str, str]) -> SweepSpec:
    if "axis" not in sweep or "values" not in sweep:
        raise ConfigError("[sweep] section needs 'axis' and 'values'")
    outputs = tuple(o.strip() for o in sweep.get("outputs", "harvested_j").split(",") if o.strip())
    spec = SweepSpec(
        axis=sweep["axis"].strip(),
        values=parse_values(sweep["values"]),
        overlays=parse_overlays(sweep.get("overlays", "")),
        outputs=outputs,
        base=dict(params),
        name=sweep.get("name", "sweep").strip(),
    )
    spec.validate()
    return spec


def _grid(*axes: Sequence[tuple[str, Mapping[str, Any]]]) -> tuple[Overlay, ...]:
    overlays = [Overlay("", {})]
    for axis in axes:
        overlays = [
            Overlay(f"{o.label}{'/' if o.label else ''}{lab}", {**o.overrides, **ov})
            for o in overlays
            for lab, ov in axis
        ]
    return tuple(overlays)


PRACTICAL_DBM = -10.0

_CIRCUITS = [("ideal", {"sensitivity_dbm": "ideal"}), ("practical", {"sensitivity_dbm": PRACTICAL_DBM})]
_GRIDS = [("N=10", {"num_satellites": 10}), ("N=20", {"num_satellites": 20})]


def builtin_figure(name: str) -> SweepSpec:
    """Pre-canned sweeps reproducing the published figure setups."""
    if name == "fig2":
        spec = SweepSpec(
            name=name,
            axis="num_satellites",
            values=frange(1, 30, 1),
            overlays=_grid(
                [("Pth=0", {"sensitivity_dbm": "ideal"}),
                 ("Pth=-10dBm", {"sensitivity_dbm": -10.0}),
                 ("Pth=-5dBm", {"sensitivity_dbm": -5.0})],
                [("phi=0deg", {"azimuth_deg": 0.0}), ("phi=1deg", {"azimuth_deg": 1.0})],
            ),
            outputs=("harvested_j",),
        )
    elif name == "fig3":
        spec = SweepSpec(
            name=name,
            axis="carrier_mhz",
            values=frange(300, 3000, 10),
            overlays=_grid(_GRIDS, _CIRCUITS),
            outputs=("harvested_j",),
        )
    elif name == "fig4":
        spec = SweepSpec(
            name=name,
            axis="altitude_km",
            values=frange(160, 600, 5),
            overlays=_grid(_GRIDS, _CIRCUITS),
            outputs=("harvested_j",),
        )
    elif name == "fig5a":
        spec = SweepSpec(
            name=name,
            axis="azimuth_deg",
            values=frange(0, 3, 0.05),
            overlays=_grid(
                _GRIDS,
                [("Pth=-10dBm", {"sensitivity_dbm": -10.0}), ("Pth=-5dBm", {"sensitivity_dbm": -5.0})],
            ),
            outputs=("efficiency",),
        )
    elif name == "fig5b":
        spec = SweepSpec(
            name=name,
            axis="phase_error_var",
            values=frange(0, 3, 0.1),
            overlays=_grid([("N=5", {"num_satellites": 5})] + _GRIDS),
            outputs=("misalignment_efficiency", "harvested_j"),
        )
    else:
        raise ConfigError(f"unknown figure {name!r}; choose from {FIGURES}")
    spec.validate()
    return spec


FIGURES = ("fig2", "fig3", "fig4", "fig5a", "fig5b")
