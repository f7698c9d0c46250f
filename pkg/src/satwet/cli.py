"""Command-line entry point: ``satwet {pass,sweep,figure,solve,validate}``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path
from typing import Any, Sequence

from satwet import __version__
from satwet.config import ConfigError, Scenario, parse_assignments, read_config
from satwet.scenario import FIGURES, builtin_figure, run_sweep, spec_from_config, to_csv, to_json
from satwet.solvers import SOLVERS, format_value
from satwet.units import w_to_dbm
from satwet.validation import run_all

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INFEASIBLE = 3
EXIT_VALIDATION = 4

log = logging.getLogger("satwet")


class CliError(Exception):
    def __init__(self, kind: str, reason: str, code: int = EXIT_USAGE):
        super().__init__(reason)
        self.kind = kind
        self.reason = reason
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # one-line machine-parsable reason on stderr
        raise CliError("usage", message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("-c", "--config", type=Path, help="key = value config file")
    p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                   help="override one parameter (repeatable, applied after --config)")
    p.add_argument("-o", "--output", type=Path, help="write results here instead of stdout")
    p.add_argument("-f", "--format", choices=("csv", "json"), default="csv")
    p.add_argument("-v", "--verbose", action="count", default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="satwet", description=__doc__)
    parser.add_argument("--version", action="version", version=f"satwet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    _common(sub.add_parser("pass", help="evaluate a single pass"))
    _common(sub.add_parser("sweep", help="run the [sweep] section of --config"))
    fig = sub.add_parser("figure", help="reproduce a built-in figure sweep")
    fig.add_argument("name", choices=FIGURES)
    _common(fig)
    solve = sub.add_parser("solve", help="feasibility limits")
    solve.add_argument("kind", choices=tuple(SOLVERS))
    _common(solve)
    val = sub.add_parser("validate", help="closed form vs quadrature and channel Monte-Carlo")
    val.add_argument("--quick", action="store_true", help="smaller sample sizes")
    _common(val)
    return parser


def _load(args: argparse.Namespace) -> tuple[dict[str, str], dict[str, str], dict[str, str]]:
    params: dict[str, str] = {}
    sweep: dict[str, str] = {}
    if args.config is not None:
        if not args.config.exists():
            raise CliError("config", f"config file not found: {args.config}")
        params, sweep = read_config(args.config)
    overrides = parse_assignments(args.overrides)
    params.update(overrides)
    return params, sweep, overrides


def _meta(args: argparse.Namespace, overrides: dict[str, str]) -> dict[str, Any]:
    meta: dict[str, Any] = {"command": args.command}
    if args.config is not None:
        meta["config"] = str(args.config)
    for key, value in overrides.items():
        meta[f"set.{key}"] = value
    return meta


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        output.write_text(text)


def _fmt_power(p_w: float) -> str:
    return f"{w_to_dbm(p_w):.3f} dBm ({p_w:.6g} W)"


def cmd_pass(args: argparse.Namespace) -> int:
    params, _, overrides = _load(args)
    scenario = Scenario.from_flat(params)
    result = scenario.run()
    record = result.to_dict()
    meta = {**_meta(args, overrides), "parameters": scenario.to_flat(), "version": __version__}

    d_c = result.cutoff_distance_m
    lines = [
        f"harvested energy : {result.harvested_j * 1e3:.6g} mJ ({result.pass_mode} pass)",
        f"upper bound      : {result.upper_bound_j * 1e3:.6g} mJ",
        f"efficiency       : {result.efficiency:.6g}",
        f"charging window  : {result.window_s:.6g} s (limited by {result.window_limited_by})",
        f"cut-off distance : {'unbounded' if math.isinf(d_c) else f'{d_c / 1e3:.6g} km'}",
        f"array gain       : {result.array_gain:.6g}",
        f"peak rx power    : {_fmt_power(result.peak_received_w)}",
        f"sensitivity      : "
        + ("ideal" if scenario.link.sensitivity_w == 0 else _fmt_power(scenario.link.sensitivity_w)),
    ]
    for w in result.warnings:
        lines.append(f"warning          : {w}")

    if args.format == "json":
        machine = json.dumps({"metadata": meta, "result": _jsonable(record)}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        for key, value in meta.items():
            text = json.dumps(value, sort_keys=True) if isinstance(value, dict) else value
            buf.write(f"# {key}: {text}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(record)
        writer.writerow([";".join(v) if isinstance(v, list) else v for v in record.values()])
        machine = buf.getvalue()

    if args.output is not None:
        args.output.write_text(machine)
        sys.stdout.write("\n".join(lines) + "\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n\n" + machine)
    return EXIT_OK


def _jsonable(record: dict[str, Any]) -> dict[str, Any]:
    return {k: (None if isinstance(v, float) and math.isinf(v) else v) for k, v in record.items()}


def _write_sweep(args, result, overrides) -> None:
    meta = _meta(args, overrides)
    text = to_json(result, meta) if args.format == "json" else to_csv(result, meta)
    _emit(text, args.output)


def cmd_sweep(args: argparse.Namespace) -> int:
    params, sweep, overrides = _load(args)
    if not sweep:
        raise CliError("config", "sweep needs a --config file with a [sweep] section")
    result = run_sweep(spec_from_config(params, sweep))
    _write_sweep(args, result, overrides)
    return EXIT_OK


def cmd_figure(args: argparse.Namespace) -> int:
    params, _, overrides = _load(args)
    spec = builtin_figure(args.name)
    spec = replace(spec, base={**spec.base, **params})
    _write_sweep(args, run_sweep(spec), overrides)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    params, _, overrides = _load(args)
    scenario = Scenario.from_flat(params)
    result = SOLVERS[args.kind](scenario)
    record = {
        "solver": args.kind,
        "outcome": result.outcome,
        "free_variable": result.free_variable,
        "value": result.value,
        "display": format_value(result),
        "evaluations": result.evaluations,
        **_meta(args, overrides),
    }
    if args.format == "json":
        text = json.dumps(record, indent=2) + "\n"
    else:
        text = f"{args.kind}: {format_value(result)}\n"
    _emit(text, args.output)
    if result.outcome != "found":
        raise CliError(f"solver-{result.outcome}",
                       f"{args.kind} search ended with outcome {result.outcome}", EXIT_INFEASIBLE)
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    checks = run_all(quick=args.quick)
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}: {c.detail}" for c in checks]
    _emit("\n".join(lines) + "\n", args.output)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        raise CliError("validation", "failed checks: " + ",".join(failed), EXIT_VALIDATION)
    return EXIT_OK


COMMANDS = {
    "pass": cmd_pass,
    "sweep": cmd_sweep,
    "figure": cmd_figure,
    "solve": cmd_solve,
    "validate": cmd_validate,
}


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2),
                            format="%(levelname)s %(name)s: %(message)s")
        return COMMANDS[args.command](args)
    except CliError as exc:
        print(f"satwet: error={exc.kind} reason={exc.reason!r}", file=sys.stderr)
        return exc.code
    except ConfigError as exc:
        print(f"satwet: error=config reason={str(exc)!r}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
