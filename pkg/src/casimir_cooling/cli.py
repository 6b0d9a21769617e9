"""Command-line front end.

    casimir-cooling simulate --scenario fig2 --set theta_over_nu=1.0 --set g=-6.5e3
    casimir-cooling sweep --scenario fig3 --curve g-5k_T0.01 --format csv --output fig3.csv
    casimir-cooling check-stability --config my.json
    casimir-cooling dump-matrices --scenario fig4
    casimir-cooling scenario [NAME]

Exit codes: 0 success, 1 unexpected failure, 2 configuration error,
3 no steady state at the simulated point, 4 I/O error.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .config import apply_overrides, config_from_document, load_document, sweep_from_document
from .dynamics import build_system
from .errors import ConfigError, SimulationError
from .output import fmt, matrices_text, point_report, sweep_to_csv, sweep_to_json
from .params import derive_effective
from .presets import get_preset, list_presets
from .stability import routh_hurwitz_n1, spectral_stability
from .steadystate import solve_lyapunov
from .sweep import Bipartition, evaluate_point, run_sweep

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_UNSTABLE = 3
EXIT_IO = 4


class CLIError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _add_source_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--scenario", help="named preset (see the 'scenario' command)")
    src.add_argument("--config", type=Path, help="JSON config document")
    p.add_argument("--curve", help="preset curve/panel; 'all' writes one table per curve (sweep only)")
    p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                   help="override a config value after loading (repeatable)")
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--output", type=Path, help="write here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="casimir-cooling",
        description="Steady-state cooling and entanglement of graphene flexural modes coupled to a laser-cooled atomic cloud.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="evaluate a single operating point")
    _add_source_args(p)
    p.add_argument("--bipartition", action="append", default=[], metavar="LABEL",
                   help="entanglement pair such as m1_ph or m1_m2 (repeatable; default: every pair)")

    p = sub.add_parser("sweep", help="scan a control parameter and emit a data table")
    _add_source_args(p)
    p.add_argument("--workers", type=int, default=1, help="evaluate grid points in this many processes")

    p = sub.add_parser("check-stability", help="compare the Routh-Hurwitz and spectral stability verdicts")
    _add_source_args(p)

    p = sub.add_parser("dump-matrices", help="print drift, diffusion and covariance matrices")
    _add_source_args(p)

    p = sub.add_parser("scenario", help="list presets, or print one preset's config document")
    p.add_argument("name", nargs="?")
    p.add_argument("--curve")
    return parser


def _resolve_document(args, curve: Optional[str] = None) -> dict:
    if args.scenario:
        doc = get_preset(args.scenario).resolve(curve if curve is not None else args.curve)
    elif args.config:
        if args.curve:
            raise ConfigError("--curve only applies to --scenario")
        doc = load_document(args.config)
    else:
        raise ConfigError("give either --scenario NAME or --config PATH")
    return apply_overrides(doc, args.overrides)


def _reference_nu(doc: dict, config) -> float:
    ref = doc.get("control", {}).get("reference_mode", 1)
    return config.modes[ref - 1].nu


def _emit(text: str, output: Optional[Path]) -> None:
    if output is None:
        sys.stdout.write(text)
        return
    try:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text)
    except OSError as exc:
        raise CLIError(f"cannot write {output}: {exc.strerror or exc}", EXIT_IO) from exc


def _all_pairs(n_modes: int) -> list[Bipartition]:
    pairs = [Bipartition(j) for j in range(n_modes)]
    pairs += [Bipartition(i, j) for i, j in itertools.combinations(range(n_modes), 2)]
    return pairs


def cmd_simulate(args) -> int:
    doc = _resolve_document(args)
    config = config_from_document(doc)
    if args.bipartition:
        pairs = [Bipartition.parse(lbl) for lbl in args.bipartition]
    elif doc.get("sweep", {}).get("bipartitions"):
        pairs = [Bipartition.parse(lbl) for lbl in doc["sweep"]["bipartitions"]]
    else:
        pairs = _all_pairs(config.n_modes)
    for bp in pairs:
        bp.check(config.n_modes)

    point = evaluate_point(config, pairs)
    nu_ref = _reference_nu(doc, config)
    if (args.format or "json") == "json":
        report = point_report(point, nu_ref)
        report["meta"] = {"config": {k: v for k, v in doc.items() if k != "meta"}, **doc.get("meta", {})}
        text = json.dumps(report, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        header = ["axis_value", "stable", "decay_rate_hz"] + [f"m_eff_{j + 1}" for j in range(config.n_modes)]
        row = [fmt(config.theta / nu_ref), "true" if point.stable else "false",
               fmt(point.stability.decay_rate if point.stable else None)]
        row += [fmt(m) for m in (point.m_eff or [None] * config.n_modes)]
        for bp in pairs:
            header += [f"eta_minus_{bp.label}", f"logneg_{bp.label}"]
            row += [fmt(v) for v in point.entanglement.get(bp.label, (None, None))]
        writer.writerow(header)
        writer.writerow(row)
        text = buf.getvalue()
    _emit(text, args.output)
    if not point.stable:
        print(f"no steady state: {point.error}", file=sys.stderr)
        return EXIT_UNSTABLE
    return EXIT_OK


def _curve_output(output: Path, curve: str) -> Path:
    return output.with_name(f"{output.stem}_{curve}{output.suffix}")


def cmd_sweep(args) -> int:
    fmt_name = args.format or "csv"
    if args.curve == "all":
        if not args.scenario:
            raise ConfigError("--curve all needs --scenario")
        if args.output is None:
            raise ConfigError("--curve all needs --output (one file is written per curve)")
        curves = get_preset(args.scenario).curve_names()
    else:
        curves = [args.curve]

    rendered = []
    for curve in curves:
        doc = _resolve_document(args, curve)
        spec = sweep_from_document(doc)
        result = run_sweep(spec, workers=args.workers)
        if fmt_name == "csv":
            text = sweep_to_csv(result)
        else:
            meta = {"config": {k: v for k, v in doc.items() if k != "meta"}, "axis": spec.axis}
            meta.update(doc.get("meta", {}))
            text = sweep_to_json(result, meta) + "\n"
        target = args.output if args.curve != "all" else _curve_output(args.output, curve)
        rendered.append((text, target))
    for text, target in rendered:
        _emit(text, target)
    return EXIT_OK


def cmd_check_stability(args) -> int:
    doc = _resolve_document(args)
    config = config_from_document(doc)
    eff = derive_effective(config)
    report = spectral_stability(build_system(config, eff))
    try:
        rh = routh_hurwitz_n1(config, eff)
        rh_text = str(rh).lower()
    except ConfigError as exc:
        rh, rh_text = None, f"not applicable ({exc})"
    result = {
        "spectral_stable": report.stable,
        "routh_hurwitz_stable": rh,
        "max_real_part_hz": report.max_real_part,
        "stability_margin_hz": report.margin,
        "tolerance_hz": report.tolerance,
        "agree": None if rh is None else rh == report.stable,
    }
    if (args.format or "json") == "json":
        text = json.dumps(result, indent=2) + "\n"
    else:
        text = (
            f"spectral: {str(report.stable).lower()}\n"
            f"routh_hurwitz: {rh_text}\n"
            f"max_real_part_hz: {fmt(report.max_real_part)}\n"
            f"stability_margin_hz: {fmt(report.margin)}\n"
        )
    _emit(text, args.output)
    return EXIT_OK


def cmd_dump_matrices(args) -> int:
    doc = _resolve_document(args)
    config = config_from_document(doc)
    system = build_system(config)
    cov = None
    if spectral_stability(system).stable:
        cov = solve_lyapunov(system, check_stability=False).v.astype(float)
    if (args.format or "csv") == "json":
        payload = {
            "drift": system.drift.tolist(),
            "diffusion": system.diffusion.tolist(),
            "covariance": None if cov is None else cov.tolist(),
        }
        text = json.dumps(payload, indent=2) + "\n"
    else:
        text = matrices_text(config.n_modes, {"drift": system.drift, "diffusion": system.diffusion, "covariance": cov})
    _emit(text, args.output)
    return EXIT_OK


def cmd_scenario(args) -> int:
    if not args.name:
        for name, preset in list_presets().items():
            print(f"{name:14s} {preset.title}")
            print(f"{'':14s} curves: {', '.join(preset.curve_names())}")
        return EXIT_OK
    preset = get_preset(args.name)
    print(json.dumps(preset.resolve(args.curve), indent=2))
    return EXIT_OK


COMMANDS = {
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
    "check-stability": cmd_check_stability,
    "dump-matrices": cmd_dump_matrices,
    "scenario": cmd_scenario,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SimulationError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
