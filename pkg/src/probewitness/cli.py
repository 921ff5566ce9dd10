"""Command line entry point.

    probewitness run <config> [--out PATH]
    probewitness sweep <config> --axis {lambda,delta_T,g,beta} [--out PATH]
    probewitness check <suite>

Exit codes: 0 ok, 2 config/usage, 3 domain error, 4 resource cap.
"""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Iterable, Sequence

from . import __version__
from .analysis import analyze
from .checks import SUITES, run_suite
from .config import Scenario, load_scenario
from .errors import ConfigError, DomainError, ProbeError
from .oracle import fidelity_oscillator_series
from .thermo import ThermalAnalysis, fidelity_oscillator_closed_form, temperature_shift_oscillator

log = logging.getLogger("probewitness")

AXES = ("lambda", "delta_T", "g", "beta")


def fmt(x) -> str:
    if x is None:
        return "none"
    return format(float(x) + 0.0, ".17g")  # + 0.0 maps -0.0 to 0.0


def analysis_lines(a: ThermalAnalysis) -> list[str]:
    lines = [f"beta = {fmt(a.beta)}"]
    lines += [f"xi.{n} = {fmt(x)}" for n, x in enumerate(a.xi)]
    lines += [f"beta_profile.{n} = {fmt(x)}" for n, x in enumerate(a.beta_profile)]
    lines.append(f"beta_eff = {fmt(a.beta_eff)}")
    lines += [f"level_shifts.{n} = {fmt(x)}" for n, x in enumerate(a.level_shifts)]
    lines += [f"delta_U = {fmt(a.delta_U)}", f"delta_T = {fmt(a.delta_T)}", f"fidelity = {fmt(a.fidelity)}"]
    return lines


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    out = [",".join(header)]
    out += [",".join(fmt(v) for v in row) for row in rows]
    return "\n".join(out) + "\n"


def _grid(sc: Scenario, name: str) -> list[float]:
    if name not in sc.sweeps:
        raise ConfigError(f"missing required key sweep.{name}")
    return sorted(sc.sweeps[name])


def _oscillator_omega(sc: Scenario) -> float:
    if sc.system.kind != "truncated_oscillator":
        raise ConfigError("lambda/delta_T sweeps need system.kind = truncated_oscillator")
    return float(sc.system.omega)


def sweep_table(sc: Scenario, axis: str) -> str:
    """CSV text for one sweep; rows in ascending axis order."""
    if axis == "lambda":
        omega = _oscillator_omega(sc)
        rows = []
        for lam in _grid(sc, "lambda"):
            closed = fidelity_oscillator_closed_form(sc.beta, omega, lam)
            series = fidelity_oscillator_series(sc.beta, omega, lam)
            rows.append((lam, closed, series, abs(closed - series)))
        return _csv(("axis_value", "fidelity_closed", "fidelity_series", "abs_err"), rows)
    if axis == "delta_T":
        omega = _oscillator_omega(sc)
        rows = [
            (temperature_shift_oscillator(sc.beta, omega, lam), fidelity_oscillator_closed_form(sc.beta, omega, lam))
            for lam in _grid(sc, "lambda")
        ]
        return _csv(("delta_T", "fidelity"), rows)
    if axis in ("g", "beta"):
        rows = []
        for value in _grid(sc, axis):
            point = Scenario(
                sc.system,
                sc.apparatus.with_g(value) if axis == "g" else sc.apparatus,
                sc.coupling,
                value if axis == "beta" else sc.beta,
                sc.options,
            )
            a = analyze(point)
            rows.append((value, a.beta_eff, a.delta_U, a.delta_T, a.fidelity))
        return _csv((axis, "beta_eff", "delta_U", "delta_T", "fidelity"), rows)
    raise ConfigError(f"unknown sweep axis {axis!r}")


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="\n") as fh:
            fh.write(text)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="probewitness", description="Thermodynamic witnesses of quantum probing.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("-v", "--verbose", action="store_true", help="log run metadata to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("run", help="analyze one scenario")
    r.add_argument("config")
    r.add_argument("--out", default=None, help="output path, '-' for stdout (default)")

    s = sub.add_parser("sweep", help="tabulate a parameter sweep as CSV")
    s.add_argument("config")
    s.add_argument("--axis", required=True, choices=AXES)
    s.add_argument("--out", default=None)

    c = sub.add_parser("check", help="run an oracle suite")
    c.add_argument("suite", help=f"one of {', '.join(SUITES)}, all")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(message)s")
    try:
        if args.command == "run":
            sc = load_scenario(args.config)
            log.info("run %s", args.config)
            _write("\n".join(analysis_lines(analyze(sc))) + "\n", args.out)
            return 0
        if args.command == "sweep":
            sc = load_scenario(args.config)
            log.info("sweep %s over %s", args.config, args.axis)
            _write(sweep_table(sc, args.axis), args.out)
            return 0
        if args.suite != "all" and args.suite not in SUITES:
            raise ConfigError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}, all")
        results = run_suite(args.suite)
        for suite, label, ok, detail in results:
            print(f"{'PASS' if ok else 'FAIL'} [{suite}] {label}: {detail}")
        return 0 if all(ok for *_, ok, _ in results) else 1
    except ProbeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DomainError.exit_code


if __name__ == "__main__":
    sys.exit(main())
