"""Scenario files: flat ``key = value`` text with dotted keys.

Example::

    beta = 1.0
    system.kind = truncated_oscillator
    system.omega = 1.0
    system.n_sys = 40
    apparatus.kind = boson_bath
    apparatus.mode.1.omega = 1.0
    apparatus.mode.1.g = 0.1
    apparatus.mode.1.n_trunc = 40
    coupling.kind = dephasing
    coupling.lambda_rule = sqrt_n
    sweep.lambda = 0:0.9:10

Blank lines and lines starting with ``#`` are ignored. Unknown or repeated
keys are errors. Grids are ``start:stop:count`` (inclusive, evenly spaced)
or a comma-separated list.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import ConfigError
from .models import DEFAULT_DIMENSION_CAP, DEFAULT_N_TRUNC, ApparatusSpec, CouplingSpec, Mode, SystemSpec

SWEEP_KEYS = ("lambda", "g", "beta")
DIPOLE_FORMULAS = ("printed", "fn")


@dataclass(frozen=True)
class AnalysisOptions:
    beta_eff_tol: float = 1e-8
    degeneracy_tol: float | None = None
    leakage_tol: float = 1e-8
    dimension_cap: int = DEFAULT_DIMENSION_CAP
    truncation_gate: bool = True
    truncation_tol: float = 1e-8
    dipole_formula: str = "printed"

    def __post_init__(self):
        if self.dipole_formula not in DIPOLE_FORMULAS:
            raise ConfigError(f"options.dipole_formula must be one of {DIPOLE_FORMULAS}")


@dataclass(frozen=True)
class Scenario:
    system: SystemSpec
    apparatus: ApparatusSpec
    coupling: CouplingSpec
    beta: float
    options: AnalysisOptions = field(default_factory=AnalysisOptions)
    sweeps: dict = field(default_factory=dict)  # axis name -> tuple of grid values

    def __post_init__(self):
        if not self.beta > 0:
            raise ConfigError(f"beta must be > 0, got {self.beta}")
        for name, grid in self.sweeps.items():
            if name not in SWEEP_KEYS:
                raise ConfigError(f"unknown sweep axis sweep.{name}")
            if len(grid) == 0 or not min(grid) < max(grid):
                raise ConfigError(f"sweep.{name} must be a nonempty grid with min < max")

    def with_beta(self, beta: float) -> "Scenario":
        return replace(self, beta=beta)


def _float(key: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected a number, got {raw!r}") from None


def _complex(key: str, raw: str) -> complex | float:
    try:
        return float(raw)
    except ValueError:
        pass
    try:
        return complex(raw.replace(" ", ""))
    except ValueError:
        raise ConfigError(f"{key}: expected a real or complex number, got {raw!r}") from None


def _int(key: str, raw: str) -> int:
    try:
        return int(raw)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {raw!r}") from None


def _bool(key: str, raw: str) -> bool:
    low = raw.lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise ConfigError(f"{key}: expected true/false, got {raw!r}")


def parse_grid(key: str, raw: str) -> tuple[float, ...]:
    raw = raw.strip()
    if not raw:
        return ()
    if ":" in raw:
        parts = raw.split(":")
        if len(parts) != 3:
            raise ConfigError(f"{key}: grid must be start:stop:count")
        start, stop, count = _float(key, parts[0]), _float(key, parts[1]), _int(key, parts[2])
        if count < 0:
            raise ConfigError(f"{key}: negative grid count")
        return tuple(float(x) for x in np.linspace(start, stop, count))
    return tuple(_float(key, p) for p in raw.split(","))


def parse_lines(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key}")
        out[key] = value
    return out


_MODE_KEY = re.compile(r"^apparatus\.mode\.(\d+)\.(omega|g|n_trunc)$")


def scenario_from_text(text: str) -> Scenario:
    kv = parse_lines(text)
    used: set[str] = set()

    def take(key: str, required: bool = False) -> str | None:
        if key in kv:
            used.add(key)
            return kv[key]
        if required:
            raise ConfigError(f"missing required key {key}")
        return None

    beta = _float("beta", take("beta", required=True))

    skind = take("system.kind", required=True)
    delta = take("system.delta")
    omega = take("system.omega")
    n_sys = take("system.n_sys")
    system = SystemSpec(
        skind,
        delta=_float("system.delta", delta) if delta is not None else None,
        omega=_float("system.omega", omega) if omega is not None else None,
        n_sys=_int("system.n_sys", n_sys) if n_sys is not None else None,
    )

    akind = take("apparatus.kind", required=True)
    n_default = take("apparatus.n_trunc")
    n_default = _int("apparatus.n_trunc", n_default) if n_default is not None else DEFAULT_N_TRUNC
    if akind == "single_cavity":
        apparatus = ApparatusSpec.cavity(
            _float("apparatus.omega_b", take("apparatus.omega_b", required=True)),
            _complex("apparatus.g", take("apparatus.g", required=True)),
            n_default,
        )
    else:
        fields: dict[int, dict[str, str]] = {}
        for key in kv:
            m = _MODE_KEY.match(key)
            if m:
                used.add(key)
                fields.setdefault(int(m.group(1)), {})[m.group(2)] = kv[key]
        modes = []
        for idx in sorted(fields):
            f = fields[idx]
            prefix = f"apparatus.mode.{idx}"
            for req in ("omega", "g"):
                if req not in f:
                    raise ConfigError(f"missing required key {prefix}.{req}")
            n_trunc = _int(f"{prefix}.n_trunc", f["n_trunc"]) if "n_trunc" in f else n_default
            modes.append(Mode(_float(f"{prefix}.omega", f["omega"]), _complex(f"{prefix}.g", f["g"]), n_trunc))
        apparatus = ApparatusSpec(akind, tuple(modes))

    ckind = take("coupling.kind") or "dephasing"
    rule = take("coupling.lambda_rule") or "sqrt_n"
    lambdas = take("coupling.lambdas")
    rabi = take("coupling.rabi")
    coupling = CouplingSpec(
        ckind,
        rule,
        tuple(_float("coupling.lambdas", x) for x in lambdas.split(",")) if lambdas else (),
        _bool("coupling.rabi", rabi) if rabi is not None else False,
    )

    opts = {}
    for name, conv in (
        ("beta_eff_tol", _float),
        ("degeneracy_tol", _float),
        ("leakage_tol", _float),
        ("dimension_cap", _int),
        ("truncation_gate", _bool),
        ("truncation_tol", _float),
        ("dipole_formula", lambda k, v: v),
    ):
        raw = take(f"options.{name}")
        if raw is not None:
            opts[name] = conv(f"options.{name}", raw)
    options = AnalysisOptions(**opts)

    sweeps = {}
    for name in SWEEP_KEYS:
        raw = take(f"sweep.{name}")
        if raw is not None:
            sweeps[name] = parse_grid(f"sweep.{name}", raw)

    unknown = sorted(set(kv) - used)
    if unknown:
        raise ConfigError(f"unknown key {unknown[0]}")
    return Scenario(system, apparatus, coupling, beta, options, sweeps)


def load_scenario(path: str | Path) -> Scenario:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return scenario_from_text(text)


def _num(x) -> str:
    if isinstance(x, complex):
        return repr(x.real) if x.imag == 0 else repr(x).strip("()")
    return repr(x)


def scenario_to_text(sc: Scenario) -> str:
    """Canonical text form; ``scenario_from_text`` inverts it exactly."""
    lines = [f"beta = {_num(sc.beta)}", f"system.kind = {sc.system.kind}"]
    for name in ("delta", "omega", "n_sys"):
        val = getattr(sc.system, name)
        if val is not None:
            lines.append(f"system.{name} = {_num(val)}")
    app = sc.apparatus
    lines.append(f"apparatus.kind = {app.kind}")
    if app.kind == "single_cavity":
        lines += [
            f"apparatus.omega_b = {_num(app.omega_b)}",
            f"apparatus.g = {_num(app.g)}",
            f"apparatus.n_trunc = {app.modes[0].n_trunc}",
        ]
    else:
        for i, m in enumerate(app.modes, 1):
            lines += [
                f"apparatus.mode.{i}.omega = {_num(m.omega)}",
                f"apparatus.mode.{i}.g = {_num(m.g)}",
                f"apparatus.mode.{i}.n_trunc = {m.n_trunc}",
            ]
    cpl = sc.coupling
    lines += [f"coupling.kind = {cpl.kind}", f"coupling.lambda_rule = {cpl.lambda_rule}"]
    if cpl.lambdas:
        lines.append("coupling.lambdas = " + ", ".join(_num(x) for x in cpl.lambdas))
    lines.append(f"coupling.rabi = {str(cpl.rabi).lower()}")
    o = sc.options
    for name in ("beta_eff_tol", "degeneracy_tol", "leakage_tol", "dimension_cap", "truncation_gate", "truncation_tol", "dipole_formula"):
        val = getattr(o, name)
        if val is None:
            continue
        if isinstance(val, bool):
            val = str(val).lower()
        elif not isinstance(val, str):
            val = _num(val)
        lines.append(f"options.{name} = {val}")
    for name in SWEEP_KEYS:
        if name in sc.sweeps:
            lines.append(f"sweep.{name} = " + ", ".join(_num(x) for x in sc.sweeps[name]))
    return "\n".join(lines) + "\n"
