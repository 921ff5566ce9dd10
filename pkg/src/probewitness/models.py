"""Builders for the probed system, the probing apparatus and their coupling.

Two system families are supported (two-level system, truncated harmonic
oscillator) and two apparatus families (a discrete boson bath and a single
cavity mode). Couplings are either of dephasing type, diagonal in the system
energy basis, or the TLS-cavity dipole coupling.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import ConfigError, DomainError, ResourceCapError
from .operators import (
    ProductSpace,
    annihilation,
    embed_apparatus,
    embed_system,
    mode_operator,
    number,
)

DEFAULT_N_TRUNC = 24
DEFAULT_DIMENSION_CAP = 4096

SYSTEM_KINDS = ("two_level", "truncated_oscillator")
APPARATUS_KINDS = ("boson_bath", "single_cavity")
COUPLING_KINDS = ("dephasing", "dipole")
LAMBDA_RULES = ("sqrt_n", "linear", "explicit")


@dataclass(frozen=True)
class SystemSpec:
    kind: str
    delta: float | None = None
    omega: float | None = None
    n_sys: int | None = None

    def __post_init__(self):
        if self.kind == "two_level":
            if self.delta is None or not self.delta > 0:
                raise ConfigError("system.delta must be > 0 for a two_level system")
        elif self.kind == "truncated_oscillator":
            if self.omega is None or not self.omega > 0:
                raise ConfigError("system.omega must be > 0 for a truncated_oscillator")
            if self.n_sys is None or self.n_sys < 2:
                raise ConfigError("system.n_sys must be >= 2 for a truncated_oscillator")
        else:
            raise ConfigError(f"system.kind must be one of {SYSTEM_KINDS}, got {self.kind!r}")

    @property
    def dim(self) -> int:
        return 2 if self.kind == "two_level" else int(self.n_sys)

    def energies(self) -> np.ndarray:
        """E_n in ascending order: (0, delta) or (n + 1/2) omega."""
        if self.kind == "two_level":
            return np.array([0.0, float(self.delta)])
        return (np.arange(self.dim) + 0.5) * float(self.omega)


@dataclass(frozen=True)
class Mode:
    omega: float
    g: complex
    n_trunc: int = DEFAULT_N_TRUNC

    def __post_init__(self):
        if not self.omega > 0:
            raise ConfigError(f"mode frequency must be > 0, got {self.omega}")
        if self.n_trunc < 2:
            raise ConfigError(f"mode truncation must be >= 2, got {self.n_trunc}")


@dataclass(frozen=True)
class ApparatusSpec:
    kind: str
    modes: tuple[Mode, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        if self.kind not in APPARATUS_KINDS:
            raise ConfigError(f"apparatus.kind must be one of {APPARATUS_KINDS}, got {self.kind!r}")
        if self.kind == "single_cavity" and len(self.modes) != 1:
            raise ConfigError("a single_cavity apparatus has exactly one mode")

    @classmethod
    def cavity(cls, omega_b: float, g: complex, n_trunc: int = DEFAULT_N_TRUNC) -> "ApparatusSpec":
        return cls("single_cavity", (Mode(omega_b, g, n_trunc),))

    @classmethod
    def bath(cls, modes: Sequence[Mode | tuple]) -> "ApparatusSpec":
        return cls("boson_bath", tuple(m if isinstance(m, Mode) else Mode(*m) for m in modes))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(m.n_trunc for m in self.modes)

    @property
    def omega_b(self) -> float:
        return self.modes[0].omega

    @property
    def g(self) -> complex:
        return self.modes[0].g

    def with_g(self, g: complex) -> "ApparatusSpec":
        """Copy with every mode coupling set to ``g``."""
        return ApparatusSpec(self.kind, tuple(Mode(m.omega, g, m.n_trunc) for m in self.modes))


@dataclass(frozen=True)
class CouplingSpec:
    kind: str = "dephasing"
    lambda_rule: str = "sqrt_n"
    lambdas: tuple[float, ...] = ()
    rabi: bool = False

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(float(x) for x in self.lambdas))
        if self.kind not in COUPLING_KINDS:
            raise ConfigError(f"coupling.kind must be one of {COUPLING_KINDS}, got {self.kind!r}")
        if self.lambda_rule not in LAMBDA_RULES:
            raise ConfigError(f"coupling.lambda_rule must be one of {LAMBDA_RULES}, got {self.lambda_rule!r}")

    def lambda_values(self, n_levels: int) -> np.ndarray:
        if self.lambda_rule == "sqrt_n":
            return np.sqrt(np.arange(n_levels, dtype=float))
        if self.lambda_rule == "linear":
            return np.arange(n_levels, dtype=float)
        if len(self.lambdas) != n_levels:
            raise ConfigError(
                f"coupling.lambdas has {len(self.lambdas)} entries, system has {n_levels} levels"
            )
        return np.array(self.lambdas)


@dataclass(frozen=True)
class TotalHamiltonian:
    """H_S, H_A and V_AS, all embedded in the full product space."""

    h_s: np.ndarray
    h_a: np.ndarray
    v: np.ndarray
    space: ProductSpace
    energies: np.ndarray = field(repr=False)
    h_a_local: np.ndarray = field(repr=False)

    @property
    def h0(self) -> np.ndarray:
        return self.h_s + self.h_a

    @property
    def total(self) -> np.ndarray:
        return self.h_s + self.h_a + self.v


def apparatus_hamiltonian(app: ApparatusSpec) -> np.ndarray:
    """``sum_k omega_k b_k^dagger b_k`` on the apparatus factor alone."""
    dims = app.dims
    h = np.zeros((int(np.prod(dims)),) * 2, dtype=complex)
    for k, m in enumerate(app.modes):
        h += m.omega * mode_operator(number(m.n_trunc), k, dims)
    return h


def bath_field(app: ApparatusSpec) -> np.ndarray:
    """``sum_k (g_k b_k^dagger + g_k^* b_k)`` on the apparatus factor."""
    dims = app.dims
    x = np.zeros((int(np.prod(dims)),) * 2, dtype=complex)
    for k, m in enumerate(app.modes):
        b = annihilation(m.n_trunc)
        x += mode_operator(m.g * b.conj().T + np.conj(m.g) * b, k, dims)
    return x


def build_total_hamiltonian(
    sys: SystemSpec,
    app: ApparatusSpec,
    cpl: CouplingSpec,
    dimension_cap: int = DEFAULT_DIMENSION_CAP,
) -> TotalHamiltonian:
    space = ProductSpace(sys.dim, app.dims)
    if space.dim > dimension_cap:
        raise ResourceCapError(f"total dimension {space.dim} exceeds cap {dimension_cap}")
    energies = sys.energies()
    h_s = embed_system(np.diag(energies).astype(complex), space)
    h_a_local = apparatus_hamiltonian(app)
    h_a = embed_apparatus(h_a_local, space)

    if cpl.kind == "dephasing":
        lam = cpl.lambda_values(sys.dim)
        v = np.kron(np.diag(lam).astype(complex), bath_field(app))
    else:
        if sys.kind != "two_level" or app.kind != "single_cavity":
            raise ConfigError("dipole coupling requires a two_level system and a single_cavity apparatus")
        # basis |g> = 0, |e> = 1
        sp = np.array([[0, 0], [1, 0]], dtype=complex)
        b = annihilation(app.modes[0].n_trunc)
        g = app.g
        if cpl.rabi:
            v = np.kron(sp + sp.T, g * b + np.conj(g) * b.conj().T)
        else:
            v = np.kron(sp, g * b) + np.kron(sp.T, np.conj(g) * b.conj().T)
    return TotalHamiltonian(h_s, h_a, v, space, energies, h_a_local)


@dataclass(frozen=True)
class DensityReport:
    min_system_gap: float
    max_apparatus_gap: float
    ratio: float
    threshold: float
    passed: bool
    degenerate: bool


def spectral_density_check(h_s, h_a, band_width: int, ratio_threshold: float) -> DensityReport:
    """Compare the minimal system gap ``|E_n - E_{n+M}|`` with the largest
    adjacent apparatus gap. Either operator may be given on its own factor."""
    es = np.sort(np.linalg.eigvalsh(np.asarray(h_s)))
    ea = np.sort(np.linalg.eigvalsh(np.asarray(h_a)))
    if not 0 < band_width < len(es):
        raise DomainError(f"band width M={band_width} must lie in [1, {len(es) - 1}]")
    sys_gap = float(np.min(np.abs(es[band_width:] - es[:-band_width])))
    app_gap = float(np.max(np.diff(ea))) if len(ea) > 1 else 0.0
    degenerate = sys_gap <= 1e-12 * max(1.0, float(np.max(np.abs(es))))
    if degenerate:
        ratio = 0.0
    elif app_gap == 0.0:
        ratio = math.inf
    else:
        ratio = sys_gap / app_gap
    return DensityReport(sys_gap, app_gap, ratio, ratio_threshold, (not degenerate) and ratio >= ratio_threshold, degenerate)


def self_energy(app: ApparatusSpec) -> float:
    """``sum_k |g_k|^2 / omega_k``."""
    return float(sum(abs(m.g) ** 2 / m.omega for m in app.modes))


def truncation_gate(app: ApparatusSpec, beta: float, tol: float = 1e-8) -> tuple[bool, float]:
    """Relative change of ``Tr exp(-beta H_A)`` when any single mode cutoff doubles.

    The trace factorizes over modes, so the worst single-mode change is the
    change of the total.
    """
    worst = 0.0
    for m in app.modes:
        n = np.arange(2 * m.n_trunc)
        w = np.exp(-beta * m.omega * n)
        z1, z2 = w[: m.n_trunc].sum(), w.sum()
        worst = max(worst, float((z2 - z1) / z1))
    return worst < tol, worst
