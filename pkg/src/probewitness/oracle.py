"""Brute-force references that share no code path with the perturbative route.

Everything here works from the untransformed Hamiltonian, explicit series or
textbook closed forms.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError, ResourceCapError
from .models import DEFAULT_DIMENSION_CAP, ApparatusSpec, CouplingSpec, Mode, SystemSpec, build_total_hamiltonian
from .operators import ProductSpace, partial_trace_system, thermal_weight


def exact_reference_state(h_s, h_a, v, beta: float, space: ProductSpace, dimension_cap: int = DEFAULT_DIMENSION_CAP):
    """Reduced state of the full ``H_S + H_A + V`` and its population temperatures.

    Returns ``(rho_S, beta_profile)`` where
    ``beta_profile[n] = ln(P_n / P_{n+1}) / (E_{n+1} - E_n)``.
    """
    if space.dim > dimension_cap:
        raise ResourceCapError(f"dimension {space.dim} exceeds oracle cap {dimension_cap}")
    if not beta > 0:
        raise DomainError(f"inverse temperature must be > 0, got {beta}")
    h = np.asarray(h_s) + np.asarray(h_a) + np.asarray(v)
    w, _ = thermal_weight(h, beta)
    rho = partial_trace_system(w, space)
    rho = rho / np.trace(rho).real
    energies = np.real(np.diag(partial_trace_system(h_s, space))) / space.app_dim
    pops = np.real(np.diag(rho))
    prof = np.log(pops[:-1] / pops[1:]) / np.diff(energies)
    return rho, prof


@dataclass(frozen=True)
class ScalingReport:
    parameters: np.ndarray
    errors: np.ndarray
    fitted_exponent: float
    r_squared: float


def scaling_exponent(parameters: Sequence[float], errors: Sequence[float], spectral_range: float | None = None) -> ScalingReport:
    """Least-squares slope of ``log(error)`` against ``log(parameter)``.

    With ``spectral_range`` given, points whose error is below
    ``100 eps * spectral_range`` are treated as noise and dropped. If no
    nonzero error remains the exponent is ``inf``.
    """
    p = np.asarray(parameters, dtype=float)
    e = np.asarray(errors, dtype=float)
    if p.size < 3 or p.size != e.size:
        raise DomainError("scaling fit needs at least 3 (parameter, error) pairs")
    if np.any(e < 0) or np.any(p <= 0):
        raise DomainError("parameters must be positive and errors nonnegative")
    if p.max() / p.min() < 4.0:
        raise DomainError(f"parameters span only {p.max() / p.min():.2f}x; need >= 4x")
    order = np.argsort(-p)
    p, e = p[order], e[order]
    floor = 100 * np.finfo(float).eps * spectral_range if spectral_range is not None else 0.0
    keep = e > floor
    if not np.any(keep):
        return ScalingReport(p, e, math.inf, 1.0)
    if keep.sum() < 2:
        raise DomainError("fewer than two errors above the noise floor")
    x, y = np.log(p[keep]), np.log(e[keep])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return ScalingReport(p, e, float(slope), r2)


def fidelity_oscillator_series(beta: float, omega: float, lam: float, term_tol: float = 1e-16) -> float:
    """Fidelity of ``exp(-beta E_n)`` and ``exp(-beta E_n) exp(beta lam n)`` summed
    term by term, ``E_n = (n + 1/2) omega``, until the slowest series falls
    below ``term_tol``."""
    if not 0 <= lam < omega or not beta > 0:
        raise DomainError(f"need beta > 0 and 0 <= lambda < omega, got {beta}, {lam}, {omega}")
    n_terms = int(math.ceil(-math.log(term_tol) / (beta * (omega - lam)))) + 1
    n = np.arange(n_terms, dtype=float)
    e = (n + 0.5) * omega
    p = np.exp(-beta * e)
    q = p * np.exp(beta * lam * n)
    return float(np.sum(np.sqrt(p * q)) / math.sqrt(p.sum() * q.sum()))


def dephasing_overlap_closed_form(modes: Sequence[Mode], dlam: float, times) -> np.ndarray:
    """``|<D_m(t)|D_n(t)>|`` from the vacuum for two dephasing branches whose
    couplings differ by ``dlam``: a product of coherent-state overlaps."""
    t = np.asarray(times, dtype=float)
    expo = np.zeros_like(t)
    for m in modes:
        expo += (dlam * abs(m.g) / m.omega) ** 2 * (1.0 - np.cos(m.omega * t))
    return np.exp(-expo)


@dataclass(frozen=True)
class JCComparison:
    xi_e_printed: float
    xi_g_printed: float
    xi_e_geometric: float
    xi_g_geometric: float
    xi_e_exact: float
    xi_g_exact: float
    beta_eff_printed: float
    beta_eff_exact: float

    @property
    def printed_vs_geometric(self) -> float:
        return max(
            abs(self.xi_e_printed - self.xi_e_geometric) / self.xi_e_geometric,
            abs(self.xi_g_printed - self.xi_g_geometric) / self.xi_g_geometric,
        )

    @property
    def printed_vs_exact(self) -> float:
        return max(
            abs(self.xi_e_printed - self.xi_e_exact) / self.xi_e_exact,
            abs(self.xi_g_printed - self.xi_g_exact) / self.xi_g_exact,
        )


def dispersive_jc_diagnostic(omega_b: float, g: complex, delta: float, beta: float, n_trunc: int = 24) -> JCComparison:
    """Formal factors of the TLS-cavity model three ways.

    ``printed``: the dispersive series with the same ``+chi`` sign on both
    branches; ``geometric``: its closed-form sum; ``exact``: Boltzmann sums
    over the truncated Jaynes-Cummings spectrum, each dressed level assigned
    to the bare ``|g, n>`` or ``|e, n>`` it overlaps most.
    """
    from .thermo import dispersive_shift, tls_analysis

    chi = dispersive_shift(omega_b, g, delta)
    tls = tls_analysis(omega_b, g, delta, beta)
    r = math.exp(-beta * (omega_b + chi))
    xi_g_geo = 1.0 / (1.0 - r)
    xi_e_geo = math.exp(-beta * chi) * xi_g_geo

    th = build_total_hamiltonian(
        SystemSpec("two_level", delta=delta),
        ApparatusSpec.cavity(omega_b, g, n_trunc),
        CouplingSpec("dipole"),
    )
    w, u = np.linalg.eigh(th.total)
    owner = np.argmax(np.abs(u) ** 2, axis=0)  # bare index s * n_trunc + n
    excited = owner >= n_trunc
    log_xi_e = logsumexp(-beta * (w[excited] - delta))
    log_xi_g = logsumexp(-beta * w[~excited])
    return JCComparison(
        tls.xi_e,
        tls.xi_g,
        xi_e_geo,
        xi_g_geo,
        math.exp(log_xi_e),
        math.exp(log_xi_g),
        tls.beta_eff,
        beta + (log_xi_g - log_xi_e) / delta,
    )


def random_hermitian(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (a + a.conj().T)


def random_offdiagonal_coupling(rng: np.random.Generator, h0, norm: float) -> np.ndarray:
    """Random Hermitian ``V`` with zero diagonal in the eigenbasis of ``h0``,
    scaled to Frobenius norm ``norm``."""
    _, u = np.linalg.eigh(h0)
    vt = random_hermitian(rng, len(h0))
    np.fill_diagonal(vt, 0.0)
    vt *= norm / np.linalg.norm(vt)
    return u @ vt @ u.conj().T
