"""Thermal witnesses of a probed system sharing a heat bath with its probe.

Boltzmann sums are evaluated in log space with the smallest energy shifted
to zero, so every quantity here is unchanged by a global energy offset.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .errors import DomainError, LeakageError
from .fn_transform import branch_decompose
from .operators import ProductSpace, embed_apparatus, partial_trace_system, symmetrize, thermal_weight

BETA_EFF_TOL = 1e-8
LEAKAGE_TOL = 1e-8
TLS_TAIL_TOL = 1e-14


@dataclass(frozen=True)
class ThermalAnalysis:
    beta: float
    xi: np.ndarray
    beta_profile: np.ndarray
    beta_eff: float | None
    level_shifts: np.ndarray
    delta_U: float
    delta_T: float | None
    fidelity: float


def _check_beta(beta: float) -> None:
    if not beta > 0:
        raise DomainError(f"inverse temperature must be > 0, got {beta}")


def reduced_system_state(h_total, beta: float, space: ProductSpace) -> np.ndarray:
    """``Tr_A exp(-beta H) / Tr exp(-beta H)``."""
    _check_beta(beta)
    h_total = np.asarray(h_total)
    space.check(h_total, "H_total")
    w, _ = thermal_weight(h_total, beta)
    rho = partial_trace_system(w, space)
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def canonical_state(h_s, beta: float) -> np.ndarray:
    """``exp(-beta H_S) / Z_S`` on the system factor."""
    _check_beta(beta)
    w, _ = thermal_weight(h_s, beta)
    return w / np.trace(w).real


def log_formal_factors(h_a, v_eff, beta: float, space: ProductSpace, leakage_tol: float = LEAKAGE_TOL) -> np.ndarray:
    """``ln xi(n)`` with ``xi(n) = Tr exp(-beta (H_A + H(n)))`` per system branch.

    ``h_a`` may be given on the apparatus factor or on the full space.
    """
    _check_beta(beta)
    h_a = np.asarray(h_a)
    if h_a.shape[0] == space.app_dim and space.sys_dim > 1:
        h_a = embed_apparatus(h_a, space)
    bd = branch_decompose(h_a + np.asarray(v_eff), space)
    if bd.offdiag_leakage > leakage_tol:
        raise LeakageError(
            f"operator couples different system levels (leakage {bd.offdiag_leakage:.3e} > "
            f"{leakage_tol:.1e}); eliminate the coupling with the FN transform first"
        )
    return np.array([logsumexp(-beta * np.linalg.eigvalsh(symmetrize(h))) for h in bd.branch_hamiltonians])


def formal_factors(h_a, v_eff, beta: float, space: ProductSpace, leakage_tol: float = LEAKAGE_TOL) -> np.ndarray:
    log_xi = log_formal_factors(h_a, v_eff, beta, space, leakage_tol)
    if np.any(log_xi > 709.0):
        raise OverflowError(f"formal factor exp({log_xi.max():.1f}) overflows; use log_formal_factors")
    return np.exp(log_xi)


def _gaps(energies) -> np.ndarray:
    e = np.asarray(energies, dtype=float)
    gaps = np.diff(e)
    for n, d in enumerate(gaps):
        if not d > 0:
            raise DomainError(f"levels {n} and {n + 1} are not strictly increasing (gap {d})")
    return gaps


def generalized_beta_profile(xi, energies, beta: float) -> np.ndarray:
    """``beta(n) = beta + ln(xi(n)/xi(n+1)) / (E_{n+1} - E_n)``."""
    log_xi = np.log(np.asarray(xi, dtype=float))
    return beta + (log_xi[:-1] - log_xi[1:]) / _gaps(energies)


def population_beta_profile(populations, energies) -> np.ndarray:
    """``beta(n) = ln(P_n / P_{n+1}) / (E_{n+1} - E_n)`` from level populations."""
    log_p = np.log(np.asarray(populations, dtype=float))
    return (log_p[:-1] - log_p[1:]) / _gaps(energies)


def flatness_residuals(xi, energies) -> np.ndarray:
    """Log form of ``[xi(n+1)/xi(n+2)]^D_n = [xi(n)/xi(n+1)]^D_{n+1}``.

    Entry ``n`` is ``D_n ln(xi(n+1)/xi(n+2)) - D_{n+1} ln(xi(n)/xi(n+1))``,
    which equals ``D_n D_{n+1} (beta(n+1) - beta(n))``.
    """
    gaps = _gaps(energies)
    ratio = -np.diff(np.log(np.asarray(xi, dtype=float)))  # ln(xi(n)/xi(n+1))
    return gaps[:-1] * ratio[1:] - gaps[1:] * ratio[:-1]


def effective_beta(beta_profile, tol: float = BETA_EFF_TOL) -> float | None:
    """Mean of the profile if it is flat to relative ``tol``, else ``None``."""
    prof = np.asarray(beta_profile, dtype=float)
    if prof.size == 0:
        raise DomainError("empty beta profile")
    mean = float(prof.mean())
    scale = abs(mean) if mean != 0 else 1.0
    return mean if float(np.max(np.abs(prof - mean))) <= tol * scale else None


def dephasing_beta_closed_form(lam, energies, eps: float, beta: float) -> np.ndarray:
    """``beta(n) = beta (1 - (|lam_{n+1}|^2 - |lam_n|^2) eps / (E_{n+1} - E_n))``."""
    l2 = np.abs(np.asarray(lam)) ** 2
    return beta * (1.0 - np.diff(l2) * eps / _gaps(energies))


def level_shifts_from_xi(xi, beta: float) -> np.ndarray:
    """Isometric reading ``xi(n) = exp(-beta dE_n)``."""
    _check_beta(beta)
    return -np.log(np.asarray(xi, dtype=float)) / beta


def inner_energy_change(rho_s, beta: float, h_s) -> float:
    """``Tr[H_S rho_S] - Tr[H_S rho_can]`` with both states normalized."""
    h_s = np.asarray(h_s)
    rho_s = np.asarray(rho_s)
    rho_can = canonical_state(h_s, beta)
    return float(np.real(np.trace(h_s @ rho_s) - np.trace(h_s @ rho_can)))


def inner_energy_change_unnormalized(energies, beta: float, beta_eff: float) -> float:
    """Literal ``sum_n E_n [exp(-beta_eff E_n) - exp(-beta E_n)]``, no partition functions."""
    e = np.asarray(energies, dtype=float)
    return float(np.sum(e * (np.exp(-beta_eff * e) - np.exp(-beta * e))))


@dataclass(frozen=True)
class TLSAnalysis:
    xi_e: float
    xi_g: float
    chi: float
    beta_eff: float
    delta_T: float
    n_terms: int
    tail_bound: float


def dispersive_shift(omega_b: float, g: complex, delta: float) -> float:
    if omega_b == delta:
        raise DomainError("resonant cavity (omega_b == delta): dispersive shift diverges")
    return abs(g) ** 2 / (omega_b - delta)


def tls_terms_needed(ratio: float, tol: float = TLS_TAIL_TOL) -> int:
    """Smallest ``N`` with geometric tail ``ratio^N / (1 - ratio) < tol``."""
    if ratio <= 0.0:
        return 1
    return max(1, math.ceil(math.log(tol * (1.0 - ratio)) / math.log(ratio)) + 1)


def tls_analysis(omega_b: float, g: complex, delta: float, beta: float, n_max: int | None = None) -> TLSAnalysis:
    """Formal factors, effective temperature and cooling of a two-level system
    dispersively read out by a cavity of frequency ``omega_b``.

    ``xi_e = sum_n exp(-beta [omega_b n + chi (n+1)])`` and
    ``xi_g = sum_n exp(-beta [omega_b n + chi n])`` with
    ``chi = |g|^2 / (omega_b - delta)``; the sums run to ``n_max`` terms,
    chosen adaptively when omitted so the geometric tail is below 1e-14.
    """
    _check_beta(beta)
    if not delta > 0:
        raise DomainError(f"level spacing must be > 0, got {delta}")
    chi = dispersive_shift(omega_b, g, delta)
    if not omega_b + chi > 0:
        raise DomainError(f"omega_b + chi = {omega_b + chi} <= 0: formal factor sums diverge")
    if omega_b < 10 * delta:
        warnings.warn(f"omega_b = {omega_b} < 10 delta: outside the large-detuning regime", stacklevel=2)

    ratio = math.exp(-beta * (omega_b + chi))
    n_terms = tls_terms_needed(ratio) if n_max is None else int(n_max)
    n = np.arange(n_terms)
    log_xi_e = logsumexp(-beta * (omega_b * n + chi * (n + 1)))
    log_xi_g = logsumexp(-beta * (omega_b * n + chi * n))
    x = float(log_xi_g - log_xi_e) / delta
    if g != 0 and not log_xi_g > log_xi_e:
        raise DomainError("xi_g <= xi_e: cooling requires omega_b > delta")
    beta_eff = beta + x
    delta_T = x / (beta + x) / beta
    tail = ratio**n_terms / (1.0 - ratio)
    return TLSAnalysis(math.exp(log_xi_e), math.exp(log_xi_g), chi, beta_eff, delta_T, n_terms, tail)


def fidelity_general(beta: float, energies, xi=None, *, log_xi=None) -> float:
    """Fidelity between ``exp(-beta E_n)/Z`` and ``exp(-beta E_n) xi(n)/Z'``.

    Both states are diagonal in the same basis, so this is the Bhattacharyya
    coefficient of the two populations.
    """
    if log_xi is None:
        log_xi = np.log(np.asarray(xi, dtype=float))
    log_xi = np.asarray(log_xi, dtype=float)
    e = np.asarray(energies, dtype=float)
    a = -beta * (e - e.min())
    num = logsumexp(a + 0.5 * log_xi)
    den = 0.5 * logsumexp(a) + 0.5 * logsumexp(a + log_xi)
    return float(np.exp(num - den))


def bhattacharyya(p, q) -> float:
    return float(np.sum(np.sqrt(np.asarray(p) * np.asarray(q))))


def fidelity_oscillator_closed_form(beta: float, omega: float, lam: float) -> float:
    """Fidelity of an oscillator whose levels shift by ``-lam n``.

    ``sqrt(sinh(beta w/2) sinh(beta (w - lam)/2)) / sinh(beta (w - lam/2)/2)``.
    """
    _check_beta(beta)
    if not 0 <= lam < omega:
        raise DomainError(f"need 0 <= lambda < omega, got lambda={lam}, omega={omega}")
    return math.sqrt(math.sinh(beta * omega / 2) * math.sinh(beta * (omega - lam) / 2)) / math.sinh(
        beta * (omega - lam / 2) / 2
    )


def temperature_shift_oscillator(beta: float, omega: float, lam: float) -> float:
    """``1/beta_eff - 1/beta = 1 / (beta (omega/lam - 1))``; zero at ``lam = 0``."""
    _check_beta(beta)
    if not 0 <= lam < omega:
        raise DomainError(f"need 0 <= lambda < omega, got lambda={lam}, omega={omega}")
    if lam == 0:
        return 0.0
    return 1.0 / (beta * (omega / lam - 1.0))
