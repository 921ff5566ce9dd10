"""End-to-end witness bundle for a scenario."""
from __future__ import annotations

import numpy as np

from .config import Scenario
from .errors import ResourceCapError, TruncationError
from .fn_transform import fn_transform
from .models import apparatus_hamiltonian, bath_field, build_total_hamiltonian, truncation_gate
from .operators import ProductSpace
from .thermo import (
    ThermalAnalysis,
    effective_beta,
    fidelity_general,
    generalized_beta_profile,
    inner_energy_change,
    log_formal_factors,
    tls_analysis,
)


def _bundle(sc: Scenario, energies: np.ndarray, log_xi: np.ndarray, delta_T: float | None = None) -> ThermalAnalysis:
    beta = sc.beta
    xi = np.exp(log_xi)
    profile = generalized_beta_profile(xi, energies, beta)
    beta_eff = effective_beta(profile, sc.options.beta_eff_tol)
    a = -beta * (energies - energies.min()) + log_xi
    pops = np.exp(a - a.max())
    pops /= pops.sum()
    h_s = np.diag(energies)
    delta_U = inner_energy_change(np.diag(pops), beta, h_s)
    if delta_T is None and sc.system.kind == "two_level":
        x = (log_xi[0] - log_xi[1]) / sc.system.delta
        delta_T = x / (beta + x) / beta
    return ThermalAnalysis(
        beta=beta,
        xi=xi,
        beta_profile=profile,
        beta_eff=beta_eff,
        level_shifts=-log_xi / beta,
        delta_U=delta_U,
        delta_T=delta_T,
        fidelity=fidelity_general(beta, energies, log_xi=log_xi),
    )


def analyze(sc: Scenario) -> ThermalAnalysis:
    """Compute every witness quantity for ``sc``.

    Dipole (TLS-cavity) scenarios use the dispersive formal factors by
    default; ``options.dipole_formula = fn`` switches them to the numerical
    FN route used for dephasing couplings.
    """
    opts = sc.options
    energies = sc.system.energies()
    if sc.coupling.kind == "dipole" and opts.dipole_formula == "printed":
        app = sc.apparatus
        tls = tls_analysis(app.omega_b, app.g, sc.system.delta, sc.beta)
        log_xi = np.log([tls.xi_g, tls.xi_e])
        return _bundle(sc, energies, log_xi, tls.delta_T)

    if opts.truncation_gate:
        ok, change = truncation_gate(sc.apparatus, sc.beta, opts.truncation_tol)
        if not ok:
            raise TruncationError(
                f"doubling a mode cutoff changes Tr exp(-beta H_A) by {change:.2e} "
                f"(> {opts.truncation_tol:.0e}); raise n_trunc"
            )
    if sc.coupling.kind == "dephasing":
        return _bundle(sc, energies, _dephasing_log_xi(sc))
    th = build_total_hamiltonian(sc.system, sc.apparatus, sc.coupling, opts.dimension_cap)
    _, _, v_eff = fn_transform(th.h0, th.v, opts.degeneracy_tol)
    log_xi = log_formal_factors(th.h_a, v_eff, sc.beta, th.space, opts.leakage_tol)
    return _bundle(sc, energies, log_xi)


def _dephasing_log_xi(sc: Scenario) -> np.ndarray:
    """Per-branch FN transform for couplings diagonal in the system level.

    Branch ``n`` sees ``H0 = E_n + H_A`` and ``V = lambda_n X``; no operator
    on the full product space is ever formed.
    """
    opts = sc.options
    space = ProductSpace(sc.system.dim, sc.apparatus.dims)
    if space.dim > opts.dimension_cap:
        raise ResourceCapError(f"total dimension {space.dim} exceeds cap {opts.dimension_cap}")
    energies = sc.system.energies()
    h_a = apparatus_hamiltonian(sc.apparatus)
    x = bath_field(sc.apparatus)
    tol = opts.degeneracy_tol
    if tol is None:
        ea = np.real(np.diag(h_a))
        tol = 1e-9 * float(energies.max() + ea.max() - energies.min() - ea.min())
    one = ProductSpace(1, sc.apparatus.dims)
    out = []
    for e_n, lam in zip(energies, sc.coupling.lambda_values(sc.system.dim)):
        h0 = h_a + e_n * np.eye(len(h_a))
        _, _, v_eff = fn_transform(h0, lam * x, tol)
        out.append(log_formal_factors(h_a, v_eff, sc.beta, one)[0])
    return np.array(out)
