"""Oracle suites behind ``probewitness check``.

Each suite returns ``(label, passed, detail)`` tuples. The Jaynes-Cummings
suite is informational and always passes.
"""
from __future__ import annotations

import numpy as np

from .dynamics import decoherence_matrix
from .fn_transform import branch_decompose, effective_hamiltonian, fn_transform, nondemolition_residual, solve_generator
from .models import ApparatusSpec, CouplingSpec, Mode, SystemSpec, build_total_hamiltonian, self_energy
from .oracle import (
    dephasing_overlap_closed_form,
    dispersive_jc_diagnostic,
    exact_reference_state,
    fidelity_oscillator_series,
    random_hermitian,
    random_offdiagonal_coupling,
    scaling_exponent,
)
from .thermo import canonical_state, fidelity_oscillator_closed_form, reduced_system_state, tls_analysis

Result = tuple[str, bool, str]
FN_STRENGTHS = (0.1, 0.05, 0.025)


def fn_random_instance(rng: np.random.Generator, dim: int = 6):
    """Non-degenerate ``H0`` plus unit-norm off-diagonal coupling direction."""
    while True:
        h0 = random_hermitian(rng, dim)
        e = np.linalg.eigvalsh(h0)
        if np.min(np.diff(e)) > 0.05 * (e[-1] - e[0]):
            break
    return h0, random_offdiagonal_coupling(rng, h0, 1.0), float(e[-1] - e[0])


def fn_eigen_errors(h0, v_unit, spectral_range, strengths=FN_STRENGTHS):
    """Max |eig(H_eff) - eig(H0 + V)| and relative residual for each strength."""
    errs, resid = [], []
    for s in strengths:
        v = s * spectral_range * v_unit
        sol = solve_generator(h0, v)
        h_eff = effective_hamiltonian(h0, v, sol)
        errs.append(float(np.max(np.abs(np.linalg.eigvalsh(h_eff) - np.linalg.eigvalsh(h0 + v)))))
        resid.append(sol.residual / np.linalg.norm(v))
    return errs, resid


def fn_pooled_scaling(n_instances: int = 20, seed: int = 7):
    """Worst relative generator residual, pooled fit and per-instance fits.

    The pooled fit uses the geometric mean of the eigenvalue errors over all
    instances at each coupling strength.
    """
    rng = np.random.default_rng(seed)
    worst_resid, log_errs, singles = 0.0, [], []
    for _ in range(n_instances):
        h0, vu, rng_e = fn_random_instance(rng)
        errs, resid = fn_eigen_errors(h0, vu, rng_e)
        worst_resid = max(worst_resid, max(resid))
        log_errs.append(np.log(errs))
        singles.append(scaling_exponent(FN_STRENGTHS, errs).fitted_exponent)
    pooled = scaling_exponent(FN_STRENGTHS, np.exp(np.mean(log_errs, axis=0)))
    return worst_resid, pooled, np.array(singles)


def suite_fn(n_instances: int = 20, seed: int = 7) -> list[Result]:
    worst_resid, pooled, singles = fn_pooled_scaling(n_instances, seed)
    out = [
        ("generator residual", worst_resid <= 1e-10, f"max ||V+[H0,S]||/||V|| = {worst_resid:.2e}"),
        (
            "eigenvalue error exponent",
            pooled.fitted_exponent >= 2.7,
            f"pooled exponent = {pooled.fitted_exponent:.3f} (per instance {singles.min():.2f}..{singles.max():.2f})",
        ),
    ]
    # two-level closed case
    delta, worst = 1.0, 0.0
    for g in (0.2, 0.1, 0.05):
        h0, v = np.diag([0.0, delta]), g * np.array([[0.0, 1.0], [1.0, 0.0]])
        h_eff = effective_hamiltonian(h0, v, solve_generator(h0, v))
        exact = delta / 2 + np.array([-1, 1]) * np.sqrt(delta**2 / 4 + g**2)
        worst = max(worst, float(np.max(np.abs(np.linalg.eigvalsh(h_eff) - exact))) / (2 * g**4 / delta**3))
    out.append(("two-level fourth-order bound", worst <= 1.0, f"max error / (2 g^4/D^3) = {worst:.3f}"))
    return out


def _dephasing_models():
    bath = ApparatusSpec.bath([Mode(1.0, 0.1, 8), Mode(1.7, 0.05, 6)])
    return [
        (SystemSpec("two_level", delta=1.0), bath, CouplingSpec("dephasing", "explicit", (0.0, 1.0))),
        (SystemSpec("truncated_oscillator", omega=1.0, n_sys=4), bath, CouplingSpec("dephasing", "sqrt_n")),
        (SystemSpec("truncated_oscillator", omega=1.0, n_sys=4), bath, CouplingSpec("dephasing", "linear")),
    ]


def suite_nondemolition() -> list[Result]:
    out = []
    for sys, app, cpl in _dephasing_models():
        th = build_total_hamiltonian(sys, app, cpl)
        _, _, v_eff = fn_transform(th.h0, th.v)
        r = nondemolition_residual(th.h_s, v_eff)
        out.append((f"{sys.kind}/{cpl.lambda_rule}", r <= 1e-10, f"||[H_S, V_eff]|| = {r:.2e}"))
    th = build_total_hamiltonian(SystemSpec("two_level", delta=1.0), ApparatusSpec.cavity(10.0, 0.5, 6), CouplingSpec("dipole"))
    r = nondemolition_residual(th.h_s, th.v)
    out.append(("raw dipole coupling is demolishing", r > 0, f"||[H_S, V]|| = {r:.3f}"))
    return out


def suite_decoupled() -> list[Result]:
    out = []
    for sys in (SystemSpec("two_level", delta=1.0), SystemSpec("truncated_oscillator", omega=1.3, n_sys=5)):
        th = build_total_hamiltonian(sys, ApparatusSpec.bath([Mode(1.0, 0.0, 6), Mode(2.0, 0.0, 4)]), CouplingSpec())
        rho = reduced_system_state(th.total, 0.8, th.space)
        err = float(np.max(np.abs(rho - canonical_state(np.diag(th.energies), 0.8))))
        out.append((f"{sys.kind} decoupled Gibbs state", err <= 1e-12, f"max entry error = {err:.1e}"))
    return out


def suite_fidelity() -> list[Result]:
    worst = max(
        abs(fidelity_oscillator_series(1.0, 1.0, lam) - fidelity_oscillator_closed_form(1.0, 1.0, lam))
        for lam in np.round(np.arange(10) * 0.1, 10)
    )
    f0 = fidelity_oscillator_closed_form(1.0, 1.0, 0.0)
    return [
        ("series vs closed form", worst <= 1e-9, f"max |diff| = {worst:.1e}"),
        ("F(lambda=0) = 1", abs(f0 - 1) <= 1e-12, f"F(0) = {f0!r}"),
    ]


def suite_tls() -> list[Result]:
    t = tls_analysis(10.0, 0.5, 1.0, 1.0)
    chi = 0.25 / 9
    xi_g = 1.0 / (1.0 - np.exp(-(10.0 + chi)))
    xi_e = np.exp(-chi) * xi_g
    ok_xi = abs(t.xi_g - xi_g) <= 1e-12 * xi_g and abs(t.xi_e - xi_e) <= 1e-12 * xi_e
    return [
        ("beta_eff = 1 + 1/36", abs(t.beta_eff - (1 + 1 / 36)) <= 1e-12, f"beta_eff = {t.beta_eff!r}"),
        ("geometric closed form", ok_xi, f"xi_g = {t.xi_g!r}, xi_e = {t.xi_e!r}"),
        ("cooling", t.delta_T > 0 and t.xi_g > t.xi_e, f"delta_T = {t.delta_T!r}"),
    ]


def suite_decoherence() -> list[Result]:
    omega, g = 1.0, 0.3
    mode = Mode(omega, g, 30)
    th = build_total_hamiltonian(
        SystemSpec("two_level", delta=1.0), ApparatusSpec.bath([mode]), CouplingSpec("dephasing", "explicit", (0.0, 1.0))
    )
    bd = branch_decompose(th.v, th.space)
    vac = np.zeros(30)
    vac[0] = 1.0
    times = np.linspace(0.0, 2 * np.pi / omega, 201)
    rec = decoherence_matrix(bd, th.h_a_local, vac, times)
    err = float(np.max(np.abs(rec.pair(0, 1) - dephasing_overlap_closed_form([mode], 1.0, times))))
    return [("single-mode overlap closed form", err <= 1e-8, f"max |diff| = {err:.1e}")]


def suite_temperature() -> list[Result]:
    """Exact population temperatures against ``beta (1 - eps/omega)``."""
    devs = []
    for g in (0.1, 0.05):
        app = ApparatusSpec.bath([Mode(1.0, g, 12), Mode(1.5, g, 12)])
        th = build_total_hamiltonian(SystemSpec("truncated_oscillator", omega=1.0, n_sys=4), app, CouplingSpec())
        _, prof = exact_reference_state(th.h_s, th.h_a, th.v, 1.0, th.space)
        devs.append(float(np.max(np.abs(prof - (1.0 - self_energy(app))))))
    ratio = devs[0] / devs[1]
    return [
        ("halving g shrinks deviation >= 3x", ratio >= 3.0, f"ratio = {ratio:.2f}"),
        ("deviation at g = 0.05", devs[1] <= 1e-3, f"max |dbeta| = {devs[1]:.2e}"),
    ]


def suite_jc() -> list[Result]:
    c = dispersive_jc_diagnostic(10.0, 0.5, 1.0, 1.0)
    return [
        ("printed vs geometric (info)", True, f"rel diff = {c.printed_vs_geometric:.1e}"),
        (
            "printed vs exact JC (info)",
            True,
            f"rel diff = {c.printed_vs_exact:.3e}; beta_eff printed = {c.beta_eff_printed:.6f}, exact = {c.beta_eff_exact:.6f}",
        ),
    ]


SUITES = {
    "fn": suite_fn,
    "nondemolition": suite_nondemolition,
    "decoupled": suite_decoupled,
    "fidelity": suite_fidelity,
    "tls": suite_tls,
    "decoherence": suite_decoherence,
    "temperature": suite_temperature,
    "jc": suite_jc,
}


def run_suite(name: str) -> list[tuple[str, str, bool, str]]:
    names = list(SUITES) if name == "all" else [name]
    return [(n, label, ok, detail) for n in names for label, ok, detail in SUITES[n]()]
