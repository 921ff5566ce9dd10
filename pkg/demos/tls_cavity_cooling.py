"""
Cooling a qubit by dispersive readout
=====================================

A two-level system (gap ``D``) is read out by a far-detuned cavity. With the
dispersive shift ``chi = |g|^2 / (omega_b - D)`` and branch sums

    xi_e = sum_n exp(-beta [omega_b n + chi (n + 1)])
    xi_g = sum_n exp(-beta [omega_b n + chi n])

the qubit's populations correspond to a colder effective temperature.
"""

from probewitness.oracle import dispersive_jc_diagnostic
from probewitness.thermo import tls_analysis

t = tls_analysis(omega_b=10.0, g=0.5, delta=1.0, beta=1.0)
print(f"chi = {t.chi:.12f} (1/36 = {1 / 36:.12f})")
print(f"xi_g = {t.xi_g:.15f}, xi_e = {t.xi_e:.15f}  ({t.n_terms} terms, tail < {t.tail_bound:.1e})")
print(f"beta_eff = {t.beta_eff:.15f}")
print(f"temperature drop = {t.delta_T:.15f} T  (1/37 = {1 / 37:.15f})")

# The same shift applied with the sign of the exact Jaynes-Cummings spectrum
# tells a different story: there the two qubit levels are pushed in opposite
# directions, and the resulting population ratio corresponds to heating.
c = dispersive_jc_diagnostic(10.0, 0.5, 1.0, 1.0)
print("\nthree evaluations of the branch sums:")
print(f"  series      xi_g = {c.xi_g_printed:.12f}  xi_e = {c.xi_e_printed:.12f}")
print(f"  geometric   xi_g = {c.xi_g_geometric:.12f}  xi_e = {c.xi_e_geometric:.12f}")
print(f"  exact JC    xi_g = {c.xi_g_exact:.12f}  xi_e = {c.xi_e_exact:.12f}")
print(f"beta_eff from the series {c.beta_eff_printed:.6f}, from the exact spectrum {c.beta_eff_exact:.6f}")
