"""
Pre-measurement: how fast do the apparatus branches separate?
=============================================================

With the system in level ``n`` the apparatus evolves under ``H_A + H(n)``.
The overlap of two branch states is the decoherence factor. For one mode it
follows the displaced-oscillator formula and recurs; a bath of several
incommensurate modes keeps it small for much longer.
"""

import numpy as np

from probewitness.dynamics import decoherence_matrix, orthogonality_time
from probewitness.fn_transform import branch_decompose
from probewitness.models import ApparatusSpec, CouplingSpec, Mode, SystemSpec, build_total_hamiltonian
from probewitness.oracle import dephasing_overlap_closed_form


def branches(modes):
    th = build_total_hamiltonian(
        SystemSpec("two_level", delta=1.0), ApparatusSpec.bath(modes), CouplingSpec("dephasing", "explicit", (0.0, 1.0))
    )
    vac = np.zeros(th.space.app_dim)
    vac[0] = 1.0
    return branch_decompose(th.v, th.space), th.h_a_local, vac


# One mode: numerical overlap next to the closed form over one period.
mode = Mode(1.0, 0.3, 30)
bd, h_a, vac = branches([mode])
times = np.linspace(0, 2 * np.pi, 9)
rec = decoherence_matrix(bd, h_a, vac, times)
closed = dephasing_overlap_closed_form([mode], 1.0, times)
for t, x, y in zip(times, rec.pair(0, 1), closed):
    print(f"t = {t:5.2f}  overlap = {x:.12f}  closed form = {y:.12f}")
print("first time below 0.9:", orthogonality_time(rec, 0.9)[(0, 1)])
print("first time below 0.1:", orthogonality_time(rec, 0.1)[(0, 1)], "(the overlap never gets that small)")

# Five incommensurate modes, numerically on a truncated space.
modes = [Mode(w, 0.5 * w, 4) for w in (1.0, np.sqrt(2), np.sqrt(3), np.pi / 2, np.e / 2)]
bd, h_a, vac = branches(modes)
times = np.linspace(0, 6, 61)
rec = decoherence_matrix(bd, h_a, vac, times)
print("\nfive-mode bath, first time below 0.2:", orthogonality_time(rec, 0.2)[(0, 1)])
