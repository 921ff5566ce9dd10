"""
Fidelity against level shift and temperature shift
==================================================

Shifting the oscillator levels by ``-lambda n`` leaves a thermal state that
is still thermal, at ``beta_eff = beta (1 - lambda / omega)``. Its fidelity
with the original state is

    F = sqrt(sinh(beta w / 2) sinh(beta (w - lambda) / 2)) / sinh(beta (w - lambda / 2) / 2)

and drops monotonically as the probe becomes stronger. This script prints
both tables produced by ``probewitness sweep`` for ``omega = beta = 1``.
"""

import io
from contextlib import redirect_stdout
from pathlib import Path

from probewitness.cli import main

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

for axis in ("lambda", "delta_T"):
    buf = io.StringIO()
    with redirect_stdout(buf):
        main(["sweep", str(CONFIGS / "fig3.cfg"), "--axis", axis])
    lines = buf.getvalue().splitlines()
    print(lines[0])
    for line in lines[1::10]:
        print(line)
    print()
