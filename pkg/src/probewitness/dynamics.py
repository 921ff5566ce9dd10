"""Pre-measurement stage: branch-conditioned apparatus evolution.

With the system in level ``n`` the apparatus state evolves as
``|D_n(t)> = exp(-i (H_A + H(n)) t) |D>``. The overlaps
``|<D_m(t)|D_n(t)>|`` decay when the probe records which level it saw.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, DomainError
from .fn_transform import BranchDecomposition
from .operators import eig_hermitian


@dataclass(frozen=True)
class DecoherenceRecord:
    times: np.ndarray
    overlaps: np.ndarray  # shape (len(times), n_branches, n_branches)
    levels: tuple[int, ...]

    def pair(self, m: int, n: int) -> np.ndarray:
        """Overlap magnitudes of system levels ``m`` and ``n`` over time."""
        return self.overlaps[:, self.levels.index(m), self.levels.index(n)]


def branch_propagator(h, t: float) -> np.ndarray:
    sd = eig_hermitian(h)
    u = sd.eigenvectors
    return (u * np.exp(-1j * sd.eigenvalues * t)) @ u.conj().T


def decoherence_matrix(
    branches: BranchDecomposition | Sequence[np.ndarray],
    h_a,
    initial,
    times,
    levels: Sequence[int] | None = None,
    literal: bool = False,
) -> DecoherenceRecord:
    """Overlap magnitudes of the apparatus branch states on a time grid.

    Each branch evolves under ``H_A + H(n)``. ``literal=True`` drops ``H_A``
    and evolves under ``H(n)`` alone.
    """
    hs = branches.branch_hamiltonians if isinstance(branches, BranchDecomposition) else list(branches)
    levels = tuple(range(len(hs))) if levels is None else tuple(levels)
    psi0 = np.asarray(initial, dtype=complex).ravel()
    norm = np.linalg.norm(psi0)
    if abs(norm - 1.0) > 1e-12:
        raise DomainError(f"initial apparatus state is not normalized (norm {norm!r})")
    h_a = np.asarray(h_a)
    if h_a.shape != (psi0.size, psi0.size):
        raise DimensionError(f"H_A shape {h_a.shape} does not match state size {psi0.size}")
    times = np.asarray(times, dtype=float)

    states = []
    for n in levels:
        h = hs[n] if literal else h_a + hs[n]
        if h.shape != h_a.shape:
            raise DimensionError(f"branch {n} has shape {h.shape}, apparatus needs {h_a.shape}")
        sd = eig_hermitian(h)
        c = sd.eigenvectors.conj().T @ psi0
        phases = np.exp(-1j * np.outer(times, sd.eigenvalues))
        psi_t = (phases * c) @ sd.eigenvectors.T  # (T, dim)
        psi_t[times == 0] = psi0  # exact at t = 0, so every pair starts at overlap 1
        states.append(psi_t)
    states = np.stack(states, axis=1)  # (T, branches, dim)
    ov = np.abs(np.einsum("tmi,tni->tmn", states.conj(), states))
    idx = np.arange(len(levels))
    ov[:, idx, idx] = 1.0
    return DecoherenceRecord(times, ov, levels)


def orthogonality_time(record: DecoherenceRecord, threshold: float) -> dict[tuple[int, int], float | None]:
    """First sampled time each pair overlap falls strictly below ``threshold``.

    Pairs that never do within the window map to ``None``; finite-mode probes
    recur and need not orthogonalize.
    """
    if not 0 < threshold <= 1:
        raise DomainError(f"threshold must lie in (0, 1], got {threshold}")
    out = {}
    for i, m in enumerate(record.levels):
        for j in range(i + 1, len(record.levels)):
            hit = np.nonzero(record.overlaps[:, i, j] < threshold)[0]
            out[(m, record.levels[j])] = float(record.times[hit[0]]) if hit.size else None
    return out
