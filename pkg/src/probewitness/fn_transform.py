"""Second-order Froehlich-Nakajima (Schrieffer-Wolff) elimination of a weak coupling.

Given ``H = H0 + V`` the generator ``S`` solves ``V + [H0, S] = 0``; the
unitary ``exp(-S)`` then maps ``H`` to ``H0 + [V, S]/2`` up to third order.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError
from .operators import ProductSpace, commutator, commutator_norm, eig_hermitian, embed_system, symmetrize


@dataclass(frozen=True)
class GeneratorSolution:
    S: np.ndarray
    residual: float
    zeroed_pairs: list[tuple[int, int]] = field(default_factory=list)
    degeneracy_tol: float = 0.0


def solve_generator(h0, v, degeneracy_tol: float | None = None) -> GeneratorSolution:
    """Solve ``V + [H0, S] = 0`` for anti-Hermitian ``S``.

    Works in the eigenbasis of ``H0`` where ``S_ab = V_ab / (E_b - E_a)``.
    Pairs closer than ``degeneracy_tol`` (default ``1e-9`` times the spectral
    range of ``H0``) get ``S_ab = 0``; those carrying a nonzero ``V_ab`` are
    listed in ``zeroed_pairs`` as eigenbasis indices ``(a, b)``, ``a <= b``
    (input order when ``H0`` is diagonal), and ``residual`` then equals the
    norm of ``V`` on them.
    """
    h0 = symmetrize(h0, name="H0")
    v = symmetrize(v, name="V")
    if h0.shape != v.shape:
        raise DimensionError(f"H0 {h0.shape} and V {v.shape} differ in shape")
    diagonal = not np.any(h0 - np.diag(np.diag(h0)))
    if diagonal:
        # already in the eigenbasis; skip the basis change
        e, u = np.real(np.diag(h0)), None
        vt = v
    else:
        sd = eig_hermitian(h0)
        e, u = sd.eigenvalues, sd.eigenvectors
        vt = u.conj().T @ v @ u
    if degeneracy_tol is None:
        degeneracy_tol = 1e-9 * float(e.max() - e.min()) if len(e) else 0.0

    gap = e[None, :] - e[:, None]
    allowed = np.abs(gap) > degeneracy_tol
    st = np.zeros_like(vt)
    st[allowed] = vt[allowed] / gap[allowed]
    s = st if u is None else u @ st @ u.conj().T
    s = 0.5 * (s - s.conj().T)

    noise = 1e-12 * max(1.0, float(np.max(np.abs(vt)))) if vt.size else 0.0
    a_idx, b_idx = np.nonzero(~allowed & (np.abs(vt) > noise))
    zeroed = [(int(a), int(b)) for a, b in zip(a_idx, b_idx) if a <= b]

    if diagonal:
        residual = float(np.linalg.norm(v + e[:, None] * s - s * e[None, :]))
    else:
        residual = float(np.linalg.norm(v + commutator(h0, s)))
    return GeneratorSolution(s, residual, zeroed, degeneracy_tol)


def effective_hamiltonian(h0, v, sol: GeneratorSolution) -> np.ndarray:
    """``H0 + [V, S]/2``."""
    h0, v = np.asarray(h0), np.asarray(v)
    if h0.shape != sol.S.shape or v.shape != sol.S.shape:
        raise DimensionError("generator does not match H0/V dimensions")
    h = h0 + 0.5 * commutator(v, sol.S)
    scale = max(1.0, float(np.max(np.abs(h)))) if h.size else 1.0
    return symmetrize(h, tol=1e-10 * scale, name="H_eff")


@dataclass(frozen=True)
class BranchDecomposition:
    """Apparatus-space blocks ``<n| X |n>`` of an operator ``X`` on S (x) A."""

    branch_hamiltonians: list[np.ndarray]
    offdiag_leakage: float
    space: ProductSpace

    def block_diagonal(self) -> np.ndarray:
        """``sum_n |n><n| (x) H(n)`` on the full space."""
        ns = self.space.sys_dim
        out = np.zeros((self.space.dim,) * 2, dtype=complex)
        for n, h in enumerate(self.branch_hamiltonians):
            proj = np.zeros((ns, ns))
            proj[n, n] = 1.0
            out += np.kron(proj, h)
        return out


def branch_decompose(op, space: ProductSpace) -> BranchDecomposition:
    op = np.asarray(op)
    space.check(op)
    ns, na = space.sys_dim, space.app_dim
    blocks = op.reshape(ns, na, ns, na).transpose(0, 2, 1, 3)
    branches = [blocks[n, n].copy() for n in range(ns)]
    off = blocks.copy()
    off[np.arange(ns), np.arange(ns)] = 0.0
    return BranchDecomposition(branches, float(np.linalg.norm(off)), space)


def nondemolition_residual(h_s, v_eff) -> float:
    """``||[H_S, V_eff]||_F``; ``H_S`` may be given on the system factor alone."""
    h_s, v_eff = np.asarray(h_s), np.asarray(v_eff)
    if h_s.shape != v_eff.shape:
        ns, d = h_s.shape[0], v_eff.shape[0]
        if d % ns:
            raise DimensionError(f"cannot embed {ns}-level H_S into dimension {d}")
        h_s = embed_system(h_s, ProductSpace(ns, (d // ns,)))
    return commutator_norm(h_s, v_eff)


def fn_transform(h0, v, degeneracy_tol: float | None = None):
    """Convenience wrapper: ``(solution, H_eff, V_eff)``."""
    sol = solve_generator(h0, v, degeneracy_tol)
    h_eff = effective_hamiltonian(h0, v, sol)
    return sol, h_eff, h_eff - symmetrize(h0)


def fn_transform_blockwise(h0, v, space: ProductSpace, degeneracy_tol: float | None = None) -> BranchDecomposition:
    """Branches of ``V_eff`` for ``H0`` and ``V`` that are both block diagonal
    in the system index.

    Same result as :func:`fn_transform` followed by :func:`branch_decompose`
    (generator elements between different branches vanish), at the cost of
    ``sys_dim`` apparatus-sized problems instead of one full-size one.
    """
    h0_b, v_b = branch_decompose(h0, space), branch_decompose(v, space)
    if h0_b.offdiag_leakage > 0 or v_b.offdiag_leakage > 0:
        raise DimensionError("blockwise FN transform needs H0 and V block diagonal in the system index")
    if degeneracy_tol is None:
        e = np.concatenate([np.linalg.eigvalsh(h) for h in h0_b.branch_hamiltonians])
        degeneracy_tol = 1e-9 * float(e.max() - e.min())
    blocks = [fn_transform(h, x, degeneracy_tol)[2] for h, x in zip(h0_b.branch_hamiltonians, v_b.branch_hamiltonians)]
    return BranchDecomposition(blocks, 0.0, space)
