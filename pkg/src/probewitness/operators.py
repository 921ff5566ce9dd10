"""Dense operator algebra on a system (x) apparatus product space.

Operators are plain complex ``numpy`` arrays. A :class:`ProductSpace` travels
alongside whenever the factorization matters. The system factor is always
the leftmost (slowest varying) Kronecker index.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Sequence

import numpy as np

from .errors import DimensionError, HermiticityError

HERMITIAN_TOL = 1e-12


@dataclass(frozen=True)
class ProductSpace:
    """Bookkeeping for ``C^sys_dim (x) C^app_dims[0] (x) C^app_dims[1] ...``."""

    sys_dim: int
    app_dims: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "app_dims", tuple(int(d) for d in self.app_dims))
        if self.sys_dim < 1 or any(d < 1 for d in self.app_dims):
            raise DimensionError(f"all factor dimensions must be >= 1, got {self}")

    @property
    def app_dim(self) -> int:
        return int(np.prod(self.app_dims, dtype=np.int64)) if self.app_dims else 1

    @property
    def dim(self) -> int:
        return self.sys_dim * self.app_dim

    def check(self, a: np.ndarray, name: str = "operator") -> None:
        if a.shape != (self.dim, self.dim):
            raise DimensionError(f"{name} has shape {a.shape}, space needs {(self.dim, self.dim)}")


@dataclass(frozen=True)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.eigenvectors
        return (u * self.eigenvalues) @ u.conj().T


def _square(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_error(a) -> float:
    a = _square(a)
    return float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_error(a) <= tol


def symmetrize(a, tol: float = HERMITIAN_TOL, name: str = "operator") -> np.ndarray:
    """Return ``(A + A^dagger)/2``; raise if ``A`` is not Hermitian within ``tol``."""
    a = _square(a)
    err = hermiticity_error(a)
    if err > tol:
        raise HermiticityError(f"{name} is not Hermitian: max|A - A^dagger| = {err:.3e} > {tol:.1e}")
    return 0.5 * (a + a.conj().T)


def tensor(a, b, space: ProductSpace | None = None) -> np.ndarray:
    """Kronecker product ``a (x) b`` with ``a`` as the slow index.

    With ``space`` given, ``a`` must live on the system factor and ``b`` on
    the full apparatus factor.
    """
    a, b = _square(a), _square(b)
    if space is not None and (a.shape[0] != space.sys_dim or b.shape[0] != space.app_dim):
        raise DimensionError(
            f"tensor factors {a.shape[0]} x {b.shape[0]} do not match space "
            f"{space.sys_dim} x {space.app_dim}"
        )
    return np.kron(a, b)


def kron_all(ops: Sequence[np.ndarray]) -> np.ndarray:
    if not ops:
        return np.ones((1, 1), dtype=complex)
    return reduce(np.kron, ops)


def embed_system(op, space: ProductSpace) -> np.ndarray:
    return tensor(op, np.eye(space.app_dim), space)


def embed_apparatus(op, space: ProductSpace) -> np.ndarray:
    return tensor(np.eye(space.sys_dim), op, space)


def eig_hermitian(a, tol: float = HERMITIAN_TOL) -> SpectralDecomposition:
    """Eigendecomposition with ascending eigenvalues.

    Inputs within ``tol`` of Hermitian are symmetrized first. Diagonal input
    takes an exact path (stable sort of the diagonal, permutation eigenvectors)
    so degenerate subspaces keep the computational basis.
    """
    a = symmetrize(a, tol)
    off = a - np.diag(np.diag(a))
    if not np.any(off):
        d = np.real(np.diag(a))
        order = np.argsort(d, kind="stable")
        u = np.eye(a.shape[0], dtype=complex)[:, order]
        return SpectralDecomposition(d[order], u)
    w, u = np.linalg.eigh(a)
    return SpectralDecomposition(w, u)


def func_of_hermitian(sd: SpectralDecomposition, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """``U diag(f(lambda)) U^dagger`` for a real map ``f``."""
    with np.errstate(over="ignore", invalid="ignore"):
        fw = np.asarray(f(sd.eigenvalues), dtype=float)
    bad = ~np.isfinite(fw)
    if np.any(bad):
        lam = sd.eigenvalues[np.argmax(bad)]
        raise OverflowError(f"matrix function is not finite at eigenvalue {lam!r}")
    u = sd.eigenvectors
    out = (u * fw) @ u.conj().T
    return 0.5 * (out + out.conj().T)


def expm_hermitian(a, scale: float = 1.0) -> np.ndarray:
    """``exp(scale * A)`` for Hermitian ``A``."""
    return func_of_hermitian(eig_hermitian(a), lambda x: np.exp(scale * x))


def thermal_weight(h, beta: float) -> tuple[np.ndarray, float]:
    """Shifted Boltzmann operator ``exp(-beta (H - E_min))`` and ``E_min``.

    The shift keeps the largest eigenvalue of the result at exactly 1.
    """
    sd = eig_hermitian(h)
    e_min = float(sd.eigenvalues[0])
    return func_of_hermitian(sd, lambda x: np.exp(-beta * (x - e_min))), e_min


def partial_trace_system(a, space: ProductSpace) -> np.ndarray:
    """Trace out every apparatus factor, keeping the system factor."""
    a = np.asarray(a)
    space.check(a)
    ns, na = space.sys_dim, space.app_dim
    return np.einsum("ikjk->ij", a.reshape(ns, na, ns, na))


def commutator(a, b) -> np.ndarray:
    a, b = _square(a), _square(b)
    if a.shape != b.shape:
        raise DimensionError(f"cannot commute shapes {a.shape} and {b.shape}")
    return a @ b - b @ a


def commutator_norm(a, b) -> float:
    """Frobenius norm of ``[a, b]``."""
    return float(np.linalg.norm(commutator(a, b)))


# single-mode ladder operators in a truncated Fock basis

def annihilation(n: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1).astype(complex)


def number(n: int) -> np.ndarray:
    return np.diag(np.arange(n, dtype=float)).astype(complex)


def mode_operator(op: np.ndarray, k: int, dims: Sequence[int]) -> np.ndarray:
    """Place a single-mode operator on factor ``k`` of a multi-mode space."""
    return kron_all([op if j == k else np.eye(d) for j, d in enumerate(dims)])
