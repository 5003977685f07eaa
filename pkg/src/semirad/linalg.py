"""Dense complex matrix primitives.

Matrices are plain ``numpy.ndarray`` of ``complex128``; every operation here
is a pure function of its inputs and safe to call concurrently.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import kernels
from .errors import NonConvergence, NonSquare, NotHermitian, NotPSD
from .tolerances import (
    EPS_HERM,
    EPS_NEG,
    EPS_RANK,
    THETA_BRACKETS,
    THETA_GRID,
    THETA_TOL,
)


class HermitianEig(NamedTuple):
    """Eigenvalues (real, ascending) and the unitary matrix of eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a) -> np.ndarray:
    """Coerce to a C-contiguous complex128 2-d array with finite entries."""
    m = np.ascontiguousarray(np.asarray(a, dtype=np.complex128))
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise NonSquare(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.view(np.float64))):
        raise ValueError("matrix has non-finite entries")
    return m


def _require_square(m: np.ndarray) -> None:
    if m.shape[0] != m.shape[1]:
        raise NonSquare(f"expected a square matrix, got shape {m.shape}")


def hermitian_part(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2.0


def herm_eig(mat, max_sweeps: int = 60) -> HermitianEig:
    """Eigendecomposition of a Hermitian matrix.

    Raises NotHermitian when ||M - M*||_F exceeds EPS_HERM * (1 + ||M||_F)
    and NonConvergence when the solver exhausts its sweep budget.  Output is
    deterministic for identical input.
    """
    m = as_matrix(mat)
    _require_square(m)
    scale = float(np.linalg.norm(m))
    if float(np.linalg.norm(m - m.conj().T)) > EPS_HERM * (1.0 + scale):
        raise NotHermitian("matrix is not Hermitian within tolerance")
    w, v, ok = kernels.eigh_herm(hermitian_part(m), max_sweeps)
    if not ok:
        raise NonConvergence("eigensolver did not converge within the sweep budget")
    return HermitianEig(np.asarray(w, dtype=np.float64), np.asarray(v))


def operator_norm_2(mat) -> float:
    """Largest singular value."""
    return float(kernels.sigma_max(as_matrix(mat)))


def _clipped_psd_eig(mat, context: str) -> HermitianEig:
    eig = herm_eig(mat)
    w = eig.eigenvalues
    neg_tol = EPS_NEG * (float(np.max(np.abs(w))) if w.size else 0.0)
    if np.any(w < -neg_tol):
        raise NotPSD(f"{context}: eigenvalue {float(np.min(w)):g} below -{neg_tol:g}")
    return HermitianEig(np.maximum(w, 0.0), eig.eigenvectors)


def pseudo_inverse(mat, eps_rank: float = EPS_RANK) -> np.ndarray:
    """Moore-Penrose inverse of a Hermitian PSD matrix.

    Eigenvalues at or below ``eps_rank * lambda_max`` are treated as exact
    zeros; the four Moore-Penrose residuals of the result are covered by the
    test suite.
    """
    if not 0.0 < eps_rank < 1.0:
        raise ValueError("eps_rank must lie in (0, 1)")
    w, q = _clipped_psd_eig(mat, "pseudo_inverse")
    lam_max = float(w[-1]) if w.size else 0.0
    inv = np.where(w > eps_rank * lam_max, np.divide(1.0, w, where=w > 0), 0.0)
    out = (q * inv) @ q.conj().T
    return hermitian_part(out)


def sqrt_psd(mat) -> np.ndarray:
    """Hermitian PSD square root."""
    w, q = _clipped_psd_eig(mat, "sqrt_psd")
    out = (q * np.sqrt(w)) @ q.conj().T
    return hermitian_part(out)


def pencil_parts(mat: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian pencil (Hr, Hi) with Re(e^{i t} M) = cos(t) Hr + sin(t) Hi."""
    hr = (mat + mat.conj().T) / 2.0
    hi = 1j * (mat - mat.conj().T) / 2.0
    return np.ascontiguousarray(hr), np.ascontiguousarray(hi)


def radius_of_matrix(
    mat: np.ndarray,
    grid: int = THETA_GRID,
    tol_theta: float = THETA_TOL,
) -> float:
    """Classical numerical radius of a square matrix (no input validation)."""
    if mat.shape[0] == 0:
        return 0.0
    hr, hi = pencil_parts(mat)
    val, _ = kernels.radius_pencil(hr, hi, grid, THETA_BRACKETS, tol_theta)
    return float(val)


def numerical_radius_classical(mat, tol: float = 1e-9) -> float:
    """Classical numerical radius w(S) = sup_t lambda_max(Re(e^{i t} S)).

    The sup is located on a THETA_GRID-point grid and polished by
    golden-section refinement of the best THETA_BRACKETS brackets down to a
    THETA_TOL angle bracket.  The objective is Lipschitz with constant at
    most w(S), so the grid stage alone is within w(S) * pi / THETA_GRID of
    the sup; refinement then resolves the hosting bracket to machine level,
    far below any practical ``tol``.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    m = as_matrix(mat)
    _require_square(m)
    return radius_of_matrix(m)
