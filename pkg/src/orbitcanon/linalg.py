"""Dense complex linear algebra for small (n <= 8) matrices.

The factorization at the heart of everything is the Iwasawa/Gram-Schmidt
splitting of a special-linear matrix into

    m = unitary * unipotent * diagonal

with the unipotent factor unit upper-triangular and the diagonal factor
positive real.  It is computed by modified Gram-Schmidt with a positive
diagonal, then the triangular factor R is split as R = N * A.

Eigensolves, matrix exponential and least squares are thin wrappers over
LAPACK / scipy with the contracts (sorting, residual bounds, error classes)
this library relies on.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    DimensionMismatch,
    NearSingular,
    NotHermitian,
    NotPositive,
    NotSpecial,
    RankDeficient,
)
from .tolerances import DEFAULT_TOLERANCES, Tolerances

__all__ = [
    "IwasawaFactors",
    "dagger",
    "max_abs",
    "iwasawa_factor",
    "hermitian_eigen",
    "matrix_exp",
    "positive_log",
    "lstsq_real",
    "realify",
    "unrealify",
    "real_basis_matrix",
    "solve_in_span",
]


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().swapaxes(-1, -2)


def max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def _check_finite(m: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(m.view(float))):
        raise ValueError(f"{what}: non-finite entries")


@dataclass(frozen=True)
class IwasawaFactors:
    """Triple (unitary, unipotent, diagonal) with m = unitary @ unipotent @ diagonal."""

    unitary: np.ndarray
    unipotent: np.ndarray
    diagonal: np.ndarray

    def product(self) -> np.ndarray:
        return self.unitary @ self.unipotent @ self.diagonal


def iwasawa_factor(m: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> IwasawaFactors:
    """Factor a special-linear matrix as special-unitary x unit-upper x positive-diagonal.

    Modified Gram-Schmidt on the columns yields m = Q R with R upper
    triangular and positive diagonal; the split R = N A with A = diag(R)
    gives the unipotent and diagonal factors.
    """
    m = np.asarray(m, dtype=complex)
    _check_finite(m, "iwasawa_factor")
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionMismatch(f"square matrix expected, got {m.shape}")
    det = np.linalg.det(m)
    if abs(det - 1.0) > tol.det_one:
        raise NotSpecial(f"det = {det}, expected 1")
    sv = np.linalg.svd(m, compute_uv=False)
    if sv[-1] <= tol.near_singular:
        raise NearSingular(f"smallest singular value {sv[-1]:.3e}")

    q = m.astype(complex).copy()
    r = np.zeros((n, n), dtype=complex)
    for j in range(n):
        for i in range(j):
            r[i, j] = np.vdot(q[:, i], q[:, j])
            q[:, j] -= r[i, j] * q[:, i]
        r[j, j] = np.linalg.norm(q[:, j])
        q[:, j] /= r[j, j]
    a = np.diag(r).real
    unipotent = r / a[None, :]
    np.fill_diagonal(unipotent, 1.0)
    diagonal = np.diag(a.astype(complex))
    return IwasawaFactors(unitary=q, unipotent=unipotent, diagonal=diagonal)


def hermitian_eigen(m: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES):
    """Eigensolve for Hermitian m: eigenvalues descending, unitary eigenvectors."""
    m = np.asarray(m, dtype=complex)
    if max_abs(m - dagger(m)) > tol.hermitian:
        raise NotHermitian(f"||m - m^dag||_max = {max_abs(m - dagger(m)):.3e}")
    w, v = np.linalg.eigh(0.5 * (m + dagger(m)))
    return w[::-1].copy(), v[:, ::-1].copy()


def matrix_exp(m: np.ndarray) -> np.ndarray:
    """Matrix exponential (scaling-and-squaring Pade kernel via scipy)."""
    m = np.asarray(m, dtype=complex)
    _check_finite(m, "matrix_exp")
    return scipy.linalg.expm(m)


def positive_log(p: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Hermitian logarithm of a positive-definite Hermitian matrix."""
    p = np.asarray(p, dtype=complex)
    if max_abs(p - dagger(p)) > tol.hermitian:
        raise NotHermitian("positive_log expects a Hermitian matrix")
    w, v = np.linalg.eigh(0.5 * (p + dagger(p)))
    if np.min(w) <= tol.positive_floor:
        raise NotPositive(f"eigenvalue {np.min(w):.3e} at or below floor")
    out = (v * np.log(w)[None, :]) @ dagger(v)
    return 0.5 * (out + dagger(out))


def lstsq_real(a: np.ndarray, b: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES):
    """Least-squares solve of a real system with a rank guard.

    Returns (x, residual_norm) where x minimizes ||a x - b||_2.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    sv = np.linalg.svd(a, compute_uv=False)
    if sv.size == 0 or sv[-1] <= tol.lstsq_rank * sv[0]:
        raise RankDeficient(f"singular values span [{sv[-1]:.3e}, {sv[0]:.3e}]")
    x, _, _, _ = np.linalg.lstsq(a, b, rcond=None)
    residual = float(np.linalg.norm(a @ x - b))
    return x, residual


# --- real-linear views of complex matrix spaces ---------------------------
#
# Real-linear solves (tangent splittings, frame decompositions) flatten a
# complex n x n matrix into the real vector (Re entries, Im entries).


def realify(m: np.ndarray) -> np.ndarray:
    """Flatten complex matrices (..., n, n) -> real vectors (..., 2 n^2)."""
    m = np.asarray(m, dtype=complex)
    flat = m.reshape(m.shape[:-2] + (-1,))
    return np.concatenate([flat.real, flat.imag], axis=-1)


def unrealify(v: np.ndarray, n: int) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    k = n * n
    return (v[..., :k] + 1j * v[..., k:]).reshape(v.shape[:-1] + (n, n))


def real_basis_matrix(mats) -> np.ndarray:
    """Stack matrices as columns of a real (2 n^2, len) coefficient matrix."""
    cols = [realify(m) for m in mats]
    return np.stack(cols, axis=-1)


def solve_in_span(basis_mats, target: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES):
    """Real-linear coordinates of target in the span of basis_mats.

    Returns (coefficients, residual_norm).
    """
    a = real_basis_matrix(basis_mats)
    return lstsq_real(a, realify(target), tol=tol)
