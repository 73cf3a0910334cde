"""Dense complex linear algebra kernels for small (N ~ 11) beamforming state.

Everything here is sized for the engine's covariance bookkeeping: Hermitian
quadratic forms, rank-1 inverse updates, and a pivoted direct inversion used
as the validation counterpart of the incremental updates.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, NonHermitianError, SingularMatrixError

# Pivot below this fraction of the largest entry counts as singular.
SINGULAR_PIVOT_RTOL = 1e-14
# Factorization pivots must clear this fraction of the largest entry to
# declare positive definiteness.
PD_PIVOT_RTOL = 1e-12
HERMITIAN_RTOL = 1e-8


def _as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    return m


def quad_form(m, x, y) -> complex:
    """Triple product x^H M y.

    Raises DimensionMismatchError if the shapes do not conform.
    """
    m = _as_matrix(m)
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    if x.shape != (m.shape[0],) or y.shape != (m.shape[1],):
        raise DimensionMismatchError(
            f"quad_form shapes do not conform: M {m.shape}, x {x.shape}, y {y.shape}"
        )
    return complex(x.conj() @ m @ y)


def rank1_inverse_update(minv, u, scale) -> np.ndarray:
    """Return Minv + scale * u u^H.

    This is the inverse-side counterpart of a rank-1 covariance bump; the
    caller supplies the (real, for Hermitian chains) combined scale factor.
    """
    minv = _as_matrix(minv)
    u = np.asarray(u, dtype=complex)
    if u.shape != (minv.shape[0],):
        raise DimensionMismatchError(
            f"update vector shape {u.shape} does not match matrix {minv.shape}"
        )
    scale = complex(scale)
    if not np.isfinite(scale.real) or not np.isfinite(scale.imag):
        raise ValueError(f"non-finite rank-1 scale: {scale}")
    return minv + scale * np.outer(u, u.conj())


def invert(m) -> np.ndarray:
    """Invert by Gauss-Jordan elimination with partial pivoting.

    Kept independent of the incremental update path so the two can be checked
    against each other.  Raises SingularMatrixError once the best available
    pivot drops below SINGULAR_PIVOT_RTOL * max|M|.
    """
    a = _as_matrix(m).copy()
    n = a.shape[0]
    scale = np.max(np.abs(a))
    if scale == 0.0:
        raise SingularMatrixError("cannot invert the zero matrix")
    inv = np.eye(n, dtype=complex)
    for col in range(n):
        pivot_row = col + int(np.argmax(np.abs(a[col:, col])))
        pivot = a[pivot_row, col]
        if abs(pivot) < SINGULAR_PIVOT_RTOL * scale:
            raise SingularMatrixError(
                f"pivot {abs(pivot):.3e} below tolerance at column {col}"
            )
        if pivot_row != col:
            a[[col, pivot_row]] = a[[pivot_row, col]]
            inv[[col, pivot_row]] = inv[[pivot_row, col]]
        a[col] /= pivot
        inv[col] /= pivot
        for row in range(n):
            if row != col and a[row, col] != 0.0:
                factor = a[row, col]
                a[row] -= factor * a[col]
                inv[row] -= factor * inv[col]
    return inv


def hermitian_defect(m) -> float:
    """max_{i,l} |M(i,l) - conj(M(l,i))|, zero for exactly Hermitian input."""
    m = _as_matrix(m)
    return float(np.max(np.abs(m - m.conj().T)))


def is_positive_definite(m) -> bool:
    """Test positive definiteness through the pivots of an LDL^H sweep.

    The input must be Hermitian to tolerance; every elimination pivot has to
    clear PD_PIVOT_RTOL * max|M|.
    """
    a = _as_matrix(m).copy()
    scale = np.max(np.abs(a))
    if scale == 0.0:
        return False
    if hermitian_defect(a) > HERMITIAN_RTOL * scale:
        raise NonHermitianError(
            f"matrix is not Hermitian to tolerance (defect {hermitian_defect(a):.3e})"
        )
    n = a.shape[0]
    threshold = PD_PIVOT_RTOL * scale
    for col in range(n):
        pivot = a[col, col].real
        if pivot <= threshold:
            return False
        rest = a[col + 1:, col]
        a[col + 1:, col + 1:] -= np.outer(rest, rest.conj()) / pivot
    return True
