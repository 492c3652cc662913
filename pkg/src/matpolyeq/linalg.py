"""Dense complex linear algebra substrate.

Thin, contract-enforcing wrappers around numpy's LAPACK bindings.  Every
function promotes its input to complex128, rejects non-finite entries, and
is deterministic for identical inputs.  Null spaces are tolerance-based on
singular values; eigenvalues come back in a fixed lexicographic order so
that downstream class enumeration is reproducible.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    NonFiniteInput,
    SingularMatrix,
)

#: Relative singular-value cutoff used for rank decisions.
DEFAULT_TOL_RANK = 1e-10


def as_matrix(data) -> np.ndarray:
    """Coerce to a 2-d complex128 array, rejecting non-finite entries."""
    a = np.array(data, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise NonFiniteInput("matrix entries must be finite")
    return a


def as_vector(data) -> np.ndarray:
    """Coerce to a 1-d complex128 array, rejecting non-finite entries."""
    a = np.array(data, dtype=np.complex128)
    if a.ndim != 1 or a.shape[0] < 1:
        raise DimensionMismatch(f"expected a 1-d vector, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise NonFiniteInput("vector entries must be finite")
    return a


def _square(data) -> np.ndarray:
    a = as_matrix(data)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def matmul(a, b) -> np.ndarray:
    """Matrix product with an explicit inner-dimension check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(
            f"inner dimensions disagree: {a.shape} x {b.shape}"
        )
    return a @ b


def frobenius(m) -> float:
    """Square root of the sum of squared entry moduli."""
    return float(np.linalg.norm(as_matrix(m)))


def det(m) -> complex:
    """Determinant via LU factorization."""
    return complex(np.linalg.det(_square(m)))


def inverse(m, tol_rank: float = DEFAULT_TOL_RANK) -> tuple[np.ndarray, float]:
    """Matrix inverse together with the 2-norm condition number.

    Raises SingularMatrix when the smallest singular value is at or below
    ``tol_rank`` times the largest one.
    """
    a = _square(m)
    s = np.linalg.svd(a, compute_uv=False)
    if s[-1] <= tol_rank * s[0]:
        raise SingularMatrix(
            f"smallest singular value {s[-1]:.3e} <= {tol_rank:.0e} * {s[0]:.3e}"
        )
    return np.linalg.inv(a), float(s[0] / s[-1])


def lex_key(z: complex) -> tuple[float, float]:
    """(real, imag) rounded at 12 significant digits of the value's modulus.

    Rounding at the scale of the whole value, not per component, snaps
    roundoff like 1e-17 + 1j to (0, 1) so orderings stay reproducible.
    """
    re = float(np.real(z))
    im = float(np.imag(z))
    scale = max(abs(re), abs(im))
    if scale == 0.0 or not math.isfinite(scale):
        return (re, im)
    decimals = 11 - math.floor(math.log10(scale))
    return (round(re, decimals), round(im, decimals))


def lex_argsort(values) -> np.ndarray:
    """Indices sorting complex values lexicographically by :func:`lex_key`."""
    v = np.asarray(values, dtype=np.complex128)
    return np.array(sorted(range(len(v)), key=lambda i: lex_key(v[i])), dtype=int)


def eigen(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues and right eigenvectors, sorted lexicographically.

    Returns ``(values, vectors)`` with ``vectors[:, k]`` the unit eigenvector
    for ``values[k]``; ordering is by (real, imag) after rounding to 12
    significant digits so repeated calls enumerate identically.
    """
    a = _square(m)
    try:
        vals, vecs = np.linalg.eig(a)
    except np.linalg.LinAlgError as exc:  # geev hit its iteration cap
        raise ConvergenceFailure(str(exc)) from exc
    order = lex_argsort(vals)
    return vals[order], vecs[:, order]


def null_space(m, side: str = "right", tol_rank: float = DEFAULT_TOL_RANK) -> list[np.ndarray]:
    """Orthonormal basis of the null space on the requested side.

    Right vectors v satisfy ``m @ v ~ 0``; left vectors use the row
    convention ``v @ m ~ 0``.  Membership is decided by singular values
    sigma <= ``tol_rank`` * sigma_max; a full-rank matrix yields ``[]``.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    a = as_matrix(m)
    if side == "left":
        # left null vectors are conjugated right null vectors of the conjugate transpose
        return [v.conj() for v in null_space(a.conj().T, "right", tol_rank)]
    _, s, vh = np.linalg.svd(a)
    smax = s[0] if s.size else 0.0
    if smax == 0.0:
        rank = 0
    else:
        rank = int(np.sum(s > tol_rank * smax))
    return [vh[i].conj() for i in range(rank, a.shape[1])]
