"""Dense kernels: linear solves, eigenvalues, extreme singular values, operator norms.

Everything here works on plain complex ndarrays; the element types sit one
layer up.  Factorizations are delegated to LAPACK through numpy/scipy, with
the rank and residual contracts enforced on top.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import NoConvergence, SingularMatrix

# Pivot magnitudes below RANK_RTOL * max|entry| count as rank deficiency.
RANK_RTOL = 1e-14

# Hard cap on matrix order; larger inputs are rejected, not attempted.
MAX_ORDER = 500


def as_matrix(entries):
    """Validate and coerce input to a square finite complex matrix.

    Accepts anything ``np.asarray`` takes.  Rejects non-square shapes,
    orders outside [1, MAX_ORDER], and NaN/Inf entries.
    """
    a = np.asarray(entries, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n < 1 or n > MAX_ORDER:
        raise ValueError(f"matrix order {n} outside the supported range [1, {MAX_ORDER}]")
    if not np.isfinite(a).all():
        raise ValueError("matrix entries must be finite")
    return a


def solve(a, b):
    """Solve a x = b by partial-pivot LU.

    Raises SingularMatrix when any pivot falls below RANK_RTOL * max|a|.
    """
    a = as_matrix(a)
    b = np.asarray(b, dtype=np.complex128)
    if b.shape[0] != a.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    if b.size and not np.isfinite(b).all():
        raise ValueError("right-hand side entries must be finite")
    lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    scale = np.abs(a).max()
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= RANK_RTOL * scale:
        raise SingularMatrix(
            f"pivot {pivots.min():.3e} below rank tolerance {RANK_RTOL * scale:.3e}"
        )
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


@dataclass(frozen=True)
class EigenResult:
    """Raw eigenvalues with an a-posteriori residual bound.

    residual_bound is max_i ||A v_i - lambda_i v_i||_2 / ||A||_2 over unit
    right eigenvectors, zero for the zero matrix.  ``valid`` is False only
    on partial results attached to a NoConvergence error.
    """

    values: np.ndarray
    residual_bound: float
    valid: bool = True


def eigenvalues(a):
    """All eigenvalues of a (counted with multiplicity), with residual bound."""
    a = as_matrix(a)
    try:
        w, v = scipy.linalg.eig(a, check_finite=False)
    except scipy.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigenvalue iteration failed: {exc}") from exc
    norm_a = np.linalg.norm(a, 2)
    if norm_a == 0.0:
        return EigenResult(values=w, residual_bound=0.0)
    # v columns are unit vectors from LAPACK; guard anyway
    col_norms = np.linalg.norm(v, axis=0)
    col_norms[col_norms == 0.0] = 1.0
    resid = np.linalg.norm(a @ v - v * w[np.newaxis, :], axis=0) / col_norms
    return EigenResult(values=w, residual_bound=float(resid.max() / norm_a))


def schur_triangular(a):
    """Complex Schur form: returns (T, Z) with a = Z T Z^H, T upper triangular."""
    a = as_matrix(a)
    try:
        t, z = scipy.linalg.schur(a, output="complex")
    except scipy.linalg.LinAlgError as exc:
        raise NoConvergence(f"Schur iteration failed: {exc}") from exc
    return t, z


def sigma_min(a):
    """Smallest singular value of a."""
    a = as_matrix(a)
    try:
        s = np.linalg.svd(a, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"SVD failed to converge: {exc}") from exc
    return float(s[-1])


def operator_norm(a, kind):
    """Induced operator norm of a; kind is one of "1", "2", "inf"."""
    a = as_matrix(a)
    if kind == "1":
        return float(np.abs(a).sum(axis=0).max())
    if kind == "inf":
        return float(np.abs(a).sum(axis=1).max())
    if kind == "2":
        try:
            return float(np.linalg.svd(a, compute_uv=False)[0])
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(f"SVD failed to converge: {exc}") from exc
    raise ValueError(f"unknown norm kind {kind!r}")
