"""Backend selection and batched evaluation helpers for grid sweeps.

The compiled extension is preferred when it imported cleanly; the numpy
fallback is always present.  G1LAB_KERNEL overrides the choice: "auto"
(default), "compiled", or "python".

Point evaluations that feed certified verdicts (see the g1 module) do not
go through the backend switch at all; they always use LAPACK SVDs via
sigma_min_points.
"""

import os

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

_START_SEED = 0x5EED


def have_compiled():
    return _compiled is not None


def backend_name():
    """Name of the sweep backend the current environment selects."""
    mode = os.environ.get("G1LAB_KERNEL", "auto").strip().lower()
    if mode in ("compiled", "cython"):
        if _compiled is None:
            raise RuntimeError("G1LAB_KERNEL=compiled but the extension is not built")
        return "compiled"
    if mode == "python":
        return "python"
    if mode not in ("", "auto"):
        raise ValueError(f"unrecognized G1LAB_KERNEL value {mode!r}")
    return "compiled" if _compiled is not None else "python"


def start_vector(n):
    """Deterministic dense start vector shared by every shift of a sweep."""
    rng = np.random.default_rng(_START_SEED)
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def sigma_min_sweep(t, shifts):
    """sigma_min(z I - T) over all shifts, T upper triangular, via the backend."""
    t = np.ascontiguousarray(t, dtype=np.complex128)
    shifts = np.ascontiguousarray(shifts, dtype=np.complex128)
    if backend_name() == "compiled":
        return _compiled.sigma_min_sweep(t, shifts, start_vector(t.shape[0]))
    return _kernels_py.sigma_min_sweep(t, shifts)


_CHUNK = 512


def sigma_min_points(a, shifts):
    """sigma_min(z I - A) over all shifts by chunked batched LAPACK SVD.

    A is a general square matrix; no Schur reduction, no iteration, so the
    accuracy is plain LAPACK and suitable for certified bounds.
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    shifts = np.ascontiguousarray(shifts, dtype=np.complex128)
    n = a.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    out = np.empty(shifts.shape[0], dtype=np.float64)
    for lo in range(0, shifts.shape[0], _CHUNK):
        zs = shifts[lo:lo + _CHUNK]
        batch = zs[:, None, None] * eye - a
        out[lo:lo + zs.shape[0]] = np.linalg.svd(batch, compute_uv=False)[:, -1]
    return out


def resolvent_norm_points_explicit(a, shifts, kind):
    """||(z - A)^{-1}|| over all shifts for the induced 1 or inf norm.

    Inverses are formed in chunks; an exactly singular member makes the
    whole chunk fall back to a one-by-one loop where the singular shifts
    come out as +inf.
    """
    a = np.ascontiguousarray(a, dtype=np.complex128)
    shifts = np.ascontiguousarray(shifts, dtype=np.complex128)
    if kind == "1":
        axis = -2
    elif kind == "inf":
        axis = -1
    else:
        raise ValueError(f"explicit resolvent sweep is for norms 1/inf, not {kind!r}")
    n = a.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    out = np.empty(shifts.shape[0], dtype=np.float64)
    for lo in range(0, shifts.shape[0], _CHUNK):
        zs = shifts[lo:lo + _CHUNK]
        batch = zs[:, None, None] * eye - a
        try:
            inv = np.linalg.inv(batch)
            out[lo:lo + zs.shape[0]] = np.abs(inv).sum(axis=axis).max(axis=-1)
        except np.linalg.LinAlgError:
            for i, z in enumerate(zs):
                try:
                    inv1 = np.linalg.inv(z * eye - a)
                    out[lo + i] = np.abs(inv1).sum(axis=axis).max()
                except np.linalg.LinAlgError:
                    out[lo + i] = np.inf
    return out
