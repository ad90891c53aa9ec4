"""Pure-numpy twin of the compiled sweep kernel.

Same contract as _kernels.sigma_min_sweep, different algorithm: the shifts
are processed in fixed-size chunks through one batched LAPACK SVD call per
chunk.  Chunking keeps peak memory at chunk * n^2 complex entries.
"""

import numpy as np

CHUNK = 512


def sigma_min_sweep(t, shifts, v0=None, tol=1e-13, maxit=0):
    """sigma_min(z I - T) for each shift z.

    v0, tol and maxit are accepted for interface parity with the compiled
    kernel and ignored; the SVD route has no iteration to tune.
    """
    t = np.ascontiguousarray(t, dtype=np.complex128)
    shifts = np.ascontiguousarray(shifts, dtype=np.complex128)
    n = t.shape[0]
    m = shifts.shape[0]
    eye = np.eye(n, dtype=np.complex128)
    out = np.empty(m, dtype=np.float64)
    for lo in range(0, m, CHUNK):
        zs = shifts[lo:lo + CHUNK]
        batch = zs[:, None, None] * eye - t
        out[lo:lo + zs.shape[0]] = np.linalg.svd(batch, compute_uv=False)[:, -1]
    return out
