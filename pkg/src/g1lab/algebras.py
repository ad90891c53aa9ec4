"""Named element generators and the exact nilpotent-algebra oracle routes.

Generators are deterministic in (n, seed) and addressable by name, which
is how the command line asks for test subjects.  The nilpotent-algebra
routes are closed forms, independent of the generic resolvent machinery,
so the two can be played against each other in tests.
"""

import numpy as np

from .elements import MatrixElement, NilpotentAlgebraElement, NormKind
from .errors import SpectrumHit


def _haar_unitary(n, rng):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(g)
    d = np.diag(r)
    return q * (d / np.abs(d))[None, :]


def make_normal(n, seed=0, eigenvalues=None, norm=NormKind.TWO):
    """Unitary conjugation of a diagonal; exactly normal up to roundoff."""
    rng = np.random.default_rng(seed)
    if eigenvalues is None:
        eigenvalues = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w = np.asarray(eigenvalues, dtype=np.complex128)
    if w.shape != (n,):
        raise ValueError(f"need {n} eigenvalues, got shape {w.shape}")
    u = _haar_unitary(n, rng)
    return MatrixElement(u @ np.diag(w) @ u.conj().T, norm)


def make_diagonal(n, seed=0, eigenvalues=None, norm=NormKind.INF):
    """Plain diagonal matrix; the default norm here is the sup-style inf norm."""
    rng = np.random.default_rng(seed)
    if eigenvalues is None:
        eigenvalues = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w = np.asarray(eigenvalues, dtype=np.complex128)
    if w.shape != (n,):
        raise ValueError(f"need {n} eigenvalues, got shape {w.shape}")
    return MatrixElement(np.diag(w), norm)


def make_jordan(n, lam=0.0, norm=NormKind.TWO):
    """Single Jordan block J_n(lam), ones on the superdiagonal."""
    m = np.diag(np.full(n - 1, 1.0 + 0.0j), k=1) if n > 1 else np.zeros((1, 1))
    return MatrixElement(m + complex(lam) * np.eye(n), norm)


def make_shift_truncation(n, norm=NormKind.TWO):
    """Truncated shift: ones on the subdiagonal, nilpotent of index n."""
    m = np.diag(np.full(n - 1, 1.0 + 0.0j), k=-1) if n > 1 else np.zeros((1, 1))
    return MatrixElement(m, norm)


def make_oblique_projection(n, t=1.0, seed=0, norm=NormKind.TWO):
    """Idempotent with ||P||_2 = sqrt(1 + t^2): an oblique rank-one block.

    seed 0 keeps the canonical upper-triangular form; any other seed
    conjugates by a Haar unitary (preserving both the idempotency and the
    2-norm).
    """
    if n < 2:
        raise ValueError("need order at least 2 for an oblique projection")
    m = np.zeros((n, n), dtype=np.complex128)
    m[0, 0] = 1.0
    m[0, 1] = complex(t)
    for i in range(2, 2 + (n - 2) // 2):
        m[i, i] = 1.0
    if seed != 0:
        u = _haar_unitary(n, np.random.default_rng(seed))
        m = u @ m @ u.conj().T
    return MatrixElement(m, norm)


def make_nilpotent(alpha, beta):
    """Element alpha + beta n of the two-dimensional nilpotent algebra."""
    return NilpotentAlgebraElement(alpha, beta)


def nilpotent_mul(x, y):
    """Product in the nilpotent algebra (delegates to element arithmetic)."""
    if not isinstance(x, NilpotentAlgebraElement) or not isinstance(y, NilpotentAlgebraElement):
        raise TypeError("nilpotent_mul needs two nilpotent-algebra elements")
    return x * y


def nilpotent_resolvent_norm(x, z):
    """Exact ||(z - x)^{-1}|| = 1/|z - a| + |b|/|z - a|^2, the oracle route."""
    d = abs(complex(z) - x.alpha)
    if d <= 1e-14 * (1.0 + x.norm()):
        raise SpectrumHit(f"z = {z} hits the spectrum point {x.alpha}")
    return 1.0 / d + abs(x.beta) / (d * d)


def nilpotent_deviation(x, z):
    """Exact deviation g(z) = |beta| / |z - alpha| for the nilpotent algebra."""
    d = abs(complex(z) - x.alpha)
    if d <= 1e-14 * (1.0 + x.norm()):
        raise SpectrumHit(f"z = {z} hits the spectrum point {x.alpha}")
    return abs(x.beta) / d


GENERATORS = {
    "normal": make_normal,
    "diagonal": make_diagonal,
    "jordan": make_jordan,
    "shift": make_shift_truncation,
    "oblique": make_oblique_projection,
    "nilpotent-algebra": make_nilpotent,
}


def build_element(name, n=4, seed=0, norm=None, **params):
    """Build a named generator output; the single entry point the CLI uses.

    Extra parameters: lam (jordan), t (oblique), alpha/beta
    (nilpotent-algebra).  norm None picks each generator's default.
    """
    if name not in GENERATORS:
        raise ValueError(
            f"unknown generator {name!r}; known: {', '.join(sorted(GENERATORS))}"
        )
    if name == "nilpotent-algebra":
        return make_nilpotent(params.get("alpha", 0.0), params.get("beta", 1.0))
    kwargs = {}
    if norm is not None:
        kwargs["norm"] = norm
    if name == "normal":
        return make_normal(n, seed=seed, **kwargs)
    if name == "diagonal":
        return make_diagonal(n, seed=seed, **kwargs)
    if name == "jordan":
        return make_jordan(n, lam=params.get("lam", 0.0), **kwargs)
    if name == "shift":
        return make_shift_truncation(n, **kwargs)
    return make_oblique_projection(n, t=params.get("t", 1.0), seed=seed, **kwargs)
