"""Spectra, spectral radius, and pointwise resolvents for algebra elements.

The Spectrum type carries the raw eigenvalues, their grouping into clusters
at a stated tolerance, and the eigensolver residual bound, so downstream
certificates can account for how well sigma(a) is actually known.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .elements import AlgebraElement, MatrixElement, NilpotentAlgebraElement, unit_like
from .errors import NormOverflow, SingularMatrix, SpectrumHit


def default_cluster_tol(a):
    """1e-6 * (1 + ||a||), the default eigenvalue clustering scale."""
    return 1e-6 * (1.0 + a.norm())


def hit_tol(a):
    """Distance below which a point counts as sitting on the spectrum."""
    return 1e-14 * (1.0 + a.norm())


@dataclass(frozen=True)
class Spectrum:
    """Spectrum of an element: raw eigenvalues plus their clustering.

    clusters is a tuple of (center, multiplicity) sorted by (re, im) of the
    center; eigenvalues is the raw multiset sorted the same way.
    residual_bound is relative to ||a||_2 (exactly zero for the nilpotent
    algebra, where the spectrum is closed-form).
    """

    eigenvalues: np.ndarray
    clusters: tuple
    spectral_radius: float
    cluster_tol: float
    residual_bound: float

    @property
    def centers(self):
        return np.array([c for c, _ in self.clusters], dtype=np.complex128)


def _sorted_complex(w):
    return np.asarray(sorted(w, key=lambda z: (z.real, z.imag)), dtype=np.complex128)


def _cluster(values, tol):
    # Single-linkage grouping: values closer than tol chain together.
    k = len(values)
    parent = list(range(k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(k):
        for j in range(i + 1, k):
            if abs(values[i] - values[j]) <= tol:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[ri] = rj
    groups = {}
    for i in range(k):
        groups.setdefault(find(i), []).append(values[i])
    clusters = []
    for members in groups.values():
        center = complex(np.mean(members))
        clusters.append((center, len(members)))
    clusters.sort(key=lambda cm: (cm[0].real, cm[0].imag))
    return tuple(clusters)


def spectrum(a, cluster_tol=None):
    """sigma(a) with eigenvalues grouped into clusters at cluster_tol."""
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(a)
    if cluster_tol <= 0.0:
        raise ValueError("cluster_tol must be positive")
    if isinstance(a, NilpotentAlgebraElement):
        w = np.array([a.alpha, a.alpha], dtype=np.complex128)
        return Spectrum(
            eigenvalues=w,
            clusters=((complex(a.alpha), 2),),
            spectral_radius=abs(a.alpha),
            cluster_tol=float(cluster_tol),
            residual_bound=0.0,
        )
    if not isinstance(a, MatrixElement):
        raise TypeError(f"not an algebra element: {type(a).__name__}")
    res = linalg.eigenvalues(a.matrix)
    w = _sorted_complex(res.values)
    return Spectrum(
        eigenvalues=w,
        clusters=_cluster(list(map(complex, w)), cluster_tol),
        spectral_radius=float(np.abs(w).max()),
        cluster_tol=float(cluster_tol),
        residual_bound=res.residual_bound,
    )


@dataclass(frozen=True)
class RadiusEstimate:
    """Spectral radius via the norm-power route: inf_n ||a^n||^(1/n)."""

    value: float
    terms: tuple


def spectral_radius_limit(a, n_max=64):
    """inf over 1 <= n <= n_max of ||a^n||^(1/n).

    Every term upper-bounds the spectral radius, and the sequence converges
    to it; raises NormOverflow if a power leaves the double range.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    terms = []
    power = unit_like(a)
    for n in range(1, n_max + 1):
        # element construction rejects non-finite entries, so an overflowing
        # power surfaces as a ValueError from the product itself
        try:
            with np.errstate(over="ignore", invalid="ignore"):
                power = power * a
            nrm = power.norm()
        except ValueError as exc:
            raise NormOverflow(f"||a^{n}|| overflowed; rescale the input") from exc
        if not math.isfinite(nrm):
            raise NormOverflow(f"||a^{n}|| overflowed; rescale the input")
        if nrm == 0.0:
            terms.append(0.0)
            break
        terms.append(nrm ** (1.0 / n))
    return RadiusEstimate(value=min(terms), terms=tuple(terms))


def distance_to_spectrum(z, spec):
    """d(z, sigma(a)) against the raw eigenvalue multiset."""
    return float(np.abs(spec.eigenvalues - complex(z)).min())


def resolvent(a, z):
    """(z - a)^{-1} as an element of the same algebra.

    Raises SpectrumHit when z is within rank tolerance of sigma(a).
    """
    z = complex(z)
    if isinstance(a, NilpotentAlgebraElement):
        d = z - a.alpha
        if abs(d) <= hit_tol(a):
            raise SpectrumHit(f"z = {z} sits on the spectrum {{{a.alpha}}}")
        return NilpotentAlgebraElement(1.0 / d, a.beta / (d * d))
    if not isinstance(a, MatrixElement):
        raise TypeError(f"not an algebra element: {type(a).__name__}")
    m = z * np.eye(a.order, dtype=np.complex128) - a.matrix
    try:
        inv = linalg.solve(m, np.eye(a.order, dtype=np.complex128))
    except SingularMatrix as exc:
        raise SpectrumHit(f"z = {z} is numerically an eigenvalue") from exc
    return MatrixElement(inv, a.norm_kind)


def resolvent_norm(a, z):
    """||(z - a)^{-1}||; finite positive off the spectrum, +inf on it."""
    z = complex(z)
    if isinstance(a, NilpotentAlgebraElement):
        d = abs(z - a.alpha)
        if d == 0.0:
            return math.inf
        return 1.0 / d + abs(a.beta) / (d * d)
    if not isinstance(a, MatrixElement):
        raise TypeError(f"not an algebra element: {type(a).__name__}")
    m = z * np.eye(a.order, dtype=np.complex128) - a.matrix
    if a.norm_kind.value == "2":
        s = linalg.sigma_min(m)
        return math.inf if s == 0.0 else 1.0 / s
    try:
        inv = linalg.solve(m, np.eye(a.order, dtype=np.complex128))
    except SingularMatrix:
        return math.inf
    return linalg.operator_norm(inv, a.norm_kind.value)
