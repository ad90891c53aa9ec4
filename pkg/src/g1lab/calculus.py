"""Holomorphic functional calculus by contour quadrature, and what it builds.

f(a) = (1/2 pi i) integral_Gamma f(z) (z-a)^{-1} dz, discretized by the
trapezoidal rule on circles: (1/N) sum_k f(z_k) (z_k - c) (z_k - a)^{-1}.
On analytic integrands the trapezoidal rule on a circle converges
geometrically in N, which is why 128 nodes is plenty at desk scale.

Riesz projections are f = 1 over a single enclosing circle; running them
over every cluster yields the spectral decomposition with its six defect
measures, and from there diagonalizability.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import spectral
from .elements import MatrixElement, unit_like, zero_like
from .errors import ClusterNotIsolated, InvalidContour, SpectrumHit

MIN_NODES = 16

DEFAULT_NODES = 128

# A cluster center must clear every circle by this fraction of its radius.
MARGIN_FRACTION = 0.25


@dataclass(frozen=True)
class Circle:
    """One positively oriented circle of a quadrature contour."""

    center: complex
    radius: float
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))
        if not (self.radius > 0.0 and math.isfinite(self.radius)):
            raise InvalidContour(f"circle radius must be positive, got {self.radius}")
        if not cmath.isfinite(self.center):
            raise InvalidContour("circle center must be finite")
        if self.nodes < MIN_NODES:
            raise InvalidContour(f"need at least {MIN_NODES} nodes, got {self.nodes}")

    def points(self):
        k = np.arange(self.nodes)
        return self.center + self.radius * np.exp(2j * np.pi * k / self.nodes)


@dataclass(frozen=True)
class Contour:
    """A union of pairwise disjoint circles."""

    circles: tuple

    def __post_init__(self):
        circles = tuple(self.circles)
        if not circles:
            raise InvalidContour("contour needs at least one circle")
        object.__setattr__(self, "circles", circles)
        for i in range(len(circles)):
            for j in range(i + 1, len(circles)):
                ci, cj = circles[i], circles[j]
                if abs(ci.center - cj.center) <= ci.radius + cj.radius:
                    raise InvalidContour(
                        f"circles {i} and {j} overlap or touch"
                    )


def default_contour(a, nodes=DEFAULT_NODES, spec=None):
    """One circle enclosing the whole spectrum with a healthy margin."""
    if spec is None:
        spec = spectral.spectrum(a)
    w = spec.eigenvalues
    center = 0.5 * (w.real.min() + w.real.max()) + 0.5j * (w.imag.min() + w.imag.max())
    reach = float(np.abs(w - center).max())
    pad = 0.5 * max(1.0, spec.spectral_radius)
    return Contour((Circle(center, reach + pad, nodes),))


def _validate_against_spectrum(contour, spec):
    # Every cluster strictly inside exactly one circle, or strictly outside
    # all, with margin a quarter radius either way.
    enclosed = []
    for c, _mult in spec.clusters:
        inside = []
        for i, circ in enumerate(contour.circles):
            d = abs(c - circ.center)
            if d <= circ.radius - MARGIN_FRACTION * circ.radius:
                inside.append(i)
            elif d < circ.radius + MARGIN_FRACTION * circ.radius:
                raise InvalidContour(
                    f"cluster at {c} sits within the margin band of circle {i}"
                )
        if len(inside) > 1:
            raise InvalidContour(f"cluster at {c} enclosed by several circles")
        enclosed.append(inside[0] if inside else None)
    return enclosed


def funcalc(a, f, contour=None, nodes=DEFAULT_NODES, spec=None):
    """Apply an analytic f to a by trapezoidal contour quadrature.

    f must be analytic on and inside every circle of the contour
    (unchecked) and finite at the quadrature nodes (checked).  The default
    contour is one circle around the whole spectrum.
    """
    if spec is None:
        spec = spectral.spectrum(a)
    if contour is None:
        contour = default_contour(a, nodes=nodes, spec=spec)
    _validate_against_spectrum(contour, spec)
    htol = spectral.hit_tol(a)
    acc = zero_like(a)
    for circ in contour.circles:
        zs = circ.points()
        dist = np.abs(zs[:, None] - spec.eigenvalues[None, :]).min(axis=1)
        if dist.min() <= htol:
            raise SpectrumHit("a quadrature node fell on the spectrum")
        fvals = np.array([complex(f(z)) for z in zs])
        if not np.isfinite(fvals).all():
            raise ValueError("f is not finite on the contour nodes")
        for z, fz in zip(zs, fvals):
            acc = acc + (fz * (z - circ.center) / circ.nodes) * spectral.resolvent(a, z)
    return acc


def riesz_projection(a, cluster_index, nodes=DEFAULT_NODES, spec=None):
    """Spectral projection for one cluster, by f = 1 over an enclosing circle.

    The circle radius is min(gap/2, 1 + r(a)) / 2, which the isolation
    precondition (inter-cluster gap exceeding twice the radius) then grants
    automatically.
    """
    if spec is None:
        spec = spectral.spectrum(a)
    m = len(spec.clusters)
    if not 0 <= cluster_index < m:
        raise ValueError(f"cluster index {cluster_index} out of range [0, {m})")
    centers = spec.centers
    c = centers[cluster_index]
    if m > 1:
        others = np.delete(centers, cluster_index)
        gap = float(np.abs(others - c).min())
    else:
        gap = math.inf
    radius = min(gap / 2.0, 1.0 + spec.spectral_radius) / 2.0
    if not radius > 4.0 * spectral.hit_tol(a):
        raise ClusterNotIsolated(
            f"cluster {cluster_index} has gap {gap:.3e}, no usable circle"
        )
    contour = Contour((Circle(complex(c), radius, nodes),))
    return funcalc(a, lambda z: 1.0, contour=contour, spec=spec)


@dataclass(frozen=True)
class IsolatedPointReport:
    """Spectral-projection checks at one isolated cluster.

    For an element satisfying the norm equality, the projection must be a
    unit-norm idempotent intertwining a with the cluster center, so all
    three defects sit at quadrature scale; passes reflects tol.
    eigenvector_residual is the 2-norm residual of the extracted
    eigenvector (matrix variant only, else None).
    """

    center: complex
    ae_defect: float
    unit_norm_defect: float
    idempotency_defect: float
    eigenvector_residual: float | None
    passes: bool
    tol: float


def verify_isolated_point(a, cluster_index, tol=1e-8, nodes=DEFAULT_NODES):
    """Riesz-project one cluster and measure the eigen-structure defects."""
    spec = spectral.spectrum(a)
    e = riesz_projection(a, cluster_index, nodes=nodes, spec=spec)
    lam = complex(spec.clusters[cluster_index][0])
    ae_defect = (a * e - lam * e).norm()
    unit_defect = abs(e.norm() - 1.0)
    idem_defect = (e * e - e).norm()
    eig_resid = None
    if isinstance(a, MatrixElement):
        cols = np.linalg.norm(e.matrix, axis=0)
        v = e.matrix[:, int(cols.argmax())]
        nv = np.linalg.norm(v)
        if nv > 0.0:
            v = v / nv
            eig_resid = float(np.linalg.norm(a.matrix @ v - lam * v))
    defects = [ae_defect, unit_defect, idem_defect]
    if eig_resid is not None:
        defects.append(eig_resid)
    scale = 1.0 + a.norm()
    return IsolatedPointReport(
        center=lam,
        ae_defect=float(ae_defect),
        unit_norm_defect=float(unit_defect),
        idempotency_defect=float(idem_defect),
        eigenvector_residual=eig_resid,
        passes=bool(max(defects) <= tol * scale),
        tol=float(tol),
    )


@dataclass(frozen=True)
class SpectralDecomposition:
    """All Riesz projections at once, with the six defect measures.

    defects maps name -> value for: idempotency (max ||e_j^2 - e_j||),
    unit_norm (max | ||e_j|| - 1 |), commutation (max ||e_j e_k||, j != k),
    resolution (||sum e_j - 1||), reconstruction (||a - sum l_j e_j||),
    annihilation (||prod (a - l_j)||).  Tolerances for judging them scale
    with the cluster-gap condition number kappa_gap = (1 + r(a)) / gap.
    """

    element: object
    pairs: tuple
    defects: dict
    kappa_gap: float
    tol: float
    within_tolerance: bool

    @property
    def centers(self):
        return np.array([lam for lam, _ in self.pairs], dtype=np.complex128)


def spectral_decomposition(a, tol=1e-8, nodes=DEFAULT_NODES):
    """Riesz-project every cluster and assemble the defect table."""
    spec = spectral.spectrum(a)
    m = len(spec.clusters)
    projections = [
        riesz_projection(a, j, nodes=nodes, spec=spec) for j in range(m)
    ]
    lams = [complex(c) for c, _ in spec.clusters]
    pairs = tuple((lam, e) for lam, e in zip(lams, projections))

    idem = max((e * e - e).norm() for _, e in pairs)
    unit_n = max(abs(e.norm() - 1.0) for _, e in pairs)
    comm = 0.0
    for j in range(m):
        for k in range(m):
            if j != k:
                comm = max(comm, (pairs[j][1] * pairs[k][1]).norm())
    total = zero_like(a)
    recon = zero_like(a)
    for lam, e in pairs:
        total = total + e
        recon = recon + lam * e
    resolution = (total - unit_like(a)).norm()
    reconstruction = (a - recon).norm()
    annihil = unit_like(a)
    for lam in lams:
        annihil = annihil * (a - lam)
    annihilation = annihil.norm()

    if m > 1:
        centers = np.array(lams)
        diffs = np.abs(centers[:, None] - centers[None, :])
        np.fill_diagonal(diffs, np.inf)
        gap = float(diffs.min())
    else:
        gap = 1.0 + spec.spectral_radius
    kappa = (1.0 + spec.spectral_radius) / gap
    defects = {
        "idempotency": float(idem),
        "unit_norm": float(unit_n),
        "commutation": float(comm),
        "resolution": float(resolution),
        "reconstruction": float(reconstruction),
        "annihilation": float(annihilation),
    }
    scale = (1.0 + a.norm()) * (1.0 + kappa)
    return SpectralDecomposition(
        element=a,
        pairs=pairs,
        defects=defects,
        kappa_gap=float(kappa),
        tol=float(tol),
        within_tolerance=bool(max(defects.values()) <= tol * scale),
    )


def decomposed_resolvent(decomp, z):
    """(z - a)^{-1} rebuilt from the decomposition: sum e_j / (z - l_j)."""
    z = complex(z)
    htol = spectral.hit_tol(decomp.element)
    acc = zero_like(decomp.element)
    for lam, e in decomp.pairs:
        d = z - lam
        if abs(d) <= htol:
            raise SpectrumHit(f"z = {z} hits the cluster at {lam}")
        acc = acc + (1.0 / d) * e
    return acc


def decomposed_funcalc(decomp, f):
    """f(a) rebuilt from the decomposition: sum f(l_j) e_j."""
    acc = zero_like(decomp.element)
    for lam, e in decomp.pairs:
        fz = complex(f(lam))
        if not cmath.isfinite(fz):
            raise ValueError(f"f is not finite at the cluster center {lam}")
        acc = acc + fz * e
    return acc


@dataclass(frozen=True)
class DiagonalizabilityReport:
    """Ranks and eigen-residuals of the Riesz projections of a matrix.

    The element is numerically diagonalizable when the projection ranks
    sum to the order and every projected basis block solves the eigenvalue
    problem to tolerance.
    """

    ranks: tuple
    rank_sum: int
    order: int
    residuals: tuple
    diagonalizable: bool
    tol: float


def diagonalizability_report(a, tol=1e-8, nodes=DEFAULT_NODES):
    """Judge diagonalizability from projection ranks and residuals."""
    if not isinstance(a, MatrixElement):
        raise TypeError("diagonalizability is a matrix-variant notion")
    decomp = spectral_decomposition(a, tol=tol, nodes=nodes)
    ranks = []
    resids = []
    for lam, e in decomp.pairs:
        u, s, _ = np.linalg.svd(e.matrix)
        smax = s[0] if s.size else 0.0
        rank = int((s > max(a.order, 8) * np.finfo(float).eps * max(smax, 1.0)).sum())
        ranks.append(rank)
        if rank > 0:
            basis = u[:, :rank]
            resids.append(float(np.linalg.norm(a.matrix @ basis - lam * basis, 2)))
        else:
            resids.append(0.0)
    rank_sum = int(sum(ranks))
    scale = (1.0 + a.norm()) * (1.0 + decomp.kappa_gap)
    ok = rank_sum == a.order and (max(resids) if resids else 0.0) <= tol * scale
    return DiagonalizabilityReport(
        ranks=tuple(ranks),
        rank_sum=rank_sum,
        order=a.order,
        residuals=tuple(resids),
        diagonalizable=bool(ok),
        tol=float(tol),
    )
