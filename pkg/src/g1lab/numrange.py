"""Numerical ranges, convex geometry helpers, and the necessary-condition screen.

Two hull constructions are available.  The disk-intersection route works in
any of the supported norms: for each direction theta the support value
h(theta) = inf_s (||s + e^{-i theta} a|| - s) is estimated over a geometric
s-grid, and the hull is cut out of the resulting half-planes.  The
field-of-values route is 2-norm specific: extreme eigenvectors of the
Hermitian part of rotated copies of A give boundary points exactly.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
import scipy.linalg

from . import linalg, spectral
from .elements import MatrixElement, NilpotentAlgebraElement, NormKind
from .errors import NoConvergence

# s-grid for the support-value infimum: geometric, 64 points, up to 1e3 * scale.
_S_GRID_POINTS = 64
_S_GRID_LO = 0.1
_S_GRID_HI = 1.0e3

_DEDUPE_RTOL = 1e-12


class HullMode(Enum):
    DISK_INTERSECTION = "disk-intersection"
    FIELD_OF_VALUES = "field-of-values"


@dataclass(frozen=True)
class NumericalRangeHull:
    """Convex polygon enclosing (or inscribed in) the numerical range.

    vertices are in counterclockwise order.  Disk-intersection hulls contain
    the true range; field-of-values hulls are inscribed, with every vertex
    an exact Rayleigh quotient.
    """

    vertices: np.ndarray
    mode: HullMode
    directions: int
    numerical_radius: float


def convex_hull(points):
    """Convex hull of complex points, counterclockwise, degenerate-safe.

    Handles the cases a general hull library rejects: a single point or a
    collinear set come back as themselves (one or two vertices).
    """
    pts = np.asarray(points, dtype=np.complex128).ravel()
    if pts.size == 0:
        raise ValueError("no points to hull")
    scale = max(np.abs(pts).max(), 1.0)
    # dedupe on a relative tolerance so runs of near-identical support points
    # do not produce sliver edges
    order = np.lexsort((pts.imag, pts.real))
    pts = pts[order]
    keep = [pts[0]]
    for p in pts[1:]:
        if abs(p - keep[-1]) > _DEDUPE_RTOL * scale:
            keep.append(p)
    pts = np.array(keep, dtype=np.complex128)
    if pts.size <= 2:
        return pts

    def cross(o, a, b):
        return ((a - o).conjugate() * (b - o)).imag

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in pts[::-1]:
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        hull = [pts[0], pts[-1]]
    return np.array(hull, dtype=np.complex128)


def _segment_distance(z, a, b):
    ab = b - a
    denom = (ab.conjugate() * ab).real
    if denom == 0.0:
        return abs(z - a)
    t = ((z - a).conjugate() * ab).real / denom
    t = min(1.0, max(0.0, t))
    return abs(z - (a + t * ab))


def point_polygon_distance(z, vertices):
    """Distance from z to the convex polygon (0 when z is inside)."""
    v = np.asarray(vertices, dtype=np.complex128).ravel()
    z = complex(z)
    if v.size == 1:
        return abs(z - v[0])
    if v.size == 2:
        return _segment_distance(z, v[0], v[1])
    inside = True
    for i in range(v.size):
        a, b = v[i], v[(i + 1) % v.size]
        if (((b - a).conjugate() * (z - a)).imag) < 0.0:
            inside = False
            break
    if inside:
        return 0.0
    return min(
        _segment_distance(z, v[i], v[(i + 1) % v.size]) for i in range(v.size)
    )


def hausdorff(vertices_p, vertices_q):
    """Hausdorff distance between two convex polygons given by vertices."""
    p = np.asarray(vertices_p, dtype=np.complex128).ravel()
    q = np.asarray(vertices_q, dtype=np.complex128).ravel()
    d_pq = max(point_polygon_distance(z, q) for z in p)
    d_qp = max(point_polygon_distance(z, p) for z in q)
    return max(d_pq, d_qp)


def _support_values(a, thetas):
    """h(theta_k) = min over the s-grid of (||s + e^{-i theta} a|| - s)."""
    if isinstance(a, NilpotentAlgebraElement):
        # ||s + e^{-i theta}(alpha + beta n)|| = |s + e^{-i theta} alpha| + |beta|
        s = (abs(a.alpha) + abs(a.beta) + 1.0) * np.geomspace(_S_GRID_LO, _S_GRID_HI, _S_GRID_POINTS)
        mags = np.abs(s[None, :] * np.exp(1j * thetas)[:, None] + a.alpha) + abs(a.beta)
        return (mags - s[None, :]).min(axis=1)
    scale = a.norm()
    if scale == 0.0:
        return np.zeros(len(thetas))
    s = scale * np.geomspace(_S_GRID_LO, _S_GRID_HI, _S_GRID_POINTS)
    m = a.matrix
    kind = a.norm_kind
    if kind is NormKind.ONE or kind is NormKind.INF:
        axis = 0 if kind is NormKind.ONE else 1
        d = np.diag(m)
        off = np.abs(m).sum(axis=axis) - np.abs(d)
        # ||s + e^{-i t} a|| = max_j(off_j + |s e^{i t} + d_j|), column or row sums
        rot = s[None, :, None] * np.exp(1j * thetas)[:, None, None]
        vals = (off[None, None, :] + np.abs(rot + d[None, None, :])).max(axis=2)
        return (vals - s[None, :]).min(axis=1)
    eye = np.eye(m.shape[0], dtype=np.complex128)
    h = np.empty(len(thetas))
    for k, th in enumerate(thetas):
        batch = s[:, None, None] * eye + np.exp(-1j * th) * m
        try:
            smax = np.linalg.svd(batch, compute_uv=False)[:, 0]
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(f"SVD failed in support sweep: {exc}") from exc
        h[k] = (smax - s).min()
    return h


def _halfplane_polygon(thetas, h):
    # Intersect consecutive support lines Re(z e^{-i theta_k}) = h_k.
    c, s = np.cos(thetas), np.sin(thetas)
    c1, s1 = np.roll(c, -1), np.roll(s, -1)
    h1 = np.roll(h, -1)
    det = c * s1 - s * c1
    x = (h * s1 - h1 * s) / det
    y = (h1 * c - h * c1) / det
    return convex_hull(x + 1j * y)


def numerical_range_disks(a, directions=360):
    """Disk-intersection hull of the numerical range, any supported norm.

    Overshoots the true range by at most about 1e-3 of the element scale
    (s-grid truncation plus direction sampling); never undershoots beyond
    roundoff.
    """
    if directions < 8:
        raise ValueError("need at least 8 directions")
    thetas = 2.0 * np.pi * np.arange(directions) / directions
    h = _support_values(a, thetas)
    scale = a.norm()
    if scale == 0.0:
        verts = np.array([0.0 + 0.0j])
        radius = 0.0
    else:
        verts = _halfplane_polygon(thetas, h)
        # Any z in the range has a sampled direction within pi/K of arg z,
        # so |z| <= max_k h_k / cos(pi/K).  This radius bound is rigorous
        # on both sides (h_k >= the true support, h_k <= ||a||), unlike the
        # crossing vertices, which can stick out where the support sequence
        # runs flat.
        radius = float(h.max() / math.cos(math.pi / directions))
    return NumericalRangeHull(
        vertices=verts,
        mode=HullMode.DISK_INTERSECTION,
        directions=directions,
        numerical_radius=radius,
    )


def field_of_values(a, angles=360):
    """Field of values W(A) of a matrix under the 2-norm, as an inscribed hull.

    For each angle the top eigenvector of the Hermitian part of
    e^{-i theta} A yields the boundary point attaining the support in that
    direction; the hull of these Rayleigh quotients is returned.
    """
    if isinstance(a, MatrixElement):
        if a.norm_kind is not NormKind.TWO:
            raise ValueError("field_of_values is a 2-norm construction")
        m = a.matrix
    else:
        m = linalg.as_matrix(a)
    if angles < 8:
        raise ValueError("need at least 8 angles")
    thetas = 2.0 * np.pi * np.arange(angles) / angles
    pts = np.empty(angles, dtype=np.complex128)
    for k, th in enumerate(thetas):
        b = np.exp(-1j * th) * m
        herm = 0.5 * (b + b.conj().T)
        try:
            _, vecs = scipy.linalg.eigh(herm, check_finite=False)
        except scipy.linalg.LinAlgError as exc:
            raise NoConvergence(f"eigh failed in field of values: {exc}") from exc
        x = vecs[:, -1]
        pts[k] = x.conj() @ m @ x
    verts = convex_hull(pts)
    return NumericalRangeHull(
        vertices=verts,
        mode=HullMode.FIELD_OF_VALUES,
        directions=angles,
        numerical_radius=float(np.abs(verts).max()),
    )


def numerical_range(a, directions=360):
    """Hull of the numerical range; field of values when the norm is the 2-norm."""
    if isinstance(a, MatrixElement) and a.norm_kind is NormKind.TWO:
        return field_of_values(a, directions)
    return numerical_range_disks(a, directions)


def numerical_radius(a, directions=360):
    """nu(a) = max |w| over the numerical range."""
    return numerical_range(a, directions).numerical_radius


def is_hermitian(a, tol=1e-8):
    """Whether the numerical range sits on the real axis to within tol.

    This is the norm-level characterization: it needs no adjoint, only the
    hull, so it applies to any element.  tol is an absolute bound on the
    imaginary parts of the hull vertices.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    hull = numerical_range(a)
    return bool(np.abs(hull.vertices.imag).max() <= tol)


@dataclass(frozen=True)
class NecessaryReport:
    """Cheap necessary-condition screen; a flag here refutes the norm equality.

    Checks that can only fail for elements violating it: the numerical range
    must hug the convex hull of the spectrum, and the norm can exceed the
    spectral radius by at most the factor e.  chain_slacks holds
    (nu - r, ||a|| - nu, e*nu - ||a||), all nonnegative up to discretization.
    """

    norm_value: float
    radius_eig: float
    radius_power: float
    radius: float
    numerical_radius: float
    hull: NumericalRangeHull
    spectrum_hull_hausdorff: float
    discretization_bound: float
    chain_slacks: tuple
    quasinilpotent: bool
    hull_violation: bool
    ratio_violation: bool
    not_g1: bool
    tol: float


def check_g1_necessary(a, directions=360, tol=1e-6):
    """Screen a for cheap refutations of the resolvent-distance equality.

    Flags not_g1 when the numerical range strays from the spectrum hull by
    more than tolerance plus the discretization bound, or when
    ||a|| > e * r(a).  A quasinilpotent element with nonzero norm trips the
    ratio check automatically.  No flag is a consistency statement, not a
    proof.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    spec = spectral.spectrum(a)
    hull = numerical_range(a, directions)
    sigma_hull = convex_hull(spec.eigenvalues)
    hd = hausdorff(hull.vertices, sigma_hull)
    norm_value = a.norm()

    # The eigenvalue route loses accuracy on defective spectra (errors like
    # resid^(1/n)); the norm-power route is a true upper bound and exact on
    # nilpotents.  Use the smaller of the two.
    radius_eig = spec.spectral_radius
    radius_power = spectral.spectral_radius_limit(a, n_max=32).value
    radius = min(radius_eig, radius_power)

    scale = 1.0 + norm_value
    if hull.mode is HullMode.FIELD_OF_VALUES:
        # inscribed polygon: sagitta of one angular step
        disc = norm_value * (math.pi / directions) ** 2
    else:
        # s-grid truncation dominates the half-plane overshoot
        disc = norm_value * (1.0 / _S_GRID_HI + (math.pi / directions) ** 2)
    nu = hull.numerical_radius
    slacks = (nu - radius, norm_value - nu, math.e * nu - norm_value)
    quasinilpotent = radius <= tol * scale and norm_value > tol
    hull_violation = hd > tol * scale + disc
    ratio_violation = norm_value > math.e * radius + tol * scale
    return NecessaryReport(
        norm_value=norm_value,
        radius_eig=radius_eig,
        radius_power=radius_power,
        radius=radius,
        numerical_radius=nu,
        hull=hull,
        spectrum_hull_hausdorff=hd,
        discretization_bound=disc,
        chain_slacks=slacks,
        quasinilpotent=quasinilpotent,
        hull_violation=hull_violation,
        ratio_violation=ratio_violation,
        not_g1=bool(hull_violation or ratio_violation),
        tol=float(tol),
    )
