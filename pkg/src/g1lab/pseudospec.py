"""Resolvent-norm fields on grids, pseudospectrum masks, and inclusion checks.

A field stores ||(z-a)^{-1}|| at every node of a rectangular grid, with
+inf as the sentinel on nodes that sit on the spectrum.  The epsilon level
sets of one field give every pseudospectrum at once: membership is just a
threshold, so the nesting of levels is exact by construction.

Grid sweeps go through the kernel backend; G1LAB_THREADS caps the worker
count (0 or unset picks one per CPU, at most 8).
"""

import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels, linalg, numrange, spectral
from .elements import MatrixElement, NilpotentAlgebraElement, NormKind
from .errors import GridTooLarge

MAX_GRID_NODES = 4_000_000

DEFAULT_GRID_SIDE = 201

_MIN_CHUNK = 2048


@dataclass(frozen=True)
class GridSpec:
    """Rectangular evaluation grid: nx by ny nodes spanning the closed box."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float
    nx: int = DEFAULT_GRID_SIDE
    ny: int = DEFAULT_GRID_SIDE

    def __post_init__(self):
        for v in (self.re_min, self.re_max, self.im_min, self.im_max):
            if not math.isfinite(v):
                raise ValueError("grid bounds must be finite")
        if self.re_max < self.re_min or self.im_max < self.im_min:
            raise ValueError("grid bounds out of order")
        if self.nx < 1 or self.ny < 1:
            raise ValueError("grid must have at least one node per axis")
        if self.nx * self.ny > MAX_GRID_NODES:
            raise GridTooLarge(
                f"{self.nx} x {self.ny} = {self.nx * self.ny} nodes exceeds "
                f"the {MAX_GRID_NODES} budget"
            )

    def re_axis(self):
        return np.linspace(self.re_min, self.re_max, self.nx)

    def im_axis(self):
        return np.linspace(self.im_min, self.im_max, self.ny)

    def nodes(self):
        """All grid nodes, shape (nx, ny), node [i, j] = re_i + 1i * im_j."""
        return self.re_axis()[:, None] + 1j * self.im_axis()[None, :]

    def cell_diagonal(self):
        dre = (self.re_max - self.re_min) / max(self.nx - 1, 1)
        dim = (self.im_max - self.im_min) / max(self.ny - 1, 1)
        return math.hypot(dre, dim)


def default_grid(a, nx=DEFAULT_GRID_SIDE, ny=DEFAULT_GRID_SIDE, spec=None):
    """Bounding box of sigma(a) padded by max(1, r(a)) on every side."""
    if spec is None:
        spec = spectral.spectrum(a)
    w = spec.eigenvalues
    pad = max(1.0, spec.spectral_radius)
    return GridSpec(
        re_min=float(w.real.min() - pad),
        re_max=float(w.real.max() + pad),
        im_min=float(w.imag.min() - pad),
        im_max=float(w.imag.max() + pad),
        nx=nx,
        ny=ny,
    )


@dataclass(frozen=True)
class PseudospectrumField:
    """Resolvent norms over a grid; +inf marks nodes on the spectrum.

    values[i, j] corresponds to grid node re_i + 1i * im_j.  spectrum is
    the Spectrum the sentinel marking was done against (None after
    deserialization).
    """

    grid: GridSpec
    norm_kind: NormKind
    values: np.ndarray
    spectrum: object = None


def _worker_count():
    raw = os.environ.get("G1LAB_THREADS", "").strip()
    try:
        k = int(raw) if raw else 0
    except ValueError:
        k = 0
    if k <= 0:
        k = min(os.cpu_count() or 1, 8)
    return k


def _parallel_sweep(fn, zs):
    """Apply fn to contiguous chunks of zs, assembling into one array."""
    workers = _worker_count()
    m = zs.shape[0]
    if workers <= 1 or m <= _MIN_CHUNK:
        return fn(zs)
    n_chunks = min(workers * 4, max(1, m // _MIN_CHUNK))
    bounds = np.linspace(0, m, n_chunks + 1).astype(int)
    out = np.empty(m, dtype=np.float64)

    def run(k):
        lo, hi = bounds[k], bounds[k + 1]
        out[lo:hi] = fn(zs[lo:hi])

    with ThreadPoolExecutor(max_workers=workers) as pool:
        list(pool.map(run, range(n_chunks)))
    return out


def resolvent_field(a, grid=None):
    """||(z - a)^{-1}|| at every node of the grid (default: padded sigma box)."""
    spec = spectral.spectrum(a)
    if grid is None:
        grid = default_grid(a, spec=spec)
    zs = grid.nodes().ravel()

    if isinstance(a, NilpotentAlgebraElement):
        d = np.abs(zs - a.alpha)
        with np.errstate(divide="ignore"):
            vals = 1.0 / d + abs(a.beta) / (d * d)
    elif isinstance(a, MatrixElement):
        if a.norm_kind is NormKind.TWO:
            t, _ = linalg.schur_triangular(a.matrix)
            sig = _parallel_sweep(lambda c: kernels.sigma_min_sweep(t, c), zs)
            vals = np.full_like(sig, np.inf)
            np.divide(1.0, sig, out=vals, where=sig > 0.0)
        else:
            kind = a.norm_kind.value
            vals = _parallel_sweep(
                lambda c: kernels.resolvent_norm_points_explicit(a.matrix, c, kind), zs
            )
    else:
        raise TypeError(f"not an algebra element: {type(a).__name__}")

    # sentinel: nodes within rank tolerance of the spectrum read +inf
    dist = np.abs(zs[:, None] - spec.eigenvalues[None, :]).min(axis=1)
    vals = np.where(dist <= spectral.hit_tol(a), np.inf, vals)
    norm_kind = a.norm_kind if isinstance(a, MatrixElement) else NormKind.TWO
    return PseudospectrumField(
        grid=grid,
        norm_kind=norm_kind,
        values=vals.reshape(grid.nx, grid.ny),
        spectrum=spec,
    )


def level_set_membership(field, eps):
    """Boolean mask of the eps-pseudospectrum on the field's grid.

    Membership is value >= 1/eps; thresholding one stored field keeps the
    nesting of different eps levels exact.
    """
    if not (eps > 0.0):
        raise ValueError("eps must be positive")
    return field.values >= (1.0 / eps)


@dataclass(frozen=True)
class InclusionCheck:
    """One eps level of the sandwich sigma + D(0,eps) <= pseudo <= V + D(0,eps)."""

    eps: float
    inner_violation: float
    outer_violation: float
    inner_ok: bool
    outer_ok: bool


@dataclass(frozen=True)
class InclusionReport:
    checks: tuple
    cell_diagonal: float
    tol: float

    @property
    def all_ok(self):
        return all(c.inner_ok and c.outer_ok for c in self.checks)


def verify_inclusions(a, eps_list, grid=None, directions=360, tol=1e-6):
    """Check the two-sided pseudospectrum sandwich on a grid.

    For each eps: every node within eps of the spectrum must be in the
    mask (inner), and every mask node must lie within eps of the numerical
    range hull (outer).  Violations are measured as depths and compared
    against one grid cell diagonal plus tol.
    """
    field = resolvent_field(a, grid)
    spec = field.spectrum
    hull = numrange.numerical_range(a, directions)
    zs = field.grid.nodes().ravel()
    dist_sigma = np.abs(zs[:, None] - spec.eigenvalues[None, :]).min(axis=1)
    dist_hull = np.array([numrange.point_polygon_distance(z, hull.vertices) for z in zs])
    cell = field.grid.cell_diagonal()
    slack = cell + tol

    checks = []
    for eps in eps_list:
        member = level_set_membership(field, eps).ravel()
        inner_gap = np.where(~member, eps - dist_sigma, -np.inf)
        inner_violation = float(max(inner_gap.max(), 0.0))
        outer_gap = np.where(member, dist_hull - eps, -np.inf)
        outer_violation = float(max(outer_gap.max(), 0.0))
        checks.append(
            InclusionCheck(
                eps=float(eps),
                inner_violation=inner_violation,
                outer_violation=outer_violation,
                inner_ok=inner_violation <= slack,
                outer_ok=outer_violation <= slack,
            )
        )
    return InclusionReport(checks=tuple(checks), cell_diagonal=cell, tol=float(tol))


def field_to_csv(field):
    """CSV dump: header re,im,resnorm, one node per row, row-major, inf literal."""
    buf = io.StringIO()
    buf.write("re,im,resnorm\n")
    re = field.grid.re_axis()
    im = field.grid.im_axis()
    vals = field.values
    for i in range(field.grid.nx):
        for j in range(field.grid.ny):
            v = vals[i, j]
            vtxt = "inf" if math.isinf(v) else repr(float(v))
            buf.write(f"{float(re[i])!r},{float(im[j])!r},{vtxt}\n")
    return buf.getvalue()


def field_from_csv(text):
    """Rebuild a field from its CSV dump (grid inferred from the node list)."""
    lines = text.strip().splitlines()
    if not lines or lines[0].strip() != "re,im,resnorm":
        raise ValueError("not a resolvent field CSV: bad header")
    res, ims, vals = [], [], []
    for line in lines[1:]:
        r, i, v = line.split(",")
        res.append(float(r))
        ims.append(float(i))
        vals.append(float(v))
    re_axis = sorted(set(res))
    im_axis = sorted(set(ims))
    nx, ny = len(re_axis), len(im_axis)
    if nx * ny != len(vals):
        raise ValueError("CSV node list is not a full grid")
    grid = GridSpec(
        re_min=re_axis[0], re_max=re_axis[-1],
        im_min=im_axis[0], im_max=im_axis[-1],
        nx=nx, ny=ny,
    )
    values = np.array(vals, dtype=np.float64).reshape(nx, ny)
    return PseudospectrumField(grid=grid, norm_kind=NormKind.TWO, values=values)


def field_to_json(field):
    """JSON dump of grid, norm, and row-major values (inf as Infinity)."""
    payload = {
        "grid": {
            "re_min": field.grid.re_min,
            "re_max": field.grid.re_max,
            "im_min": field.grid.im_min,
            "im_max": field.grid.im_max,
            "nx": field.grid.nx,
            "ny": field.grid.ny,
        },
        "norm": field.norm_kind.value,
        "values": [float(v) for v in field.values.ravel()],
    }
    return json.dumps(payload, indent=2)


def field_from_json(text):
    payload = json.loads(text)
    g = payload["grid"]
    grid = GridSpec(
        re_min=g["re_min"], re_max=g["re_max"],
        im_min=g["im_min"], im_max=g["im_max"],
        nx=g["nx"], ny=g["ny"],
    )
    values = np.array(payload["values"], dtype=np.float64).reshape(grid.nx, grid.ny)
    return PseudospectrumField(
        grid=grid, norm_kind=NormKind.parse(payload["norm"]), values=values
    )
