"""Level-line extraction (marching squares) and minimal SVG emission.

Contours of the resolvent-norm field at level 1/eps trace the boundary of
the eps-pseudospectrum.  Infinite field values are capped before
interpolation, which parks crossing points essentially on the node and
keeps every coordinate finite.
"""

import io
import math

import numpy as np

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _interp(pa, pb, va, vb, level):
    if vb == va:
        t = 0.5
    else:
        t = (level - va) / (vb - va)
        t = min(1.0, max(0.0, t))
    return (pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]))


def marching_squares(xs, ys, values, level):
    """Segments of the level set {value = level} on the grid.

    values[i, j] sits at (xs[i], ys[j]).  Returns a list of
    ((x1, y1), (x2, y2)) pairs; saddle cells are split by the cell-center
    average.  The "above" side is value >= level.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    v = np.asarray(values, dtype=float)
    cap = 1.0e3 * abs(level) + 1.0e3
    v = np.minimum(v, cap)
    segments = []
    for i in range(len(xs) - 1):
        for j in range(len(ys) - 1):
            x0, x1 = xs[i], xs[i + 1]
            y0, y1 = ys[j], ys[j + 1]
            v00, v10 = v[i, j], v[i + 1, j]
            v01, v11 = v[i, j + 1], v[i + 1, j + 1]
            case = (
                (1 if v00 >= level else 0)
                | (2 if v10 >= level else 0)
                | (4 if v11 >= level else 0)
                | (8 if v01 >= level else 0)
            )
            if case in (0, 15):
                continue
            bottom = _interp((x0, y0), (x1, y0), v00, v10, level)
            right = _interp((x1, y0), (x1, y1), v10, v11, level)
            top = _interp((x0, y1), (x1, y1), v01, v11, level)
            left = _interp((x0, y0), (x0, y1), v00, v01, level)
            if case in (1, 14):
                segments.append((left, bottom))
            elif case in (2, 13):
                segments.append((bottom, right))
            elif case in (3, 12):
                segments.append((left, right))
            elif case in (4, 11):
                segments.append((right, top))
            elif case in (6, 9):
                segments.append((bottom, top))
            elif case in (7, 8):
                segments.append((left, top))
            elif case in (5, 10):
                center_above = 0.25 * (v00 + v10 + v01 + v11) >= level
                if (case == 5) == center_above:
                    segments.append((left, top))
                    segments.append((bottom, right))
                else:
                    segments.append((left, bottom))
                    segments.append((right, top))
    return segments


def _fmt(x):
    return format(float(x), ".6g")


def field_contours_svg(field, eps_list):
    """SVG with one contour family per eps (level 1/eps) over the field grid.

    Spectrum points are marked when the field still carries its spectrum.
    Styling is fixed; coordinates are emitted y-flipped so the complex
    plane reads the usual way.
    """
    if not eps_list:
        raise ValueError("need at least one eps level")
    grid = field.grid
    xs = grid.re_axis()
    ys = grid.im_axis()
    w = grid.re_max - grid.re_min or 1.0
    h = grid.im_max - grid.im_min or 1.0
    stroke = max(w, h) / 400.0
    buf = io.StringIO()
    buf.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_fmt(grid.re_min)} {_fmt(-grid.im_max)} {_fmt(w)} {_fmt(h)}" '
        f'width="640" height="{_fmt(640.0 * h / w)}">\n'
    )
    buf.write(
        f'<rect x="{_fmt(grid.re_min)}" y="{_fmt(-grid.im_max)}" '
        f'width="{_fmt(w)}" height="{_fmt(h)}" fill="white"/>\n'
    )
    for k, eps in enumerate(eps_list):
        if not (eps > 0.0 and math.isfinite(eps)):
            raise ValueError(f"eps must be positive and finite, got {eps}")
        color = _PALETTE[k % len(_PALETTE)]
        level = 1.0 / eps
        segs = marching_squares(xs, ys, field.values, level)
        buf.write(f'<g stroke="{color}" stroke-width="{_fmt(stroke)}" fill="none">\n')
        for (ax, ay), (bx, by) in segs:
            buf.write(
                f'<line x1="{_fmt(ax)}" y1="{_fmt(-ay)}" '
                f'x2="{_fmt(bx)}" y2="{_fmt(-by)}"/>\n'
            )
        buf.write("</g>\n")
    if field.spectrum is not None:
        buf.write('<g fill="black">\n')
        for lam in field.spectrum.eigenvalues:
            buf.write(
                f'<circle cx="{_fmt(lam.real)}" cy="{_fmt(-lam.imag)}" '
                f'r="{_fmt(1.5 * stroke)}"/>\n'
            )
        buf.write("</g>\n")
    buf.write("</svg>\n")
    return buf.getvalue()
