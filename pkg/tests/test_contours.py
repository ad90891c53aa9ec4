"""Marching squares and the SVG rendering of field level lines."""

import io
import xml.etree.ElementTree as ET

import numpy as np

from g1lab import algebras, contours, pseudospec


def _radial_field(n=41, extent=2.0):
    xs = np.linspace(-extent, extent, n)
    ys = np.linspace(-extent, extent, n)
    r = np.hypot(xs[:, None], ys[None, :])
    return xs, ys, r


def test_marching_squares_circle_level():
    xs, ys, r = _radial_field()
    segs = contours.marching_squares(xs, ys, r, 1.0)
    assert len(segs) >= 20
    cell = xs[1] - xs[0]
    for (x0, y0), (x1, y1) in segs:
        # every endpoint sits on the unit circle up to one cell of slack
        assert abs(np.hypot(x0, y0) - 1.0) <= cell
        assert abs(np.hypot(x1, y1) - 1.0) <= cell


def test_marching_squares_vertical_line():
    xs = np.linspace(0.0, 1.0, 11)
    ys = np.linspace(0.0, 1.0, 5)
    vals = np.repeat(xs[:, None], 5, axis=1)
    segs = contours.marching_squares(xs, ys, vals, 0.55)
    assert segs
    for (x0, _), (x1, _) in segs:
        assert abs(x0 - 0.55) <= 1e-12
        assert abs(x1 - 0.55) <= 1e-12


def test_marching_squares_no_crossing():
    xs, ys, r = _radial_field()
    assert contours.marching_squares(xs, ys, r, 10.0) == []


def test_marching_squares_saddle_produces_two_segments():
    xs = np.array([0.0, 1.0])
    ys = np.array([0.0, 1.0])
    vals = np.array([[0.0, 1.0], [1.0, 0.0]])
    segs = contours.marching_squares(xs, ys, vals, 0.5)
    assert len(segs) == 2


def test_marching_squares_handles_inf_values():
    xs, ys, r = _radial_field(n=21)
    with np.errstate(divide="ignore"):
        vals = 1.0 / r
    segs = contours.marching_squares(xs, ys, vals, 2.0)  # the 1/2-contour
    assert segs
    flat = np.array([c for seg in segs for p in seg for c in p])
    assert np.isfinite(flat).all()


def _demo_field():
    a = algebras.make_diagonal(2, eigenvalues=[0.0, 1.0])
    grid = pseudospec.GridSpec(-1.0, 2.0, -1.0, 1.0, 61, 41)
    return pseudospec.resolvent_field(a, grid)


def test_svg_is_well_formed_and_complete():
    field = _demo_field()
    svg = contours.field_contours_svg(field, [0.1, 0.3])
    root = ET.parse(io.StringIO(svg)).getroot()
    assert root.tag.endswith("svg")
    lines = [el for el in root.iter() if el.tag.endswith("line")]
    circles = [el for el in root.iter() if el.tag.endswith("circle")]
    assert len(lines) > 20  # two visible level lines
    assert len(circles) == 2  # one dot per eigenvalue


def test_svg_is_deterministic():
    field = _demo_field()
    a = contours.field_contours_svg(field, [0.1, 0.25])
    b = contours.field_contours_svg(field, [0.1, 0.25])
    assert a == b
