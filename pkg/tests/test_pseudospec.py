"""Resolvent-norm fields: grids, sweeps, level sets, inclusions, and the
CSV/JSON serializations."""

import json
import math

import numpy as np
import pytest

from g1lab import GridTooLarge, MatrixElement, NormKind
from g1lab import algebras, pseudospec, spectral


def _field_diag01(nx=41, ny=41):
    a = algebras.make_diagonal(2, eigenvalues=[0.0, 1.0], norm=NormKind.TWO)
    grid = pseudospec.GridSpec(-1.0, 2.0, -1.0, 1.0, nx, ny)
    return a, pseudospec.resolvent_field(a, grid)


def test_gridspec_axes_and_nodes():
    g = pseudospec.GridSpec(0.0, 1.0, 0.0, 2.0, 11, 21)
    assert g.re_axis()[0] == 0.0 and g.re_axis()[-1] == 1.0
    nodes = g.nodes()
    assert nodes.shape == (11, 21)
    assert nodes[3, 5] == g.re_axis()[3] + 1j * g.im_axis()[5]
    assert abs(g.cell_diagonal() - math.hypot(0.1, 0.1)) <= 1e-14


def test_gridspec_validation():
    with pytest.raises(ValueError):
        pseudospec.GridSpec(1.0, 0.0, 0.0, 1.0)
    with pytest.raises(ValueError):
        pseudospec.GridSpec(0.0, 1.0, 0.0, 1.0, 0, 5)
    with pytest.raises(ValueError):
        pseudospec.GridSpec(0.0, np.inf, 0.0, 1.0)
    with pytest.raises(GridTooLarge):
        pseudospec.GridSpec(0.0, 1.0, 0.0, 1.0, 9999, 9999)


def test_default_grid_pads_spectrum_box():
    a = algebras.make_diagonal(2, eigenvalues=[0.0, 1.0])
    g = pseudospec.default_grid(a)
    assert (g.re_min, g.re_max) == (-1.0, 2.0)
    assert (g.im_min, g.im_max) == (-1.0, 1.0)
    assert g.nx == g.ny == pseudospec.DEFAULT_GRID_SIDE


def test_field_values_inverse_distance_normal():
    a, field = _field_diag01()
    s = field.spectrum
    nodes = field.grid.nodes()
    # away from the spectrum the 2-norm field of a normal matrix is exactly
    # the reciprocal distance
    for i in range(0, 41, 7):
        for j in range(0, 41, 7):
            z = nodes[i, j]
            d = spectral.distance_to_spectrum(z, s)
            if d <= 1e-3:
                continue
            assert abs(field.values[i, j] * d - 1.0) <= 1e-10


def test_field_sentinel_on_spectrum_nodes():
    _, field = _field_diag01()
    nodes = field.grid.nodes()
    hits = np.abs(nodes[:, :, None] - np.array([0.0, 1.0])[None, None, :]).min(axis=2)
    assert np.all(np.isinf(field.values[hits < 1e-14]))


@pytest.mark.parametrize("kind", [NormKind.ONE, NormKind.INF])
def test_field_explicit_norms_diagonal(kind):
    a = MatrixElement(np.diag([0.0, 1.0]), kind)
    grid = pseudospec.GridSpec(-0.6, 1.6, -0.6, 0.6, 12, 7)
    field = pseudospec.resolvent_field(a, grid)
    nodes = grid.nodes()
    s = spectral.spectrum(a)
    htol = spectral.hit_tol(a)
    for i in range(12):
        for j in range(7):
            d = spectral.distance_to_spectrum(nodes[i, j], s)
            if d <= 10.0 * htol:
                assert field.values[i, j] == np.inf
                continue
            assert abs(field.values[i, j] - 1.0 / d) <= 1e-11 / d


def test_field_nilpotent_closed_form():
    x = algebras.make_nilpotent(0.0, 1.0)
    grid = pseudospec.GridSpec(-2.0, 2.0, -2.0, 2.0, 21, 21)
    field = pseudospec.resolvent_field(x, grid)
    nodes = grid.nodes()
    d = np.abs(nodes)
    with np.errstate(divide="ignore"):
        want = 1.0 / d + 1.0 / d**2
    mask = d > 1e-12
    np.testing.assert_allclose(field.values[mask], want[mask], rtol=1e-12)


def test_level_sets_nest():
    _, field = _field_diag01()
    small = pseudospec.level_set_membership(field, 0.05)
    mid = pseudospec.level_set_membership(field, 0.1)
    big = pseudospec.level_set_membership(field, 0.2)
    assert np.all(small <= mid)
    assert np.all(mid <= big)
    assert small.any()  # spectrum nodes are inside every level


def test_level_set_requires_positive_eps():
    _, field = _field_diag01()
    with pytest.raises(ValueError):
        pseudospec.level_set_membership(field, 0.0)


def test_verify_inclusions_diag01():
    a = algebras.make_diagonal(2, eigenvalues=[0.0, 1.0], norm=NormKind.TWO)
    grid = pseudospec.default_grid(a, nx=81, ny=81)
    rep = pseudospec.verify_inclusions(a, [0.05, 0.1, 0.2], grid=grid)
    assert rep.all_ok
    assert len(rep.checks) == 3
    for c in rep.checks:
        assert c.inner_violation <= rep.cell_diagonal + rep.tol
        assert c.outer_violation <= rep.cell_diagonal + rep.tol


def test_verify_inclusions_jordan():
    a = algebras.make_jordan(4)
    grid = pseudospec.default_grid(a, nx=81, ny=81)
    rep = pseudospec.verify_inclusions(a, [0.1, 0.3], grid=grid)
    assert rep.all_ok


def test_csv_round_trip():
    _, field = _field_diag01(nx=9, ny=7)
    text = pseudospec.field_to_csv(field)
    lines = text.strip().split("\n")
    assert lines[0] == "re,im,resnorm"
    assert len(lines) == 1 + 9 * 7
    back = pseudospec.field_from_csv(text)
    assert back.grid == field.grid
    np.testing.assert_array_equal(back.values, field.values)
    assert back.norm_kind is NormKind.TWO


def test_csv_writes_inf_literal_on_spectrum_hits():
    # step 0.5 grids land nodes exactly on the eigenvalues 0 and 1
    _, field = _field_diag01(nx=7, ny=5)
    text = pseudospec.field_to_csv(field)
    assert "inf" in text
    back = pseudospec.field_from_csv(text)
    np.testing.assert_array_equal(back.values, field.values)
    assert np.isinf(back.values).sum() == 2


def test_json_round_trip():
    _, field = _field_diag01(nx=9, ny=7)
    text = pseudospec.field_to_json(field)
    parsed = json.loads(text)  # Infinity tokens parse back to float inf
    assert parsed["norm"] == "2"
    back = pseudospec.field_from_json(text)
    assert back.grid == field.grid
    assert back.norm_kind is field.norm_kind
    np.testing.assert_array_equal(back.values, field.values)


def test_serialization_is_deterministic():
    _, field = _field_diag01(nx=9, ny=7)
    assert pseudospec.field_to_csv(field) == pseudospec.field_to_csv(field)
    assert pseudospec.field_to_json(field) == pseudospec.field_to_json(field)


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("G1LAB_THREADS", "3")
    assert pseudospec._worker_count() == 3
    monkeypatch.setenv("G1LAB_THREADS", "0")
    assert pseudospec._worker_count() >= 1
    monkeypatch.delenv("G1LAB_THREADS")
    assert pseudospec._worker_count() >= 1


def test_field_independent_of_thread_count(monkeypatch):
    a = algebras.make_normal(6, seed=9)
    grid = pseudospec.GridSpec(-3.0, 3.0, -3.0, 3.0, 30, 30)
    monkeypatch.setenv("G1LAB_THREADS", "1")
    serial = pseudospec.resolvent_field(a, grid)
    monkeypatch.setenv("G1LAB_THREADS", "4")
    parallel = pseudospec.resolvent_field(a, grid)
    np.testing.assert_array_equal(serial.values, parallel.values)
