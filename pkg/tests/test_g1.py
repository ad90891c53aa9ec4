"""Deviation sampling and the three-way G1 verdicts.

The golden witness: for the 2x2 Jordan block at z = 1 the resolvent is
[[1,1],[0,1]], whose 2-norm is the golden ratio phi and whose inf-norm is
2, against a spectral distance of exactly 1.
"""

import json
import math

import numpy as np
import pytest

from g1lab import NormKind, SpectrumHit
from g1lab import algebras, g1, spectral

PHI = (1.0 + math.sqrt(5.0)) / 2.0


def test_deviation_jordan2_two_norm_at_one():
    a = algebras.make_jordan(2)
    dev = g1.g1_deviation(a, 1.0)
    assert abs(dev - (PHI - 1.0)) <= 1e-12


def test_deviation_jordan2_inf_norm_at_one():
    a = algebras.make_jordan(2, norm=NormKind.INF)
    assert abs(g1.g1_deviation(a, 1.0) - 1.0) <= 1e-12


def test_deviation_jordan2_one_norm_at_one():
    a = algebras.make_jordan(2, norm=NormKind.ONE)
    # (1 - J)^{-1} = [[1,1],[0,1]]: max column sum 2, distance 1
    assert abs(g1.g1_deviation(a, 1.0) - 1.0) <= 1e-12


def test_deviation_normal_vanishes():
    a = algebras.make_normal(5, seed=1)
    for z in (2.0 + 2.0j, -3.0, 0.5j + 3.0):
        assert abs(g1.g1_deviation(a, z)) <= 1e-11


def test_deviation_nilpotent_exact():
    x = algebras.make_nilpotent(0.5, 2.0)
    for z in (1.0, -0.5 + 1.0j, 0.5 + 0.25j):
        want = 2.0 / abs(z - 0.5)
        assert abs(g1.g1_deviation(x, z) - want) <= 4e-15 * (1.0 + want)


def test_deviation_spectrum_hit_raises():
    a = algebras.make_diagonal(2, eigenvalues=[0.0, 1.0])
    with pytest.raises(SpectrumHit):
        g1.g1_deviation(a, 1.0)


def test_deviations_vector_with_error_bounds():
    a = algebras.make_normal(4, seed=6)
    zs = np.array([2.0 + 2.0j, -3.0 + 1.0j, 4.0])
    dev, err = g1.deviations(a, zs)
    assert dev.shape == err.shape == (3,)
    assert np.all(err > 0.0)
    assert np.all(np.abs(dev) <= err + 1e-9)


def test_certify_normal_consistent():
    rep = g1.certify_g1(algebras.make_normal(6, seed=3))
    assert rep.verdict == "G1-consistent"
    assert rep.max_deviation <= rep.tol
    assert rep.witness_margin == 0.0
    assert rep.samples > 1000


def test_certify_diagonal_inf_consistent():
    rep = g1.certify_g1(algebras.make_diagonal(5, seed=4))
    assert rep.verdict == "G1-consistent"
    assert rep.max_deviation <= 1e-9


def test_certify_jordan_not_g1():
    for kind in (NormKind.ONE, NormKind.TWO, NormKind.INF):
        rep = g1.certify_g1(algebras.make_jordan(2, norm=kind))
        assert rep.verdict == "Not-G1 (witness)"
        assert rep.witness_margin > 0.0
        assert rep.max_deviation > 0.1
        # the witness is a genuine resolvent point with that deviation
        again = g1.g1_deviation(algebras.make_jordan(2, norm=kind), rep.argmax)
        assert abs(again - rep.max_deviation) <= 1e-9 * (1.0 + rep.max_deviation)


def test_certify_nilpotent_not_g1_with_exact_margin():
    x = algebras.make_nilpotent(0.0, 1.0)
    rep = g1.certify_g1(x)
    assert rep.verdict == "Not-G1 (witness)"
    # innermost circle radius 2^-6 around 0: deviation 1/(2^-6) = 64
    assert abs(rep.max_deviation - 64.0) <= 1e-9


def test_certify_is_deterministic():
    a = algebras.make_normal(5, seed=8)
    assert g1.certify_g1(a) == g1.certify_g1(a)


def test_certify_rejects_bad_tol():
    with pytest.raises(ValueError):
        g1.certify_g1(algebras.make_jordan(2), tol=0.0)


def test_report_json_shape():
    rep = g1.certify_g1(algebras.make_jordan(2))
    d = json.loads(rep.to_json())
    assert set(d) == {"verdict", "max_deviation", "argmax", "samples", "witness_margin"}
    assert d["argmax"] == [rep.argmax.real, rep.argmax.imag]
    assert d["verdict"] == "Not-G1 (witness)"


def test_sample_points_avoid_spectrum():
    a = algebras.make_normal(4, seed=9)
    spec = spectral.spectrum(a)
    zs = g1._sample_points(a, spec)
    d = np.abs(zs[:, None] - spec.eigenvalues[None, :]).min(axis=1)
    assert d.min() > spectral.hit_tol(a)


def test_scalar_test_scalar_element():
    import g1lab

    a = g1lab.MatrixElement(3.0 * np.eye(3), NormKind.TWO)
    rep = g1.scalar_test(a)
    assert rep.single_cluster and rep.is_scalar
    assert rep.mu == 3.0
    assert rep.offset_norm <= 1e-14
    assert rep.base_verdict == "G1-consistent"
    assert rep.affine_verdict == "G1-consistent"


def test_scalar_test_jordan_is_not_scalar():
    rep = g1.scalar_test(algebras.make_jordan(2))
    assert rep.single_cluster
    assert not rep.is_scalar
    assert rep.offset_norm >= 0.9


def test_scalar_test_two_clusters():
    rep = g1.scalar_test(algebras.make_diagonal(2, eigenvalues=[0.0, 1.0]))
    assert not rep.single_cluster
    assert not rep.is_scalar


def test_hermitian_idempotent_orthogonal_projection():
    p = algebras.make_normal(5, seed=3, eigenvalues=[1, 1, 0, 0, 1])
    rep = g1.hermitian_idempotent_test(p)
    assert rep.conclusion == "hermitian-idempotent"
    assert rep.hermitian and rep.spectrum_in_01
    assert rep.idempotency_defect <= 1e-12
    assert rep.certificate.verdict == "G1-consistent"


def test_hermitian_idempotent_oblique_refuted():
    p = algebras.make_oblique_projection(2, t=1.0)
    rep = g1.hermitian_idempotent_test(p)
    assert rep.conclusion == "not-hermitian-idempotent"
    assert rep.spectrum_in_01
    assert rep.certificate.verdict == "Not-G1 (witness)"
    assert abs(p.norm() - math.sqrt(2.0)) <= 1e-12


def test_hermitian_idempotent_wrong_spectrum():
    a = algebras.make_diagonal(2, eigenvalues=[0.0, 2.0])
    rep = g1.hermitian_idempotent_test(a)
    assert rep.conclusion == "not-idempotent-spectrum"
    assert not rep.spectrum_in_01
