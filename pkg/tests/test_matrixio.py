"""Matrix file formats: the JSON layout and Matrix Market text."""

import numpy as np
import pytest

from g1lab import matrixio

MM_COORD_COMPLEX = """%%MatrixMarket matrix coordinate complex general
% a 2x2 with one off-diagonal entry
2 2 3
1 1 1.0 0.0
1 2 0.5 -1.0
2 2 2.0 0.0
"""

MM_COORD_SYMMETRIC = """%%MatrixMarket matrix coordinate real symmetric
3 3 4
1 1 1.0
2 1 5.0
3 3 2.0
3 2 -1.0
"""

MM_COORD_HERMITIAN = """%%MatrixMarket matrix coordinate complex hermitian
2 2 2
1 1 1.0 0.0
2 1 3.0 4.0
"""

MM_COORD_SKEW = """%%MatrixMarket matrix coordinate real skew-symmetric
2 2 1
2 1 3.0
"""

MM_ARRAY_REAL = """%%MatrixMarket matrix array real general
2 2
1.0
2.0
3.0
4.0
"""

MM_ARRAY_SYMMETRIC = """%%MatrixMarket matrix array integer symmetric
2 2
1
7
3
"""


def test_json_round_trip():
    rng = np.random.default_rng(3)
    m = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    text = matrixio.matrix_to_json_text(m)
    back = matrixio.matrix_from_json_text(text)
    np.testing.assert_array_equal(back, m)


def test_json_shape_errors():
    with pytest.raises(ValueError):
        matrixio.matrix_from_json_text('{"n": 2, "entries": [[[1,0]]]}')
    with pytest.raises(ValueError):
        matrixio.matrix_from_json_text('{"entries": []}')


def test_mm_coordinate_complex_general():
    m = matrixio.matrix_from_mm_text(MM_COORD_COMPLEX)
    want = np.array([[1.0, 0.5 - 1.0j], [0.0, 2.0]])
    np.testing.assert_array_equal(m, want)


def test_mm_coordinate_symmetric_mirrors():
    m = matrixio.matrix_from_mm_text(MM_COORD_SYMMETRIC)
    want = np.array([[1.0, 5.0, 0.0], [5.0, 0.0, -1.0], [0.0, -1.0, 2.0]])
    np.testing.assert_array_equal(m, want)


def test_mm_coordinate_hermitian_conjugates():
    m = matrixio.matrix_from_mm_text(MM_COORD_HERMITIAN)
    assert m[1, 0] == 3.0 + 4.0j
    assert m[0, 1] == 3.0 - 4.0j


def test_mm_coordinate_skew_negates_without_touching_diagonal():
    m = matrixio.matrix_from_mm_text(MM_COORD_SKEW)
    want = np.array([[0.0, -3.0], [3.0, 0.0]])
    np.testing.assert_array_equal(m, want)


def test_mm_array_is_column_major():
    m = matrixio.matrix_from_mm_text(MM_ARRAY_REAL)
    want = np.array([[1.0, 3.0], [2.0, 4.0]])
    np.testing.assert_array_equal(m, want)


def test_mm_array_symmetric_lower_triangle():
    m = matrixio.matrix_from_mm_text(MM_ARRAY_SYMMETRIC)
    want = np.array([[1.0, 7.0], [7.0, 3.0]])
    np.testing.assert_array_equal(m, want)


def test_mm_rejects_bad_headers():
    with pytest.raises(ValueError):
        matrixio.matrix_from_mm_text("1 1 1\n1 1 1.0\n")
    with pytest.raises(ValueError):
        matrixio.matrix_from_mm_text(
            "%%MatrixMarket matrix coordinate pattern general\n1 1 1\n1 1\n"
        )
    with pytest.raises(ValueError):
        matrixio.matrix_from_mm_text(
            "%%MatrixMarket tensor coordinate real general\n1 1 1\n1 1 1.0\n"
        )


def test_mm_rejects_out_of_range_indices():
    bad = "%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n"
    with pytest.raises(ValueError):
        matrixio.matrix_from_mm_text(bad)


def test_mm_rejects_nonsquare():
    bad = "%%MatrixMarket matrix coordinate real general\n2 3 1\n1 1 1.0\n"
    with pytest.raises(ValueError):
        matrixio.matrix_from_mm_text(bad)


def test_load_matrix_text_sniffs_format():
    m1 = matrixio.load_matrix_text(MM_COORD_COMPLEX)
    assert m1[0, 1] == 0.5 - 1.0j
    m2 = matrixio.load_matrix_text('{"n": 1, "entries": [[[2, 1]]]}')
    assert m2[0, 0] == 2.0 + 1.0j


def test_load_matrix_from_path(tmp_path):
    p = tmp_path / "a.mtx"
    p.write_text(MM_ARRAY_REAL)
    m = matrixio.load_matrix(p)
    assert m[1, 0] == 2.0
    q = tmp_path / "a.json"
    q.write_text(matrixio.matrix_to_json_text(np.eye(2)))
    np.testing.assert_array_equal(matrixio.load_matrix(q), np.eye(2))
