"""Matrix file formats: the JSON pair layout and Matrix Market.

JSON layout: {"n": order, "entries": row-major nested lists of [re, im]
pairs}.  Matrix Market: both coordinate and array formats, complex, real
and integer fields, general/symmetric/hermitian/skew-symmetric symmetry.
"""

import json

import numpy as np

from . import linalg


def matrix_to_json_text(a):
    """Serialize a square complex matrix to the JSON pair layout."""
    a = linalg.as_matrix(a)
    entries = [[[float(v.real), float(v.imag)] for v in row] for row in a]
    return json.dumps({"n": int(a.shape[0]), "entries": entries}, indent=2)


def matrix_from_json_text(text):
    data = json.loads(text)
    if not isinstance(data, dict) or "n" not in data or "entries" not in data:
        raise ValueError('matrix JSON needs keys "n" and "entries"')
    n = int(data["n"])
    rows = data["entries"]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise ValueError(f"entries do not form an {n} x {n} matrix")
    a = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(rows):
        for j, pair in enumerate(row):
            re, im = pair
            a[i, j] = complex(float(re), float(im))
    return linalg.as_matrix(a)


def _mm_parse_value(fields, kind):
    if kind == "complex":
        if len(fields) != 2:
            raise ValueError("complex Matrix Market entries need two value fields")
        return complex(float(fields[0]), float(fields[1]))
    if len(fields) != 1:
        raise ValueError(f"{kind} Matrix Market entries need one value field")
    return complex(float(fields[0]), 0.0)


def matrix_from_mm_text(text):
    """Parse a Matrix Market matrix (coordinate or array) into an ndarray."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("%%MatrixMarket"):
        raise ValueError("missing %%MatrixMarket header")
    header = lines[0].split()
    if len(header) != 5 or header[1].lower() != "matrix":
        raise ValueError(f"unsupported Matrix Market header: {lines[0]!r}")
    fmt, field, symmetry = (h.lower() for h in header[2:])
    if fmt not in ("coordinate", "array"):
        raise ValueError(f"unsupported Matrix Market format {fmt!r}")
    if field not in ("complex", "real", "integer"):
        raise ValueError(f"unsupported Matrix Market field {field!r}")
    if symmetry not in ("general", "symmetric", "hermitian", "skew-symmetric"):
        raise ValueError(f"unsupported Matrix Market symmetry {symmetry!r}")

    data = [ln for ln in lines[1:] if ln.strip() and not ln.lstrip().startswith("%")]
    if not data:
        raise ValueError("Matrix Market size line missing")
    size = data[0].split()
    body = data[1:]

    if fmt == "coordinate":
        if len(size) != 3:
            raise ValueError("coordinate size line needs rows cols nnz")
        nrows, ncols, nnz = (int(s) for s in size)
        if nrows != ncols:
            raise ValueError(f"matrix must be square, got {nrows} x {ncols}")
        if len(body) != nnz:
            raise ValueError(f"expected {nnz} entries, found {len(body)}")
        a = np.zeros((nrows, ncols), dtype=np.complex128)
        for ln in body:
            parts = ln.split()
            i, j = int(parts[0]) - 1, int(parts[1]) - 1
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise ValueError(
                    f"coordinate ({i + 1}, {j + 1}) outside the {nrows} x {ncols} matrix"
                )
            v = _mm_parse_value(parts[2:], field)
            a[i, j] = v
            if i != j:
                if symmetry == "symmetric":
                    a[j, i] = v
                elif symmetry == "hermitian":
                    a[j, i] = v.conjugate()
                elif symmetry == "skew-symmetric":
                    a[j, i] = -v
    else:
        if len(size) != 2:
            raise ValueError("array size line needs rows cols")
        nrows, ncols = (int(s) for s in size)
        if nrows != ncols:
            raise ValueError(f"matrix must be square, got {nrows} x {ncols}")
        if symmetry == "general":
            expected = nrows * ncols
        else:
            expected = nrows * (nrows + 1) // 2
        if len(body) != expected:
            raise ValueError(f"expected {expected} entries, found {len(body)}")
        a = np.zeros((nrows, ncols), dtype=np.complex128)
        it = iter(body)
        # array format runs down columns; symmetric variants store the
        # lower triangle only
        for j in range(ncols):
            i0 = j if symmetry != "general" else 0
            for i in range(i0, nrows):
                v = _mm_parse_value(next(it).split(), field)
                a[i, j] = v
                if i != j and symmetry == "symmetric":
                    a[j, i] = v
                elif i != j and symmetry == "hermitian":
                    a[j, i] = v.conjugate()
                elif i != j and symmetry == "skew-symmetric":
                    a[j, i] = -v
    return linalg.as_matrix(a)


def load_matrix_text(text):
    """Sniff the format (Matrix Market vs JSON) and parse."""
    stripped = text.lstrip()
    if stripped.startswith("%%MatrixMarket"):
        return matrix_from_mm_text(text)
    return matrix_from_json_text(text)


def load_matrix(path):
    """Read a matrix file in either supported format."""
    with open(path, "r", encoding="utf-8") as fh:
        return load_matrix_text(fh.read())
