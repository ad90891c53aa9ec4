"""Element types for the two unital algebras everything else operates on.

A MatrixElement is a square complex matrix together with the induced norm
(1, 2, or inf) that turns M_n into a Banach algebra.  A
NilpotentAlgebraElement is a pair (alpha, beta) representing
alpha * 1 + beta * n in the two-dimensional algebra with n^2 = 0 and the
exact norm |alpha| + |beta|.

Arithmetic is overloaded on both types; scalars combine as multiples of
the algebra unit, so ``a - z`` means a - z*1.
"""

import numbers
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import linalg


class NormKind(Enum):
    """Which induced operator norm a matrix element carries."""

    ONE = "1"
    TWO = "2"
    INF = "inf"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        for kind in cls:
            if kind.value == str(text):
                return kind
        raise ValueError(f"unknown norm {text!r}; expected one of 1, 2, inf")


def _as_scalar(x):
    if isinstance(x, numbers.Number) and not isinstance(x, bool):
        return complex(x)
    return None


@dataclass(frozen=True)
class MatrixElement:
    """A square complex matrix viewed as an element of (M_n, ||.||_kind)."""

    matrix: np.ndarray
    norm_kind: NormKind = NormKind.TWO

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix).copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        if not isinstance(self.norm_kind, NormKind):
            object.__setattr__(self, "norm_kind", NormKind.parse(self.norm_kind))

    @property
    def order(self):
        return self.matrix.shape[0]

    @classmethod
    def identity(cls, n, norm_kind=NormKind.TWO):
        return cls(np.eye(n, dtype=np.complex128), norm_kind)

    def norm(self):
        return linalg.operator_norm(self.matrix, self.norm_kind.value)

    def _wrap(self, m):
        return MatrixElement(m, self.norm_kind)

    def _coerce(self, other):
        s = _as_scalar(other)
        if s is not None:
            return self._wrap(s * np.eye(self.order, dtype=np.complex128))
        if isinstance(other, MatrixElement):
            if other.norm_kind is not self.norm_kind:
                raise ValueError("cannot mix matrix elements with different norms")
            if other.order != self.order:
                raise ValueError("cannot mix matrix elements of different orders")
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.matrix + o.matrix)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.matrix - o.matrix)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(o.matrix - self.matrix)

    def __mul__(self, other):
        s = _as_scalar(other)
        if s is not None:
            return self._wrap(s * self.matrix)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._wrap(self.matrix @ o.matrix)

    def __rmul__(self, other):
        s = _as_scalar(other)
        if s is not None:
            return self._wrap(s * self.matrix)
        return NotImplemented

    def __neg__(self):
        return self._wrap(-self.matrix)


@dataclass(frozen=True)
class NilpotentAlgebraElement:
    """alpha * 1 + beta * n in the algebra C[n]/(n^2), norm |alpha| + |beta|."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if not (np.isfinite(a.real) and np.isfinite(a.imag)
                and np.isfinite(b.real) and np.isfinite(b.imag)):
            raise ValueError("coefficients must be finite")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0)

    def norm(self):
        return abs(self.alpha) + abs(self.beta)

    def _coerce(self, other):
        s = _as_scalar(other)
        if s is not None:
            return NilpotentAlgebraElement(s, 0.0)
        if isinstance(other, NilpotentAlgebraElement):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NilpotentAlgebraElement(self.alpha + o.alpha, self.beta + o.beta)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NilpotentAlgebraElement(self.alpha - o.alpha, self.beta - o.beta)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NilpotentAlgebraElement(o.alpha - self.alpha, o.beta - self.beta)

    def __mul__(self, other):
        # (a1 + b1 n)(a2 + b2 n) = a1 a2 + (a1 b2 + a2 b1) n since n^2 = 0
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NilpotentAlgebraElement(
            self.alpha * o.alpha, self.alpha * o.beta + o.alpha * self.beta
        )

    __rmul__ = __mul__

    def __neg__(self):
        return NilpotentAlgebraElement(-self.alpha, -self.beta)


AlgebraElement = MatrixElement | NilpotentAlgebraElement


def unit_like(a):
    """The algebra unit in the same algebra as a."""
    if isinstance(a, MatrixElement):
        return MatrixElement.identity(a.order, a.norm_kind)
    if isinstance(a, NilpotentAlgebraElement):
        return NilpotentAlgebraElement.identity()
    raise TypeError(f"not an algebra element: {type(a).__name__}")


def zero_like(a):
    """The zero element in the same algebra as a."""
    if isinstance(a, MatrixElement):
        return MatrixElement(np.zeros((a.order, a.order), dtype=np.complex128), a.norm_kind)
    if isinstance(a, NilpotentAlgebraElement):
        return NilpotentAlgebraElement(0.0, 0.0)
    raise TypeError(f"not an algebra element: {type(a).__name__}")
