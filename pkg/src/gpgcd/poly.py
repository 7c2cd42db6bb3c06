"""Dense real univariate polynomials and their convolution matrices.

Coefficients are stored in descending degree order, so ``coeffs[0]`` is the
leading coefficient. Every structured matrix used by the solver is assembled
from :func:`conv_matrix`.
"""

from __future__ import annotations

from typing import Iterable, Sequence, Union

import numpy as np

PolyLike = Union["Polynomial", Sequence[float], np.ndarray]


class Polynomial:
    """Immutable real polynomial with descending-order coefficients.

    The zero polynomial is stored as ``[0.0]`` and reports degree 0; callers
    that need a strict degree must check :attr:`leading` themselves.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[float]):
        arr = np.array(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                       dtype=float).ravel()
        if arr.size == 0:
            arr = np.zeros(1)
        arr.flags.writeable = False
        self._coeffs = arr

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def degree(self) -> int:
        return self._coeffs.size - 1

    @property
    def leading(self) -> float:
        return float(self._coeffs[0])

    def tolist(self) -> list[float]:
        return [float(c) for c in self._coeffs]

    def monic(self) -> "Polynomial":
        return Polynomial(self._coeffs / self._coeffs[0])

    def __len__(self) -> int:
        return self._coeffs.size

    def __iter__(self):
        return iter(self._coeffs)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self._coeffs, dtype=dtype)

    def __mul__(self, other: PolyLike) -> "Polynomial":
        if np.isscalar(other):
            return Polynomial(self._coeffs * float(other))
        return mul(self, other)

    __rmul__ = __mul__

    def __add__(self, other: PolyLike) -> "Polynomial":
        a, b = _aligned(self, as_polynomial(other))
        return Polynomial(a + b)

    def __sub__(self, other: PolyLike) -> "Polynomial":
        return sub(self, other)

    def __neg__(self) -> "Polynomial":
        return Polynomial(-self._coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self) -> int:
        return hash(self._coeffs.tobytes())

    def __repr__(self) -> str:
        return f"Polynomial({self.tolist()!r})"


def as_polynomial(p: PolyLike) -> Polynomial:
    return p if isinstance(p, Polynomial) else Polynomial(p)


def coeffvec(p: PolyLike) -> np.ndarray:
    """Coefficient vector ``(p_n, ..., p_0)`` as a fresh float array."""
    return np.array(as_polynomial(p).coeffs, dtype=float)


def _aligned(p: Polynomial, q: Polynomial) -> tuple[np.ndarray, np.ndarray]:
    size = max(len(p), len(q))
    a = np.zeros(size)
    b = np.zeros(size)
    a[size - len(p):] = p.coeffs
    b[size - len(q):] = q.coeffs
    return a, b


def conv_matrix(p: PolyLike, k: int) -> np.ndarray:
    """Return the ``(deg p + k + 1, k + 1)`` convolution matrix of ``p``.

    Column ``j`` holds the coefficients of ``p`` shifted down by ``j`` rows, so
    ``conv_matrix(p, k) @ coeffvec(q)`` is the coefficient vector of ``p * q``
    for any ``q`` of degree ``k``.

    >>> conv_matrix([1, 1], 1)
    array([[1., 0.],
           [1., 1.],
           [0., 1.]])
    """
    if k < 0:
        raise ValueError(f"shift count must be nonnegative, got {k}")
    c = as_polynomial(p).coeffs
    m = c.size - 1
    out = np.zeros((m + k + 1, k + 1))
    for j in range(k + 1):
        out[j:j + m + 1, j] = c
    return out


def mul(p: PolyLike, q: PolyLike) -> Polynomial:
    return Polynomial(np.convolve(as_polynomial(p).coeffs, as_polynomial(q).coeffs))


def sub(p: PolyLike, q: PolyLike) -> Polynomial:
    """Coefficientwise ``p - q``; the shorter operand is padded with leading zeros.

    The result keeps the padded length, so ``x**2 - x**2`` is ``[0, 0, 0]``.
    """
    a, b = _aligned(as_polynomial(p), as_polynomial(q))
    return Polynomial(a - b)


def norm2_sq(p: PolyLike) -> float:
    c = as_polynomial(p).coeffs
    return float(c @ c)
