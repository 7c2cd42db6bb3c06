"""Generalized Sylvester and subresultant matrices for several polynomials.

The matrix has one block row per pair ``(P_1, P_i)``, ``i = 2..n``, so that
``N_k @ (u_1, ..., u_n)`` stacks the coefficient vectors of ``U_1 P_i + U_i P_1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidProblemError
from .linalg import svd
from .poly import PolyLike, as_polynomial, conv_matrix

DEFAULT_RANK_TOL = 1e-10


@dataclass(frozen=True)
class SubresDims:
    rows: int
    cols: int


def _check_k(degrees: Sequence[int], k: int) -> None:
    if len(degrees) < 2:
        raise InvalidProblemError(f"need at least 2 polynomials, got {len(degrees)}")
    if not 0 <= k < min(degrees):
        raise InvalidProblemError(
            f"subresultant index k={k} must satisfy 0 <= k < min degree {min(degrees)}"
        )


def subres_dims(degrees: Sequence[int], k: int) -> SubresDims:
    """Row and column counts of the ``k``-th subresultant matrix.

    >>> subres_dims([10, 10, 10], 4)
    SubresDims(rows=32, cols=18)
    """
    degrees = [int(x) for x in degrees]
    _check_k(degrees, k)
    n = len(degrees)
    total = sum(degrees)
    return SubresDims(
        rows=total - (n - 1) * k + (n - 2) * degrees[0],
        cols=total - n * k,
    )


def block_row_heights(degrees: Sequence[int], k: int) -> list[int]:
    d1 = degrees[0]
    return [d1 + di - k for di in degrees[1:]]


def block_col_widths(degrees: Sequence[int], k: int) -> list[int]:
    return [di - k for di in degrees]


def subresultant_matrix(polys: Sequence[PolyLike], k: int) -> np.ndarray:
    """Build ``N_k(P_1, ..., P_n)``; ``k = 0`` gives the generalized Sylvester matrix.

    Block row ``i - 1`` (for ``i = 2..n``) holds ``C_{d_1-1-k}(P_i)`` in the
    first column block and ``C_{d_i-1-k}(P_1)`` in column block ``i``.
    """
    ps = [as_polynomial(p) for p in polys]
    degrees = [p.degree for p in ps]
    _check_k(degrees, k)
    for i, p in enumerate(ps):
        if p.leading == 0.0:
            raise InvalidProblemError(f"polynomial {i + 1} has a zero leading coefficient")

    widths = block_col_widths(degrees, k)
    offsets = np.concatenate([[0], np.cumsum(widths)])
    dims = subres_dims(degrees, k)
    out = np.zeros((dims.rows, dims.cols))
    row = 0
    for i in range(1, len(ps)):
        left = conv_matrix(ps[i], degrees[0] - 1 - k)
        right = conv_matrix(ps[0], degrees[i] - 1 - k)
        h = left.shape[0]
        out[row:row + h, offsets[0]:offsets[1]] = left
        out[row:row + h, offsets[i]:offsets[i + 1]] = right
        row += h
    return out


def sylvester_matrix(polys: Sequence[PolyLike]) -> np.ndarray:
    return subresultant_matrix(polys, 0)


def gcd_degree_estimate(polys: Sequence[PolyLike], tol: float = DEFAULT_RANK_TOL) -> int:
    """Degree of the GCD read off the rank profile of the subresultant matrices.

    Scans ``k = 0, 1, ...`` and returns the first ``k`` whose subresultant
    matrix has full column rank (singular values above ``tol * sigma_max``).
    Returns ``min(degrees)`` when none does, which is the case when one input
    divides all the others.

    Only meaningful for exact (or nearly exact) inputs; for noisy data pick the
    target degree yourself.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    ps = [as_polynomial(p) for p in polys]
    dmin = min(p.degree for p in ps)
    for k in range(dmin):
        m = subresultant_matrix(ps, k)
        if svd(m).rank(tol) == m.shape[1]:
            return k
    return dmin
