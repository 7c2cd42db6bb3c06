"""Dense linear algebra used by the solver: SVD, least squares, Newton step.

Factorizations are delegated to LAPACK through numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RankDeficientError, SingularSystemError

# Relative singular-value cutoff for the Newton step; roughly machine epsilon
# times the matrix dimension at desk scale.
DEFAULT_STEP_RANK_TOL = 1e-13
# Linearized-feasibility bound a step must meet, relative to 1 + ||g||_inf.
DEFAULT_CONSISTENCY_TOL = 1e-8


@dataclass(frozen=True)
class SvdResult:
    """Thin SVD ``M = left_vectors @ diag(singular_values) @ right_vectors.T``.

    ``right_vectors`` holds the right singular vectors as *columns*.
    """

    singular_values: np.ndarray
    left_vectors: np.ndarray
    right_vectors: np.ndarray

    def rank(self, tol: float) -> int:
        s = self.singular_values
        if s.size == 0 or s[0] == 0.0:
            return 0
        return int(np.count_nonzero(s > tol * s[0]))


def _as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def svd(m) -> SvdResult:
    a = _as_matrix(m)
    u, s, vt = np.linalg.svd(a, full_matrices=False)
    return SvdResult(s, u, vt.T)


def numeric_rank(m, tol: float = 1e-10) -> int:
    """Number of singular values above ``tol * sigma_max``."""
    return svd(m).rank(tol)


def min_singular_pair(m) -> tuple[float, np.ndarray, np.ndarray]:
    """Smallest singular value with its right and left singular vectors.

    Returns ``(sigma_min, v_min, w_min)`` with ``m @ v_min == sigma_min * w_min``.
    For a wide matrix the right vector spans part of the null space and
    ``sigma_min`` is 0.
    """
    a = _as_matrix(m)
    rows, cols = a.shape
    u, s, vt = np.linalg.svd(a, full_matrices=True)
    v_min = vt[-1]
    if cols > rows:
        return 0.0, v_min, u[:, -1]
    return float(s[-1]), v_min, u[:, cols - 1]


def least_squares_solve(a, b, rcond: float | None = None) -> np.ndarray:
    """Minimize ``||a x - b||_2`` for a tall matrix of full column rank."""
    a = _as_matrix(a)
    b = np.asarray(b, dtype=float)
    rows, cols = a.shape
    if rows < cols:
        raise RankDeficientError(f"underdetermined system ({rows} rows < {cols} columns)")
    x, _, rank, _ = np.linalg.lstsq(a, b, rcond=rcond)
    if rank < cols:
        raise RankDeficientError(f"matrix has rank {rank} < {cols} columns")
    return x


def solve_bordered(
    jac,
    grad,
    g,
    *,
    rank_tol: float = DEFAULT_STEP_RANK_TOL,
    consistency_tol: float = DEFAULT_CONSISTENCY_TOL,
    return_multipliers: bool = False,
):
    """Solve the modified Newton system for the step ``dx``.

    Finds ``dx`` and ``lam`` with::

        [ I    J.T ] [ dx  ]   [ -grad ]
        [ J    0   ] [ lam ] = [ -g    ]

    via the SVD of ``J = W S Z.T``: ``dx`` is the projection of ``-grad`` onto
    the null space of ``J`` plus the minimum-norm correction ``-J^+ g``. When
    ``J`` has full row rank this is the unique solution of the bordered system.
    When ``J`` is rank-deficient but ``g`` lies in its range, as it does near
    feasible points with three or more polynomials, the step is still
    well defined and ``dx`` is unique.

    Parameters
    ----------
    jac : (m, N) array_like
        Constraint Jacobian, ``m <= N``.
    grad : (N,) array_like
        Objective gradient.
    g : (m,) array_like
        Constraint values.
    rank_tol : float
        Singular values of ``J`` below ``rank_tol * sigma_max`` are treated as 0.
    consistency_tol : float
        Raise :class:`SingularSystemError` when
        ``||J dx + g||_inf > consistency_tol * (1 + ||g||_inf)``.
    return_multipliers : bool
        Also return the multiplier vector ``lam``.
    """
    j = _as_matrix(jac)
    grad = np.asarray(grad, dtype=float)
    g = np.asarray(g, dtype=float)
    m, n = j.shape
    if grad.shape != (n,) or g.shape != (m,):
        raise ValueError(f"shape mismatch: J {j.shape}, grad {grad.shape}, g {g.shape}")

    w, s, zt = np.linalg.svd(j, full_matrices=False)
    r = int(np.count_nonzero(s > rank_tol * s[0])) if s.size and s[0] > 0 else 0
    w, s, zt = w[:, :r], s[:r], zt[:r]

    zg = zt @ grad
    wg = (w.T @ g) / s
    dx = -(grad - zt.T @ zg) - zt.T @ wg

    g_inf = float(np.max(np.abs(g))) if g.size else 0.0
    resid = float(np.max(np.abs(j @ dx + g))) if g.size else 0.0
    if resid > consistency_tol * (1.0 + g_inf):
        raise SingularSystemError(
            f"constraint Jacobian has numerical rank {r} < {m} and the linearized "
            f"constraints are inconsistent (residual {resid:.3e}); the iterate likely "
            "has a common factor of degree above the target or a constant cofactor"
        )
    if return_multipliers:
        lam = w @ ((-zg + wg) / s)
        return dx, lam
    return dx
