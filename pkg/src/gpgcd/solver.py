"""Modified Newton iteration for the approximate-GCD minimization.

The unknowns are the perturbed polynomials ``Pt_1..Pt_n`` and cofactors
``U_1..U_n`` (``deg U_i = d_i - d``), flattened into one vector: all
perturbed coefficients first, then all cofactor coefficients, each block in
descending degree order. The iteration minimizes
``1/2 * sum ||Pt_i - P_i||^2`` subject to

* ``||U_1||^2 + ... + ||U_n||^2 = 1``
* ``U_1 Pt_i + U_i Pt_1 = 0`` for ``i = 2..n``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InvalidProblemError, SingularSystemError
from .linalg import (
    DEFAULT_CONSISTENCY_TOL,
    DEFAULT_STEP_RANK_TOL,
    min_singular_pair,
    numeric_rank,
    solve_bordered,
)
from .poly import Polynomial, PolyLike, as_polynomial, conv_matrix
from .sylvester import subresultant_matrix

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProblemInstance:
    """``n >= 2`` real polynomials and the target GCD degree ``d``.

    Requires ``0 < d < min(deg P_i)`` and nonzero leading coefficients.
    """

    polys: tuple[Polynomial, ...]
    target_degree: int

    def __init__(self, polys: Sequence[PolyLike], target_degree: int):
        ps = tuple(as_polynomial(p) for p in polys)
        d = int(target_degree)
        if len(ps) < 2:
            raise InvalidProblemError(f"need at least 2 polynomials, got {len(ps)}")
        for i, p in enumerate(ps):
            if not np.all(np.isfinite(p.coeffs)):
                raise InvalidProblemError(f"polynomial {i + 1} has non-finite coefficients")
            if p.leading == 0.0:
                raise InvalidProblemError(f"polynomial {i + 1} has a zero leading coefficient")
        dmin = min(p.degree for p in ps)
        if not 0 < d < dmin:
            raise InvalidProblemError(
                f"gcd degree {d} must satisfy 0 < d < min input degree ({dmin})"
            )
        object.__setattr__(self, "polys", ps)
        object.__setattr__(self, "target_degree", d)

    @property
    def n(self) -> int:
        return len(self.polys)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(p.degree for p in self.polys)

    @cached_property
    def cofactor_degrees(self) -> tuple[int, ...]:
        return tuple(di - self.target_degree for di in self.degrees)

    @cached_property
    def p_offsets(self) -> np.ndarray:
        return np.concatenate([[0], np.cumsum([di + 1 for di in self.degrees])])

    @cached_property
    def u_offsets(self) -> np.ndarray:
        start = self.p_offsets[-1]
        return start + np.concatenate([[0], np.cumsum([e + 1 for e in self.cofactor_degrees])])

    @property
    def n_coeffs(self) -> int:
        """Length of the perturbed-coefficient block."""
        return int(self.p_offsets[-1])

    @property
    def n_variables(self) -> int:
        return int(self.u_offsets[-1])

    @cached_property
    def original(self) -> np.ndarray:
        return np.concatenate([p.coeffs for p in self.polys])


def constraint_count(problem: ProblemInstance) -> int:
    d, n, ds = problem.target_degree, problem.n, problem.degrees
    return sum(ds) - (n - 1) * (d - 1) + (n - 2) * ds[0] + 1


def variable_count(problem: ProblemInstance) -> int:
    return 2 * sum(problem.degrees) + (2 - problem.target_degree) * problem.n


def structural_jacobian_rank(problem: ProblemInstance) -> int:
    """Rank of the constraint Jacobian at a generic feasible point.

    The feasible set ``{(H V_i, +-c V_i)}`` on the unit sphere has codimension
    ``sum(d_i) + n - d``, which bounds the rank. This equals
    :func:`constraint_count` for two polynomials. With ``n >= 3`` it is smaller
    by ``(n - 2) * (d_1 - d)``.
    """
    n, d1, d = problem.n, problem.degrees[0], problem.target_degree
    return constraint_count(problem) - (n - 2) * (d1 - d)


@dataclass(frozen=True)
class VariableVector:
    problem: ProblemInstance
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.problem.n_variables,):
            raise ValueError(
                f"variable vector has shape {v.shape}, expected ({self.problem.n_variables},)"
            )
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def from_parts(cls, problem: ProblemInstance, perturbed: Sequence[PolyLike],
                   cofactors: Sequence[PolyLike]) -> "VariableVector":
        blocks = [as_polynomial(p).coeffs for p in perturbed]
        blocks += [as_polynomial(u).coeffs for u in cofactors]
        return cls(problem, np.concatenate(blocks))

    @property
    def p_block(self) -> np.ndarray:
        return self.values[: self.problem.n_coeffs]

    @property
    def u_block(self) -> np.ndarray:
        return self.values[self.problem.n_coeffs:]

    def perturbed_coeffs(self, i: int) -> np.ndarray:
        o = self.problem.p_offsets
        return self.values[o[i]:o[i + 1]]

    def cofactor_coeffs(self, i: int) -> np.ndarray:
        o = self.problem.u_offsets
        return self.values[o[i]:o[i + 1]]

    def perturbed(self, i: int) -> Polynomial:
        return Polynomial(self.perturbed_coeffs(i))

    def cofactor(self, i: int) -> Polynomial:
        return Polynomial(self.cofactor_coeffs(i))

    def perturbed_polys(self) -> list[Polynomial]:
        return [self.perturbed(i) for i in range(self.problem.n)]

    def cofactors(self) -> list[Polynomial]:
        return [self.cofactor(i) for i in range(self.problem.n)]


def _values(x) -> np.ndarray:
    return x.values if isinstance(x, VariableVector) else np.asarray(x, dtype=float)


def objective(x, problem: ProblemInstance) -> float:
    diff = _values(x)[: problem.n_coeffs] - problem.original
    return 0.5 * float(diff @ diff)


def gradient(x, problem: ProblemInstance) -> np.ndarray:
    v = _values(x)
    out = np.zeros_like(v)
    out[: problem.n_coeffs] = v[: problem.n_coeffs] - problem.original
    return out


def constraints(x, problem: ProblemInstance) -> np.ndarray:
    v = _values(x)
    po, uo = problem.p_offsets, problem.u_offsets
    pt = [v[po[i]:po[i + 1]] for i in range(problem.n)]
    u = [v[uo[i]:uo[i + 1]] for i in range(problem.n)]
    tail = v[problem.n_coeffs:]
    parts = [np.array([tail @ tail - 1.0])]
    for i in range(1, problem.n):
        parts.append(np.convolve(u[0], pt[i]) + np.convolve(u[i], pt[0]))
    return np.concatenate(parts)


def jacobian(x, problem: ProblemInstance) -> np.ndarray:
    """Jacobian of :func:`constraints`, shape ``(constraint_count, n_variables)``.

    The cofactor blocks use the current perturbed polynomials, since the
    constraint is bilinear in ``(Pt, U)``.
    """
    v = _values(x)
    po, uo = problem.p_offsets, problem.u_offsets
    ds, d = problem.degrees, problem.target_degree
    pt = [v[po[i]:po[i + 1]] for i in range(problem.n)]
    u = [v[uo[i]:uo[i + 1]] for i in range(problem.n)]

    out = np.zeros((constraint_count(problem), problem.n_variables))
    out[0, problem.n_coeffs:] = 2.0 * v[problem.n_coeffs:]
    row = 1
    for i in range(1, problem.n):
        h = ds[0] + ds[i] - d + 1
        rows = slice(row, row + h)
        out[rows, po[0]:po[1]] = conv_matrix(u[i], ds[0])
        out[rows, po[i]:po[i + 1]] = conv_matrix(u[0], ds[i])
        out[rows, uo[0]:uo[1]] = conv_matrix(pt[i], ds[0] - d)
        out[rows, uo[i]:uo[i + 1]] = conv_matrix(pt[0], ds[i] - d)
        row += h
    return out


def jacobian_rank(x, problem: ProblemInstance, tol: float = 1e-10) -> int:
    return numeric_rank(jacobian(x, problem), tol)


def initial_point(problem: ProblemInstance) -> VariableVector:
    """Start at the inputs, with cofactors from the smallest right singular vector.

    The cofactor block is the unit vector minimizing
    ``||N_{d-1}(P_1..P_n) u||``, so the normalization constraint holds exactly.
    """
    n_mat = subresultant_matrix(problem.polys, problem.target_degree - 1)
    _, v_min, _ = min_singular_pair(n_mat)
    return VariableVector(problem, np.concatenate([problem.original, v_min]))


@dataclass(frozen=True)
class SolverOptions:
    epsilon: float = 1e-8
    max_iterations: int = 100
    rank_tol: float = DEFAULT_STEP_RANK_TOL
    consistency_tol: float = DEFAULT_CONSISTENCY_TOL

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon must be positive, got {self.epsilon}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise ValueError(f"max_iterations must be an integer >= 1, got {self.max_iterations}")
        if not self.rank_tol > 0:
            raise ValueError(f"rank_tol must be positive, got {self.rank_tol}")


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    step_norm: float
    constraint_norm: float
    """``||g||_2`` at the point the step was computed from."""
    linearized_residual: float
    """``||J dx + g||_inf`` for the accepted step."""
    constraint_max: float
    """``||g||_inf`` at the point the step was computed from."""


@dataclass(frozen=True)
class SolverOutcome:
    final_x: VariableVector
    iterations: int
    converged: bool
    constraint_residual: float
    trace: tuple[IterationRecord, ...] = field(default_factory=tuple)


def solve(problem: ProblemInstance, options: SolverOptions | None = None,
          x0: VariableVector | None = None) -> SolverOutcome:
    """Run full modified Newton steps until ``||dx||_2 <= epsilon``.

    Stops unconverged once ``max_iterations`` steps have been taken without
    meeting the threshold. Raises :class:`SingularSystemError` if a Newton
    system is inconsistent.
    """
    options = options or SolverOptions()
    x = (x0 or initial_point(problem)).values.copy()
    trace = []
    converged = False
    for it in range(1, options.max_iterations + 1):
        g = constraints(x, problem)
        jac = jacobian(x, problem)
        try:
            dx = solve_bordered(jac, gradient(x, problem), g,
                                rank_tol=options.rank_tol,
                                consistency_tol=options.consistency_tol)
        except SingularSystemError as exc:
            raise SingularSystemError(f"iteration {it}: {exc}") from exc
        step = float(np.linalg.norm(dx))
        rec = IterationRecord(
            iteration=it,
            step_norm=step,
            constraint_norm=float(np.linalg.norm(g)),
            linearized_residual=float(np.max(np.abs(jac @ dx + g))),
            constraint_max=float(np.max(np.abs(g))),
        )
        trace.append(rec)
        log.debug("iter %d: |dx|=%.3e |g|=%.3e", it, step, rec.constraint_norm)
        x = x + dx
        if step <= options.epsilon:
            converged = True
            break
    final = VariableVector(problem, x)
    resid = float(np.max(np.abs(constraints(final, problem))))
    return SolverOutcome(final, len(trace), converged, resid, tuple(trace))
