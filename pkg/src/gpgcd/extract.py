"""Recover the GCD from a converged iterate and correct the perturbed inputs.

The constraint ``U_1 Pt_i + U_i Pt_1 = 0`` means ``Pt_1 = H U_1`` and
``Pt_i = -H U_i``, so the cofactors are sign-flipped once to ``V_1 = U_1``,
``V_i = -U_i`` and ``Pt_i = H V_i`` holds for every ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .errors import DegenerateCofactorError, RankDeficientError
from .linalg import least_squares_solve
from .poly import Polynomial, PolyLike, as_polynomial, conv_matrix, mul, norm2_sq, sub
from .solver import (
    ProblemInstance,
    SolverOptions,
    SolverOutcome,
    VariableVector,
    solve,
)

ZERO_COFACTOR_TOL = 1e-12


@dataclass(frozen=True)
class ApproxGcdResult:
    gcd: Polynomial
    cofactors: tuple[Polynomial, ...]
    corrected: tuple[Polynomial, ...]
    perturbation: float
    residual_per_candidate: tuple[float, ...]
    chosen_index: int
    inputs: tuple[Polynomial, ...] = ()
    outcome: SolverOutcome | None = None

    @property
    def converged(self) -> bool:
        return self.outcome is None or self.outcome.converged

    def monic(self) -> "ApproxGcdResult":
        """Rescale so the GCD is monic; the cofactors absorb the leading coefficient."""
        lc = self.gcd.leading
        gcd = Polynomial(self.gcd.coeffs / lc)
        cofactors = tuple(Polynomial(v.coeffs * lc) for v in self.cofactors)
        corrected = tuple(mul(gcd, v) for v in cofactors)
        perturbation = self.perturbation
        if self.inputs:
            perturbation = _perturbation(corrected, self.inputs)
        return replace(self, gcd=gcd, cofactors=cofactors, corrected=corrected,
                       perturbation=perturbation)


def _perturbation(corrected: Sequence[Polynomial], inputs: Sequence[Polynomial]) -> float:
    return float(sum(norm2_sq(sub(c, p)) for c, p in zip(corrected, inputs)))


def normalize_cofactors(u_polys: Sequence[PolyLike]) -> list[Polynomial]:
    us = [as_polynomial(u) for u in u_polys]
    for i, u in enumerate(us):
        if np.linalg.norm(u.coeffs) <= ZERO_COFACTOR_TOL:
            raise DegenerateCofactorError(f"cofactor {i + 1} is numerically zero")
    return [us[0]] + [-u for u in us[1:]]


def least_squares_division(v: PolyLike, target: PolyLike, d: int) -> Polynomial:
    """Quotient ``h`` of degree ``d`` minimizing ``||h * v - target||_2``.

    Solves the tall Toeplitz system ``C_d(v) h = target`` in the least-squares
    sense instead of running long division.
    """
    v = as_polynomial(v)
    target = as_polynomial(target)
    if np.linalg.norm(v.coeffs) <= ZERO_COFACTOR_TOL:
        raise DegenerateCofactorError("divisor is numerically zero")
    if target.degree != v.degree + d:
        raise ValueError(
            f"target degree {target.degree} != divisor degree {v.degree} + {d}"
        )
    c = conv_matrix(v, d)
    try:
        h = least_squares_solve(c, target.coeffs)
    except RankDeficientError as exc:
        # A Toeplitz band matrix with a nonzero generator always has full column rank.
        raise AssertionError(f"convolution matrix of a nonzero divisor lost rank: {exc}")
    return Polynomial(h)


def select_and_correct(problem: ProblemInstance, x_final: VariableVector,
                       outcome: SolverOutcome | None = None) -> ApproxGcdResult:
    """Pick the GCD candidate with the smallest total residual and rebuild the inputs.

    Candidate ``H_i`` divides the ``i``-th perturbed polynomial by ``V_i``;
    its residual is ``sum_j ||P_j - H_i V_j||^2`` against the original
    inputs. Ties go to the lowest index.
    """
    d = problem.target_degree
    cofactors = normalize_cofactors(x_final.cofactors())
    perturbed = x_final.perturbed_polys()

    candidates = []
    residuals = []
    for i in range(problem.n):
        h = least_squares_division(cofactors[i], perturbed[i], d)
        r = sum(norm2_sq(sub(p, mul(h, v))) for p, v in zip(problem.polys, cofactors))
        candidates.append(h)
        residuals.append(r)

    best = int(np.argmin(residuals))
    gcd = candidates[best]
    corrected = tuple(mul(gcd, v) for v in cofactors)
    return ApproxGcdResult(
        gcd=gcd,
        cofactors=tuple(cofactors),
        corrected=corrected,
        perturbation=_perturbation(corrected, problem.polys),
        residual_per_candidate=tuple(float(r) for r in residuals),
        chosen_index=best,
        inputs=problem.polys,
        outcome=outcome,
    )


def approx_gcd(polys: Sequence[PolyLike], degree: int,
               options: SolverOptions | None = None) -> ApproxGcdResult:
    """Approximate GCD of ``polys`` with the given degree.

    Runs the Newton iteration and extracts the GCD from the final iterate.
    The result still carries the solver outcome when the iteration did not
    converge; check ``result.converged``.

    >>> r = approx_gcd([[1, -3, 2], [1, -4, 3]], 1)
    >>> [round(c, 8) for c in r.monic().gcd.tolist()]
    [1.0, -1.0]
    """
    problem = ProblemInstance(polys, degree)
    outcome = solve(problem, options)
    return select_and_correct(problem, outcome.final_x, outcome)
