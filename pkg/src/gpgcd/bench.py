"""Random test instances with a planted GCD, and the benchmark summary table.

Each case is drawn from its own PCG64 stream, ``SeedSequence(seed,
spawn_key=(case_index,))``, so a case can be regenerated on its own and results
do not depend on the order cases are run in.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateCofactorError, SingularSystemError
from .extract import select_and_correct
from .poly import Polynomial, mul
from .solver import ProblemInstance, SolverOptions, solve

COEFF_RANGE = 10.0


@dataclass(frozen=True)
class BenchConfig:
    """``n`` polynomials of degree ``m`` sharing a GCD of degree ``d``, plus noise."""

    m: int
    d: int
    n: int
    cases: int = 10
    noise: float = 0.1
    seed: int = 0
    epsilon: float = 1e-8
    max_iterations: int = 100

    def __post_init__(self):
        if not self.m > self.d > 0:
            raise ValueError(f"need m > d > 0, got m={self.m}, d={self.d}")
        if self.n < 2:
            raise ValueError(f"need n >= 2, got {self.n}")
        if self.cases < 1:
            raise ValueError(f"need cases >= 1, got {self.cases}")
        if not self.noise >= 0:
            raise ValueError(f"noise must be nonnegative, got {self.noise}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def label(self) -> str:
        return f"({self.m},{self.d},{self.n})"

    @property
    def options(self) -> SolverOptions:
        return SolverOptions(epsilon=self.epsilon, max_iterations=self.max_iterations)


@dataclass(frozen=True)
class GeneratedCase:
    instance: ProblemInstance
    gcd: Polynomial
    exact: tuple[Polynomial, ...]
    noise: tuple[Polynomial, ...]


def case_rng(seed: int, case_index: int) -> np.random.Generator:
    seq = np.random.SeedSequence(seed, spawn_key=(case_index,))
    return np.random.Generator(np.random.PCG64(seq))


def _monic(rng: np.random.Generator, degree: int) -> Polynomial:
    return Polynomial(np.concatenate([[1.0], rng.uniform(-COEFF_RANGE, COEFF_RANGE, degree)]))


def generate_case(config: BenchConfig, case_index: int) -> GeneratedCase:
    """Planted-GCD instance with the noise-free polynomials kept alongside.

    The monic GCD is shared by all polynomials; every polynomial gets its own
    monic prime part and its own noise polynomial of degree ``m - 1``, scaled
    to 2-norm ``config.noise``.
    """
    rng = case_rng(config.seed, case_index)
    m, d = config.m, config.d
    h = _monic(rng, d)
    exact, noise, polys = [], [], []
    for _ in range(config.n):
        p0 = mul(h, _monic(rng, m - d))
        pn = rng.uniform(-COEFF_RANGE, COEFF_RANGE, m)
        scaled = np.concatenate([[0.0], pn * (config.noise / np.linalg.norm(pn))])
        exact.append(p0)
        noise.append(Polynomial(scaled))
        polys.append(Polynomial(p0.coeffs + scaled))
    return GeneratedCase(ProblemInstance(polys, d), h, tuple(exact), tuple(noise))


def generate_test_case(config: BenchConfig, case_index: int) -> ProblemInstance:
    return generate_case(config, case_index).instance


@dataclass(frozen=True)
class CaseResult:
    index: int
    status: str
    """``"ok"``, ``"not_converged"``, ``"singular"`` or ``"degenerate"``."""
    iterations: int
    perturbation: float
    seconds: float

    @property
    def failed(self) -> bool:
        return self.status != "ok"


@dataclass(frozen=True)
class BenchReport:
    config: BenchConfig
    cases: tuple[CaseResult, ...]

    @property
    def fail_count(self) -> int:
        return sum(c.failed for c in self.cases)

    def _mean(self, attr: str) -> float:
        ok = [getattr(c, attr) for c in self.cases if not c.failed]
        return math.fsum(ok) / len(ok) if ok else math.nan

    @property
    def mean_perturbation(self) -> float:
        return self._mean("perturbation")

    @property
    def mean_iterations(self) -> float:
        return self._mean("iterations")

    @property
    def mean_time(self) -> float:
        return self._mean("seconds")


def run_case(config: BenchConfig, case_index: int,
             clock: Callable[[], float] = time.perf_counter) -> CaseResult:
    problem = generate_test_case(config, case_index)
    start = clock()
    iterations, perturbation = config.max_iterations, math.nan
    try:
        outcome = solve(problem, config.options)
        iterations = outcome.iterations
        if outcome.converged:
            perturbation = select_and_correct(problem, outcome.final_x, outcome).perturbation
            status = "ok"
        else:
            status = "not_converged"
    except SingularSystemError:
        status = "singular"
    except DegenerateCofactorError:
        status = "degenerate"
    return CaseResult(case_index, status, iterations, perturbation, clock() - start)


def run_benchmark(config: BenchConfig,
                  clock: Callable[[], float] = time.perf_counter) -> BenchReport:
    """Solve every case and aggregate; means cover the cases that did not fail."""
    return BenchReport(config, tuple(run_case(config, i, clock) for i in range(config.cases)))


def format_report(reports: Sequence[BenchReport], include_timing: bool = True,
                  delimiter: str = "\t") -> str:
    """Render reports as a delimited table, one line per instance class.

    With ``include_timing=False`` the output depends only on the configs, so
    equal seeds give byte-identical text.
    """
    header = ["(m,d,n)", "#Fail", "Error", "#Iterations"]
    if include_timing:
        header.append("Time")
    lines = [delimiter.join(header)]
    for r in reports:
        row = [r.config.label, str(r.fail_count), f"{r.mean_perturbation:.3e}",
               f"{r.mean_iterations:.2f}"]
        if include_timing:
            row.append(f"{r.mean_time:.3f}")
        lines.append(delimiter.join(row))
    return "\n".join(lines) + "\n"


def report_to_dict(report: BenchReport, include_timing: bool = True) -> dict:
    cfg = report.config
    out = {
        "class": [cfg.m, cfg.d, cfg.n],
        "cases": cfg.cases,
        "noise": cfg.noise,
        "seed": cfg.seed,
        "fail_count": report.fail_count,
        "mean_perturbation": _finite_or_none(report.mean_perturbation),
        "mean_iterations": _finite_or_none(report.mean_iterations),
        "results": [],
    }
    if include_timing:
        out["mean_time"] = _finite_or_none(report.mean_time)
    for c in report.cases:
        item = {"index": c.index, "status": c.status, "iterations": c.iterations,
                "perturbation": _finite_or_none(c.perturbation)}
        if include_timing:
            item["seconds"] = c.seconds
        out["results"].append(item)
    return out


def _finite_or_none(x: float):
    return x if math.isfinite(x) else None
