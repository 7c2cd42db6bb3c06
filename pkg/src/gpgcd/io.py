"""JSON problem and result files.

A problem file looks like::

    {
      "polynomials": [[1.0, -3.0, 2.0], [1.0, -4.0, 3.0]],
      "gcd_degree": 1,
      "options": {"epsilon": 1e-8, "max_iterations": 100}
    }

Coefficients are listed from the leading coefficient down to the constant
term. ``options`` and each of its keys are optional.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any

from .errors import InvalidProblemError
from .extract import ApproxGcdResult
from .poly import Polynomial
from .solver import ProblemInstance, SolverOptions

RESULT_FORMAT = "gpgcd-result"
RESULT_VERSION = 1


class ProblemFileError(InvalidProblemError):
    """Malformed problem or result document; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


def _reject_constant(name: str):
    raise ValueError(f"non-finite number {name} is not allowed")


def _load_json(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ProblemFileError(str(path), f"cannot read file ({exc.strerror})") from exc
    try:
        return json.loads(text, parse_constant=_reject_constant)
    except ValueError as exc:
        raise ProblemFileError(str(path), f"invalid JSON ({exc})") from exc


def _number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ProblemFileError(field, f"expected a number, got {type(value).__name__}")
    x = float(value)
    if not math.isfinite(x):
        raise ProblemFileError(field, "number is not finite")
    return x


def _integer(value, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ProblemFileError(field, f"expected an integer, got {value!r}")
    return value


def _polynomials(value, field: str) -> list[Polynomial]:
    if not isinstance(value, list) or not value:
        raise ProblemFileError(field, "expected a non-empty list of coefficient arrays")
    out = []
    for i, arr in enumerate(value):
        f = f"{field}[{i}]"
        if not isinstance(arr, list) or not arr:
            raise ProblemFileError(f, "expected a non-empty coefficient array")
        out.append(Polynomial([_number(c, f"{f}[{j}]") for j, c in enumerate(arr)]))
    return out


def parse_options(data: dict | None, field: str = "options") -> SolverOptions:
    if data is None:
        return SolverOptions()
    if not isinstance(data, dict):
        raise ProblemFileError(field, "expected an object")
    unknown = set(data) - {"epsilon", "max_iterations"}
    if unknown:
        raise ProblemFileError(field, f"unknown keys {sorted(unknown)}")
    kwargs = {}
    if "epsilon" in data:
        kwargs["epsilon"] = _number(data["epsilon"], f"{field}.epsilon")
    if "max_iterations" in data:
        kwargs["max_iterations"] = _integer(data["max_iterations"], f"{field}.max_iterations")
    try:
        return SolverOptions(**kwargs)
    except ValueError as exc:
        raise ProblemFileError(field, str(exc)) from exc


def parse_problem(data: Any) -> tuple[ProblemInstance, SolverOptions]:
    if not isinstance(data, dict):
        raise ProblemFileError("<root>", "expected a JSON object")
    for key in ("polynomials", "gcd_degree"):
        if key not in data:
            raise ProblemFileError(key, "missing required field")
    polys = _polynomials(data["polynomials"], "polynomials")
    degree = _integer(data["gcd_degree"], "gcd_degree")
    for i, p in enumerate(polys):
        if p.leading == 0.0:
            raise ProblemFileError(f"polynomials[{i}][0]", "leading coefficient must be nonzero")
    if len(polys) < 2:
        raise ProblemFileError("polynomials", "need at least 2 polynomials")
    dmin = min(p.degree for p in polys)
    if not 0 < degree < dmin:
        raise ProblemFileError(
            "gcd_degree",
            f"must satisfy 0 < gcd_degree < min input degree ({dmin}), got {degree}",
        )
    options = parse_options(data.get("options"))
    return ProblemInstance(polys, degree), options


def parse_input(path) -> tuple[ProblemInstance, SolverOptions]:
    """Read and validate a problem file."""
    return parse_problem(_load_json(path))


def read_polynomials(path) -> list[Polynomial]:
    """Read only the ``polynomials`` field; ``gcd_degree`` may be absent."""
    data = _load_json(path)
    if not isinstance(data, dict) or "polynomials" not in data:
        raise ProblemFileError("polynomials", "missing required field")
    polys = _polynomials(data["polynomials"], "polynomials")
    for i, p in enumerate(polys):
        if p.leading == 0.0:
            raise ProblemFileError(f"polynomials[{i}][0]", "leading coefficient must be nonzero")
    if len(polys) < 2:
        raise ProblemFileError("polynomials", "need at least 2 polynomials")
    return polys


def problem_to_dict(problem: ProblemInstance, options: SolverOptions | None = None) -> dict:
    out = {
        "polynomials": [p.tolist() for p in problem.polys],
        "gcd_degree": problem.target_degree,
    }
    if options is not None:
        out["options"] = {"epsilon": options.epsilon, "max_iterations": options.max_iterations}
    return out


def write_problem(problem: ProblemInstance, path, options: SolverOptions | None = None) -> None:
    Path(path).write_text(json.dumps(problem_to_dict(problem, options), indent=2) + "\n")


def result_to_dict(result: ApproxGcdResult) -> dict:
    out = {
        "format": RESULT_FORMAT,
        "version": RESULT_VERSION,
        "input": {
            "polynomials": [p.tolist() for p in result.inputs],
            "gcd_degree": result.gcd.degree,
        },
        "gcd": result.gcd.tolist(),
        "cofactors": [v.tolist() for v in result.cofactors],
        "corrected": [p.tolist() for p in result.corrected],
        "perturbation": result.perturbation,
        "residual_per_candidate": list(result.residual_per_candidate),
        "chosen_candidate": result.chosen_index,
    }
    oc = result.outcome
    if oc is not None:
        out.update(
            iterations=oc.iterations,
            converged=oc.converged,
            constraint_residual=oc.constraint_residual,
        )
        if not oc.converged:
            last = oc.trace[-1] if oc.trace else None
            out["diagnostics"] = {
                "message": f"no convergence within {oc.iterations} iterations",
                "last_step_norm": last.step_norm if last else None,
                "last_constraint_norm": last.constraint_norm if last else None,
                "step_norms": [r.step_norm for r in oc.trace],
            }
    return out


def _dump(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2, allow_nan=False) + "\n")


def write_output(result: ApproxGcdResult, path) -> None:
    _dump(result_to_dict(result), path)


def failure_to_dict(problem: ProblemInstance, category: str, message: str) -> dict:
    return {
        "format": RESULT_FORMAT,
        "version": RESULT_VERSION,
        "input": problem_to_dict(problem),
        "converged": False,
        "diagnostics": {"category": category, "message": message},
    }


def write_failure(problem: ProblemInstance, category: str, message: str, path) -> None:
    _dump(failure_to_dict(problem, category, message), path)


def read_output(path) -> dict:
    """Load a result file, turning every polynomial array into a :class:`Polynomial`."""
    data = _load_json(path)
    if not isinstance(data, dict) or data.get("format") != RESULT_FORMAT:
        raise ProblemFileError("format", f"not a {RESULT_FORMAT} document")
    data["input"]["polynomials"] = _polynomials(data["input"]["polynomials"],
                                                "input.polynomials")
    if "gcd" in data:
        data["gcd"] = Polynomial([_number(c, "gcd") for c in data["gcd"]])
        data["cofactors"] = _polynomials(data["cofactors"], "cofactors")
        data["corrected"] = _polynomials(data["corrected"], "corrected")
    return data
