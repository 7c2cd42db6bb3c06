import json

import numpy as np
import pytest

from gpgcd.bench import BenchConfig, generate_test_case
from gpgcd.cli import (
    EXIT_DEGENERATE,
    EXIT_INPUT,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_SINGULAR,
    main,
)
from gpgcd.errors import DegenerateCofactorError, SingularSystemError
from gpgcd.io import read_output, write_problem


@pytest.fixture
def case_file(tmp_path):
    path = tmp_path / "case.json"
    write_problem(generate_test_case(BenchConfig(10, 5, 3), 0), path)
    return path


def test_solve_writes_result(case_file, tmp_path, capsys):
    out = tmp_path / "out.json"
    assert main(["solve", str(case_file), "-o", str(out)]) == EXIT_OK
    doc = read_output(out)
    assert doc["converged"] and doc["gcd"].degree == 5
    assert "converged after" in capsys.readouterr().err


def test_solve_to_stdout(case_file, capsys):
    assert main(["solve", str(case_file), "--epsilon", "1e-9"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert len(doc["corrected"]) == 3


def test_solve_monic(case_file, capsys):
    assert main(["solve", str(case_file), "--monic-gcd"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["gcd"][0] == 1.0
    np.testing.assert_allclose(np.convolve(doc["gcd"], doc["cofactors"][1]), doc["corrected"][1])


def test_solve_not_converged(case_file, tmp_path):
    out = tmp_path / "out.json"
    assert main(["solve", str(case_file), "--max-iter", "1", "-o", str(out)]) == EXIT_NOT_CONVERGED
    doc = read_output(out)
    assert doc["converged"] is False and "diagnostics" in doc


@pytest.mark.parametrize("text", ['{"polynomials": [[1, 2, 3], [1, 2, 1]], "gcd_degree": 2}',
                                  "not json"])
def test_solve_bad_input(tmp_path, capsys, text):
    path = tmp_path / "bad.json"
    path.write_text(text)
    assert main(["solve", str(path)]) == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error:")


def test_solve_missing_file(tmp_path):
    assert main(["solve", str(tmp_path / "nope.json")]) == EXIT_INPUT


def test_solve_singular_exit(case_file, monkeypatch, capsys):
    import gpgcd.cli as cli

    def boom(*a, **k):
        raise SingularSystemError("forced")

    monkeypatch.setattr(cli, "solve", boom)
    assert main(["solve", str(case_file)]) == EXIT_SINGULAR
    doc = json.loads(capsys.readouterr().out)
    assert doc["diagnostics"]["category"] == "singular"


def test_solve_degenerate_exit(case_file, monkeypatch, capsys):
    import gpgcd.cli as cli

    def boom(*a, **k):
        raise DegenerateCofactorError("forced")

    monkeypatch.setattr(cli, "select_and_correct", boom)
    assert main(["solve", str(case_file)]) == EXIT_DEGENERATE


def test_estimate_degree(tmp_path, capsys):
    path = tmp_path / "exact.json"
    path.write_text(json.dumps({"polynomials": [[1, -3, 2], [1, -4, 3], [1, -5, 4]]}))
    assert main(["estimate-degree", str(path)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1"


def test_generate_directory(tmp_path):
    out = tmp_path / "cases"
    assert main(["generate", "--m", "8", "--d", "3", "--n", "2", "--cases", "4",
                 "-o", str(out)]) == EXIT_OK
    files = sorted(p.name for p in out.iterdir())
    assert files == [f"case_{i:03d}.json" for i in range(4)]
    doc = json.loads((out / "case_002.json").read_text())
    ref = generate_test_case(BenchConfig(8, 3, 2), 2)
    assert doc["polynomials"] == [p.tolist() for p in ref.polys]
    assert main(["solve", str(out / "case_002.json"), "-o", str(tmp_path / "r.json")]) == EXIT_OK


def test_generate_stdout_and_invalid(capsys):
    assert main(["generate", "--m", "6", "--d", "2", "--n", "3", "--cases", "2"]) == EXIT_OK
    assert len(json.loads(capsys.readouterr().out)) == 2
    assert main(["generate", "--m", "4", "--d", "4", "--n", "3"]) == EXIT_INPUT


def test_bench_is_reproducible(tmp_path):
    a, b = tmp_path / "a.tsv", tmp_path / "b.tsv"
    argv = ["bench", "--class", "8,3,3", "--class", "6,2,2", "--cases", "4", "--seed", "9",
            "--no-timing"]
    assert main(argv + ["-o", str(a)]) == EXIT_OK
    assert main(argv + ["-o", str(b)]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    lines = a.read_text().splitlines()
    assert lines[0] == "(m,d,n)\t#Fail\tError\t#Iterations"
    assert [ln.split("\t")[0] for ln in lines[1:]] == ["(8,3,3)", "(6,2,2)"]


def test_bench_timing_and_json(tmp_path, capsys):
    js = tmp_path / "r.json"
    assert main(["bench", "--class", "6,2,2", "--cases", "2", "--json", str(js)]) == EXIT_OK
    header = capsys.readouterr().out.splitlines()[0]
    assert header.endswith("\tTime")
    doc = json.loads(js.read_text())
    assert doc[0]["class"] == [6, 2, 2] and len(doc[0]["results"]) == 2


def test_bench_bad_class():
    with pytest.raises(SystemExit):
        main(["bench", "--class", "10,5"])
    assert main(["bench", "--class", "5,5,3"]) == EXIT_INPUT
