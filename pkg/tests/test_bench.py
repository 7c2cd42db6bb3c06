import math

import numpy as np
import pytest

from gpgcd.bench import (
    BenchConfig,
    BenchReport,
    CaseResult,
    format_report,
    generate_case,
    generate_test_case,
    report_to_dict,
    run_benchmark,
    run_case,
)
from gpgcd.errors import SingularSystemError
from gpgcd.sylvester import gcd_degree_estimate


def fake_clock():
    t = iter(range(10**6))
    return lambda: float(next(t))


@pytest.mark.parametrize("kw", [dict(m=5, d=5, n=3), dict(m=5, d=0, n=3), dict(m=5, d=2, n=1),
                                dict(m=5, d=2, n=3, cases=0), dict(m=5, d=2, n=3, noise=-1.0),
                                dict(m=5, d=2, n=3, noise=math.nan),
                                dict(m=5, d=2, n=3, seed=-1)])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        BenchConfig(**kw)


@pytest.mark.parametrize("m,d,n", [(10, 5, 3), (8, 3, 4), (20, 10, 3)])
def test_noise_free_case_has_exact_gcd(m, d, n):
    for i in range(3):
        p = generate_test_case(BenchConfig(m, d, n, noise=0.0), i)
        assert gcd_degree_estimate(p.polys) == d


def test_case_structure():
    case = generate_case(BenchConfig(10, 4, 3), 5)
    assert case.gcd.degree == 4 and case.gcd.leading == 1.0
    assert np.all(np.abs(case.gcd.coeffs[1:]) <= 10)
    for p0, pn, p in zip(case.exact, case.noise, case.instance.polys):
        assert p0.leading == 1.0 and p0.degree == 10
        assert pn.coeffs[0] == 0.0
        np.testing.assert_array_equal(p.coeffs, p0.coeffs + pn.coeffs)
        # exact part is the planted gcd times a degree 6 prime part
        q, r = np.polydiv(p0.coeffs, case.gcd.coeffs)
        assert len(q) == 7
        assert np.max(np.abs(r)) <= 1e-8 * np.max(np.abs(p0.coeffs))


@pytest.mark.parametrize("noise", [0.1, 1e-3, 2.5])
def test_noise_norm_is_exact(noise):
    case = generate_case(BenchConfig(10, 5, 3, noise=noise), 0)
    for p0, p in zip(case.exact, case.instance.polys):
        assert abs(np.linalg.norm(p.coeffs - p0.coeffs) - noise) <= 1e-12
    # independent noise per polynomial
    assert not np.allclose(case.noise[0].coeffs, case.noise[1].coeffs)


def test_generator_determinism():
    cfg = BenchConfig(10, 5, 3, seed=12345)
    a, b = generate_test_case(cfg, 7), generate_test_case(cfg, 7)
    for p, q in zip(a.polys, b.polys):
        assert p.coeffs.tobytes() == q.coeffs.tobytes()
    c = generate_test_case(cfg, 8)
    assert not np.array_equal(a.polys[0].coeffs, c.polys[0].coeffs)
    d = generate_test_case(BenchConfig(10, 5, 3, seed=12346), 7)
    assert not np.array_equal(a.polys[0].coeffs, d.polys[0].coeffs)


def test_case_independent_of_case_count():
    p = generate_test_case(BenchConfig(10, 5, 3, cases=1), 3)
    q = generate_test_case(BenchConfig(10, 5, 3, cases=50), 3)
    np.testing.assert_array_equal(p.polys[2].coeffs, q.polys[2].coeffs)


def test_large_seed_accepted():
    generate_test_case(BenchConfig(6, 2, 2, seed=2**64 - 1), 0)


def test_benchmark_first_class():
    report = run_benchmark(BenchConfig(10, 5, 3))
    assert report.fail_count <= 1
    assert 5e-4 <= report.mean_perturbation <= 1.2e-2


def test_benchmark_noise_free():
    report = run_benchmark(BenchConfig(10, 5, 3, noise=0.0))
    assert report.fail_count == 0
    assert report.mean_perturbation <= 1e-10
    assert report.mean_iterations <= 2


def test_benchmark_largest_class_completes():
    report = run_benchmark(BenchConfig(20, 10, 5, cases=3))
    assert len(report.cases) == 3
    assert report.fail_count <= 1


def test_not_converged_is_failure():
    cfg = BenchConfig(10, 5, 3, cases=2, max_iterations=1)
    report = run_benchmark(cfg)
    assert all(c.status == "not_converged" for c in report.cases)
    assert report.fail_count == 2
    assert math.isnan(report.mean_perturbation)


def test_singular_is_failure(monkeypatch):
    import gpgcd.bench as bench

    def boom(*a, **k):
        raise SingularSystemError("forced")

    monkeypatch.setattr(bench, "solve", boom)
    res = run_case(BenchConfig(6, 2, 2), 0)
    assert res.status == "singular" and res.failed


def test_means_skip_failed_cases():
    cfg = BenchConfig(6, 2, 2, cases=3)
    cases = (CaseResult(0, "ok", 4, 1e-3, 0.5), CaseResult(1, "not_converged", 100, math.nan, 9.0),
             CaseResult(2, "ok", 6, 3e-3, 1.5))
    r = BenchReport(cfg, cases)
    assert r.fail_count == 1
    assert r.mean_perturbation == pytest.approx(2e-3)
    assert r.mean_iterations == 5.0
    assert r.mean_time == 1.0


def test_format_report_layout():
    cfg = BenchConfig(6, 2, 2, cases=1)
    r = BenchReport(cfg, (CaseResult(0, "ok", 3, 1.234567e-3, 0.25),))
    assert format_report([r]) == "(m,d,n)\t#Fail\tError\t#Iterations\tTime\n" \
                                 "(6,2,2)\t0\t1.235e-03\t3.00\t0.250\n"
    assert format_report([r], include_timing=False, delimiter=",") == \
        "(m,d,n),#Fail,Error,#Iterations\n(6,2,2),0,1.235e-03,3.00\n"


def test_injected_clock():
    r = run_benchmark(BenchConfig(6, 2, 2, cases=2), clock=fake_clock())
    assert [c.seconds for c in r.cases] == [1.0, 1.0]


def test_report_dict():
    r = run_benchmark(BenchConfig(6, 2, 2, cases=2, max_iterations=1))
    doc = report_to_dict(r, include_timing=False)
    assert doc["class"] == [6, 2, 2]
    assert doc["mean_perturbation"] is None
    assert "mean_time" not in doc and "seconds" not in doc["results"][0]
