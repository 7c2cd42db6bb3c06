import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gpgcd.poly import Polynomial, coeffvec, conv_matrix, mul, norm2_sq, sub
from oracles import convolve_naive

coeff = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False)


def poly_of_degree(deg):
    return st.lists(coeff, min_size=deg + 1, max_size=deg + 1).filter(lambda c: c[0] != 0)


def test_conv_matrix_shift_layout():
    np.testing.assert_array_equal(conv_matrix([1, 1], 1), [[1, 0], [1, 1], [0, 1]])


def test_conv_matrix_single_column_is_coefficients():
    np.testing.assert_array_equal(conv_matrix([2, 1], 0), [[2], [1]])


def test_conv_matrix_times_vector_is_product(rng):
    p = rng.uniform(-10, 10, 4)
    q = rng.uniform(-10, 10, 3)
    np.testing.assert_allclose(conv_matrix(p, 2) @ q, convolve_naive(list(p), list(q)),
                               rtol=1e-13, atol=1e-12)


def test_conv_matrix_rejects_negative_shift():
    with pytest.raises(ValueError):
        conv_matrix([1, 2], -1)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 6).flatmap(poly_of_degree), st.integers(0, 6).flatmap(poly_of_degree))
def test_conv_matrix_product_property(p, q):
    k = len(q) - 1
    got = conv_matrix(p, k) @ np.array(q)
    want = np.array(convolve_naive(p, q))
    scale = max(1.0, np.max(np.abs(want)))
    assert np.max(np.abs(got - want)) <= 1e-12 * scale * (len(p) + len(q))


@given(st.integers(0, 6).flatmap(poly_of_degree), st.integers(0, 5))
def test_conv_matrix_entry_count(p, k):
    c = conv_matrix(p, k)
    m = len(p) - 1
    assert c.shape == (m + k + 1, k + 1)
    mask = np.zeros_like(c, dtype=bool)
    for j in range(k + 1):
        mask[j:j + m + 1, j] = True
    assert mask.sum() == (m + 1) * (k + 1)
    assert np.all(c[~mask] == 0)


def test_mul_examples():
    assert mul([1, 1], [1, 2]).tolist() == [1, 3, 2]
    assert mul([3, -1, 4], [1]).tolist() == [3, -1, 4]
    assert mul([1, -1], [1, 1]).tolist() == [1, 0, -1]


def test_sub_examples():
    d = sub([1, 3, 2], [1, 3, 2])
    assert norm2_sq(d) == 0
    assert sub([1, 0, 0], [1, 0]).tolist() == [1, -1, 0]


@given(st.integers(0, 6).flatmap(poly_of_degree), st.integers(0, 6).flatmap(poly_of_degree))
def test_sub_round_trip(p, q):
    back = sub(p, q) + Polynomial(q)
    n = len(back)
    want = np.zeros(n)
    want[n - len(p):] = p
    np.testing.assert_allclose(back.coeffs, want, rtol=0, atol=1e-12)


def test_norm2_sq_examples():
    assert norm2_sq([1, 1]) == 2
    assert norm2_sq([0]) == 0
    assert norm2_sq([3, 0, -4]) == 25


def test_norm2_sq_is_dot(rng):
    p = rng.normal(size=7)
    assert norm2_sq(p) == pytest.approx(coeffvec(p) @ coeffvec(p))


def test_polynomial_is_immutable():
    p = Polynomial([1.0, 2.0])
    with pytest.raises(ValueError):
        p.coeffs[0] = 5.0
    src = np.array([1.0, 2.0])
    q = Polynomial(src)
    src[0] = 9.0
    assert q.tolist() == [1.0, 2.0]


def test_zero_polynomial_storage():
    z = Polynomial([])
    assert z.tolist() == [0.0]
    assert z.degree == 0


def test_arithmetic_operators():
    p = Polynomial([1, 1])
    assert (p * [1, 2]).tolist() == [1, 3, 2]
    assert (2 * p).tolist() == [2, 2]
    assert (-p).tolist() == [-1, -1]
    assert Polynomial([2, 4]).monic().tolist() == [1, 2]
    assert p == Polynomial([1.0, 1.0])
