import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xxdefects.pfaffian import pfaffian, pfaffian_expansion


def _antisym(rng, n):
    a = rng.normal(size=(n, n))
    return a - a.T


def test_two_by_two():
    assert pfaffian(np.array([[0.0, 3.0], [-3.0, 0.0]])) == 3.0


def test_four_by_four_closed_form():
    a = np.zeros((4, 4))
    a[0, 1], a[0, 2], a[0, 3], a[1, 2], a[1, 3], a[2, 3] = 1.0, 2.0, 3.0, 4.0, 5.0, 6.0
    a = a - a.T
    assert pfaffian(a) == pytest.approx(1 * 6 - 2 * 5 + 3 * 4, abs=1e-14)


def test_odd_dimension_is_zero():
    assert pfaffian(_antisym(np.random.default_rng(1), 5)) == 0.0


def test_block_diagonal_is_product():
    blocks = [2.0, -0.5, 7.0]
    a = np.zeros((6, 6))
    for i, b in enumerate(blocks):
        a[2 * i, 2 * i + 1], a[2 * i + 1, 2 * i] = b, -b
    assert pfaffian(a) == pytest.approx(np.prod(blocks), rel=1e-15)


def test_needs_pivoting():
    a = np.zeros((4, 4))
    a[0, 2], a[1, 3] = 1.0, 1.0
    a = a - a.T
    assert pfaffian(a) == pytest.approx(-1.0)


def test_square_equals_determinant(rng):
    for n in (2, 4, 6, 10, 20):
        for _ in range(20):
            a = _antisym(rng, n)
            pf = pfaffian(a)
            assert pf**2 == pytest.approx(np.linalg.det(a), rel=1e-10)


@settings(max_examples=50, deadline=None)
@given(half=st.integers(1, 4), seed=st.integers(0, 2**31))
def test_matches_expansion(half, seed):
    a = _antisym(np.random.default_rng(seed), 2 * half)
    assert pfaffian(a) == pytest.approx(pfaffian_expansion(a), rel=1e-10, abs=1e-12)


def test_congruence_rule(rng):
    a, b = _antisym(rng, 6), rng.normal(size=(6, 6))
    assert pfaffian(b @ a @ b.T) == pytest.approx(np.linalg.det(b) * pfaffian(a), rel=1e-10)


def test_rejects_non_antisymmetric():
    with pytest.raises(ValueError, match="antisymmetric"):
        pfaffian(np.eye(2))
    with pytest.raises(ValueError, match="square"):
        pfaffian(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="exceeds"):
        pfaffian(np.zeros((66, 66)))
