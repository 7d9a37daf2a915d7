import warnings

import numpy as np
import pytest

from xxdefects.bounds import (
    gme_lower_bound_hong,
    gme_lower_bound_ma,
    hong_certificate,
    local_unitary,
    ma_certificate,
)
from xxdefects.entanglement import gme_pure, gme_rank2_analytic
from xxdefects.model import ChainSpec
from xxdefects.rdm import DefectRDM, defect_rdm

GHZ = np.array([1, 0, 0, 0, 0, 0, 0, 1]) / np.sqrt(2)
W = np.array([0, 1, 1, 0, 1, 0, 0, 0]) / np.sqrt(3)


@pytest.fixture(autouse=True)
def _quiet():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        yield


def _haar(rng):
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    return v / np.linalg.norm(v)


def test_local_unitary_is_unitary_product(rng):
    u = local_unitary(rng.uniform(0, 6, size=9))
    np.testing.assert_allclose(u @ u.conj().T, np.eye(8), atol=1e-14)
    np.testing.assert_allclose(local_unitary(np.zeros(9)), np.eye(8), atol=1e-15)


def test_certificates_on_anchor_states():
    assert ma_certificate(np.outer(GHZ, GHZ)) == pytest.approx(1.0)
    assert ma_certificate(np.outer(W, W)) == pytest.approx(np.sqrt(2) / 2)
    assert hong_certificate(np.outer(W, W)) == pytest.approx(0.5)
    assert ma_certificate(DefectRDM.product_000()) == pytest.approx(0.0)


def test_bounds_vanish_on_product_state():
    rho = DefectRDM.product_000()
    assert gme_lower_bound_ma(rho, runs=3) == 0.0
    assert gme_lower_bound_hong(rho, runs=3) == 0.0


def test_bounds_sound_on_biseparable_state():
    bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
    psi = np.kron([0.6, 0.8], bell)
    rho = np.outer(psi, psi)
    assert gme_lower_bound_ma(rho, runs=5) <= 1e-8
    assert gme_lower_bound_hong(rho, runs=5) <= 1e-8


def test_bounds_sound_on_random_pure_states(rng):
    for _ in range(10):
        psi = _haar(rng)
        rho = np.outer(psi, psi.conj())
        exact = gme_pure(psi)
        assert gme_lower_bound_ma(rho, runs=3, seed=1) <= exact + 1e-8
        assert gme_lower_bound_hong(rho, runs=3, seed=1) <= exact + 1e-8


def test_optimization_recovers_rotated_ghz(rng):
    u = local_unitary(rng.uniform(0, 6, size=9))
    rho = u @ np.outer(GHZ, GHZ) @ u.conj().T
    assert ma_certificate(rho) < 0.9
    assert gme_lower_bound_ma(rho, runs=10, seed=2) == pytest.approx(1.0, abs=1e-6)


def test_bound_below_analytic_on_rank2_point():
    r = defect_rdm(ChainSpec(1024, 2.0, 0.35, 2))
    exact = gme_rank2_analytic(r)
    ma = gme_lower_bound_ma(r, runs=5, seed=0)
    hong = gme_lower_bound_hong(r, runs=5, seed=0)
    assert 0 < ma <= exact + 1e-6
    assert 0 < hong <= exact + 1e-6
    assert ma.runs == 5 and ma.params.shape == (9,)


def test_bounds_deterministic():
    r = defect_rdm(ChainSpec(1024, 1.0, 0.4, 1))
    assert gme_lower_bound_hong(r, runs=4, seed=9) == gme_lower_bound_hong(r, runs=4, seed=9)
