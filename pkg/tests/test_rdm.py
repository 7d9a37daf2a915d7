import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from xxdefects.exact import DegenerateGroundStateError, rdm_exact
from xxdefects.model import ChainSpec
from xxdefects.rdm import (
    RDM_FIELDS,
    DefectRDM,
    defect_rdm,
    pattern_mask,
    pauli_expectation,
    w_decompose,
)
from xxdefects.spectrum import ZeroModeError, ground_state_correlations


def test_pattern_mask_counts():
    mask = pattern_mask()
    assert mask.sum() == 1 + 9 + 9 + 1
    assert mask[0, 0] and mask[7, 7] and mask[1, 4] and not mask[0, 7] and not mask[2, 3]


def test_matrix_round_trip():
    r = DefectRDM(0.4, 0.1, 0.05, 0.02, 0.03, 0.01, 0.02, 0.01, 0.004, 0.002)
    assert DefectRDM.from_matrix(r.matrix) == r
    assert list(r.as_dict()) == list(RDM_FIELDS)
    assert np.isclose(np.trace(r.matrix), 0.4 + 2 * 0.1 + 0.05 + 2 * 0.02 + 0.03 + 0.01)


def test_product_state():
    r = DefectRDM.product_000()
    assert r.matrix[0, 0] == 1.0 and np.trace(r.matrix) == 1.0


def test_strong_field_gives_all_up():
    r = defect_rdm(ChainSpec(128, 5.0, 0.5, 2))
    assert r.rho00 == pytest.approx(1.0, abs=1e-14)
    assert np.abs(r.raw - DefectRDM.product_000().matrix).max() < 1e-14


def test_z_expectation_is_density():
    spec = ChainSpec(200, 1.0, 1.3, 3)
    corr = ground_state_correlations(spec)
    for t, site in enumerate(corr.window):
        z = pauli_expectation("Z", (t,), corr.majorana_window)
        assert z.real == pytest.approx(1 - 2 * corr.c[site, site], abs=1e-13)
        assert abs(z.imag) < 1e-15


def test_adjacent_hopping_expectation():
    # <X_0 X_1 + Y_0 Y_1> = 2 (c0^dag c1 + h.c.) for neighbouring sites
    spec = ChainSpec(100, 1.0, 0.7, 1)
    corr = ground_state_correlations(spec)
    g = corr.majorana_window
    i, j = corr.window[0], corr.window[1]
    xx = pauli_expectation("XX", (0, 1), g) + pauli_expectation("YY", (0, 1), g)
    assert xx.real == pytest.approx(4 * corr.c[i, j], abs=1e-13)


@pytest.mark.parametrize("h", [1.0, 2.0])
@pytest.mark.parametrize("d", [1, 4, 9])
@pytest.mark.parametrize("eps_d", [0.35, 2.05, 5.5])
def test_rdm_is_a_state(h, d, eps_d):
    r = defect_rdm(ChainSpec(1024, h, eps_d / d, d))
    raw = r.raw
    assert np.abs(raw - raw.conj().T).max() < 1e-14
    assert np.abs(raw.imag).max() < 1e-14
    assert np.trace(raw).real == pytest.approx(1.0, abs=1e-13)
    assert np.linalg.eigvalsh(raw).min() > -1e-13
    assert np.abs(raw[~pattern_mask()]).max() < 1e-14
    np.testing.assert_allclose(raw.real, r.matrix, atol=1e-13)


def test_w_decomposition_reconstructs():
    r = defect_rdm(ChainSpec(1024, 1.0, 0.8, 2))
    dec = w_decompose(r)
    np.testing.assert_allclose(dec.reconstruct(), r.matrix, atol=1e-14)
    assert np.all(np.diff(dec.p) <= 0) and np.all(np.diff(dec.pbar) <= 0)
    np.testing.assert_allclose(dec.a @ dec.a.T, np.eye(3), atol=1e-13)
    total = sum(w * np.outer(v, v) for w, v in dec.components())
    np.testing.assert_allclose(total, r.matrix, atol=1e-14)


@pytest.mark.parametrize("n", [10, 12])
@pytest.mark.parametrize("d", [1, 2])
@pytest.mark.parametrize("h", [1.0, 2.0])
@pytest.mark.parametrize("eps", [0.5, 2.0, 5.0])
def test_pfaffian_route_matches_exact(n, d, h, eps):
    spec = ChainSpec(n, h, eps, d)
    try:
        a, b = defect_rdm(spec), rdm_exact(spec)
    except (ZeroModeError, DegenerateGroundStateError):
        a = defect_rdm(spec, zero_modes="empty")
        b = rdm_exact(spec, degenerate="fewest_particles")
    np.testing.assert_allclose(a.raw, b.raw, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(
    n=st.sampled_from([6, 8, 10]),
    h=st.floats(-2.5, 2.5),
    eps=st.floats(0.0, 4.0),
    d=st.integers(1, 2),
    shift=st.integers(-1, 1),
    periodic=st.booleans(),
)
def test_pfaffian_route_matches_exact_random(n, h, eps, d, shift, periodic):
    center = n // 2 + shift
    assume(center - d >= 1 and center + d <= n)
    spec = ChainSpec(n, h, eps, d, center=center, boundary="periodic" if periodic else "antiperiodic")
    try:
        b = rdm_exact(spec)
        a = defect_rdm(spec)
    except (ZeroModeError, DegenerateGroundStateError):
        assume(False)
    np.testing.assert_allclose(a.raw, b.raw, atol=1e-11)
