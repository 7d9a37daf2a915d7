import numpy as np
import pytest

from xxdefects.exact import DegenerateGroundStateError, many_body_ground_state, rdm_exact
from xxdefects.model import ChainSpec, single_particle_matrix
from xxdefects.spectrum import ZeroModeError, ground_state_correlations


@pytest.mark.parametrize("spec", [ChainSpec(8, 1.3, 0.5, 1), ChainSpec(10, 0.3, 2.0, 2, boundary="periodic")])
def test_ground_energy_is_sum_of_negative_levels(spec):
    energy, states, psi = many_body_ground_state(spec)
    w = np.linalg.eigvalsh(single_particle_matrix(spec))
    assert energy == pytest.approx(w[w < 0].sum(), abs=1e-12)
    assert np.linalg.norm(psi) == pytest.approx(1.0)
    assert len({bin(s).count("1") for s in states}) == 1


def test_degenerate_ground_state_policy():
    spec = ChainSpec(10, 2.0, 0.5, 2)
    with pytest.raises(ZeroModeError):
        ground_state_correlations(spec)
    with pytest.raises(DegenerateGroundStateError):
        rdm_exact(spec)
    r = rdm_exact(spec, degenerate="fewest_particles")
    assert np.trace(r.raw) == pytest.approx(1.0)


def test_size_limit():
    with pytest.raises(ValueError, match="N <= 14"):
        rdm_exact(ChainSpec(16, 1.0, 0.5, 1))
    with pytest.raises(ValueError, match="degenerate"):
        rdm_exact(ChainSpec(8, 1.0, 0.5, 1), degenerate="random")


def test_empty_sea_state():
    r = rdm_exact(ChainSpec(8, 3.0, 0.4, 1))
    assert r.rho00 == pytest.approx(1.0)
