"""Magnetic defects in the transverse-field XX chain: bound states and entanglement."""

__version__ = "0.1.0"

from .model import ChainSpec, ChainSpecError, validate, single_particle_matrix  # noqa: E402
from .spectrum import (  # noqa: E402
    SpectrumResult,
    CorrelationData,
    ZeroModeError,
    diagonalize,
    count_bound_states,
    ground_state_correlations,
)
from .rdm import DefectRDM, WDecomposition, defect_rdm, rdm_from_correlations, w_decompose  # noqa: E402
from .exact import rdm_exact  # noqa: E402
from .pfaffian import pfaffian  # noqa: E402
from .measures import MeasureReport, measure  # noqa: E402

__all__ = [
    "__version__",
    "ChainSpec",
    "ChainSpecError",
    "validate",
    "single_particle_matrix",
    "SpectrumResult",
    "CorrelationData",
    "ZeroModeError",
    "diagonalize",
    "count_bound_states",
    "ground_state_correlations",
    "DefectRDM",
    "WDecomposition",
    "defect_rdm",
    "rdm_from_correlations",
    "w_decompose",
    "rdm_exact",
    "pfaffian",
    "MeasureReport",
    "measure",
]
