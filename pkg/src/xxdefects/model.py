"""Transverse-field XX ring with three equidistant magnetic defects.

The spin Hamiltonian is mapped by a Jordan-Wigner transformation onto a
quadratic form ``H = sum_ij M_ij c_i^dagger c_j``.  Everything downstream
(spectrum, correlations, reduced density matrices) is built from ``M``.

Conventions
-----------
* Sites are labelled ``1..N`` in :class:`ChainSpec`; arrays are 0-based.
* A fermion on site ``i`` is a spin flipped *against* the field
  (``sigma^z_i = 1 - 2 n_i``).
* Hopping is ``-J`` so that the clean dispersion reads
  ``omega_q = h - 2 J cos(k_q)``; defects lower the on-site energy to
  ``h - epsilon`` and bind states below the band.
"""
from __future__ import annotations

import configparser
import warnings
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

__all__ = [
    "ANTIPERIODIC",
    "PERIODIC",
    "ChainSpec",
    "ChainSpecError",
    "validate",
    "single_particle_matrix",
    "defect_sites",
    "window_sites",
    "load_chain_spec",
    "dump_chain_spec",
]

ANTIPERIODIC = "antiperiodic"
PERIODIC = "periodic"
_BOUNDARIES = (ANTIPERIODIC, PERIODIC)


class ChainSpecError(ValueError):
    """Raised for parameter sets that do not describe a valid chain."""


@dataclass(frozen=True)
class ChainSpec:
    """All Hamiltonian parameters of the defected ring.

    Parameters
    ----------
    n : int
        Number of sites (even).
    h : float
        Bulk transverse field.
    epsilon : float
        Defect strength, ``>= 0``.
    d : int
        Separation between neighbouring defects.
    j : float
        Hopping amplitude.
    center : int, optional
        1-based site of the middle defect; defaults to ``n // 2``.
    boundary : str
        Fermionic boundary sector, ``"antiperiodic"`` or ``"periodic"``.
    """

    n: int
    h: float
    epsilon: float
    d: int
    j: float = 1.0
    center: int | None = None
    boundary: str = ANTIPERIODIC

    @property
    def k(self) -> int:
        return self.n // 2 if self.center is None else self.center

    def with_(self, **changes) -> "ChainSpec":
        return replace(self, **changes)


def validate(spec: ChainSpec, production: bool = False) -> ChainSpec:
    """Check the chain invariants and return ``spec`` unchanged.

    With ``production=True`` a warning is emitted when the defect window
    is not small compared to the ring (``2d + 1 > N / 4``).
    """
    n, d, k = spec.n, spec.d, spec.k
    if int(n) != n or n <= 0:
        raise ChainSpecError(f"N must be a positive integer, got {n!r}")
    if n % 2:
        raise ChainSpecError(f"N must be even, got {n}")
    if int(d) != d or d < 1:
        raise ChainSpecError(f"defect separation d must be >= 1, got {d!r}")
    if int(k) != k:
        raise ChainSpecError(f"center must be an integer site, got {k!r}")
    if 2 * d + 1 > n or k - d < 1 or k + d > n:
        raise ChainSpecError(
            f"defect window exceeds chain: sites {k - d}..{k + d} not within 1..{n}"
        )
    if not np.isfinite(spec.epsilon) or spec.epsilon < 0:
        raise ChainSpecError(f"epsilon must be finite and >= 0, got {spec.epsilon!r}")
    if not (np.isfinite(spec.h) and np.isfinite(spec.j)):
        raise ChainSpecError("h and J must be finite")
    if spec.j <= 0:
        raise ChainSpecError(f"J must be positive, got {spec.j!r}")
    if spec.boundary not in _BOUNDARIES:
        raise ChainSpecError(f"boundary must be one of {_BOUNDARIES}, got {spec.boundary!r}")
    if production and 2 * d + 1 > n / 4:
        warnings.warn(
            f"defect window 2d+1={2 * d + 1} is not small against N={n}; "
            "finite-size effects may be visible",
            stacklevel=2,
        )
    return spec


def defect_sites(spec: ChainSpec) -> tuple[int, int, int]:
    """0-based indices of the three defects, left to right."""
    k0 = spec.k - 1
    return (k0 - spec.d, k0, k0 + spec.d)


def window_sites(spec: ChainSpec) -> np.ndarray:
    """0-based indices ``k-d .. k+d`` spanned by the defects."""
    left, _, right = defect_sites(spec)
    return np.arange(left, right + 1)


def single_particle_matrix(spec: ChainSpec) -> np.ndarray:
    """Real symmetric ``N x N`` hopping matrix of the fermionized chain."""
    validate(spec)
    n, J = spec.n, float(spec.j)
    m = np.zeros((n, n))
    m[np.diag_indices(n)] = spec.h
    i = np.arange(n - 1)
    m[i, i + 1] = -J
    m[i + 1, i] = -J
    # bond (N, 1) carries the sector sign
    corner = J if spec.boundary == ANTIPERIODIC else -J
    m[0, n - 1] = corner
    m[n - 1, 0] = corner
    for s in defect_sites(spec):
        m[s, s] -= spec.epsilon
    return m


_KEYS = {"n": int, "j": float, "h": float, "epsilon": float, "d": int, "center": int, "boundary": str}


def load_chain_spec(path: str | Path) -> ChainSpec:
    """Read a flat ``key = value`` file (keys n, j, h, epsilon, d, center, boundary)."""
    text = Path(path).read_text()
    return chain_spec_from_text(text)


def chain_spec_from_text(text: str) -> ChainSpec:
    parser = configparser.ConfigParser()
    parser.read_string("[chain]\n" + text)
    raw = dict(parser["chain"])
    unknown = set(raw) - set(_KEYS)
    if unknown:
        raise ChainSpecError(f"unknown keys in chain spec: {sorted(unknown)}")
    values = {key: _KEYS[key](val) for key, val in raw.items()}
    return validate(ChainSpec(**values))


def chain_spec_to_text(spec: ChainSpec) -> str:
    fields = asdict(spec)
    fields["center"] = spec.k
    return "".join(f"{key} = {fields[key]}\n" for key in _KEYS)


def dump_chain_spec(spec: ChainSpec, path: str | Path) -> None:
    Path(path).write_text(chain_spec_to_text(spec))
