"""Single-particle spectrum, bound-state counting and ground-state correlations."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .model import ANTIPERIODIC, ChainSpec, defect_sites, single_particle_matrix, validate, window_sites

__all__ = [
    "GAP_TOL",
    "ZERO_MODE_TOL",
    "SpectrumError",
    "ZeroModeError",
    "SpectrumResult",
    "CorrelationData",
    "diagonalize",
    "count_levels_below",
    "count_bound_states",
    "ground_state_correlations",
    "majorana_covariance",
    "spectrum_rows",
    "reflection_basis",
]

# A level is discrete when it lies this far (in units of J) below the band.
GAP_TOL = 1e-9
ZERO_MODE_TOL = 1e-9


class SpectrumError(RuntimeError):
    """The single-particle eigenproblem could not be solved."""


class ZeroModeError(RuntimeError):
    """A single-particle level sits at zero energy; the ground state is degenerate."""


@dataclass(frozen=True)
class SpectrumResult:
    energies: np.ndarray
    modes: np.ndarray
    band_interval: tuple[float, float]
    discrete_indices: np.ndarray

    @property
    def n_discrete(self) -> int:
        return len(self.discrete_indices)


@dataclass(frozen=True)
class CorrelationData:
    """Ground-state two-point data.

    ``c[i, j] = <c_i^dagger c_j>`` over the whole ring (formed on first
    access from the occupied modes); ``majorana_window`` is the real
    antisymmetric matrix ``Gamma`` with
    ``<gamma_a gamma_b> = delta_ab + i Gamma_ab`` for the Majoranas
    ``A_i = c_i + c_i^dagger`` (index ``2t``) and
    ``B_i = i (c_i^dagger - c_i)`` (index ``2t + 1``) of the window sites.
    """

    occupied: np.ndarray
    window: np.ndarray
    majorana_window: np.ndarray
    n_occupied: int

    @cached_property
    def c(self) -> np.ndarray:
        return self.occupied @ self.occupied.T


def _band(spec: ChainSpec) -> tuple[float, float]:
    return (spec.h - 2 * spec.j, spec.h + 2 * spec.j)


def reflection_basis(spec: ChainSpec) -> tuple[np.ndarray, np.ndarray] | None:
    """Orthonormal bases of the even and odd sectors of the defect reflection.

    With the middle defect on site ``N/2`` the map ``i -> N - i`` (1-based)
    sends the defect set to itself.  It commutes with ``M`` directly for the
    periodic ring, and after flipping the sign of site ``N`` for the
    antiperiodic one (the reflection moves the sign-carrying bond).  Columns
    are ordered along the folded chain from site ``N/2`` to site ``N``, so
    ``M`` restricted to either sector is tridiagonal.  Returns ``None`` when
    the defects are not centred on ``N/2``.
    """
    sectors = _reflection_sectors(spec)
    if sectors is None:
        return None
    out = []
    for i, j, ci, cj in sectors:
        b = np.zeros((spec.n, len(i)))
        cols = np.arange(len(i))
        b[i, cols] += ci
        b[j, cols] += cj
        out.append(b)
    return out[0], out[1]


def _reflection_sectors(spec: ChainSpec):
    """Sparse form of :func:`reflection_basis`: basis vector ``k`` is
    ``ci[k] e_i[k] + cj[k] e_j[k]`` (``cj = 0`` on sites fixed by the map)."""
    n = spec.n
    if spec.k != n // 2 or n < 4:
        return None
    # 0-based: i -> (n - 2 - i) mod n; fixed sites n/2 - 1 and n - 1
    image = (n - 2 - np.arange(n)) % n
    gauge = np.ones(n)
    if spec.boundary == ANTIPERIODIC:
        gauge[n - 1] = -1.0
    r = 1.0 / np.sqrt(2.0)
    pairs = np.arange(n // 2 - 2, -1, -1)
    first, last = n // 2 - 1, n - 1
    sectors = []
    for sign in (1.0, -1.0):
        i = list(pairs)
        ci = [r] * len(pairs)
        cj = list(sign * gauge[image[pairs]] * r)
        j = list(image[pairs])
        if gauge[first] == sign:
            i, j, ci, cj = [first] + i, [first] + j, [1.0] + ci, [0.0] + cj
        if gauge[last] == sign:
            i, j, ci, cj = i + [last], j + [last], ci + [1.0], cj + [0.0]
        sectors.append((np.array(i), np.array(j), np.array(ci), np.array(cj)))
    return sectors


def _sector_tridiagonal(m: np.ndarray, sector) -> tuple[np.ndarray, np.ndarray]:
    i, j, ci, cj = sector

    def element(a, b):
        return (
            ci[a] * ci[b] * m[i[a], i[b]]
            + ci[a] * cj[b] * m[i[a], j[b]]
            + cj[a] * ci[b] * m[j[a], i[b]]
            + cj[a] * cj[b] * m[j[a], j[b]]
        )

    k = np.arange(len(i))
    return element(k, k), element(k[:-1], k[1:])


def _lift(sector, v: np.ndarray, n: int) -> np.ndarray:
    i, j, ci, cj = sector
    full = np.zeros((n, v.shape[1]))
    full[i] += ci[:, None] * v
    full[j] += cj[:, None] * v
    return full


def _eigh(m: np.ndarray, spec: ChainSpec, upper: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigenpairs of ``M`` (all, or those with energy ``<= upper``)."""
    sectors = _reflection_sectors(spec)
    if sectors is None:
        w, v = np.linalg.eigh(m)
        if upper is not None:
            keep = w <= upper
            w, v = w[keep], v[:, keep]
        return w, v
    energies, modes = [], []
    for sector in sectors:
        diag, off = _sector_tridiagonal(m, sector)
        if upper is None:
            w, v = eigh_tridiagonal(diag, off)
        else:
            w, v = eigh_tridiagonal(diag, off, select="v", select_range=(-np.inf, upper))
        energies.append(w)
        modes.append(_lift(sector, v, spec.n))
    energies = np.concatenate(energies)
    modes = np.concatenate(modes, axis=1)
    order = np.argsort(energies, kind="stable")
    return energies[order], modes[:, order]


def diagonalize(spec: ChainSpec, gap_tol: float = GAP_TOL) -> SpectrumResult:
    """Full eigendecomposition of the hopping matrix.

    Levels further than ``gap_tol * J`` outside the clean band
    ``[h - 2J, h + 2J]`` are reported as discrete.  When the defects are
    centred on site ``N/2`` the problem is block-diagonalized by the
    reflection symmetry first (see :func:`reflection_basis`).
    """
    m = single_particle_matrix(spec)
    try:
        energies, modes = _eigh(m, spec)
    except np.linalg.LinAlgError as exc:
        raise SpectrumError(f"eigensolver failed for {spec}: {exc}") from exc
    lo, hi = _band(spec)
    tol = gap_tol * spec.j
    discrete = np.flatnonzero((energies < lo - tol) | (energies > hi + tol))
    return SpectrumResult(energies, modes, (lo, hi), discrete)


def count_levels_below(spec: ChainSpec, energy: float) -> int:
    """Number of single-particle levels strictly below ``energy``.

    Uses Sylvester's law of inertia on the cyclic tridiagonal matrix
    ``M - energy``: the LDL^T pivots of the open (N-1)-site block give its
    negative count, and the Schur complement of the last site adds the rest.
    Runs in O(N) without forming ``M``.
    """
    validate(spec)
    n, J = spec.n, float(spec.j)
    diag = np.full(n, spec.h - energy, dtype=float)
    for s in defect_sites(spec):
        diag[s] -= spec.epsilon
    off = -J
    corner = J if spec.boundary == ANTIPERIODIC else -J

    tiny = np.finfo(float).eps * J
    piv = np.empty(n - 1)
    p = diag[0]
    piv[0] = p if p != 0.0 else tiny
    for i in range(1, n - 1):
        p = diag[i] - off * off / piv[i - 1]
        piv[i] = p if p != 0.0 else tiny
    negatives = int(np.count_nonzero(piv < 0))

    # solve A y = b, with b the couplings of the last site to sites 0 and N-2
    b = np.zeros(n - 1)
    b[0] += corner
    b[n - 2] += off
    z = b.copy()
    for i in range(1, n - 1):
        z[i] -= off / piv[i - 1] * z[i - 1]
    y = z / piv
    for i in range(n - 3, -1, -1):
        y[i] -= off / piv[i] * y[i + 1]
    schur = diag[n - 1] - b @ y
    return negatives + int(schur < 0)


def count_bound_states(spec: ChainSpec, gap_tol: float = GAP_TOL) -> int:
    """Number of discrete levels below the band.

    Equivalent to counting ``diagonalize(spec).energies < h - 2J - gap_tol*J``
    but computed by inertia in O(N).
    """
    return count_levels_below(spec, spec.h - 2 * spec.j - gap_tol * spec.j)


def majorana_covariance(c_window: np.ndarray) -> np.ndarray:
    """Antisymmetric Majorana covariance of a number-conserving window block."""
    w = c_window.shape[0]
    g = np.zeros((2 * w, 2 * w))
    block = np.eye(w) - 2.0 * c_window
    g[0::2, 1::2] = block
    g[1::2, 0::2] = -block.T
    return g


def ground_state_correlations(
    spec: ChainSpec, spectrum: SpectrumResult | None = None, zero_modes: str = "raise"
) -> CorrelationData:
    """Fill every negative-energy mode and return the correlation data.

    Without a precomputed ``spectrum`` only the levels below ``+1e-9 J`` are
    computed.

    Parameters
    ----------
    zero_modes : {"raise", "empty"}
        What to do when a level lies within ``ZERO_MODE_TOL * J`` of zero.
        ``"empty"`` selects the degenerate ground state with those levels
        left unoccupied (the fewest-particle member of the ground manifold).

    Raises
    ------
    ZeroModeError
        For ``zero_modes="raise"`` when a level is that close to zero; nudge
        ``N`` or ``h`` to lift the degeneracy.
    """
    if zero_modes not in ("raise", "empty"):
        raise ValueError(f"zero_modes must be 'raise' or 'empty', got {zero_modes!r}")
    tol = ZERO_MODE_TOL * spec.j
    if spectrum is None:
        try:
            energies, modes = _eigh(single_particle_matrix(spec), spec, upper=tol)
        except np.linalg.LinAlgError as exc:
            raise SpectrumError(f"eigensolver failed for {spec}: {exc}") from exc
    else:
        energies, modes = spectrum.energies, spectrum.modes
    near_zero = np.abs(energies) < tol
    if near_zero.any() and zero_modes == "raise":
        raise ZeroModeError(
            f"zero-mode degeneracy: level {energies[near_zero][0]:.3e} at {spec}; "
            "nudge N or h to lift it"
        )
    occ = modes[:, energies < -tol] if zero_modes == "empty" else modes[:, energies < 0]
    win = window_sites(spec)
    cw = occ[win] @ occ[win].T
    return CorrelationData(occ, win, majorana_covariance(cw), occ.shape[1])


def spectrum_rows(spec: ChainSpec) -> list[tuple[int, float]]:
    """``(q, omega_q)`` pairs in ascending order of energy."""
    energies = np.linalg.eigvalsh(single_particle_matrix(spec))
    return list(enumerate(energies.tolist()))
