"""Lattice Green's function route to the defect bound states.

For the infinite clean chain with hopping ``-J`` and on-site energy ``h`` the
resolvent ``G0 = (z - H0)^-1`` is known in closed form off the band.  With the
band coordinate ``x = (z - h) / (2J)`` and ``|x| > 1``::

    G0(r, s; z) = sgn(x) * rho**|r - s| / (2J sqrt(x^2 - 1)),
    rho = |x| - sqrt(x^2 - 1)  (so 0 < rho < 1),

with the extra factor ``(-1)**|r - s|`` above the band.  Three attractive
defects of depth ``epsilon_j`` add ``H1 = -sum_j epsilon_j |j><j|``; the
composite bound states are the zeros of ``det(1 - G0 H1)`` restricted to the
defect sites, which factorizes through the single-defect T-matrix factors
``t_j``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model import ChainSpec, defect_sites

__all__ = [
    "BandError",
    "PoleError",
    "NoRootsError",
    "ImpuritySet",
    "Region",
    "g0_element",
    "g0_spectral_sum",
    "t_factor",
    "single_defect_pole",
    "f_lmn_inverse",
    "pole_free_determinant",
    "bound_state_energies",
    "region_classify",
]

GRID_POINTS = 4000
GRID_GAP_MIN = 1e-9
BISECT_TOL = 1e-12
POLE_TOL = 1e-14
TIE_TOL = 1e-12


class BandError(ValueError):
    """The energy lies inside the continuous band, where G0 is not real."""


class PoleError(ArithmeticError):
    """The energy is a pole of a single-defect T-matrix factor."""


class NoRootsError(ValueError):
    """No bound state exists for the given impurities."""


@dataclass(frozen=True)
class ImpuritySet:
    """Three equidistant defects with (possibly distinct) depths.

    Parameters
    ----------
    sites : tuple of int
        Sites ``(l, m, n)`` with ``m - l = n - m > 0``.
    epsilons : tuple of float
        Depths; the on-site energy at site ``j`` is lowered by ``epsilons[j]``.
    """

    sites: tuple[int, int, int]
    epsilons: tuple[float, float, float]

    def __post_init__(self):
        l, m, n = self.sites
        if not (l < m < n and m - l == n - m):
            raise ValueError(f"sites must be strictly increasing and equally spaced, got {self.sites}")
        if len(self.epsilons) != 3:
            raise ValueError("exactly three defect strengths are required")

    @classmethod
    def symmetric(cls, epsilon: float, d: int, center: int = 0) -> "ImpuritySet":
        return cls((center - d, center, center + d), (epsilon, epsilon, epsilon))

    @classmethod
    def from_spec(cls, spec: ChainSpec) -> "ImpuritySet":
        return cls(defect_sites(spec), (spec.epsilon,) * 3)

    @property
    def d(self) -> int:
        return self.sites[1] - self.sites[0]

    @property
    def potentials(self) -> np.ndarray:
        """Diagonal entries of ``H1`` (negative for attractive defects)."""
        return -np.asarray(self.epsilons, dtype=float)


class Region(enum.IntEnum):
    ONE = 1
    TWO = 2
    THREE = 3


def _band_coordinate(z: float, h: float, J: float) -> float:
    x = (z - h) / (2.0 * J)
    if abs(x) <= 1.0:
        raise BandError(f"z = {z} lies inside the band [{h - 2 * J}, {h + 2 * J}]")
    return x


def g0_element(r: int, s: int, z: float, h: float, J: float = 1.0) -> float:
    """Clean-chain resolvent element ``<r|(z - H0)^-1|s>`` off the band."""
    x = _band_coordinate(z, h, J)
    root = np.sqrt(x * x - 1.0)
    n = abs(r - s)
    rho = abs(x) - root
    if x > 0:
        return float(rho**n / (2.0 * J * root) * (-1.0) ** n)
    return float(-(rho**n) / (2.0 * J * root))


def g0_spectral_sum(r: int, s: int, z: float, h: float, J: float = 1.0, n_sites: int = 4096) -> float:
    """Finite antiperiodic ring version of :func:`g0_element` (test oracle)."""
    k = 2.0 * np.pi * (np.arange(n_sites) + 0.5) / n_sites
    terms = np.cos(k * (r - s)) / (z - h + 2.0 * J * np.cos(k))
    return float(terms.mean())


def _denominator(j: int, z: float, imp: ImpuritySet, h: float, J: float) -> float:
    v = imp.potentials[j]
    site = imp.sites[j]
    return 1.0 - v * g0_element(site, site, z, h, J)


def t_factor(j: int, z: float, imp: ImpuritySet, h: float, J: float = 1.0) -> float:
    """Single-defect T-matrix factor ``t_j = V_j / (1 - V_j G0(j, j))``.

    ``j`` indexes the defect (0, 1, 2 for l, m, n) and ``V_j = -epsilon_j``.

    Raises
    ------
    PoleError
        When the denominator vanishes, i.e. ``z`` is the bound-state energy
        of defect ``j`` on its own.
    """
    den = _denominator(j, z, imp, h, J)
    if abs(den) < POLE_TOL:
        raise PoleError(f"t_{j} has a pole at z = {z}")
    return float(imp.potentials[j] / den)


def single_defect_pole(epsilon: float, h: float, J: float = 1.0) -> float:
    """Bound-state energy of one defect of depth ``epsilon`` in the clean chain."""
    return float(h - np.sqrt(4.0 * J * J + epsilon * epsilon))


def f_lmn_inverse(z: float, imp: ImpuritySet, h: float, J: float = 1.0) -> float:
    """The three-defect factor whose zeros (away from t-poles) are bound states.

    ``1 - sum_pairs t_a t_b G0(a,b) G0(b,a) - t_l t_m t_n (G0(l,m) G0(m,n) G0(n,l) + G0(m,l) G0(l,n) G0(n,m))``
    """
    t = [t_factor(j, z, imp, h, J) for j in range(3)]
    l, m, n = imp.sites
    g = {(a, b): g0_element(a, b, z, h, J) for a in (l, m, n) for b in (l, m, n)}
    pairs = (
        t[0] * t[1] * g[l, m] * g[m, l]
        + t[1] * t[2] * g[m, n] * g[n, m]
        + t[2] * t[0] * g[n, l] * g[l, n]
    )
    cycles = t[0] * t[1] * t[2] * (g[l, m] * g[m, n] * g[n, l] + g[m, l] * g[l, n] * g[n, m])
    return float(1.0 - pairs - cycles)


def _g0_below(n: int, zs: np.ndarray, h: float, J: float) -> np.ndarray:
    x = (zs - h) / (2.0 * J)
    root = np.sqrt(x * x - 1.0)
    return -((-x - root) ** n) / (2.0 * J * root)


def _determinant_grid(zs: np.ndarray, imp: ImpuritySet, h: float, J: float) -> np.ndarray:
    d = imp.d
    g = np.empty((len(zs), 3, 3))
    for a in range(3):
        for b in range(3):
            g[:, a, b] = _g0_below(abs(a - b) * d, zs, h, J)
    return np.linalg.det(np.eye(3) - g * imp.potentials[None, None, :])


def pole_free_determinant(z: float, imp: ImpuritySet, h: float, J: float = 1.0) -> float:
    """``det(1 - G0 V)`` on the defect sites.

    Equals ``f_lmn_inverse(z) * prod_j (1 - V_j G0(j, j))`` but has no poles,
    so its sign changes below the band count bound states one to one.
    """
    sites = imp.sites
    g = np.array([[g0_element(a, b, z, h, J) for b in sites] for a in sites])
    return float(np.linalg.det(np.eye(3) - g * imp.potentials[None, :]))


def _bisect(fun, lo: float, hi: float, f_lo: float) -> float:
    while hi - lo > BISECT_TOL * max(1.0, abs(lo)):
        mid = 0.5 * (lo + hi)
        f_mid = fun(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def bound_state_energies(imp: ImpuritySet, h: float, J: float = 1.0) -> list[float]:
    """Bound-state energies below the band, sorted ascending.

    Sign changes of :func:`pole_free_determinant` are bracketed on a
    log-spaced grid of distances below the band bottom, from ``1e-9`` to
    ``10 (J + max epsilon)``, and refined by bisection.
    """
    eps_max = max(imp.epsilons)
    if eps_max <= 0:
        raise NoRootsError("no bound states without an attractive defect")
    bottom = h - 2.0 * J
    gaps = np.geomspace(10.0 * (J + eps_max), GRID_GAP_MIN, GRID_POINTS)
    zs = bottom - gaps
    fun = lambda z: float(_determinant_grid(np.array([z]), imp, h, J)[0])  # noqa: E731
    vals = _determinant_grid(zs, imp, h, J)
    roots = []
    for i in np.flatnonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0):
        roots.append(_bisect(fun, zs[i], zs[i + 1], vals[i]))
    roots.extend(zs[vals == 0.0].tolist())
    if not roots:
        raise NoRootsError(f"no sign change found below the band for {imp}")
    return sorted(roots)


def region_classify(epsilon: float, d: int) -> Region:
    """Number of bound states expected for depth ``epsilon`` and spacing ``d``.

    Thresholds sit at ``epsilon * d = 1`` and ``3``; a product within
    ``1e-12`` of a threshold is assigned to the lower region.
    """
    if epsilon <= 0 or d < 1:
        raise ValueError("region classification needs epsilon > 0 and d >= 1")
    x = epsilon * d
    if x <= 1.0 + TIE_TOL:
        return Region.ONE
    if x <= 3.0 + TIE_TOL:
        return Region.TWO
    return Region.THREE
