"""Computable lower bounds on the GME concurrence of three qubits.

Both bounds follow the same recipe.  For a pure state the concurrence of the
cut ``j | rest`` is ``2 sqrt(sum |M|^2)`` over the 2x2 minors ``M`` of the
``2 x 4`` coefficient matrix of qubit ``j``.  Keeping only a few minors and
using ``|x - y| >= |x| - |y|`` gives a lower bound on every cut that is linear
in products ``|psi_a psi_b|``; replacing those by ``|rho_ab|`` (coherences,
convex) and ``sqrt(rho_aa rho_bb)`` (concave) extends it to a lower bound on
the convex roof.

* Ma-type: the best of three certificates aimed at GHZ-like, W-like and
  spin-flipped-W-like coherences.  Each W certificate keeps two minors per
  cut, combined with ``2 sqrt(m1^2 + m2^2) >= sqrt(2) (m1 + m2)``.
* Hong-type: keeps the four W and spin-flipped-W minors of every cut at once,
  combined with ``2 sqrt(sum_4 m^2) >= sum_4 m``, so coherences of both
  excitation sectors add up.

Neither certificate is invariant under local unitaries while the GME
concurrence is, so both are maximized over ``U_l x U_m x U_n``.
"""
from __future__ import annotations

import numpy as np

from .numopt import multistart
from .rdm import DefectRDM

__all__ = [
    "ma_certificate",
    "hong_certificate",
    "local_unitary",
    "gme_lower_bound_ma",
    "gme_lower_bound_hong",
    "BoundResult",
]

_SQRT2 = np.sqrt(2.0)
# pairs of one-excitation states, indexed so that (0, 7) complements are easy
_W = (1, 2, 4)
_WBAR = (6, 5, 3)


def _density(rho) -> np.ndarray:
    return rho.matrix if isinstance(rho, DefectRDM) else np.asarray(rho)


def _w_terms(rho: np.ndarray, states: tuple[int, int, int], vacuum: int) -> tuple[float, float, float]:
    """Coherence sum, population sum and vacuum cross terms of one sector."""
    a, b, c = states
    s = abs(rho[a, b]) + abs(rho[a, c]) + abs(rho[b, c])
    pop = rho[a, a].real + rho[b, b].real + rho[c, c].real
    vac = rho[vacuum, vacuum].real
    cross = sum(np.sqrt(max(vac * rho[7 - k, 7 - k].real, 0.0)) for k in states)
    return float(s), float(pop), float(cross)


def ma_certificate(rho) -> float:
    """Ma-type bound in the current local basis (may be negative)."""
    r = _density(rho)
    ghz = 2.0 * (abs(r[0, 7]) - sum(np.sqrt(max(r[i, i].real * r[7 - i, 7 - i].real, 0.0)) for i in _W))
    s, pop, cross = _w_terms(r, _W, 0)
    w = _SQRT2 * (s - 0.5 * pop - cross)
    s, pop, cross = _w_terms(r, _WBAR, 7)
    wbar = _SQRT2 * (s - 0.5 * pop - cross)
    return float(max(ghz, w, wbar))


def hong_certificate(rho) -> float:
    """Hong-type bound in the current local basis (may be negative)."""
    r = _density(rho)
    s, pop, cross = _w_terms(r, _W, 0)
    sb, popb, crossb = _w_terms(r, _WBAR, 7)
    return float((s - 0.5 * pop - cross) + (sb - 0.5 * popb - crossb))


def _qubit_unitary(alpha: float, beta: float, gamma: float) -> np.ndarray:
    rz = lambda t: np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])  # noqa: E731
    c, s = np.cos(0.5 * beta), np.sin(0.5 * beta)
    ry = np.array([[c, -s], [s, c]])
    return rz(alpha) @ ry @ rz(gamma)


def local_unitary(params) -> np.ndarray:
    """``U_l x U_m x U_n`` from nine Euler angles (three per qubit)."""
    p = np.asarray(params, dtype=float).reshape(3, 3)
    u = _qubit_unitary(*p[0])
    for row in p[1:]:
        u = np.kron(u, _qubit_unitary(*row))
    return u


class BoundResult(float):
    """A float carrying optimization metadata (``params``, ``converged``, ``runs``)."""

    params: np.ndarray
    converged: bool
    runs: int

    def __new__(cls, value: float, params: np.ndarray, converged: bool, runs: int):
        obj = super().__new__(cls, value)
        obj.params = params
        obj.converged = converged
        obj.runs = runs
        return obj


def _optimized(certificate, rho, runs: int, seed) -> BoundResult:
    r = _density(rho).astype(complex)
    identity_value = certificate(r)

    def objective(x):
        u = local_unitary(x)
        return -certificate(u @ r @ u.conj().T)

    def sampler(rng):
        return rng.uniform(0.0, 2.0 * np.pi, size=9)

    best = identity_value
    params = np.zeros(9)
    converged = True
    if runs > 0:
        res = multistart(objective, sampler, runs=runs, seed=seed)
        if -res.best_value > best:
            best, params = -res.best_value, res.best_params
        converged = res.converged
    return BoundResult(max(0.0, best), params, converged, runs)


def gme_lower_bound_ma(rho, runs: int = 100, seed: int | None = 0) -> BoundResult:
    """Ma-type GME lower bound maximized over local unitaries.

    The certificate is evaluated in the computational basis and from
    ``runs`` random Euler-angle starts refined by BFGS; the largest value is
    returned, clipped at zero.  Deterministic for a fixed ``seed``.
    """
    return _optimized(ma_certificate, rho, runs, seed)


def gme_lower_bound_hong(rho, runs: int = 100, seed: int | None = 0) -> BoundResult:
    """Hong-type GME lower bound maximized over local unitaries.

    See :func:`gme_lower_bound_ma` for the optimization protocol.
    """
    return _optimized(hong_certificate, rho, runs, seed)
