"""Two- and three-qubit entanglement measures of the defect state.

Qubit order everywhere is ``(l, m, n)`` = (left, middle, right defect) and
basis index ``b = 4 s_l + 2 s_m + s_n``.
"""
from __future__ import annotations

import numpy as np

from .rdm import SECTORS, DefectRDM, w_decompose

__all__ = [
    "NotRank2Error",
    "concurrence_adjacent",
    "concurrence_outer",
    "pair_rdm",
    "wootters_oracle",
    "gme_pure",
    "three_tangle_pure",
    "gme_rank2_analytic",
    "gme_rank2_weights",
    "rank2_family_state",
    "RANK2_TOL",
]

RANK2_TOL = 1e-8
NORM_TOL = 1e-10

_SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


class NotRank2Error(ValueError):
    """The RDM is not supported on ``|000>`` plus one W-type state."""


def _sqrt_product(a: float, b: float) -> float:
    return float(np.sqrt(max(a * b, 0.0)))


def concurrence_adjacent(rdm: DefectRDM) -> float:
    """Concurrence of two neighbouring defects (identical for both pairs).

    ``C = 2 max{0, |rho12 + rho35| - sqrt((rho00 + rho44)(rho33 + rho77))}``
    """
    r = rdm
    return 2.0 * max(0.0, abs(r.rho12 + r.rho35) - _sqrt_product(r.rho00 + r.rho11, r.rho33 + r.rho77))


def concurrence_outer(rdm: DefectRDM) -> float:
    """Concurrence of the two outer defects.

    ``C = 2 max{0, |rho14 + rho36| - sqrt((rho00 + rho22)(rho55 + rho77))}``
    """
    r = rdm
    return 2.0 * max(0.0, abs(r.rho14 + r.rho36) - _sqrt_product(r.rho00 + r.rho22, r.rho55 + r.rho77))


def pair_rdm(rho: np.ndarray | DefectRDM, keep: tuple[int, int]) -> np.ndarray:
    """Two-qubit reduced matrix of qubits ``keep`` (ordered as given)."""
    m = rho.matrix if isinstance(rho, DefectRDM) else np.asarray(rho)
    (traced,) = set(range(3)) - set(keep)
    t = m.reshape(2, 2, 2, 2, 2, 2)
    t = np.trace(t, axis1=traced, axis2=traced + 3)
    a, b = sorted(keep)
    if keep != (a, b):
        t = t.transpose(1, 0, 3, 2)
    return t.reshape(4, 4)


def wootters_oracle(rho: np.ndarray) -> float:
    """Two-qubit concurrence from the spin-flip construction.

    With ``rho = A A^dagger`` the square roots of the eigenvalues of
    ``rho rho~`` are the singular values of ``A^T (sigma_y x sigma_y) A``,
    which avoids taking square roots of roundoff-level eigenvalues.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError("expected a 4x4 density matrix")
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    a = v * np.sqrt(np.clip(w, 0.0, None))
    lam = np.sort(np.linalg.svd(a.T @ _SIGMA_YY @ a, compute_uv=False))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def _as_state(state) -> np.ndarray:
    psi = np.asarray(state, dtype=complex).ravel()
    if psi.shape != (8,):
        raise ValueError("expected an 8-component state vector")
    if abs(np.vdot(psi, psi).real - 1.0) > NORM_TOL:
        raise ValueError("state vector is not normalized")
    return psi


def gme_pure(state) -> float:
    """GME concurrence of a pure three-qubit state.

    ``min_j sqrt(2 (1 - Tr rho_j^2))`` over the three single-qubit cuts.
    For a qubit ``1 - Tr rho_j^2 = 2 det rho_j``, and the determinant is
    evaluated as a sum of squared 2x2 minors, which keeps full relative
    precision for nearly-product states.
    """
    t = _as_state(state).reshape(2, 2, 2)
    values = []
    for j in range(3):
        mat = np.moveaxis(t, j, 0).reshape(2, 4)
        minors = [mat[0, a] * mat[1, b] - mat[0, b] * mat[1, a] for a in range(4) for b in range(a + 1, 4)]
        values.append(2.0 * np.sqrt(sum(abs(m) ** 2 for m in minors)))
    return float(min(values))


def three_tangle_pure(state) -> float:
    """Residual three-tangle (Cayley hyperdeterminant form) of a pure state."""
    a = _as_state(state).reshape(2, 2, 2)
    d1 = a[0, 0, 0] ** 2 * a[1, 1, 1] ** 2 + a[0, 0, 1] ** 2 * a[1, 1, 0] ** 2
    d1 += a[0, 1, 0] ** 2 * a[1, 0, 1] ** 2 + a[1, 0, 0] ** 2 * a[0, 1, 1] ** 2
    d2 = (
        a[0, 0, 0] * a[1, 1, 1] * a[0, 1, 1] * a[1, 0, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 0, 0] * a[1, 1, 1] * a[1, 1, 0] * a[0, 0, 1]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 0, 1] * a[0, 1, 0]
        + a[0, 1, 1] * a[1, 0, 0] * a[1, 1, 0] * a[0, 0, 1]
        + a[1, 0, 1] * a[0, 1, 0] * a[1, 1, 0] * a[0, 0, 1]
    )
    d3 = a[0, 0, 0] * a[1, 1, 0] * a[1, 0, 1] * a[0, 1, 1] + a[1, 1, 1] * a[0, 0, 1] * a[0, 1, 0] * a[1, 0, 0]
    return float(4.0 * abs(d1 - 2.0 * d2 + 4.0 * d3))


def _check_rank2(rdm: DefectRDM) -> None:
    m = rdm.matrix
    evals = np.sort(np.linalg.eigvalsh(m))[::-1]
    outside = m[np.ix_(SECTORS[2], SECTORS[2])].trace() + m[7, 7]
    if evals[2] >= RANK2_TOL or outside >= RANK2_TOL:
        raise NotRank2Error(
            f"RDM is not rank 2 on |000> + one excitation (third eigenvalue {evals[2]:.2e}, "
            f"weight outside {outside:.2e})"
        )


def gme_rank2_analytic(rdm: DefectRDM) -> float:
    """Exact GME concurrence of a reflection-symmetric rank-2 RDM.

    ``2 min{sqrt(2) |rho12|, sqrt(|rho14| (1 - rho00 - |rho14|))}``

    Raises
    ------
    NotRank2Error
        When the third-largest eigenvalue or the weight in the two- and
        three-excitation sectors reaches ``1e-8``.
    """
    _check_rank2(rdm)
    r14 = abs(rdm.rho14)
    return 2.0 * min(np.sqrt(2.0) * abs(rdm.rho12), np.sqrt(max(0.0, r14 * (1.0 - rdm.rho00 - r14))))


def gme_rank2_weights(rdm: DefectRDM) -> tuple[float, float, float]:
    """``(value, p, a1)``: the same quantity from the W-weight and amplitude.

    ``2 p a1 min{sqrt(1 - a1^2), sqrt(2 - 4 a1^2)}`` with ``p`` the weight of
    the generalized W component and ``a1 = a3`` its outer amplitude.
    """
    _check_rank2(rdm)
    dec = w_decompose(rdm)
    p = float(dec.p[0])
    a1 = float(abs(dec.a[0][0]))
    value = 2.0 * p * a1 * min(np.sqrt(max(0.0, 1.0 - a1 * a1)), np.sqrt(max(0.0, 2.0 - 4.0 * a1 * a1)))
    return value, p, a1


def rank2_family_state(p: float, a: np.ndarray, phi: float = 0.0) -> np.ndarray:
    """``sqrt(p) |gW> + exp(i phi) sqrt(1 - p) |000>`` for W amplitudes ``a``."""
    a = np.asarray(a, dtype=float)
    psi = np.zeros(8, dtype=complex)
    psi[list(SECTORS[1])] = np.sqrt(p) * a / np.linalg.norm(a)
    psi[0] = np.exp(1j * phi) * np.sqrt(1.0 - p)
    return psi
