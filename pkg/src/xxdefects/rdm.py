"""Three-defect reduced density matrix from free-fermion correlations.

The 8x8 matrix is reconstructed from all 64 three-site Pauli expectation
values, ``rho = 1/8 sum_P <P> P``.  Each Pauli string is rewritten as a
monomial in the window Majoranas (Jordan-Wigner strings included) and its
expectation follows from Wick's theorem as a Pfaffian of the window
covariance.

Basis index ``b = 4 s_l + 2 s_m + s_n`` where ``s = 1`` means the spin on
that defect is flipped against the field (site occupied).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .model import ChainSpec, validate
from .pfaffian import pfaffian
from .spectrum import CorrelationData, ground_state_correlations

__all__ = [
    "RDM_FIELDS",
    "DefectRDM",
    "WDecomposition",
    "SECTORS",
    "pauli_expectation",
    "rdm_from_correlations",
    "defect_rdm",
    "w_decompose",
    "pattern_mask",
]

RDM_FIELDS = ("rho00", "rho11", "rho22", "rho33", "rho55", "rho77", "rho12", "rho14", "rho35", "rho36")

# basis indices grouped by number of flipped spins
SECTORS = ((0,), (1, 2, 4), (3, 5, 6), (7,))

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def pattern_mask() -> np.ndarray:
    """Boolean mask of the entries allowed to be nonzero."""
    mask = np.zeros((8, 8), dtype=bool)
    for sector in SECTORS:
        mask[np.ix_(sector, sector)] = True
    return mask


@dataclass(frozen=True)
class DefectRDM:
    """The ten independent entries of the reflection-symmetric defect RDM.

    ``raw`` keeps the full matrix the entries were read from (if any), so
    structure checks can be run against what was actually computed.
    """

    rho00: float
    rho11: float
    rho22: float
    rho33: float
    rho55: float
    rho77: float
    rho12: float
    rho14: float
    rho35: float
    rho36: float
    raw: np.ndarray | None = field(default=None, compare=False, repr=False)

    @property
    def matrix(self) -> np.ndarray:
        r = np.zeros((8, 8))
        r[0, 0] = self.rho00
        r[1, 1] = r[4, 4] = self.rho11
        r[2, 2] = self.rho22
        r[3, 3] = r[6, 6] = self.rho33
        r[5, 5] = self.rho55
        r[7, 7] = self.rho77
        r[1, 2] = r[2, 1] = r[2, 4] = r[4, 2] = self.rho12
        r[1, 4] = r[4, 1] = self.rho14
        r[3, 5] = r[5, 3] = r[5, 6] = r[6, 5] = self.rho35
        r[3, 6] = r[6, 3] = self.rho36
        return r

    def values(self) -> tuple[float, ...]:
        return tuple(getattr(self, name) for name in RDM_FIELDS)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(RDM_FIELDS, self.values()))

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> "DefectRDM":
        """Read the ten entries, averaging the pairs related by reflection."""
        m = np.asarray(m)
        raw = m.copy()
        m = m.real
        return cls(
            rho00=float(m[0, 0]),
            rho11=float(0.5 * (m[1, 1] + m[4, 4])),
            rho22=float(m[2, 2]),
            rho33=float(0.5 * (m[3, 3] + m[6, 6])),
            rho55=float(m[5, 5]),
            rho77=float(m[7, 7]),
            rho12=float(0.25 * (m[1, 2] + m[2, 1] + m[2, 4] + m[4, 2])),
            rho14=float(0.5 * (m[1, 4] + m[4, 1])),
            rho35=float(0.25 * (m[3, 5] + m[5, 3] + m[5, 6] + m[6, 5])),
            rho36=float(0.5 * (m[3, 6] + m[6, 3])),
            raw=raw,
        )

    @classmethod
    def product_000(cls) -> "DefectRDM":
        return cls(1.0, *([0.0] * 9))


@dataclass(frozen=True)
class WDecomposition:
    """Spectral decomposition of each magnetization block.

    ``a[i]`` are coefficient triples on ``(|001>, |010>, |100>)`` with weights
    ``p[i]``; ``b[i]`` on ``(|011>, |101>, |110>)`` with weights ``pbar[i]``.
    Weights are sorted in descending order.
    """

    p0: float
    p: np.ndarray
    a: np.ndarray
    pbar: np.ndarray
    b: np.ndarray
    p7: float

    def reconstruct(self) -> np.ndarray:
        r = np.zeros((8, 8))
        r[0, 0] = self.p0
        r[7, 7] = self.p7
        one, two = SECTORS[1], SECTORS[2]
        r[np.ix_(one, one)] = (self.a.T * self.p) @ self.a
        r[np.ix_(two, two)] = (self.b.T * self.pbar) @ self.b
        return r

    def components(self) -> list[tuple[float, np.ndarray]]:
        """Weighted pure states ``(weight, 8-vector)`` making up the matrix."""
        out = []
        for idx, weight in ((0, self.p0), (7, self.p7)):
            v = np.zeros(8)
            v[idx] = 1.0
            out.append((weight, v))
        for sector, weights, coeffs in ((SECTORS[1], self.p, self.a), (SECTORS[2], self.pbar, self.b)):
            for weight, row in zip(weights, coeffs):
                v = np.zeros(8)
                v[list(sector)] = row
                out.append((float(weight), v))
        return out


def w_decompose(rdm: DefectRDM | np.ndarray) -> WDecomposition:
    """Split the RDM into ``|000>``, generalized W, spin-flipped W and ``|111>`` parts."""
    m = rdm.matrix if isinstance(rdm, DefectRDM) else np.asarray(rdm, dtype=float)
    blocks = []
    for sector in SECTORS[1:3]:
        w, v = np.linalg.eigh(m[np.ix_(sector, sector)])
        order = np.argsort(w)[::-1]
        w, v = w[order], v[:, order].T
        # fix the sign so the largest-magnitude amplitude is positive
        signs = np.sign(v[np.arange(3), np.abs(v).argmax(axis=1)])
        blocks.append((w, v * signs[:, None]))
    (p, a), (pbar, b) = blocks
    return WDecomposition(float(m[0, 0]), p, a, pbar, b, float(m[7, 7]))


# --- Pauli strings as Majorana monomials -------------------------------------


def _normal_order(indices: list[int]) -> tuple[int, tuple[int, ...]]:
    """Sort a Majorana product, returning ``(sign, remaining indices)``."""
    seq = list(indices)
    sign = 1
    n = len(seq)
    for i in range(n):
        for j in range(n - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
    out: list[int] = []
    for x in seq:
        if out and out[-1] == x:
            out.pop()
        else:
            out.append(x)
    return sign, tuple(out)


def _site_operator(op: str, t: int) -> tuple[complex, list[int]]:
    """Majorana form of a Pauli at window offset ``t``.

    ``Z_t = -i A_t B_t``; ``X_t`` and ``Y_t`` carry the string of ``Z`` over
    window sites ``0..t-1`` (the part of the string left of the window is
    common to every operator and cancels in pairs).
    """
    if op == "I":
        return 1.0, []
    if op == "Z":
        return -1j, [2 * t, 2 * t + 1]
    string = list(range(2 * t))
    coef = (-1j) ** t
    return coef, string + [2 * t if op == "X" else 2 * t + 1]


def pauli_expectation(ops: str, offsets: tuple[int, ...], gamma: np.ndarray) -> complex:
    """Ground-state expectation of a Pauli string on the given window offsets."""
    coef: complex = 1.0
    indices: list[int] = []
    for op, t in zip(ops, offsets):
        c, idx = _site_operator(op, t)
        coef *= c
        indices += idx
    sign, mono = _normal_order(indices)
    if len(mono) % 2:
        return 0.0
    if not mono:
        return complex(sign * coef)
    sub = gamma[np.ix_(mono, mono)]
    return sign * coef * (1j ** (len(mono) // 2)) * pfaffian(sub)


def rdm_from_correlations(spec: ChainSpec, corr: CorrelationData) -> DefectRDM:
    """Defect RDM from the Majorana window covariance by Wick's theorem."""
    validate(spec)
    d = spec.d
    if corr.majorana_window.shape[0] != 2 * (2 * d + 1):
        raise ValueError("correlation window does not match the defect geometry")
    offsets = (0, d, 2 * d)
    rho = np.zeros((8, 8), dtype=complex)
    for ops in itertools.product("IXYZ", repeat=3):
        ops = "".join(ops)
        value = pauli_expectation(ops, offsets, corr.majorana_window)
        if value != 0:
            rho += value * np.kron(np.kron(_PAULI[ops[0]], _PAULI[ops[1]]), _PAULI[ops[2]])
    rho /= 8.0
    # with n particles in the sea at most n defects can be occupied; those
    # entries vanish exactly but the Pauli sum leaves roundoff there, which
    # square roots in the concurrence formulas would amplify to ~1e-9
    excess = [b for b in range(8) if bin(b).count("1") > corr.n_occupied]
    rho[excess, :] = 0.0
    rho[:, excess] = 0.0
    return DefectRDM.from_matrix(rho)


def defect_rdm(spec: ChainSpec, zero_modes: str = "raise") -> DefectRDM:
    """Diagonalize, fill the Fermi sea and build the defect RDM.

    ``zero_modes`` is passed to :func:`ground_state_correlations`.
    """
    return rdm_from_correlations(spec, ground_state_correlations(spec, zero_modes=zero_modes))
