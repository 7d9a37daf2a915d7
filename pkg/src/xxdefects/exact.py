"""Brute-force many-body ground state for small rings.

Used as an independent check of the free-fermion pipeline: the quadratic
form ``sum_ij M_ij c_i^dagger c_j`` is built in the occupation basis of every
particle-number sector, Jordan-Wigner signs included, and the global ground
state is traced down to the three defect sites.
"""
from __future__ import annotations

import itertools

import numpy as np

from .model import ChainSpec, defect_sites, single_particle_matrix, validate
from .rdm import DefectRDM

__all__ = ["MAX_SITES", "DegenerateGroundStateError", "many_body_ground_state", "rdm_exact"]

MAX_SITES = 14
DEGENERACY_TOL = 1e-9


class DegenerateGroundStateError(RuntimeError):
    """The many-body ground state is not unique."""


def _sector_hamiltonian(m: np.ndarray, states: list[int]) -> np.ndarray:
    n = m.shape[0]
    index = {s: k for k, s in enumerate(states)}
    h = np.zeros((len(states), len(states)))
    bonds = [(i, j) for i in range(n) for j in range(n) if i != j and m[i, j] != 0.0]
    for col, s in enumerate(states):
        h[col, col] = sum(m[i, i] for i in range(n) if s >> i & 1)
        for i, j in bonds:
            # c_i^dagger c_j: j occupied, i empty
            if not (s >> j & 1) or (s >> i & 1):
                continue
            lo, hi = min(i, j), max(i, j)
            between = (s >> (lo + 1)) & ((1 << (hi - lo - 1)) - 1)
            sign = -1.0 if bin(between).count("1") % 2 else 1.0
            h[index[s ^ (1 << i) ^ (1 << j)], col] += sign * m[i, j]
    return h


def many_body_ground_state(
    spec: ChainSpec, degenerate: str = "raise"
) -> tuple[float, list[int], np.ndarray]:
    """Return ``(energy, basis states, amplitudes)`` of the ground state.

    Basis states are bit masks with bit ``i`` set when site ``i`` (0-based)
    is occupied.

    Parameters
    ----------
    degenerate : {"raise", "fewest_particles"}
        Policy when the lowest levels are closer than ``1e-9 J``.  With
        ``"fewest_particles"`` the ground state of the lowest particle-number
        sector in the degenerate manifold is returned, provided it is unique
        inside its sector.
    """
    if degenerate not in ("raise", "fewest_particles"):
        raise ValueError(f"degenerate must be 'raise' or 'fewest_particles', got {degenerate!r}")
    validate(spec)
    n = spec.n
    if n > MAX_SITES:
        raise ValueError(f"exact diagonalization is limited to N <= {MAX_SITES}, got {n}")
    m = single_particle_matrix(spec)
    tol = DEGENERACY_TOL * spec.j
    sectors = []
    for nf in range(n + 1):
        states = [sum(1 << q for q in occ) for occ in itertools.combinations(range(n), nf)]
        w, v = np.linalg.eigh(_sector_hamiltonian(m, states))
        sectors.append((w, v, states))
    levels = np.sort(np.concatenate([w[:2] for w, _, _ in sectors]))
    e0 = levels[0]
    if levels[1] - e0 >= tol:
        w, v, states = min(sectors, key=lambda sec: sec[0][0])
        return float(w[0]), states, v[:, 0]
    if degenerate == "raise":
        raise DegenerateGroundStateError(f"ground state degenerate within {levels[1] - e0:.2e} at {spec}")
    for w, v, states in sectors:
        if w[0] - e0 < tol:
            if len(w) > 1 and w[1] - w[0] < tol:
                raise DegenerateGroundStateError(f"ground state degenerate inside one sector at {spec}")
            return float(w[0]), states, v[:, 0]
    raise AssertionError("unreachable")


def rdm_exact(spec: ChainSpec, degenerate: str = "raise") -> DefectRDM:
    """Defect RDM by exact diagonalization (``N <= 14``).

    ``degenerate`` is passed to :func:`many_body_ground_state`.
    """
    _, states, psi = many_body_ground_state(spec, degenerate)
    sites = defect_sites(spec)
    defect_mask = sum(1 << s for s in sites)
    columns: dict[int, int] = {}
    amp = np.zeros((8, len(states)))
    for s, a in zip(states, psi):
        b = 4 * (s >> sites[0] & 1) + 2 * (s >> sites[1] & 1) + (s >> sites[2] & 1)
        col = columns.setdefault(s & ~defect_mask, len(columns))
        amp[b, col] += a
    amp = amp[:, : len(columns)]
    return DefectRDM.from_matrix(amp @ amp.T)
