"""Pfaffian of real antisymmetric matrices."""
from __future__ import annotations

import numpy as np

__all__ = ["pfaffian", "pfaffian_expansion"]

MAX_DIM = 64


def _check(a: np.ndarray, tol: float) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if a.shape[0] > MAX_DIM:
        raise ValueError(f"dimension {a.shape[0]} exceeds {MAX_DIM}")
    scale = max(1.0, float(np.abs(a).max(initial=0.0)))
    if np.abs(a + a.T).max(initial=0.0) > tol * scale:
        raise ValueError("matrix is not antisymmetric")
    return a


def pfaffian(a: np.ndarray, tol: float = 1e-12) -> float:
    """Pfaffian by Parlett-Reid elimination with partial pivoting.

    The matrix is reduced to tridiagonal antisymmetric form by congruence
    ``L A L^T`` with unit lower-triangular ``L``; the Pfaffian is the product
    of the super-diagonal pivots ``A[k, k+1]`` for even ``k``, with a sign
    flip per row/column interchange.
    """
    a = _check(a, tol).copy()
    n = a.shape[0]
    if n % 2:
        return 0.0
    result = 1.0
    for k in range(0, n - 1, 2):
        kp = k + 1 + int(np.abs(a[k + 1 :, k]).argmax())
        if kp != k + 1:
            a[[k + 1, kp], k:] = a[[kp, k + 1], k:]
            a[k:, [k + 1, kp]] = a[k:, [kp, k + 1]]
            result = -result
        pivot = a[k, k + 1]
        if pivot == 0.0:
            return 0.0
        result *= pivot
        if k + 2 < n:
            tau = a[k, k + 2 :] / pivot
            col = a[k + 2 :, k + 1]
            a[k + 2 :, k + 2 :] += np.outer(tau, col) - np.outer(col, tau)
    return float(result)


def pfaffian_expansion(a: np.ndarray, tol: float = 1e-12) -> float:
    """Pfaffian by expansion along the first row; exponential cost, dim <= 8."""
    a = _check(a, tol)
    n = a.shape[0]
    if n > 8:
        raise ValueError("expansion is limited to dimension 8")
    return _expand(a, tuple(range(n)))


def _expand(a: np.ndarray, idx: tuple[int, ...]) -> float:
    if not idx:
        return 1.0
    if len(idx) % 2:
        return 0.0
    first, rest = idx[0], idx[1:]
    total = 0.0
    for pos, j in enumerate(rest):
        sign = -1.0 if pos % 2 else 1.0
        total += sign * a[first, j] * _expand(a, rest[:pos] + rest[pos + 1 :])
    return total
