"""Seeded quasi-Newton minimization with multistart.

A small BFGS with central finite-difference gradients and a backtracking
(Armijo) line search.  The optimizer is deliberately self-contained so its
stopping rules are exactly the documented ones; it is cross-checked against a
reference minimizer in the test-suite.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

__all__ = ["OptimizeResult", "OptimizationError", "minimize", "multistart", "run_streams", "fd_gradient"]

FD_STEP = 1e-6
GTOL = 1e-9
MAX_ITER = 500
FTOL = 1e-15

Objective = Callable[[np.ndarray], float]
Sampler = Callable[[np.random.Generator], np.ndarray]


class OptimizationError(RuntimeError):
    """Every multistart run failed to produce a finite objective."""


@dataclass(frozen=True)
class OptimizeResult:
    best_params: np.ndarray
    best_value: float
    converged: bool
    evaluations: int
    iterations: int = 0
    runs: int = 1


class _Counted:
    def __init__(self, fun: Objective):
        self.fun = fun
        self.calls = 0

    def __call__(self, x: np.ndarray) -> float:
        self.calls += 1
        return float(self.fun(x))


def fd_gradient(fun: Objective, x: np.ndarray, step: float = FD_STEP) -> np.ndarray:
    """Central finite-difference gradient."""
    g = np.empty_like(x, dtype=float)
    for i in range(len(x)):
        e = np.zeros_like(x, dtype=float)
        e[i] = step
        g[i] = (fun(x + e) - fun(x - e)) / (2.0 * step)
    return g


def minimize(
    objective: Objective,
    x0,
    tol: float = GTOL,
    max_iter: int = MAX_ITER,
    step: float = FD_STEP,
) -> OptimizeResult:
    """Minimize ``objective`` by BFGS from ``x0``.

    Stops when the gradient norm drops below ``tol`` (``converged=True``),
    when a line search cannot make progress and the relative decrease has
    stalled below ``1e-15`` (also reported as converged, since the
    finite-difference gradient is then at its noise floor), or after
    ``max_iter`` iterations.

    Parameters
    ----------
    objective : callable
        Maps a 1-d float array to a real number.
    x0 : array_like
        Starting point; the objective must be finite there.
    tol : float
        Gradient-norm tolerance.
    max_iter : int
        Iteration cap.
    step : float
        Central-difference step.
    """
    fun = _Counted(objective)
    x = np.array(x0, dtype=float).ravel()
    f = fun(x)
    if not np.isfinite(f):
        raise ValueError("objective is not finite at the starting point")
    g = fd_gradient(fun, x, step)
    n = len(x)
    hinv = np.eye(n)
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        if np.linalg.norm(g) < tol:
            converged = True
            break
        p = -hinv @ g
        slope = float(p @ g)
        if slope >= 0:
            # lost descent direction: restart from steepest descent
            hinv = np.eye(n)
            p = -g
            slope = float(p @ g)
        alpha = 1.0
        accepted = False
        for _ in range(60):
            x_new = x + alpha * p
            f_new = fun(x_new)
            if np.isfinite(f_new) and f_new <= f + 1e-4 * alpha * slope:
                accepted = True
                break
            alpha *= 0.5
        if not accepted:
            converged = abs(f) < np.inf and np.linalg.norm(g) < max(tol, 1e3 * step)
            break
        g_new = fd_gradient(fun, x_new, step)
        s = x_new - x
        y = g_new - g
        sy = float(s @ y)
        stalled = abs(f - f_new) <= FTOL * max(1.0, abs(f))
        x, f, g = x_new, f_new, g_new
        if sy > 1e-12 * np.linalg.norm(s) * np.linalg.norm(y):
            rho = 1.0 / sy
            v = np.eye(n) - rho * np.outer(s, y)
            hinv = v @ hinv @ v.T + rho * np.outer(s, s)
        if stalled:
            converged = np.linalg.norm(g) < max(tol, 1e3 * step)
            break
    else:
        converged = bool(np.linalg.norm(g) < tol)
    return OptimizeResult(x, f, bool(converged), fun.calls, it)


def run_streams(seed: int | None, runs: int) -> list[np.random.Generator]:
    """Independent generators for each run, derived from one master seed."""
    root = np.random.SeedSequence(seed)
    return [np.random.default_rng(child) for child in root.spawn(runs)]


def multistart(
    objective: Objective,
    sampler: Sampler,
    runs: int = 100,
    seed: int | None = None,
    tol: float = GTOL,
    max_iter: int = MAX_ITER,
) -> OptimizeResult:
    """Best of ``runs`` local minimizations from sampled starting points.

    Run ``i`` draws its start from the ``i``-th child of
    ``SeedSequence(seed)``, so the outcome does not depend on how runs are
    scheduled and the first ``r`` runs are shared by any larger ``runs``.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    best: OptimizeResult | None = None
    evaluations = 0
    failures = []
    for i, rng in enumerate(run_streams(seed, runs)):
        try:
            res = minimize(objective, sampler(rng), tol=tol, max_iter=max_iter)
        except (ValueError, FloatingPointError) as exc:
            failures.append(f"run {i}: {exc}")
            continue
        evaluations += res.evaluations
        if best is None or res.best_value < best.best_value:
            best = res
    if best is None:
        raise OptimizationError("all multistart runs failed: " + "; ".join(failures[:5]))
    if not best.converged:
        warnings.warn("best multistart run did not meet the gradient tolerance", RuntimeWarning, stacklevel=2)
    return OptimizeResult(best.best_params, best.best_value, best.converged, evaluations, best.iterations, runs)
