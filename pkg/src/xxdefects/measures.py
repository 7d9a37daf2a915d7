"""All entanglement quantities for one parameter point."""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .bounds import gme_lower_bound_hong, gme_lower_bound_ma
from .entanglement import NotRank2Error, concurrence_adjacent, concurrence_outer, gme_rank2_analytic
from .rdm import DefectRDM, pattern_mask
from .witness import biseparability_witness

__all__ = ["MEASURES", "MeasureReport", "measure", "sector_support_check"]

MEASURES = ("concurrence", "analytic", "ma", "hong", "witness")


@dataclass(frozen=True)
class MeasureReport:
    c12: float | None = None
    c13: float | None = None
    tau3_support_check: bool | None = None
    gme_analytic: float | None = None
    gme_lb_ma: float | None = None
    gme_lb_hong: float | None = None
    witness_w: float | None = None
    metadata: dict = field(default_factory=dict)


def sector_support_check(rdm: DefectRDM, tol: float = 1e-12) -> bool:
    """True when no coherence connects different magnetization sectors.

    Then every eigenvector can be chosen inside one sector, each component is
    a generalized W (or spin-flipped W, or product) state, and the
    three-tangle of the mixture vanishes.
    """
    raw = rdm.raw if rdm.raw is not None else rdm.matrix
    return bool(np.abs(raw[~pattern_mask()]).max() < tol)


def _child_seeds(seed: int, n: int) -> list[int]:
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(n)]


def measure(
    rdm: DefectRDM,
    measures=MEASURES,
    seed: int = 0,
    runs: int = 100,
    witness_iters: int = 1500,
    witness_samples: int = 1000,
) -> MeasureReport:
    """Evaluate the selected measures.

    ``measures`` is any subset of ``MEASURES``.  The lower bounds and the
    witness draw from independent streams derived from ``seed``.  The
    analytic GME value is reported only where the RDM has rank two.
    """
    unknown = set(measures) - set(MEASURES)
    if unknown:
        raise ValueError(f"unknown measures: {sorted(unknown)}")
    seed_ma, seed_hong, seed_w = _child_seeds(seed, 3)
    values: dict = {}
    meta: dict = {"seed": seed}
    if "concurrence" in measures:
        values["c12"] = concurrence_adjacent(rdm)
        values["c13"] = concurrence_outer(rdm)
        values["tau3_support_check"] = sector_support_check(rdm)
    if "analytic" in measures:
        try:
            values["gme_analytic"] = gme_rank2_analytic(rdm)
        except NotRank2Error:
            values["gme_analytic"] = None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        if "ma" in measures:
            res = gme_lower_bound_ma(rdm, runs=runs, seed=seed_ma)
            values["gme_lb_ma"] = float(res)
            meta["ma_converged"] = res.converged
        if "hong" in measures:
            res = gme_lower_bound_hong(rdm, runs=runs, seed=seed_hong)
            values["gme_lb_hong"] = float(res)
            meta["hong_converged"] = res.converged
    if "ma" in measures or "hong" in measures:
        meta["runs"] = runs
    if "witness" in measures:
        res = biseparability_witness(rdm, iters=witness_iters, samples=witness_samples, seed=seed_w)
        values["witness_w"] = res.w
        meta["witness_iterations"] = res.iterations
    return MeasureReport(**values, metadata=meta)
