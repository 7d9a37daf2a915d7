"""Parameter sweeps and their CSV output."""
from __future__ import annotations

import configparser
import csv
import io
import json
import platform
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .greens import ImpuritySet, NoRootsError, bound_state_energies, region_classify
from .measures import MEASURES, measure
from .model import ChainSpec, validate
from .rdm import RDM_FIELDS, defect_rdm
from .spectrum import count_bound_states, spectrum_rows

__all__ = [
    "SWEEP_COLUMNS",
    "SweepPlan",
    "eps_d_grid",
    "load_plan",
    "sweep_rows",
    "run_sweep",
    "run_spectrum",
    "run_regions",
    "run_rdm_dump",
    "write_csv",
]

SWEEP_COLUMNS = (
    "h", "d", "epsilon", "eps_d", "c12", "c13", "gme_analytic",
    "gme_lb_ma", "gme_lb_hong", "witness_w", "seed", "error",
)  # fmt: skip


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


def write_csv(path: str | Path | None, columns, rows, comment: str) -> str:
    """Write ``rows`` as CSV with a leading ``#`` comment line; return the text."""
    buf = io.StringIO()
    buf.write(f"# {comment}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text


def eps_d_grid(start: float, stop: float, step: float) -> np.ndarray:
    """Inclusive grid ``start, start + step, ..., <= stop`` rounded to 12 digits."""
    if step <= 0:
        raise ValueError("grid step must be positive")
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return np.round(start + step * np.arange(max(count, 0)), 12)


@dataclass(frozen=True)
class SweepPlan:
    """Everything needed to reproduce one sweep."""

    h: float = 2.0
    d_list: tuple[int, ...] = tuple(range(1, 10))
    eps_d_min: float = 0.05
    eps_d_max: float = 6.0
    eps_d_step: float = 0.05
    n: int = 1024
    seed: int = 0
    measures: tuple[str, ...] = ("concurrence", "analytic", "ma", "hong")
    runs: int = 100
    witness_iters: int = 1500
    witness_samples: int = 1000
    threads: int = 1
    out: str | None = None
    extra: dict = field(default_factory=dict, compare=False)

    def grid(self) -> np.ndarray:
        return eps_d_grid(self.eps_d_min, self.eps_d_max, self.eps_d_step)

    def validate(self) -> "SweepPlan":
        grid = self.grid()
        if len(grid) == 0 or np.any(np.diff(grid) <= 0):
            raise ValueError("the eps*d grid must be non-empty and strictly increasing")
        if grid[0] <= 0:
            raise ValueError("all eps*d values must be positive")
        if not self.d_list or min(self.d_list) < 1:
            raise ValueError("d values must be >= 1")
        unknown = set(self.measures) - set(MEASURES)
        if unknown:
            raise ValueError(f"unknown measures: {sorted(unknown)}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        return self

    def points(self) -> list[tuple[int, int, float]]:
        """``(index, d, eps_d)`` in output order."""
        out = []
        for d in self.d_list:
            for x in self.grid():
                out.append((len(out), int(d), float(x)))
        return out

    def describe(self) -> str:
        return (
            f"xxdefects sweep h={self.h!r} d={','.join(map(str, self.d_list))} "
            f"eps_d={self.eps_d_min!r}:{self.eps_d_max!r}:{self.eps_d_step!r} n={self.n} "
            f"seed={self.seed} measures={','.join(self.measures) or '-'} runs={self.runs} "
            f"witness={self.witness_iters}x{self.witness_samples}"
        )


_PLAN_TYPES = {
    "h": float, "eps_d_min": float, "eps_d_max": float, "eps_d_step": float,
    "n": int, "seed": int, "runs": int, "witness_iters": int, "witness_samples": int,
    "threads": int, "out": str,
}  # fmt: skip


def _split_list(text: str) -> list[str]:
    return [t for t in text.replace(",", " ").split() if t]


def parse_d_list(text: str) -> tuple[int, ...]:
    """``"1..9"``, ``"1,3,5"`` or ``"2"``."""
    text = text.strip()
    if ".." in text:
        lo, hi = text.split("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(t) for t in _split_list(text))


def load_plan(path: str | Path) -> SweepPlan:
    """Read a flat ``key = value`` plan file."""
    parser = configparser.ConfigParser()
    parser.read_string("[plan]\n" + Path(path).read_text())
    raw = dict(parser["plan"])
    values: dict = {}
    for key, text in raw.items():
        if key == "d_list" or key == "d":
            values["d_list"] = parse_d_list(text)
        elif key == "measures":
            values["measures"] = tuple(_split_list(text))
        elif key in _PLAN_TYPES:
            values[key] = _PLAN_TYPES[key](text)
        else:
            raise ValueError(f"unknown plan key {key!r}")
    return SweepPlan(**values).validate()


def _point(args) -> list:
    plan, index, d, x = args
    epsilon = x / d
    point_seed = int(np.random.SeedSequence([plan.seed, index]).generate_state(1)[0])
    row = [plan.h, d, epsilon, x]
    try:
        rdm = defect_rdm(validate(ChainSpec(plan.n, plan.h, epsilon, d)))
        rep = measure(
            rdm,
            plan.measures,
            seed=point_seed,
            runs=plan.runs,
            witness_iters=plan.witness_iters,
            witness_samples=plan.witness_samples,
        )
        row += [rep.c12, rep.c13, rep.gme_analytic, rep.gme_lb_ma, rep.gme_lb_hong, rep.witness_w]
        error = ""
    except Exception as exc:  # recorded per point, the sweep goes on
        row += [None] * 6
        error = f"{type(exc).__name__}: {exc}".replace("\n", " ")
    return row + [point_seed, error]


def sweep_rows(plan: SweepPlan) -> list[list]:
    """Compute all sweep rows in plan order."""
    plan.validate()
    if not plan.measures:
        return []
    tasks = [(plan, i, d, x) for i, d, x in plan.points()]
    if plan.threads == 1:
        return [_point(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=plan.threads) as pool:
        return list(pool.map(_point, tasks, chunksize=1))


def _sidecar(path: Path, payload: dict) -> None:
    payload = dict(payload)
    payload["version"] = __version__
    payload["python"] = platform.python_version()
    payload["numpy"] = np.__version__
    payload["created"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    Path(str(path) + ".meta.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def run_sweep(plan: SweepPlan) -> str:
    """Run the sweep, write the CSV (and its ``.meta.json`` sidecar) and return the CSV text."""
    rows = sweep_rows(plan)
    text = write_csv(plan.out, SWEEP_COLUMNS, rows, plan.describe())
    if plan.out is not None:
        meta = asdict(plan)
        meta.pop("extra")
        _sidecar(Path(plan.out), {"command": "sweep", "plan": meta})
    return text


def run_spectrum(
    h: float, d: int, eps_grid, n: int = 1024, out: str | Path | None = None
) -> str:
    """Single-particle levels versus defect strength: ``epsilon, omega_index, omega``."""
    rows = []
    for eps in eps_grid:
        for q, omega in spectrum_rows(ChainSpec(n, h, float(eps), d)):
            rows.append((float(eps), q, omega))
    text = write_csv(out, ("epsilon", "omega_index", "omega"), rows, f"xxdefects spectrum h={h!r} d={d} n={n}")
    if out is not None:
        _sidecar(Path(out), {"command": "spectrum", "h": h, "d": d, "n": n, "eps": [float(e) for e in eps_grid]})
    return text


def run_regions(
    eps_grid, d_list, n: int = 2048, h: float = 2.0, out: str | Path | None = None
) -> str:
    """Bound-state count by three methods: ``epsilon, d, region_analytic, region_spectral, region_greens``."""
    rows = []
    for d in d_list:
        for eps in eps_grid:
            eps = float(eps)
            analytic = int(region_classify(eps, d))
            spectral = count_bound_states(ChainSpec(n, h, eps, d))
            try:
                greens = len(bound_state_energies(ImpuritySet.symmetric(eps, d), h))
            except NoRootsError:
                greens = 0
            rows.append((eps, int(d), analytic, spectral, greens))
    columns = ("epsilon", "d", "region_analytic", "region_spectral", "region_greens")
    text = write_csv(out, columns, rows, f"xxdefects regions h={h!r} n={n}")
    if out is not None:
        _sidecar(Path(out), {"command": "regions", "h": h, "n": n, "d": list(d_list), "eps": [float(e) for e in eps_grid]})
    return text


def run_rdm_dump(
    h: float, d_list, eps_d_values, n: int = 1024, out: str | Path | None = None
) -> str:
    """The ten RDM entries per point: ``h, d, epsilon, eps_d, rho00..rho36, error``."""
    rows = []
    for d in d_list:
        for x in eps_d_values:
            eps = float(x) / d
            try:
                values = list(defect_rdm(ChainSpec(n, h, eps, d)).values())
                error = ""
            except Exception as exc:
                values = [None] * len(RDM_FIELDS)
                error = f"{type(exc).__name__}: {exc}"
            rows.append([h, int(d), eps, float(x), *values, error])
    columns = ("h", "d", "epsilon", "eps_d", *RDM_FIELDS, "error")
    text = write_csv(out, columns, rows, f"xxdefects rdm-dump h={h!r} n={n}")
    if out is not None:
        _sidecar(Path(out), {"command": "rdm-dump", "h": h, "n": n, "d": list(d_list)})
    return text
