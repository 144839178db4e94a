"""Monte Carlo experiments: replicate, estimate, summarise.

A *cell* is one (alpha, gamma, n) combination. Replicate r of a cell draws
its sample from ``RngStream(cell_seed, r)`` where ``cell_seed`` hashes the
master seed, the table label and the cell coordinates, so results do not
depend on grid ordering or on how replicates are split across workers.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields
from typing import Callable, Optional, Sequence

import numpy as np

from .distribution import LinnikParams
from .errors import EstimationError, InvalidConfig, LinnikError
from .estimators import (
    CharFnConfig,
    FracMomentConfig,
    Method,
    charfn_config,
    estimate_charfn,
    estimate_frac_moment,
    estimate_mom,
)
from .sampling import RngStream, linnik_variates

PUBLISHED_SIZES = (100, 1000, 10000)
TABLE1_GRID = (
    (0.1, 0.05), (0.2, 0.5), (0.5, 1000.0), (0.8, 100.0),
    (1.0, 0.2), (1.2, 10.0), (1.75, 1.0), (2.0, 0.1),
)
TABLE4_GRID = ((1.1, 0.9), (1.3, 2.0), (1.5, 1.0), (1.7, 10.0), (1.99, 0.1))
TABLES = ("T1", "T2", "T3", "T4")

# Normal-consistency factor: scaled MAD estimates the standard deviation
# for Gaussian estimates.
MAD_NORMAL_SCALE = 1.4826

# Columns each table is read from; the CSV always carries all of them.
TABLE_COLUMNS = {
    "T1": ("mean", "mad"),
    "T2": ("ci_lower_avg", "ci_upper_avg"),
    "T3": ("coverage",),
    "T4": ("mean", "cv_percent"),
}

CSV_HEADER = ("alpha_true", "gamma_true", "n", "method", "parameter", "mean", "mad",
              "cv_percent", "ci_lower_avg", "ci_upper_avg", "coverage", "replicates", "failures")


@dataclass(frozen=True)
class ExperimentConfig:
    grid: tuple  # ((LinnikParams, (n, ...)), ...)
    replicates: int = 2000
    master_seed: int = 1
    methods: tuple = (Method.MOM,)
    epsilon: float = 0.05
    frac_config: FracMomentConfig = FracMomentConfig()
    charfn_lambdas: tuple = (0.001, 0.1)
    workers: int = 1
    # Conventions of the published tables: unbiased variance of log|x| and
    # normal-scaled MAD. Set to 0 and 1.0 for the plain definitions.
    log_var_ddof: int = 1
    mad_scale: float = MAD_NORMAL_SCALE

    def __post_init__(self):
        if self.replicates < 1:
            raise InvalidConfig("replicates must be >= 1")
        if not self.grid:
            raise InvalidConfig("grid must not be empty")
        if not (0.0 < self.epsilon < 1.0):
            raise InvalidConfig("epsilon must lie in (0,1)")
        if not self.methods:
            raise InvalidConfig("at least one method is required")
        object.__setattr__(self, "methods", tuple(Method(m) for m in self.methods))
        for params, sizes in self.grid:
            if not isinstance(params, LinnikParams):
                raise InvalidConfig("grid entries must be (LinnikParams, sizes)")
            if not sizes or any(int(n) < 2 for n in sizes):
                raise InvalidConfig("sample sizes must be >= 2")
        charfn_config(self.charfn_lambdas)


@dataclass
class ReportRow:
    alpha_true: float
    gamma_true: float
    n: int
    method: str
    parameter: str
    mean: float
    mad: float
    cv_percent: float
    ci_lower_avg: float
    ci_upper_avg: float
    coverage: float
    replicates: int
    failures: int


@dataclass
class ExperimentReport:
    rows: list = field(default_factory=list)
    table_id: str = ""

    def find(self, alpha, gamma, n, method=Method.MOM, parameter="alpha") -> ReportRow:
        method = Method(method).value
        for row in self.rows:
            if (row.alpha_true == alpha and row.gamma_true == gamma and row.n == n
                    and row.method == method and row.parameter == parameter):
                return row
        raise KeyError((alpha, gamma, n, method, parameter))

    def average(self, column, n, method=Method.MOM, parameter="alpha") -> float:
        """Average of ``column`` over all grid cells with sample size n."""
        method = Method(method).value
        vals = [getattr(r, column) for r in self.rows
                if r.n == n and r.method == method and r.parameter == parameter]
        return float(np.mean(vals))

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in self.rows:
            writer.writerow([_fmt(getattr(row, name)) for name in CSV_HEADER])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [{k: (None if isinstance(v, float) and math.isnan(v) else v)
                 for k, v in asdict(r).items()} for r in self.rows]
        return json.dumps({"table": self.table_id, "rows": rows}, indent=1)

    @classmethod
    def from_csv(cls, text: str, table_id: str = "") -> "ExperimentReport":
        types = {f.name: f.type for f in fields(ReportRow)}
        rows = []
        for rec in csv.DictReader(io.StringIO(text)):
            kw = {}
            for name in CSV_HEADER:
                raw = rec[name]
                if types[name] == "str":
                    kw[name] = raw
                elif types[name] == "int":
                    kw[name] = int(raw)
                else:
                    kw[name] = float(raw) if raw != "" else math.nan
            rows.append(ReportRow(**kw))
        return cls(rows, table_id)


def _fmt(v):
    if isinstance(v, float):
        return "" if math.isnan(v) else repr(v)
    return str(v)


def cell_seed(master_seed: int, table: str, params: LinnikParams, n: int) -> int:
    """64-bit seed for one cell, independent of where the cell sits in a grid."""
    key = f"{master_seed}|{table}|{params.alpha!r}|{params.gamma!r}|{int(n)}"
    return int.from_bytes(hashlib.sha256(key.encode()).digest()[:8], "little")


# Per-replicate record layout.
_FIELDS = ("alpha_hat", "gamma_hat", "ci_a_lo", "ci_a_hi", "ci_g_lo", "ci_g_hi")


def _default_estimators(config: ExperimentConfig) -> dict:
    cf = charfn_config(config.charfn_lambdas)
    return {
        Method.MOM: _Mom(config.epsilon, config.log_var_ddof),
        Method.FRAC: _Frac(config.frac_config),
        Method.CHARFN: _CharFn(cf, config.epsilon),
    }


@dataclass(frozen=True)
class _Mom:
    epsilon: float
    ddof: int = 0

    def __call__(self, x):
        return estimate_mom(x, self.epsilon, self.ddof)


@dataclass(frozen=True)
class _Frac:
    config: FracMomentConfig

    def __call__(self, x):
        return estimate_frac_moment(x, self.config)


@dataclass(frozen=True)
class _CharFn:
    config: CharFnConfig
    epsilon: float

    def __call__(self, x):
        return estimate_charfn(x, self.config, self.epsilon)


def _run_replicates(params, n, seed, first, last, estimators):
    """Records for replicates first..last-1: array (count, methods, 6) plus failure mask."""
    count = last - first
    out = np.full((count, len(estimators), len(_FIELDS)), np.nan)
    failed = np.zeros((count, len(estimators)), dtype=bool)
    for i, r in enumerate(range(first, last)):
        x = linnik_variates(RngStream(seed, r).generator(), params, n)
        for j, est in enumerate(estimators):
            try:
                res = est(x)
            except (EstimationError, LinnikError, FloatingPointError):
                failed[i, j] = True
                continue
            out[i, j, 0] = res.alpha_hat
            out[i, j, 1] = res.gamma_hat
            if res.ci_alpha is not None:
                out[i, j, 2:4] = res.ci_alpha
            if res.ci_gamma is not None:
                out[i, j, 4:6] = res.ci_gamma
    return out, failed


def _run_replicates_star(args):
    return _run_replicates(*args)


def _summarise(values, failed, lo, hi, truth, mad_scale):
    ok = ~failed
    used = int(ok.sum())
    est = values[ok]
    if used == 0:
        return dict(mean=math.nan, mad=math.nan, cv_percent=math.nan, ci_lower_avg=math.nan,
                    ci_upper_avg=math.nan, coverage=math.nan, replicates=0)
    mean = float(np.mean(est))
    mad = float(mad_scale * np.median(np.abs(est - truth)))
    cv = float(100.0 * np.std(est, ddof=1) / mean) if used > 1 else math.nan
    lo, hi = lo[ok], hi[ok]
    has_ci = ~(np.isnan(lo) | np.isnan(hi))
    if has_ci.any():
        ci_lo = float(np.mean(lo[has_ci]))
        ci_hi = float(np.mean(hi[has_ci]))
        coverage = float(np.mean((lo[has_ci] <= truth) & (truth <= hi[has_ci])))
    else:
        ci_lo = ci_hi = coverage = math.nan
    return dict(mean=mean, mad=mad, cv_percent=cv, ci_lower_avg=ci_lo,
                ci_upper_avg=ci_hi, coverage=coverage, replicates=used)


def run_cell(params: LinnikParams, n: int, config: ExperimentConfig, table: str = "",
             estimators: Optional[dict] = None, executor=None) -> list[ReportRow]:
    """Simulate one cell and return one row per (method, parameter).

    ``estimators`` maps Method to a callable on a value array; it defaults to
    the package estimators configured from ``config``. Failed estimates are
    excluded from every aggregate and counted in ``failures``.
    """
    m = config.replicates
    seed = cell_seed(config.master_seed, table, params, n)
    table_of = _default_estimators(config)
    if estimators:
        table_of.update({Method(k): v for k, v in estimators.items()})
    ests = [table_of[meth] for meth in config.methods]

    workers = max(1, int(config.workers))
    if workers == 1 and executor is None:
        values, failed = _run_replicates(params, n, seed, 1, m + 1, ests)
    else:
        chunk = max(1, math.ceil(m / (4 * workers)))
        jobs = [(params, n, seed, s, min(s + chunk, m + 1), ests) for s in range(1, m + 1, chunk)]
        if executor is not None:
            parts = list(executor.map(_run_replicates_star, jobs))
        else:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(_run_replicates_star, jobs))
        values = np.concatenate([p[0] for p in parts])
        failed = np.concatenate([p[1] for p in parts])

    rows = []
    for j, meth in enumerate(config.methods):
        for pname, k, truth in (("alpha", 0, params.alpha), ("gamma", 1, params.gamma)):
            lo_idx, hi_idx = (2, 3) if pname == "alpha" else (4, 5)
            stats = _summarise(values[:, j, k], failed[:, j], values[:, j, lo_idx],
                               values[:, j, hi_idx], truth, config.mad_scale)
            rows.append(ReportRow(params.alpha, params.gamma, int(n), meth.value, pname,
                                  failures=int(failed[:, j].sum()), **stats))
    return rows


def table_config(table_id: str, replicates: int = 2000, sizes: Sequence[int] = PUBLISHED_SIZES,
                 master_seed: int = 1, workers: int = 1, params: Optional[Sequence] = None,
                 **kwargs) -> ExperimentConfig:
    """Configuration reproducing one of the four published tables.

    ``params`` optionally replaces the table's (alpha, gamma) grid.
    """
    table_id = _table_id(table_id)
    pairs = params if params is not None else (TABLE4_GRID if table_id == "T4" else TABLE1_GRID)
    methods = (Method.MOM, Method.FRAC, Method.CHARFN) if table_id == "T4" else (Method.MOM,)
    grid = tuple((p if isinstance(p, LinnikParams) else LinnikParams(*p), tuple(sizes))
                 for p in pairs)
    kwargs.setdefault("methods", methods)
    return ExperimentConfig(grid=grid, replicates=replicates, master_seed=master_seed,
                            workers=workers, **kwargs)


def _table_id(table_id) -> str:
    tid = str(table_id).upper()
    if not tid.startswith("T"):
        tid = "T" + tid
    if tid not in TABLES:
        raise InvalidConfig(f"unknown table {table_id!r}; expected one of {TABLES}")
    return tid


def run_table(table_id: str, config: Optional[ExperimentConfig] = None,
              progress: Optional[Callable[[str], None]] = None) -> ExperimentReport:
    table_id = _table_id(table_id)
    if config is None:
        config = table_config(table_id)
    report = ExperimentReport(table_id=table_id)
    workers = max(1, int(config.workers))
    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for params, sizes in config.grid:
            for n in sizes:
                if progress:
                    progress(f"{table_id}: alpha={params.alpha} gamma={params.gamma} n={n}")
                report.rows.extend(run_cell(params, n, config, table=table_id, executor=pool))
    finally:
        if pool is not None:
            pool.shutdown()
    return report


def coverage_check(params: LinnikParams, n: int, m: int, seed: int = 1,
                   estimator: Optional[Callable] = None, workers: int = 1,
                   epsilon: float = 0.05) -> tuple[float, float]:
    """Empirical coverage of the MoM confidence intervals for (alpha, gamma)."""
    config = ExperimentConfig(grid=((params, (n,)),), replicates=m, master_seed=seed,
                              methods=(Method.MOM,), workers=workers, epsilon=epsilon)
    rows = run_cell(params, n, config, table="coverage",
                    estimators={Method.MOM: estimator} if estimator else None)
    by_param = {r.parameter: r.coverage for r in rows}
    return by_param["alpha"], by_param["gamma"]
