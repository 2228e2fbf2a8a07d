"""Rate studies, complexity curves and comparisons, with CSV output.

Cost is counted as the number of function evaluations ``n``.
"""

import csv
import dataclasses
import io
import json
import math
import os
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import algorithms as alg
from .constants import ProblemConstants, c_app, problem_constants
from .geometry import build_partition, check_dimension
from .streams import as_stream

PROBLEMS = ("int", "app")


def _check_problem(problem):
    problem = str(problem).lower()
    if problem not in PROBLEMS:
        raise ValueError(f"problem must be one of {PROBLEMS}, got {problem!r}")
    return problem


@dataclass(frozen=True)
class RateStudyRow:
    problem: str
    d: int
    p: int
    n: int
    analytic_error: float
    empirical_error: float
    stderr: float
    replicates: int

    def deviation(self, allowance=0.0):
        """``|empirical - analytic|`` in units of ``stderr`` after subtracting ``allowance``."""
        excess = max(abs(self.empirical_error - self.analytic_error) - allowance, 0.0)
        if self.stderr > 0:
            return excess / self.stderr
        return math.inf if excess > 0 else 0.0


@dataclass(frozen=True)
class ErrorTableRow:
    problem: str
    d: int
    p: int
    n: int
    analytic_error: float


@dataclass(frozen=True)
class ComplexityRow:
    problem: str
    d: int
    epsilon: float
    n: int
    achieved_error: float


@dataclass
class ComplexityCurve:
    problem: str
    d: int
    rows: list = field(default_factory=list)

    def slope(self, min_n=100):
        """Log-log slope of ``n(eps)`` against ``eps``, ignoring rows with ``n < min_n``."""
        kept = [r for r in self.rows if r.n >= min_n]
        slope, _, _ = fit_loglog_slope([r.epsilon for r in kept], [r.n for r in kept])
        return slope

    def expected_slope(self):
        return -2.0 / (1.0 + 1.0 / self.d) if self.problem == "int" else -2.0 * self.d


@dataclass(frozen=True)
class McComparison:
    d: int
    p: int
    n: int
    haber_error: float
    classical_error: float
    ratio: float
    expected_ratio: float


@dataclass(frozen=True)
class MidpointComparison:
    d: int
    p: int
    n: int
    midpoint_error: float
    haber_error: float
    ratio: float


def analytic_error(problem, d, p, quad_order=None):
    problem = _check_problem(problem)
    if problem == "int":
        return alg.haber_avg_error(d, p, quad_order)
    return alg.pc_avg_error(d, p, quad_order)


def error_table(problem, d, p_list, quad_order=None):
    problem = _check_problem(problem)
    d = check_dimension(d)
    return [ErrorTableRow(problem, d, p, p**d, analytic_error(problem, d, p, quad_order))
            for p in p_list]


def rate_study(problem, d, p_list, replicates=400, rng=None, quad_order=None, grid_m=None):
    """Analytic and simulated errors for each ``p`` in ``p_list``.

    Each ``p`` gets its own substream of ``rng`` (by position in the list),
    so rows are reproducible independently of one another. ``grid_m`` is only
    used for the approximation problem and defaults to ``8 * p``.
    """
    problem = _check_problem(problem)
    d = check_dimension(d)
    p_list = list(p_list)
    if not p_list or sorted(set(p_list)) != p_list:
        raise ValueError("p_list must be nonempty and strictly ascending")
    rng = as_stream(rng)
    rows = []
    for k, p in enumerate(p_list):
        sub = rng.substream(k)
        if problem == "int":
            est, se = alg.empirical_haber_error(d, p, replicates, sub, quad_order)
        else:
            est, se = alg.empirical_app_error(d, p, grid_m or 8 * p, replicates, sub)
        rows.append(RateStudyRow(problem, d, p, p**d, analytic_error(problem, d, p, quad_order),
                                 est, se, replicates))
    return rows


def fit_loglog_slope(x, y):
    """Least-squares line through ``(log x, log y)``.

    Returns
    -------
    slope, intercept, max_residual : float
    """
    lx = np.log(np.asarray(x, dtype=float))
    ly = np.log(np.asarray(y, dtype=float))
    if lx.size < 3 or np.unique(lx).size < 2:
        raise ValueError("need at least 3 points with distinct abscissae")
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    return float(slope), float(intercept), float(np.max(np.abs(resid)))


def rows_slope(rows, column="analytic_error"):
    """Slope of ``column`` against ``n`` for rate-study or error-table rows."""
    return fit_loglog_slope([r.n for r in rows], [getattr(r, column) for r in rows])


def complexity_curve(problem, d, eps_list, quad_order=None) -> ComplexityCurve:
    """Cardinality ``n(eps)`` that guarantees average error at most ``eps``."""
    problem = _check_problem(problem)
    d = check_dimension(d)
    bound = math.sqrt(c_app(d, quad_order))
    eps_list = sorted((float(e) for e in eps_list), reverse=True)
    if not eps_list or eps_list[-1] <= 0 or eps_list[0] > bound:
        raise ValueError(f"eps values must lie in (0, {bound:.6g}]")
    curve = ComplexityCurve(problem, d)
    for eps in eps_list:
        if problem == "int":
            p = alg.p_int_for_epsilon(eps, d, quad_order)
        else:
            p = alg.p_app_for_epsilon(eps, d, quad_order)
        curve.rows.append(
            ComplexityRow(problem, d, eps, p**d, analytic_error(problem, d, p, quad_order))
        )
    return curve


def mc_comparison(d, p, quad_order=None) -> McComparison:
    d = check_dimension(d)
    n = p**d
    haber = alg.haber_avg_error(d, p, quad_order)
    classical = alg.classical_mc_avg_error(d, n, quad_order)
    return McComparison(d, p, n, haber, classical, classical / haber, n ** (0.5 / d))


def midpoint_vs_haber(d, p, quad_order=None) -> MidpointComparison:
    """Exact error of the cell-center rule next to the Haber formula. Report only."""
    partition = build_partition(d, p)
    mid = alg.linear_rule_avg_error(alg.midpoint_rule(partition), quad_order)
    haber = alg.haber_avg_error(d, p, quad_order)
    return MidpointComparison(d, p, partition.n, mid, haber, mid / haber)


# -- output -----------------------------------------------------------------

def _format(value):
    if isinstance(value, (float, np.floating)):
        return f"{value:.12g}"
    return str(value)


def write_csv(rows, path=None, row_type=None):
    """Write report rows as CSV with a header taken from the row dataclass.

    ``path`` may be a filesystem path, an open text file, or None (returns the
    CSV text). A path is written atomically, so a failure never leaves a
    partial file behind. ``row_type`` is required only for an empty list.
    """
    rows = list(rows)
    row_type = row_type or (type(rows[0]) if rows else None)
    if row_type is None:
        raise ValueError("row_type is required to write an empty report")
    names = [f.name for f in dataclasses.fields(row_type)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(names)
    for row in rows:
        writer.writerow([_format(getattr(row, name)) for name in names])
    text = buf.getvalue()
    if path is None:
        return text
    if hasattr(path, "write"):
        path.write(text)
        return None
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".csv")
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        raise OSError(f"could not write CSV to {path}: {exc}") from exc
    return None


def read_csv(path):
    """Rows of a report CSV as dicts of strings."""
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def constants_table(d_list, quad_order=None):
    return [problem_constants(d, quad_order) for d in d_list]


def load_config(path):
    """Study config: problem, d, p_list or epsilon_list, replicates, master_seed,
    quad_order, grid_m. Unknown keys are rejected."""
    allowed = {"problem", "d", "p_list", "epsilon_list", "replicates", "master_seed",
               "quad_order", "grid_m"}
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError(f"{path}: config must be a JSON object")
    unknown = set(cfg) - allowed
    if unknown:
        raise ValueError(f"{path}: unknown config keys {sorted(unknown)}")
    return cfg


__all__ = [
    "ComplexityCurve", "ComplexityRow", "ErrorTableRow", "McComparison",
    "MidpointComparison", "ProblemConstants", "RateStudyRow", "analytic_error",
    "complexity_curve", "constants_table", "error_table", "fit_loglog_slope",
    "load_config", "mc_comparison", "midpoint_vs_haber", "rate_study", "read_csv",
    "rows_slope", "write_csv",
]
