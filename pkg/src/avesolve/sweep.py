"""Grid search for numerically optimal parameters and convergence-domain data."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DivergenceError, DomainError, NoConvergentParameter
from .linalg import FactorHandle, factorize
from .params import range_fpi_new, range_fpi_old, range_sor_new
from .problems import AveProblem
from .solvers import SolveConfig, solve_fpi, solve_sor_like


def default_grid() -> np.ndarray:
    """The sweep grid 0.001, 0.002, ..., 1.999."""
    return np.round(np.arange(1, 2000) * 0.001, 3)


@dataclass(frozen=True)
class SweepResult:
    grid: np.ndarray
    iterations: np.ndarray  # sentinel k_max + 1 marks non-convergence
    best_param: float
    min_it: int
    sentinel: int


def grid_search(
    problem: AveProblem,
    method: str,
    grid: np.ndarray | None = None,
    cfg: SolveConfig | None = None,
    f: FactorHandle | None = None,
) -> SweepResult:
    """Run the chosen solver at every grid point from zero starting vectors.

    best_param is the first grid point attaining the minimal iteration count.
    """
    if method not in ("sor", "fpi"):
        raise DomainError(f"unknown method '{method}'")
    grid = default_grid() if grid is None else np.asarray(grid, dtype=np.float64)
    if len(grid) == 0:
        raise DomainError("grid must be nonempty")
    if np.any(grid <= 0) or np.any(np.diff(grid) <= 0):
        raise DomainError("grid must be strictly ascending and positive")
    base = cfg if cfg is not None else SolveConfig(parameter=1.0)
    if f is None:
        f = factorize(problem.A)
    solver = solve_sor_like if method == "sor" else solve_fpi
    sentinel = base.k_max + 1
    its = np.full(len(grid), sentinel, dtype=np.int64)
    for idx, p in enumerate(grid):
        run_cfg = SolveConfig(parameter=float(p), tol=base.tol, k_max=base.k_max)
        try:
            report = solver(problem, f, run_cfg)
        except DivergenceError:
            continue
        if report.converged:
            its[idx] = report.iterations
    if np.all(its == sentinel):
        raise NoConvergentParameter("no grid point converged")
    min_it = int(its.min())
    best = float(grid[int(np.argmin(its))])
    return SweepResult(grid, its, best, min_it, sentinel)


def domain_curves(nu_grid: np.ndarray) -> list[dict]:
    """Range boundaries per nu: the data behind the convergence-domain figures."""
    rows = []
    for nu in np.asarray(nu_grid, dtype=np.float64):
        r_sor = range_sor_new(nu)
        r_new = range_fpi_new(nu)
        r_old = range_fpi_old(nu)
        rows.append(
            {
                "nu": float(nu),
                "sor_new_hi": r_sor.upper,
                "fpi_new_hi": r_new.upper,
                "fpi_old_lo": float("nan") if r_old.empty else r_old.lower,
                "fpi_old_hi": float("nan") if r_old.empty else r_old.upper,
                "fpi_old_empty": r_old.empty,
            }
        )
    return rows
