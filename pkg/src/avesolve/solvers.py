"""The SOR-like and fixed-point iterations with shared stopping logic.

Both schemes reuse one factorization of A and perform exactly one
factor-solve per iteration. The relative residual RES is evaluated after
each full (x, y) update; the iteration count is the number of full updates
performed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, DivergenceError, DomainError
from .linalg import FactorHandle, matvec
from .problems import AveProblem


@dataclass(frozen=True)
class SolveConfig:
    """Iteration parameter (omega or tau), tolerances and initial vectors."""

    parameter: float
    tol: float = 1e-8
    k_max: int = 100
    x0: np.ndarray | None = None
    y0: np.ndarray | None = None
    capture_history: bool = False

    def __post_init__(self):
        if self.parameter <= 0:
            raise DomainError("iteration parameter must be positive")
        if self.tol <= 0:
            raise DomainError("tol must be positive")
        if self.k_max < 1:
            raise DomainError("k_max must be at least 1")

    def initial_vectors(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        x0 = np.zeros(n) if self.x0 is None else np.asarray(self.x0, dtype=np.float64)
        y0 = np.zeros(n) if self.y0 is None else np.asarray(self.y0, dtype=np.float64)
        if x0.shape != (n,) or y0.shape != (n,):
            raise DimensionMismatch("initial vectors must have the problem dimension")
        return x0.copy(), y0.copy()


@dataclass
class SolveReport:
    converged: bool
    iterations: int
    final_res: float
    x: np.ndarray
    y: np.ndarray
    res_history: list[float] = field(default_factory=list)
    iterate_history: list[tuple[np.ndarray, np.ndarray]] | None = None


def residual(problem: AveProblem, x: np.ndarray) -> float:
    """Relative residual ||A x - |x| - b||_2 / ||b||_2."""
    norm_b = np.linalg.norm(problem.b)
    if norm_b == 0.0:
        raise DomainError("relative residual undefined for b = 0")
    return float(np.linalg.norm(matvec(problem.A, x) - np.abs(x) - problem.b) / norm_b)


def _run(problem: AveProblem, f: FactorHandle, cfg: SolveConfig, sor: bool) -> SolveReport:
    if f.n != problem.n:
        raise DimensionMismatch("factorization dimension differs from problem dimension")
    w = cfg.parameter
    x, y = cfg.initial_vectors(problem.n)
    res_history: list[float] = []
    iterate_history = [] if cfg.capture_history else None
    res = residual(problem, x)
    for k in range(1, cfg.k_max + 1):
        z = f.solve(y + problem.b)
        if sor:
            x = (1.0 - w) * x + w * z
        else:
            x = z
        y = (1.0 - w) * y + w * np.abs(x)
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise DivergenceError(k)
        res = residual(problem, x)
        res_history.append(res)
        if iterate_history is not None:
            iterate_history.append((x.copy(), y.copy()))
        if res <= cfg.tol:
            return SolveReport(True, k, res, x, y, res_history, iterate_history)
    return SolveReport(False, cfg.k_max, res, x, y, res_history, iterate_history)


def solve_sor_like(problem: AveProblem, f: FactorHandle, cfg: SolveConfig) -> SolveReport:
    """SOR-like iteration: x <- (1-w)x + w A^{-1}(y+b); y <- (1-w)y + w|x|."""
    return _run(problem, f, cfg, sor=True)


def solve_fpi(problem: AveProblem, f: FactorHandle, cfg: SolveConfig) -> SolveReport:
    """Fixed-point iteration: x <- A^{-1}(y+b); y <- (1-t)y + t|x|."""
    return _run(problem, f, cfg, sor=False)
