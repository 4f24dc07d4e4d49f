"""Sparse SPD matrix storage, Cholesky factorization and inverse-norm estimation.

Matrices are held in full-symmetric CSR (both triangles stored). Factorization
is banded Cholesky without reordering; every tested matrix is small or
narrow-banded, so fill-reducing orderings would buy nothing. For matrices
whose band profile would not fit in memory a sparse LU fallback is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.linalg.lapack import dpbtrf, dpbtrs
from scipy.sparse.linalg import splu

from .errors import ConvergenceFailure, DimensionMismatch, DomainError, NotPositiveDefinite

# Band storage above this many doubles falls back to sparse LU.
_BAND_STORAGE_LIMIT = 40_000_000


@dataclass(frozen=True)
class SparseSpdMatrix:
    """Symmetric positive-definite matrix in CSR form, both triangles stored.

    Positive diagonal and structural/value symmetry are checked on
    construction; full positive definiteness is only established by a
    successful :func:`factorize`.
    """

    n: int
    row_ptr: np.ndarray
    col_idx: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        row_ptr = np.asarray(self.row_ptr, dtype=np.int64)
        col_idx = np.asarray(self.col_idx, dtype=np.int64)
        values = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "row_ptr", row_ptr)
        object.__setattr__(self, "col_idx", col_idx)
        object.__setattr__(self, "values", values)
        if self.n < 1:
            raise DomainError("dimension must be positive")
        if row_ptr.shape != (self.n + 1,):
            raise DomainError("row_ptr must have length n+1")
        if np.any(np.diff(row_ptr) < 0) or row_ptr[0] != 0 or row_ptr[-1] != len(col_idx):
            raise DomainError("row_ptr must be nondecreasing from 0 to nnz")
        if len(col_idx) != len(values):
            raise DomainError("col_idx and values must have equal length")
        if len(col_idx) and (col_idx.min() < 0 or col_idx.max() >= self.n):
            raise DomainError("column indices out of range")
        for i in range(self.n):
            cols = col_idx[row_ptr[i]:row_ptr[i + 1]]
            if np.any(np.diff(cols) <= 0):
                raise DomainError(f"column indices not strictly increasing in row {i}")
        csr = self._as_scipy()
        if (csr != csr.T).nnz != 0:
            raise DomainError("stored pattern/values are not symmetric")
        diag = csr.diagonal()
        if np.any(diag <= 0):
            raise DomainError("every diagonal entry must be stored and positive")

    def _as_scipy(self) -> sp.csr_matrix:
        return sp.csr_matrix((self.values, self.col_idx, self.row_ptr), shape=(self.n, self.n))

    @classmethod
    def from_scipy(cls, mat) -> "SparseSpdMatrix":
        csr = sp.csr_matrix(mat)
        csr.sum_duplicates()
        csr.sort_indices()
        csr.eliminate_zeros()
        return cls(csr.shape[0], csr.indptr, csr.indices, csr.data)

    @classmethod
    def from_dense(cls, arr) -> "SparseSpdMatrix":
        return cls.from_scipy(np.asarray(arr, dtype=np.float64))

    def to_dense(self) -> np.ndarray:
        return self._as_scipy().toarray()

    @property
    def bandwidth(self) -> int:
        rows = np.repeat(np.arange(self.n), np.diff(self.row_ptr))
        return int(np.abs(rows - self.col_idx).max()) if len(self.col_idx) else 0


@dataclass(frozen=True)
class FactorHandle:
    """Reusable factorization of an SPD matrix; solves A z = r for any r."""

    n: int
    _band: np.ndarray | None = field(default=None, repr=False)
    _lu: object | None = field(default=None, repr=False)

    def solve(self, r: np.ndarray) -> np.ndarray:
        r = np.asarray(r, dtype=np.float64)
        if r.shape != (self.n,):
            raise DimensionMismatch(f"right-hand side has length {r.shape}, expected ({self.n},)")
        if self._band is not None:
            z, info = dpbtrs(self._band, r, lower=1)
            if info != 0:
                raise ConvergenceFailure(f"banded triangular solve failed (info={info})")
            return z
        return self._lu.solve(r)


def matvec(A: SparseSpdMatrix, x: np.ndarray) -> np.ndarray:
    """Product A @ x per CSR semantics."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (A.n,):
        raise DimensionMismatch(f"vector has shape {x.shape}, expected ({A.n},)")
    return A._as_scipy() @ x


def factorize(A: SparseSpdMatrix) -> FactorHandle:
    """Cholesky-factorize A once for repeated solves.

    Raises NotPositiveDefinite naming the failing pivot when A is not SPD.
    """
    bw = A.bandwidth
    if (bw + 1) * A.n <= _BAND_STORAGE_LIMIT:
        dense_band = np.zeros((bw + 1, A.n))
        rows = np.repeat(np.arange(A.n), np.diff(A.row_ptr))
        lower = rows >= A.col_idx
        dense_band[rows[lower] - A.col_idx[lower], A.col_idx[lower]] = A.values[lower]
        c, info = dpbtrf(dense_band, lower=1)
        if info > 0:
            raise NotPositiveDefinite(info - 1)
        if info < 0:
            raise ConvergenceFailure(f"dpbtrf illegal argument (info={info})")
        return FactorHandle(A.n, _band=c)
    # Wide-band fallback (e.g. Trefethen_20000b): sparse LU.
    lu = splu(sp.csc_matrix(A._as_scipy()))
    return FactorHandle(A.n, _lu=lu)


def solve_with_factor(f: FactorHandle, r: np.ndarray) -> np.ndarray:
    """Solve A z = r via a prior factorization."""
    return f.solve(r)


def _shifted(A: SparseSpdMatrix, sigma: float) -> SparseSpdMatrix:
    values = A.values.copy()
    rows = np.repeat(np.arange(A.n), np.diff(A.row_ptr))
    values[rows == A.col_idx] -= sigma
    return SparseSpdMatrix(A.n, A.row_ptr, A.col_idx, values)


def estimate_inv_norm(A: SparseSpdMatrix, tol: float = 1e-8, max_sweeps: int = 10_000) -> float:
    """Estimate nu = ||A^{-1}||_2 = 1/lambda_min(A) for SPD A.

    Inverse power iteration with a deterministic all-ones start. The
    Rayleigh quotient is accepted once the eigenpair residual bounds its
    relative error by tol. When the quotient stagnates before that bound is
    met (clustered smallest eigenvalues), iteration restarts on a shifted
    factorization A - sigma*I with sigma just below the current estimate,
    which restores a fast contraction rate.
    """
    if not 0 < tol < 1:
        raise DomainError("tol must lie in (0, 1)")
    f = factorize(A)
    v = np.ones(A.n) / np.sqrt(A.n)
    lam_prev = np.inf
    for _ in range(max_sweeps):
        z = f.solve(v)
        v = z / np.linalg.norm(z)
        Av = matvec(A, v)
        lam = float(v @ Av)
        res = float(np.linalg.norm(Av - lam * v))
        # Symmetric eigenvalue perturbation: some eigenvalue lies within res
        # of lam, and v tracks the minimal eigenvector, so res bounds the error.
        if res <= tol * abs(lam):
            return 1.0 / lam
        if abs(lam - lam_prev) <= 0.05 * res:
            # Stagnating: re-center the factorization just below lam. Keep a
            # margin of res so A - sigma*I stays positive definite; back off
            # further if the Cholesky still hits a non-positive pivot.
            margin = max(res, abs(lam) * 1e-15)
            while True:
                try:
                    f = factorize(_shifted(A, lam - margin))
                    break
                except NotPositiveDefinite:
                    margin *= 4.0
        lam_prev = lam
    raise ConvergenceFailure(f"inverse power iteration did not converge in {max_sweeps} sweeps")
