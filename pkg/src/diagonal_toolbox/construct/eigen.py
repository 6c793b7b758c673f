"""Cyclic Jacobi eigensolver and the realization check built on it."""
import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from ..settings import resolve_settings

logger = logging.getLogger(__name__)


def _check_symmetric(matrix, tolerance):
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (matrix.shape,))
    asymmetry = float(np.max(np.abs(matrix - matrix.T))) if matrix.size else 0.0
    if asymmetry > tolerance:
        raise ValueError("matrix is not symmetric, max |A - A^T| = %.3g" % asymmetry)
    return matrix


def off_diagonal_mass(a: np.ndarray) -> float:
    return math.sqrt(float(np.sum(a ** 2) - np.sum(np.diag(a) ** 2)))


def jacobi_eigenvalues(matrix, tolerance=1e-13, max_sweeps=64, dtype=np.float64) -> np.ndarray:
    """Eigenvalues of a symmetric matrix by cyclic two-sided Jacobi sweeps, largest first.

    Stops once the off-diagonal Frobenius mass is below ``tolerance`` times the
    Frobenius norm of the input.
    """
    a = np.array(_check_symmetric(matrix, 1e-9), dtype=dtype, copy=True)
    n = a.shape[0]
    threshold = tolerance * max(1.0, float(np.linalg.norm(a.astype(np.float64))))
    for sweep in range(max_sweeps):
        off = off_diagonal_mass(a)
        if off < threshold:
            logger.debug("jacobi converged after %d sweeps, off-diagonal mass %.3g", sweep, off)
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * a[p, q])
                t = (1 if theta >= 0 else -1) / (abs(theta) + np.sqrt(theta * theta + 1))
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p], a[:, q] = c * col_p - s * col_q, s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :], a[q, :] = c * row_p - s * row_q, s * row_p + c * row_q
    else:
        warnings.warn("jacobi sweeps did not converge, off-diagonal mass %.3g" % off_diagonal_mass(a))
    return np.sort(np.diag(a))[::-1]


@dataclass(frozen=True)
class RealizationReport:
    eigenvalue_residual: float
    diagonal_residual: float
    tolerance: float

    @property
    def ok(self):
        return self.eigenvalue_residual <= self.tolerance and self.diagonal_residual <= self.tolerance

    def to_json(self):
        return {"eigenvalue_residual": self.eigenvalue_residual, "diagonal_residual": self.diagonal_residual,
                "tolerance": self.tolerance, "ok": self.ok}


def realization_tolerance(eigenvalues, settings=None) -> float:
    """The configured tolerance scaled by the dimension and the largest eigenvalue."""
    settings = resolve_settings(settings)
    scale = max([1.0] + [abs(float(x)) for x in eigenvalues])
    return float(settings.tolerance) * max(1, len(eigenvalues)) * scale


def verify_realization(matrix, lam, d, tolerance=None, settings=None) -> RealizationReport:
    """Compares the spectrum of `matrix` with lam as multisets and its diagonal with d entrywise."""
    if tolerance is None:
        tolerance = realization_tolerance(lam, settings)
    matrix = _check_symmetric(matrix, tolerance)
    n = matrix.shape[0]
    if len(lam) != n or len(d) != n:
        raise ValueError("a %dx%d matrix cannot realize %d eigenvalues and %d diagonal entries"
                         % (n, n, len(lam), len(d)))
    eigenvalues = jacobi_eigenvalues(matrix).astype(np.float64)
    expected = np.sort(np.array([float(x) for x in lam]))[::-1]
    diagonal = np.diag(matrix).astype(np.float64)
    report = RealizationReport(float(np.max(np.abs(eigenvalues - expected), initial=0.0)),
                               float(np.max(np.abs(diagonal - np.array([float(x) for x in d])), initial=0.0)),
                               tolerance)
    logger.info("realization residuals: eigenvalues %.3g, diagonal %.3g",
                report.eigenvalue_residual, report.diagonal_residual)
    return report
