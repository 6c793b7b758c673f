"""Finite Schur-Horn: a symmetric matrix with prescribed eigenvalues and diagonal.

Starting from diag(lambda) the diagonal is pushed towards d by T-transforms,
each realized as a rotation in the plane of the two coordinates involved.
Every transform matches one more coordinate, so at most n - 1 moves are made.
"""
import logging
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..settings import resolve_settings
from ..seqcore.certified import to_fraction
from .matrices import Realization
from .rotations import offdiag_move

logger = logging.getLogger(__name__)


def _check_majorization(a, b):
    gap = Fraction(0)
    for n, (x, y) in enumerate(zip(a, b), 1):
        gap += x - y
        if gap < 0:
            raise ValueError("d is not majorized by lambda: partial sums fail at n=%d (gap %s)" % (n, gap))
    if gap != 0:
        raise ValueError("traces differ: sum(lambda) - sum(d) = %s" % gap)


def schur_horn_build(lam: Sequence, d: Sequence, settings=None) -> np.ndarray:
    settings = resolve_settings(settings)
    lam = [to_fraction(x) for x in lam]
    d = [to_fraction(x) for x in d]
    if len(lam) != len(d):
        raise ValueError("lambda has %d terms, d has %d" % (len(lam), len(d)))
    n = len(lam)
    x = sorted(lam, reverse=True)
    order = sorted(range(n), key=lambda i: d[i], reverse=True)
    target = [d[i] for i in order]
    _check_majorization(x, target)

    dtype = np.dtype(settings.matrix_dtype)
    E = np.diag(np.array([float(v) for v in x], dtype=dtype))
    basis = np.eye(n, dtype=dtype)
    moves = 0
    while True:
        above = [i for i in range(n) if x[i] > target[i]]
        if not above:
            break
        j = above[-1]
        k = next(i for i in range(j + 1, n) if x[i] < target[i])
        step = min(x[j] - target[j], target[k] - x[k])
        basis, move = offdiag_move(E, j, k, x[j] - step, basis)
        x[j] -= step
        x[k] += step
        moves += 1
    logger.info("schur-horn: %d moves for dimension %d", moves, n)

    sorted_matrix = basis.T @ E @ basis
    sorted_matrix = (sorted_matrix + sorted_matrix.T) / 2
    result = np.empty_like(sorted_matrix)
    result[np.ix_(order, order)] = sorted_matrix
    return result


def schur_horn_realization(lam: Sequence, d: Sequence, settings=None) -> Realization:
    return Realization(schur_horn_build(lam, d, settings), tuple(to_fraction(v) for v in lam),
                       tuple(to_fraction(v) for v in d))
