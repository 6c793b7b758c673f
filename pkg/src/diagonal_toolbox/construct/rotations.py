"""Rotation chains: orthonormal bases built from 2x2 moves.

A move rotates two basis vectors u_i, u_j into

    e_1 = sqrt(alpha) u_i + sign sqrt(1 - alpha) u_j
    e_2 = sqrt(1 - alpha) u_i - sign sqrt(alpha) u_j

which keeps the sum of the two diagonal entries and moves them towards each
other. A chain feeds the second vector of each move into the next one.
"""
import logging
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

ORTHOGONALITY_TOLERANCE = 1e-10


@dataclass(frozen=True)
class Move:
    i: int
    j: int
    alpha: float
    sign: int = 1

    def to_json(self):
        return {"i": self.i, "j": self.j, "alpha": float(self.alpha), "sign": self.sign}


def _as_float(x) -> float:
    return float(x)


def _rotate(basis: np.ndarray, i: int, j: int, alpha, sign=1):
    u, v = basis[:, i].copy(), basis[:, j].copy()
    a = math.sqrt(_as_float(alpha))
    b = math.sqrt(max(0.0, 1.0 - _as_float(alpha)))
    basis[:, i] = a * u + sign * b * v
    basis[:, j] = b * u - sign * a * v


def offdiag_move(E, i: int, j: int, target, basis=None, tolerance=1e-12) -> Tuple[np.ndarray, Move]:
    """Rotates basis vectors i and j so that vector i carries the diagonal entry `target`.

    The current entries of the two vectors must differ and bracket the target.
    Returns the rotated basis (a new array) and the move.
    """
    E = np.asarray(E)
    if basis is None:
        basis = np.eye(E.shape[0], dtype=E.dtype)
    basis = np.array(basis, copy=True)
    u, v = basis[:, i], basis[:, j]
    a = float(u @ E @ u)
    c = float(v @ E @ v)
    b = float(u @ E @ v)
    target = _as_float(target)
    scale = max(1.0, abs(a), abs(c))
    if abs(a - c) <= tolerance * scale:
        raise ValueError("degenerate move: both diagonal entries equal %r" % a)
    if not min(a, c) - tolerance * scale <= target <= max(a, c) + tolerance * scale:
        raise ValueError("target %r is outside the bracket [%r, %r]" % (target, min(a, c), max(a, c)))

    if b == 0:
        alpha, sign = (c - target) / (c - a), 1
    else:
        # a cos^2 + c sin^2 + 2 b sin cos = m + r cos(2 phi - psi)
        m, half = (a + c) / 2, (a - c) / 2
        r = math.hypot(half, b)
        psi = math.atan2(b, half)
        phi = (psi + math.acos(min(1.0, max(-1.0, (target - m) / r)))) / 2
        alpha = math.cos(phi) ** 2
        sign = 1 if math.sin(phi) * math.cos(phi) >= 0 else -1
    alpha = min(1.0, max(0.0, alpha))
    move = Move(i, j, alpha, sign)
    _rotate(basis, i, j, alpha, sign)
    logger.debug("move (%d, %d): alpha=%.17g sign=%d, entries %r, %r -> target %r", i, j, alpha, sign, a, c, target)
    return basis, move


@dataclass
class RotationChain:
    """A finite chain of moves over the basis f_1, ..., f_{k+1} with E diagonal in f."""
    f_diag: np.ndarray
    alphas: Tuple = ()
    moves: List[Move] = field(default_factory=list)
    basis: Optional[np.ndarray] = None

    @property
    def size(self):
        return len(self.f_diag)

    def orthogonality_residual(self) -> float:
        gram = self.basis.T @ self.basis
        return float(np.max(np.abs(gram - np.eye(self.size, dtype=gram.dtype))))

    def diagonal(self) -> np.ndarray:
        """<E e_i, e_i> for the columns of the basis."""
        return (self.basis ** 2).T @ self.f_diag

    def matrix(self) -> np.ndarray:
        """E written in the chain basis; symmetric with the achieved diagonal."""
        result = self.basis.T @ (self.f_diag[:, None] * self.basis)
        return (result + result.T) / 2

    @property
    def completeness(self):
        """prod(1 - alpha_i); the chain exhausts span(f) in the limit only if this goes to 0."""
        product = Fraction(1) if all(isinstance(a, (int, Fraction)) for a in self.alphas) else 1.0
        for alpha in self.alphas:
            product *= 1 - alpha
        return product

    def to_json(self):
        completeness = self.completeness
        return {"size": self.size,
                "alphas": [str(a) if isinstance(a, Fraction) else float(a) for a in self.alphas],
                "completeness": str(completeness) if isinstance(completeness, Fraction) else completeness,
                "orthogonality_residual": self.orthogonality_residual()}


def _check_alphas(alphas, closed_top=True):
    for n, alpha in enumerate(alphas, 1):
        if not 0 <= alpha <= 1 or (not closed_top and alpha == 1):
            raise ValueError("alpha_%d = %s is outside [0, 1%s" % (n, alpha, "]" if closed_top else ")"))


def _run_chain(f_diag, alphas, dtype, observe=None) -> RotationChain:
    f_diag = np.asarray([_as_float(x) for x in f_diag], dtype=dtype)
    if len(f_diag) < len(alphas) + 1:
        raise ValueError("a chain of %d moves needs %d basis vectors, got %d"
                         % (len(alphas), len(alphas) + 1, len(f_diag)))
    chain = RotationChain(f_diag, tuple(alphas), [], np.eye(len(f_diag), dtype=dtype))
    for n, alpha in enumerate(alphas):
        # column n holds the running vector, column n + 1 is still f_{n+2}
        _rotate(chain.basis, n, n + 1, alpha)
        chain.moves.append(Move(n, n + 1, _as_float(alpha)))
        if observe is not None:
            observe(n, chain.basis)
    return chain


def loss_chain(f_diag: Sequence, alphas: Sequence, dtype=np.float64) -> RotationChain:
    """e_i = sqrt(a_i) e~_i + sqrt(1 - a_i) f_{i+1}, e~_{i+1} = sqrt(1 - a_i) e~_i - sqrt(a_i) f_{i+1}.

    Starts from e~_1 = f_1. The columns of the basis are e_1, ..., e_k, e~_{k+1}.
    """
    _check_alphas(alphas)
    chain = _run_chain(f_diag, alphas, dtype)
    residual = chain.orthogonality_residual()
    if residual > ORTHOGONALITY_TOLERANCE:
        warnings.warn("chain basis is orthogonal only to %.3g" % residual)
    return chain


@dataclass
class NolossChain:
    chain: RotationChain
    # (n, |e~_1 - e~_{1+n}|^2 computed, closed form)
    distances: List[Tuple[int, float, float]]
    certificate: object

    @property
    def limit(self) -> np.ndarray:
        """The last running vector e~_{k+1}, the approximation of the limit vector."""
        return self.chain.basis[:, len(self.chain.alphas)]

    @property
    def max_deviation(self) -> float:
        return max((abs(x - y) for _, x, y in self.distances), default=0.0)

    def to_json(self):
        result = self.chain.to_json()
        certificate = self.certificate
        result.update({"certificate": str(certificate) if isinstance(certificate, Fraction) else certificate,
                       "max_deviation": self.max_deviation})
        return result


def noloss_chain(f_count: int, alphas: Sequence, dtype=np.float64, tolerance=1e-10, f_diag=None) -> NolossChain:
    """The loss chain for alphas in [0, 1), with the distances of the running vectors from f_1.

    |e~_1 - e~_{1+n}|^2 = 2 (1 - sqrt(prod_{j<=n} (1 - a_j))) is compared with
    the vectors themselves; sum a/(1 - a) < inf makes the running vectors converge.
    """
    _check_alphas(alphas, closed_top=False)
    distances = []
    product = [1.0]

    def observe(n, basis):
        product[0] *= 1 - _as_float(alphas[n])
        diff = basis[:, n + 1].astype(np.float64).copy()
        diff[0] -= 1.0
        distances.append((n + 1, float(diff @ diff), 2 * (1 - math.sqrt(product[0]))))

    if f_diag is None:
        f_diag = np.zeros(f_count)
    elif len(f_diag) != f_count:
        raise ValueError("expected %d diagonal entries, got %d" % (f_count, len(f_diag)))
    chain = _run_chain(f_diag, alphas, dtype, observe)
    exact = all(isinstance(a, (int, Fraction)) for a in alphas)
    certificate = sum((Fraction(a) / (1 - Fraction(a)) for a in alphas), Fraction(0)) if exact \
        else sum(_as_float(a) / (1 - _as_float(a)) for a in alphas)
    result = NolossChain(chain, distances, certificate)
    if result.max_deviation > tolerance:
        warnings.warn("running vectors deviate from the closed-form distances by %.3g" % result.max_deviation)
    return result


def loglem_index(t: Sequence, bound) -> Optional[int]:
    """Smallest n with sum_{k<=n} (t_k - t_{k+1}) / t_{k+1} > bound, or None within the window.

    `t` is a positive decreasing window; the sum diverges for any such sequence tending to 0.
    """
    total = Fraction(0)
    for n in range(1, len(t)):
        current, following = Fraction(t[n - 1]), Fraction(t[n])
        if following <= 0 or following > current:
            raise ValueError("t must be positive and nonincreasing, t_%d=%s, t_%d=%s"
                             % (n, current, n + 1, following))
        total += (current - following) / following
        if total > bound:
            return n
    return None
