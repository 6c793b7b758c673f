"""Truncated constructions of infinite diagonals.

Both builders start from a basis f in which E is diagonal and run a rotation
chain, so after N moves the first N basis vectors carry the target diagonal
and the last running vector carries a residual entry. The residual converges
to the entry the infinite construction leaves behind.

* tbound: E = diag(-lambda_{-1}, lambda_1, ..., lambda_N), target d. Each move
  takes the running entry -t_n and lambda_n to d_n and -t_{n+1}, where
  t_n = lambda_{-1} - sum_{i<n} (lambda_i - d_i).
* infmove: E = diag(lambda_1, -lambda_{-1}, ..., -lambda_{-N}), target
  eps/2, eps/4, ... with the running entry tending to lambda_1 - s - eps.
"""
import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from ..settings import resolve_settings
from ..seqcore.certified import format_rational, to_fraction
from .eigen import realization_tolerance
from .matrices import Realization
from .rotations import RotationChain, loss_chain, noloss_chain

logger = logging.getLogger(__name__)


@dataclass
class BuildTrace:
    name: str
    chain: RotationChain
    eigenvalues: List[Fraction]
    # the target diagonal; its last entry is the exact residual entry
    target: List[Fraction]
    step_values: List[Fraction]
    parameters: dict = field(default_factory=dict)
    tolerance: float = 0.0

    @property
    def achieved_diagonal(self) -> np.ndarray:
        return self.chain.diagonal()

    @property
    def residual_entry(self) -> float:
        return float(self.achieved_diagonal[-1])

    @property
    def exact_residual(self) -> Fraction:
        return self.target[-1]

    @property
    def alphas(self):
        return self.chain.alphas

    @property
    def max_error(self) -> float:
        target = np.array([float(x) for x in self.target])
        return float(np.max(np.abs(self.achieved_diagonal.astype(np.float64) - target)))

    @property
    def trace_defect(self) -> float:
        return abs(float(np.sum(self.achieved_diagonal)) - float(sum(self.eigenvalues)))

    @property
    def ok(self):
        return self.max_error <= self.tolerance and self.trace_defect <= self.tolerance

    def realization(self) -> Realization:
        return Realization(self.chain.matrix(), tuple(self.eigenvalues), tuple(self.target))

    def to_json(self):
        parameters = {k: format_rational(v) if isinstance(v, Fraction) else v for k, v in self.parameters.items()}
        return {"builder": self.name,
                "size": self.chain.size,
                "achieved_diagonal": [float(x) for x in self.achieved_diagonal],
                "target": [format_rational(x) for x in self.target],
                "residual_entry": self.residual_entry,
                "exact_residual": format_rational(self.exact_residual),
                "alphas": [format_rational(a) for a in self.alphas],
                "step_values": [format_rational(a) for a in self.step_values],
                "max_error": self.max_error,
                "trace_defect": self.trace_defect,
                "tolerance": self.tolerance,
                "ok": self.ok,
                "orthogonality_residual": self.chain.orthogonality_residual(),
                "parameters": parameters}


def _window(values, n, name):
    values = [to_fraction(x) for x in values]
    if n is None:
        n = len(values)
    if n > len(values):
        raise ValueError("%s has %d terms, the truncation asks for %d" % (name, len(values), n))
    return values[:n]


def tbound_build(lambda_pos: Sequence, d: Sequence, lambda_neg1, n: Optional[int] = None, c=None,
                 settings=None) -> BuildTrace:
    """Realizes (d_1, ..., d_N, -t_{N+1}) on diag(-lambda_{-1}, lambda_1, ..., lambda_N).

    lambda_neg1 is the whole excess sum(lambda_i - d_i), window and tail, so
    t_{N+1} = lambda_neg1 - sum_{i<=N} (lambda_i - d_i) must be nonnegative.
    The growth bound lambda_n <= c t_{n+1} is measured and, when c is given,
    checked on the window.
    """
    settings = resolve_settings(settings)
    if n is None:
        n = min(len(lambda_pos), settings.truncation)
    lam, d = _window(lambda_pos, n, "lambda"), _window(d, n, "d")
    lambda_neg1 = to_fraction(lambda_neg1)
    if lambda_neg1 <= 0:
        raise ValueError("lambda_{-1} must be positive, got %s" % lambda_neg1)
    for i, (x, y) in enumerate(zip(lam, d), 1):
        if x < y:
            raise ValueError("lambda_%d = %s is below d_%d = %s" % (i, x, i, y))

    t = [lambda_neg1]
    for x, y in zip(lam, d):
        t.append(t[-1] - (x - y))
    if t[-1] < 0:
        raise ValueError("lambda_{-1} = %s is smaller than the excess of the window" % lambda_neg1)

    alphas = []
    for i, (x, y) in enumerate(zip(lam, d)):
        # the running vector has entry -t_n, f_{n+1} has lambda_n
        alphas.append((x - y) / (x + t[i]) if x + t[i] else Fraction(1))

    c_bound = None
    if all(t[i + 1] > 0 for i in range(n)):
        c_bound = max((lam[i] / t[i + 1] for i in range(n)), default=Fraction(0))
    if c is not None and (c_bound is None or c_bound > c):
        warnings.warn("growth bound lambda_n <= %s t_(n+1) fails on the window (smallest constant %s)"
                      % (c, "inf" if c_bound is None else c_bound))

    dtype = np.dtype(settings.matrix_dtype)
    chain = loss_chain([-lambda_neg1] + lam, alphas, dtype)
    trace = BuildTrace("tbound", chain, [-lambda_neg1] + lam, d + [-t[-1]], alphas,
                       {"lambda_neg1": lambda_neg1, "t_next": t[-1], "N": n,
                        "c_bound": c_bound if c_bound is not None else "inf"},
                       realization_tolerance([-lambda_neg1] + lam, settings))
    logger.info("tbound: N=%d, residual entry %.6g (exact -%s), max error %.3g",
                n, trace.residual_entry, t[-1], trace.max_error)
    if not trace.ok:
        logger.warning("tbound: diagonal error %.3g exceeds the tolerance %.3g", trace.max_error, trace.tolerance)
    return trace


def infmove_build(lambda1, negatives: Sequence, epsilon, n: Optional[int] = None, tail_sum=0,
                  settings=None) -> BuildTrace:
    """One positive eigenvalue absorbs the negative ones.

    Realizes (eps/2, ..., eps/2^N, lambda_1^(N+1)) on
    diag(lambda_1, -lambda_{-1}, ..., -lambda_{-N}); lambda_1^(N+1) decreases
    to lambda_1 - s - eps with s the sum of all negative magnitudes, those
    beyond the list given by tail_sum.
    """
    settings = resolve_settings(settings)
    lambda1, epsilon, tail_sum = to_fraction(lambda1), to_fraction(epsilon), to_fraction(tail_sum)
    negatives = [to_fraction(x) for x in negatives]
    if n is None:
        n = len(negatives)
    negatives = (negatives + [Fraction(0)] * n)[:max(n, len(negatives))]
    if any(x < 0 for x in negatives) or tail_sum < 0:
        raise ValueError("negative magnitudes must be nonnegative")
    if any(x < y for x, y in zip(negatives, negatives[1:])):
        raise ValueError("negative magnitudes must be nonincreasing")
    s = sum(negatives, Fraction(0)) + tail_sum
    if lambda1 <= s:
        raise ValueError("lambda_1 = %s must exceed the negative mass %s" % (lambda1, s))
    if epsilon <= 0:
        raise ValueError("epsilon must be positive, got %s" % epsilon)
    if epsilon >= Fraction(2, 3) * (lambda1 - s):
        reduced = (lambda1 - s) / 2
        logger.info("infmove: epsilon %s reduced to %s", epsilon, reduced)
        epsilon = reduced

    running = [lambda1]
    targets, betas, alphas = [], [], []
    for k in range(1, n + 1):
        target = epsilon / 2 ** k
        beta = (running[-1] - target) / (running[-1] + negatives[k - 1])
        targets.append(target)
        betas.append(beta)
        alphas.append(1 - beta)
        running.append(running[-1] - target - negatives[k - 1])

    dtype = np.dtype(settings.matrix_dtype)
    spectrum = [lambda1] + [-x for x in negatives[:n]]
    noloss = noloss_chain(n + 1, alphas, dtype, f_diag=spectrum)
    chain = noloss.chain
    trace = BuildTrace("infmove", chain, spectrum, targets + [running[-1]], betas,
                       {"s": s, "epsilon": epsilon, "limit_entry": lambda1 - s - epsilon,
                        "noloss_certificate": noloss.certificate, "N": n},
                       realization_tolerance(spectrum, settings))
    logger.info("infmove: N=%d, residual entry %.6g, limit %s", n, trace.residual_entry, lambda1 - s - epsilon)
    if not trace.ok:
        logger.warning("infmove: diagonal error %.3g exceeds the tolerance %.3g", trace.max_error, trace.tolerance)
    return trace


def one_neg_build(lambda_pos, d, n: Optional[int] = None, settings=None):
    """One negative eigenvalue -sum(lambda - d): transform lambda, then run the t-bound chain.

    Returns the transform plan and the build trace.
    """
    from .transformers import one_neg_transform

    settings = resolve_settings(settings)
    if n is None:
        n = settings.truncation
    plan = one_neg_transform(lambda_pos, d, length=n + 1, settings=settings)
    window = list(plan.window[:n])
    d_window = list(plan.reference[:n])
    trace = tbound_build(window, d_window, plan.parameters["sigma"], n, plan.parameters["C"], settings)
    trace.parameters.update({"n0": plan.parameters["n0"], "alpha": plan.parameters["alpha"],
                             "C1": plan.parameters["C1"]})
    return plan, trace
