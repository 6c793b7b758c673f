"""Randomized property suites behind the ``oracle`` command.

Every suite draws instances that satisfy the hypotheses of the operation
under test, runs it and counts violations of its post-conditions.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

import numpy as np

from ..construct.eigen import verify_realization
from ..construct.schur_horn import schur_horn_build
from ..construct.transformers import (convmove, exequal_transform, fis_transform, fiz_transform, midseq_transform,
                                      one_neg_transform)
from ..majorization.oracle import lr_equivalence_check, random_finite_pair, random_rationals
from ..seqcore.sequence import ExtendedSequence
from ..seqcore.tails import GeometricTail
from ..settings import resolve_settings

logger = logging.getLogger(__name__)

TRANSFORMER_KINDS = ("midseq", "convmove", "fis", "fiz", "exequal", "one_neg")


@dataclass
class OracleReport:
    kind: str
    trials: int
    violations: List[str] = field(default_factory=list)
    statistics: dict = field(default_factory=dict)

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {"kind": self.kind, "trials": self.trials, "ok": self.ok,
                "violations": list(self.violations), "statistics": dict(self.statistics)}


def lr_equivalence(seed=1, n=1000, max_length=30, settings=None) -> OracleReport:
    rng = np.random.default_rng(seed)
    report = OracleReport("lr-equivalence", n)
    holds = 0
    for trial in range(n):
        lam, d = random_finite_pair(rng, max_length)
        check = lr_equivalence_check(lam, d, settings)
        holds += check.riemann.holds
        for problem in check.discrepancies:
            report.violations.append("trial %d: %s" % (trial, problem))
    report.statistics["majorizing_pairs"] = holds
    return report


def _t_transforms(rng, values, count):
    """Applies random T-transforms with rational weights; the result is majorized by `values`."""
    x = list(values)
    for _ in range(count):
        j, k = rng.choice(len(x), size=2, replace=False)
        t = Fraction(int(rng.integers(0, 9)), 8)
        x[j], x[k] = t * x[j] + (1 - t) * x[k], (1 - t) * x[j] + t * x[k]
    return x


def schur_horn_roundtrip(seed=1, dim=8, trials=100, tolerance=None, settings=None) -> OracleReport:
    if dim < 1:
        raise ValueError("dimension must be positive, got %d" % dim)
    rng = np.random.default_rng(seed)
    report = OracleReport("schur-horn-roundtrip", trials)
    worst = 0.0
    for trial in range(trials):
        lam = [x - 2 for x in random_rationals(rng, dim)]
        d = _t_transforms(rng, lam, 2 * dim)
        matrix = schur_horn_build(lam, d, settings)
        check = verify_realization(matrix, lam, d, tolerance, settings=settings)
        worst = max(worst, check.eigenvalue_residual, check.diagonal_residual)
        if not check.ok:
            report.violations.append("trial %d: residuals %.3g, %.3g"
                                     % (trial, check.eigenvalue_residual, check.diagonal_residual))
    report.statistics["max_residual"] = worst
    return report


def _nonincreasing(rng, size, low=1, high=4):
    return sorted((Fraction(low) + (high - low) * x / 4 for x in random_rationals(rng, size, 6, 4)),
                  reverse=True)


def _midseq_instance(rng):
    # d = prefix >= 1 then geo(1/2, 1/2); lambda adds a nonincreasing bump and possibly a heavier tail
    size = int(rng.integers(1, 6))
    d = _nonincreasing(rng, size)
    bump = sorted((x / 4 for x in random_rationals(rng, size, 4, 2)), reverse=True)
    extra = Fraction(int(rng.integers(0, 3)), 8)
    lam = ExtendedSequence(tuple(x + y for x, y in zip(d, bump)), GeometricTail(Fraction(1, 2) + extra,
                                                                                Fraction(1, 2)))
    return lam, ExtendedSequence(tuple(d), GeometricTail(Fraction(1, 2), Fraction(1, 2)))


def _fis_instance(rng):
    lam = _nonincreasing(rng, int(rng.integers(1, 8)))
    size = int(rng.integers(1, len(lam) + 1))
    window, d, i = lam[:size], [], 0
    while i < size:
        block = window[i:i + int(rng.integers(1, 4))]
        d.extend([sum(block) / len(block)] * len(block))
        i += len(block)
    # lowering the last entry leaves surplus for the terms after the window
    d[-1] -= d[-1] * Fraction(int(rng.integers(0, 4)), 8)
    return ExtendedSequence(tuple(lam), GeometricTail(Fraction(1, 2), Fraction(1, 2))), d


def _fiz_instance(rng):
    negatives = [-x / 32 for x in random_rationals(rng, int(rng.integers(1, 8)), 4, 2)]
    M = int(rng.integers(0, len(negatives) + 1))
    return ExtendedSequence((Fraction(int(rng.integers(2, 6))),) + tuple(negatives),
                            GeometricTail(Fraction(1, 2), Fraction(1, 2))), M


def _exequal_instance(rng):
    # both sides raise their prefix by the same bump; the lifts of the tails give both the excess 2 * extra
    size = int(rng.integers(1, 5))
    bump = sorted((x / 4 for x in random_rationals(rng, size, 4, 2)), reverse=True)
    extra = Fraction(int(rng.integers(1, 3)), 8)
    sides = []
    shapes = ((Fraction(1, 2), Fraction(1, 2), extra), (Fraction(1, 4), Fraction(1, 3), extra * 4 / 3))
    for first, ratio, lift in shapes:
        d = _nonincreasing(rng, size)
        sides.append((ExtendedSequence(tuple(x + y for x, y in zip(d, bump)), GeometricTail(first + lift, ratio)),
                      ExtendedSequence(tuple(d), GeometricTail(first, ratio))))
    (lambda_pos, d_pos), (lambda_neg, d_neg) = sides
    return lambda_pos, lambda_neg, d_pos, d_neg


def _transformer_trial(kind, rng, settings):
    if kind == "midseq":
        return midseq_transform(*_midseq_instance(rng), settings=settings)
    if kind == "convmove":
        lam = _nonincreasing(rng, int(rng.integers(1, 10)), 0, 4)
        return convmove(lam, (lam[0] - lam[-1]) * Fraction(int(rng.integers(0, 9)), 8))
    if kind == "fis":
        lam, d = _fis_instance(rng)
        return fis_transform(lam, d, settings)
    if kind == "exequal":
        return exequal_transform(*_exequal_instance(rng), settings=settings)
    if kind == "one_neg":
        return one_neg_transform(*_midseq_instance(rng), settings=settings)
    lam, M = _fiz_instance(rng)
    return fiz_transform(lam, M, settings)


def transformer_postconditions(kind="midseq", seed=1, trials=50, settings=None) -> OracleReport:
    if kind not in TRANSFORMER_KINDS:
        raise ValueError("unknown transformer %r, expected one of %s" % (kind, ", ".join(TRANSFORMER_KINDS)))
    settings = resolve_settings(settings)
    rng = np.random.default_rng(seed)
    report = OracleReport("transformer-postconditions", trials, statistics={"transformer": kind})
    for trial in range(trials):
        try:
            plan = _transformer_trial(kind, rng, settings)
        except ValueError as e:
            report.violations.append("trial %d: %s" % (trial, e))
            continue
        if not plan.ok:
            report.violations.append("trial %d: failed %s" % (trial, ", ".join(plan.failed)))
    return report


def get_oracle(kind):
    switcher = {
        'lr-equivalence': lr_equivalence,
        'schur-horn-roundtrip': schur_horn_roundtrip,
        'transformer-postconditions': transformer_postconditions
    }
    return switcher.get(kind)
