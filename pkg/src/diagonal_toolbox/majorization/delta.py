"""The level functional delta(alpha, lambda, d) and Lebesgue majorization."""
import logging
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import List, Tuple

from ..essentials import Status
from ..settings import resolve_settings
from ..seqcore.certified import CertifiedValue, to_fraction
from ..seqcore.sequence import (ExtendedSequence, level_function, negative_part, normalize,
                                positive_part)
from ..seqcore.tails import is_rational
from .results import MajorizationResult, fails, holds, unknown
from .riemann import riemann_majorizes

logger = logging.getLogger(__name__)


def _parts(lam, d, alpha):
    if alpha > 0:
        return positive_part(lam), positive_part(d), alpha
    return negative_part(lam), negative_part(d), -alpha


def delta(alpha, lam: ExtendedSequence, d: ExtendedSequence, settings=None) -> CertifiedValue:
    """sum over lambda_i >= alpha of (lambda_i - alpha) minus the same sum for d;
    for alpha < 0 the sums run over the terms <= alpha with (alpha - x)."""
    alpha = to_fraction(alpha)
    if alpha == 0:
        raise ValueError("delta is not defined at alpha = 0")
    lam_side, d_side, level = _parts(lam, d, alpha)
    return level_function(lam_side, level, settings) - level_function(d_side, level, settings)


@dataclass(frozen=True)
class KnotList:
    """Distinct term values at which delta can change slope, largest magnitude first.

    ``complete`` is False when a tail was only sampled to ``depth`` terms.
    """
    values: Tuple[Fraction, ...]
    depth: int
    complete: bool

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)


def _sample(s: ExtendedSequence, depth: int) -> List[Fraction]:
    values = list(s.positive_prefix)
    if s.positive_tail.length:
        values.extend(m for m in islice(s.positive_tail.terms(), depth) if is_rational(m))
    return values


def knots(lam: ExtendedSequence, direction=1, depth=None, settings=None) -> KnotList:
    settings = resolve_settings(settings)
    depth = settings.knot_depth if depth is None else depth
    side = positive_part(lam) if direction > 0 else negative_part(lam)
    sign = 1 if direction > 0 else -1
    values = sorted(set(_sample(side, depth)), reverse=True)
    return KnotList(tuple(sign * v for v in values), depth, side.positive_tail.length == 0)


def delta_table(lam, d, depth=8, settings=None):
    """(alpha, delta(alpha)) at the knots of both sequences on both sides of zero."""
    rows = []
    for direction in (1, -1):
        alphas = set(knots(lam, direction, depth, settings)) | set(knots(d, direction, depth, settings))
        for alpha in sorted(alphas, reverse=True):
            rows.append((alpha, delta(alpha, lam, d, settings)))
    return rows


def _level_gap(L, D, alpha, settings):
    return level_function(L, alpha, settings) - level_function(D, alpha, settings)


def _one_side(L: ExtendedSequence, D: ExtendedSequence, sign: int, settings) -> MajorizationResult:
    depth = settings.knot_depth
    values = sorted(set(_sample(L, depth)) | set(_sample(D, depth)), reverse=True)
    uncertain = None
    for v in values:
        g = _level_gap(L, D, v, settings)
        if g.sign() == -1:
            return fails(sign * v, g, "delta is negative at a term value")
        if g.sign() is None and uncertain is None:
            uncertain = v
    if L.positive_tail.length == 0 and D.positive_tail.length == 0:
        # below the smallest knot delta(alpha) = S + k*alpha
        S = sum(L.positive_prefix, Fraction(0)) - sum(D.positive_prefix, Fraction(0))
        if S < 0:
            k = len(D.positive_prefix) - len(L.positive_prefix)
            alpha = min(values[-1], -S / k) / 2 if k > 0 else values[-1] / 2
            return fails(sign * alpha, _level_gap(L, D, alpha, settings), "delta tends to %s as alpha -> 0" % S)
        if uncertain is not None:
            return unknown("delta at %s straddles zero" % (sign * uncertain))
        return holds("delta is nonnegative at every knot and at 0+")

    # below the sampled knots the Lebesgue and Riemann forms agree
    riemann = riemann_majorizes(L, D, settings=settings)
    if riemann.status is Status.UNKNOWN or uncertain is not None and riemann.holds:
        return unknown(riemann.reason or "delta at %s straddles zero" % (sign * uncertain))
    if riemann.holds:
        return holds("delta is nonnegative at %d knots, partial sums certify the rest" % len(values))
    reach = (riemann.witness if isinstance(riemann.witness, int) else 0) + depth
    for v in sorted(set(_sample(L, reach)) | set(_sample(D, reach)), reverse=True):
        g = _level_gap(L, D, v, settings)
        if g.sign() == -1:
            return fails(sign * v, g, "delta is negative at a term value")
    return MajorizationResult(Status.FAILS, None, riemann.value,
                              "partial sums fail (%s) but no level witness among the first %d terms"
                              % (riemann.reason, reach))


def lebesgue_majorizes(lam: ExtendedSequence, d: ExtendedSequence, settings=None) -> MajorizationResult:
    """delta(alpha) >= 0 for every alpha != 0, decided on the knots of both sides."""
    settings = resolve_settings(settings)
    lam, d = normalize(lam), normalize(d)
    results = [_one_side(positive_part(lam), positive_part(d), 1, settings),
               _one_side(negative_part(lam), negative_part(d), -1, settings)]
    for r in results:
        if r.fails:
            return r
    for r in results:
        if r.status is Status.UNKNOWN:
            return r
    return holds("delta is nonnegative on both sides of zero")