"""Diagonals of positive compact operators with a kernel.

For nonnegative lambda and d with z = #{lambda_i = 0} - #{d_i = 0} (or 0 when
d has infinitely many zeros) d is a diagonal when lambda has at least as many
zeros, the partial sums of lambda dominate those of d, both sums agree, and
for every shift p <= z the shifted sums

    sum_{i<=n} lambda_i >= sum_{i<=n+p} d_i

hold eventually. Conversely every diagonal satisfies the relaxed shifted sums

    sum_{i<=n} lambda_i + eps * lambda_{n+1} >= sum_{i<=n+p} d_i

eventually, for every eps > 0. Both conditions get harder as p grows, so
testing p = z settles every p <= z. Instances satisfying the relaxed but not
the plain shifted sums are reported as inconclusive, and only when the
violations are certified to recur forever; a finite window of violations
proves nothing and gives an unknown result.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, repeat
from typing import Optional

from ..essentials import KernelResult
from ..majorization.excess import side_excess
from ..majorization.riemann import riemann_majorizes
from ..settings import resolve_settings
from ..seqcore.certified import ZERO, CertifiedValue
from ..seqcore.counts import Count, count_to_json, format_count, is_infinite
from ..seqcore.sequence import ExtendedSequence, normalize
from ..seqcore.tails import GeometricTail, MultiTail, PerturbedTail, PowerTail, magnitude_value

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class KernelOutcome:
    result: KernelResult
    z: Count = 0
    p: Optional[int] = None
    epsilon: Optional[Fraction] = None
    condition: str = ""
    reason: str = field(default="", compare=False)

    @property
    def yes(self):
        return self.result is KernelResult.YES

    @property
    def no(self):
        return self.result is KernelResult.NO

    def to_json(self):
        result = {"result": self.result.value, "z": count_to_json(self.z)}
        if self.p is not None:
            result["p"] = self.p
        if self.epsilon is not None:
            result["epsilon"] = str(self.epsilon)
        if self.condition:
            result["condition"] = self.condition
        if self.reason:
            result["reason"] = self.reason
        return result


@dataclass(frozen=True)
class _Shift:
    result: KernelResult
    epsilon: Optional[Fraction] = None
    # the verdict does not depend on the shift p
    uniform: bool = False
    reason: str = ""


def _finite_dimensional(lam, d, settings) -> KernelOutcome:
    if lam.length != d.length:
        return KernelOutcome(KernelResult.NO, 0, condition="dimension",
                             reason="dimensions differ: %s and %s" % (format_count(lam.length),
                                                                      format_count(d.length)))
    majorization = riemann_majorizes(lam, d, settings=settings)
    if majorization.fails:
        return KernelOutcome(KernelResult.NO, 0, condition="majorization", reason=majorization.reason)
    trace = sum(lam.positive_prefix, Fraction(0)) - sum(d.positive_prefix, Fraction(0))
    if trace:
        return KernelOutcome(KernelResult.NO, 0, condition="trace", reason="traces differ by %s" % trace)
    return KernelOutcome(KernelResult.YES, 0, condition="majorization",
                         reason="finite dimensional, lambda majorizes d with equal trace")


def _geometric_shift(L: GeometricTail, D: GeometricTail, lead_l, lead_d, p, epsilons) -> _Shift:
    if D.ratio > L.ratio:
        return _Shift(KernelResult.YES, uniform=True, reason="the tail of d decays more slowly")
    if D.ratio < L.ratio:
        return _Shift(KernelResult.NO, Fraction(1), True, "the tail of lambda decays more slowly")
    # with r the common ratio the gap is r**n / (1 - r) * (B - A + eps * A * (1 - r))
    r = L.ratio
    a = L.first / r ** lead_l
    b = D.first * r ** (p - lead_d)
    if b >= a:
        return _Shift(KernelResult.YES, reason="shifted remainder of d dominates from the tails on")
    for eps in epsilons:
        if b + eps * a * (1 - r) < a:
            return _Shift(KernelResult.NO, eps, reason="relaxed sums fail for every large n")
    return _Shift(KernelResult.NO, (a - b) / (2 * a * (1 - r)), reason="relaxed sums fail for every large n")


def _power_shift(L: PowerTail, D: PowerTail, lead_l, lead_d, p) -> _Shift:
    if L.exponent != D.exponent:
        if L.exponent > D.exponent:
            return _Shift(KernelResult.YES, uniform=True, reason="the tail of d decays more slowly")
        return _Shift(KernelResult.NO, Fraction(1), True, "the tail of lambda decays more slowly")
    if L.coefficient != D.coefficient:
        if L.coefficient < D.coefficient:
            return _Shift(KernelResult.YES, uniform=True, reason="the tail of d has the larger coefficient")
        return _Shift(KernelResult.NO, Fraction(1), True, "the tail of lambda has the larger coefficient")
    # same terms up to the index: the gap is minus the sum of `shift` consecutive terms
    shift = (p - lead_d + D.offset) - (L.offset - lead_l)
    if shift <= 0:
        return _Shift(KernelResult.YES, reason="the tails are aligned %d terms ahead" % -shift)
    if shift == 1:
        return _Shift(KernelResult.NO, Fraction(1, 2), reason="the gap is minus one term of lambda")
    return _Shift(KernelResult.NO, Fraction(1), reason="the gap is minus %d terms of lambda" % shift)


def _same_terms(x, y) -> bool:
    # tails built from the same components, in any order
    return x == y or Counter(x.components()) == Counter(y.components())


def _identical_shift(L, D, lead_l, lead_d, p) -> Optional[_Shift]:
    """Tails that agree after dropping a few terms of one of them.

    With lambda's tail equal to d's tail moved by `offset` the gap is minus the
    sum of `shift` consecutive tail terms, exactly as for matching power tails.
    """
    if not (is_infinite(L.length) and is_infinite(D.length)):
        return None
    reach = p + lead_l + lead_d + 1
    for j in range(reach + 1):
        if _same_terms(D.drop(j), L):
            offset = j
            break
        if j and _same_terms(L.drop(j), D):
            offset = -j
            break
    else:
        return None
    shift = p - lead_d + lead_l - offset
    if shift <= 0:
        return _Shift(KernelResult.YES, reason="identical tails aligned %d terms ahead" % -shift)
    if shift == 1:
        return _Shift(KernelResult.NO, Fraction(1, 2), reason="identical tails, the gap is minus one term of lambda")
    return _Shift(KernelResult.NO, Fraction(1), reason="identical tails, the gap is minus %d terms of lambda" % shift)


def _perturbation_positions(D: PerturbedTail, lead_d, p, count=3):
    # n with off + n + p - lead_d marked, i.e. the shifted sum of d ends right after a raised term
    first = D.start - D.offset - p + lead_d
    while first < 1:
        first += D.step
    return [first + i * D.step for i in range(count)]


def _perturbed_shift(L, D, lead_l, lead_d, p, epsilons) -> _Shift:
    """Geometric tails, at least one carrying paired perturbations.

    Perturbations are o(base terms), so unless the bases cancel exactly the
    geometric classification applies unchanged. When they cancel the gap is
    exactly the perturbation left over by the two shifted sums.
    """
    if not all(isinstance(t, (GeometricTail, PerturbedTail)) for t in (L, D)):
        return _Shift(KernelResult.UNKNOWN, reason="perturbed tail against a power tail has no closed form")
    base_l = L.aligned_base if isinstance(L, PerturbedTail) else L
    base_d = D.aligned_base if isinstance(D, PerturbedTail) else D
    shift = _geometric_shift(base_l, base_d, lead_l, lead_d, p, epsilons)
    r = base_l.ratio
    if base_l.ratio != base_d.ratio or base_d.first * r ** (p - lead_d) != base_l.first / r ** lead_l:
        return shift
    if isinstance(L, PerturbedTail) and isinstance(D, PerturbedTail):
        return _Shift(KernelResult.UNKNOWN, reason="both tails are perturbed over cancelling bases")
    if isinstance(L, PerturbedTail):
        return _Shift(KernelResult.YES, reason="the shifted sums differ by the perturbations of lambda only")
    positions = _perturbation_positions(D, lead_d, p)
    return _Shift(KernelResult.INCONCLUSIVE,
                  reason="shifted sums fail at n = %s, ... (every %d-th n) by amplitude*%s**m, which is "
                         "o(lambda_{n+1}) so the relaxed sums hold for every eps"
                         % (", ".join(str(n) for n in positions), D.step, D.decay))


def _padded(terms):
    return chain(terms, repeat(Fraction(0)))


def _window_scan(lam, d, p, settings) -> _Shift:
    """Looks at the shifted sums over the upper half of the work range.

    The scan only reports what it saw: without a closed form for the tails
    the violations may stop right after the window.
    """
    top = min(settings.horizon, settings.work_bound)
    start = max(1, top // 2)
    bits = settings.interval_bits
    smallest = settings.epsilons[-1]
    lam_terms, d_terms = _padded(lam.magnitudes()), _padded(d.magnitudes())

    sum_l, sum_d = ZERO, ZERO
    for _ in range(p):
        sum_d = sum_d + magnitude_value(next(d_terms), bits)
    following = magnitude_value(next(lam_terms), bits)
    violations, relaxed_violations, uncertain = [], 0, 0
    for n in range(1, top + 1):
        sum_l = sum_l + following
        following = magnitude_value(next(lam_terms), bits)
        sum_d = sum_d + magnitude_value(next(d_terms), bits)
        if n < start:
            continue
        gap = sum_l - sum_d
        sign = gap.sign()
        if sign is None:
            uncertain += 1
        elif sign < 0:
            violations.append(n)
            relaxed = (gap + following.scale(smallest)).sign()
            if relaxed is None:
                uncertain += 1
            elif relaxed < 0:
                relaxed_violations += 1
    logger.debug("window [%d, %d] with p=%d: %d shifted violations, %d relaxed, %d uncertain",
                 start, top, p, len(violations), relaxed_violations, uncertain)
    return _Shift(KernelResult.UNKNOWN, reason="tails have no closed-form comparison, window [%d, %d] "
                                               "shows %d shifted, %d relaxed and %d uncertain violations"
                  % (start, top, len(violations), relaxed_violations, uncertain))


def _classify(lam, d, p, sigma: CertifiedValue, nonsummable, settings) -> _Shift:
    L, D = lam.positive_tail, d.positive_tail
    lead_l, lead_d = len(lam.positive_prefix), len(d.positive_prefix)
    if nonsummable and sigma.sign() == 1:
        return _Shift(KernelResult.YES, uniform=True, reason="partial-sum gaps tend to %s > 0" % sigma)
    if L.length == 0:
        return _Shift(KernelResult.YES, uniform=True, reason="lambda is finitely supported")
    identical = _identical_shift(L, D, lead_l, lead_d, p)
    if identical is not None:
        return identical
    if isinstance(L, PerturbedTail) or isinstance(D, PerturbedTail):
        return _perturbed_shift(L, D, lead_l, lead_d, p, settings.epsilons)
    if isinstance(L, MultiTail) or isinstance(D, MultiTail):
        return _window_scan(lam, d, p, settings)
    if isinstance(L, GeometricTail) and isinstance(D, GeometricTail):
        return _geometric_shift(L, D, lead_l, lead_d, p, settings.epsilons)
    if isinstance(L, PowerTail) and isinstance(D, PowerTail):
        return _power_shift(L, D, lead_l, lead_d, p)
    if isinstance(L, GeometricTail) and isinstance(D, PowerTail):
        return _Shift(KernelResult.YES, uniform=True, reason="geometric lambda against a power tail of d")
    if isinstance(L, PowerTail) and isinstance(D, GeometricTail):
        return _Shift(KernelResult.NO, Fraction(1), True, "power tail of lambda against a geometric d")
    return _window_scan(lam, d, p, settings)


def kernel_test(lambda_pos: ExtendedSequence, d_pos: ExtendedSequence, settings=None) -> KernelOutcome:
    settings = resolve_settings(settings)
    lam, d = normalize(lambda_pos), normalize(d_pos)
    if not (lam.is_nonnegative and d.is_nonnegative):
        raise ValueError("kernel_test expects nonnegative sequences")

    if lam.zero_count < d.zero_count:
        return KernelOutcome(KernelResult.NO, 0, condition="kernel",
                             reason="d has %s zeros, lambda only %s"
                             % (format_count(d.zero_count), format_count(lam.zero_count)))
    z = 0 if is_infinite(d.zero_count) else lam.zero_count - d.zero_count
    finite_lengths = [not is_infinite(s.length) for s in (lam, d)]
    if all(finite_lengths):
        return _finite_dimensional(lam, d, settings)
    if any(finite_lengths):
        return KernelOutcome(KernelResult.NO, z, condition="dimension",
                             reason="one side is finite dimensional, the other is not")

    majorization = riemann_majorizes(lam, d, settings=settings)
    if majorization.fails:
        return KernelOutcome(KernelResult.NO, z, condition="majorization", reason=majorization.reason)
    if not majorization.holds:
        return KernelOutcome(KernelResult.UNKNOWN, z, condition="majorization", reason=majorization.reason)

    sigma = side_excess(lam, d, settings)
    lam_summable, d_summable = lam.positive_tail.summable, d.positive_tail.summable
    if lam_summable != d_summable:
        return KernelOutcome(KernelResult.NO, z, condition="trace",
                             reason="exactly one of the two sums is infinite")
    nonsummable = not lam_summable
    sign = sigma.sign()
    if not nonsummable and sign != 0:
        result = KernelResult.UNKNOWN if sign is None else KernelResult.NO
        return KernelOutcome(result, z, condition="trace", reason="sums differ by %s" % sigma)
    if nonsummable and sign not in (0, 1):
        return KernelOutcome(KernelResult.UNKNOWN, z, condition="trace",
                             reason="partial-sum gaps of divergent tails tend to %s" % sigma)
    if z == 0:
        return KernelOutcome(KernelResult.YES, z, condition="trace",
                             reason="no kernel excess, majorization and equal sums suffice")

    shifts = range(1, settings.p_max + 1) if is_infinite(z) else (z,)
    for p in shifts:
        shift = _classify(lam, d, p, sigma, nonsummable, settings)
        logger.debug("kernel shift p=%d: %s (%s)", p, shift.result.value, shift.reason)
        if shift.result is KernelResult.NO:
            return KernelOutcome(KernelResult.NO, z, p, shift.epsilon, "relaxed-sums", shift.reason)
        if shift.result is KernelResult.YES:
            if shift.uniform or not is_infinite(z):
                return KernelOutcome(KernelResult.YES, z, None if shift.uniform else p,
                                     condition="shifted-sums", reason=shift.reason)
            continue
        if is_infinite(z):
            # with an infinite kernel the two sum conditions coincide
            if shift.result is KernelResult.INCONCLUSIVE:
                return KernelOutcome(KernelResult.NO, z, p, condition="shifted-sums", reason=shift.reason)
            return KernelOutcome(KernelResult.UNKNOWN, z, p, condition="shifted-sums", reason=shift.reason)
        return KernelOutcome(shift.result, z, p, shift.epsilon, "shifted-sums", shift.reason)
    return KernelOutcome(KernelResult.UNKNOWN, z, settings.p_max, condition="shifted-sums",
                         reason="shifted sums hold for every p up to %d" % settings.p_max)
