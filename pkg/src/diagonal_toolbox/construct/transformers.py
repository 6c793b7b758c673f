"""Sequence transformers: exact rational rewrites of an eigenvalue list.

Each transformer returns a :class:`TransformPlan` holding the rewritten
sequence on a finite window, the parameters of the rewrite and the exact
checks of its post-conditions on that window. Terms beyond the window follow
the rule recorded in the parameters.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import chain, repeat
from typing import Optional, Sequence, Tuple

from ..majorization.excess import side_excess
from ..majorization.riemann import dominance_index, riemann_majorizes, tail_after
from ..settings import resolve_settings
from ..seqcore.certified import CertifiedValue, format_rational, to_fraction
from ..seqcore.codec import sequence_to_json
from ..seqcore.counts import add_counts, is_infinite
from ..seqcore.sequence import ExtendedSequence, finite, normalize

logger = logging.getLogger(__name__)


@dataclass
class TransformPlan:
    name: str
    window: Tuple[Fraction, ...]
    reference: Tuple[Fraction, ...] = ()
    parameters: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    sequence: Optional[ExtendedSequence] = None

    @property
    def ok(self):
        return all(self.checks.values())

    @property
    def failed(self):
        return [name for name, passed in self.checks.items() if not passed]

    def to_json(self):
        result = {"transform": self.name,
                  "window": _jsonable(self.window),
                  "parameters": _jsonable(self.parameters),
                  "checks": dict(self.checks)}
        if self.sequence is not None:
            result["sequence"] = sequence_to_json(self.sequence)
        return result


def _jsonable(value):
    if isinstance(value, Fraction):
        return format_rational(value)
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    return value


def _finish(plan: TransformPlan) -> TransformPlan:
    if plan.ok:
        logger.debug("%s: all %d checks hold", plan.name, len(plan.checks))
    else:
        logger.warning("%s: checks failed: %s", plan.name, ", ".join(plan.failed))
    return plan


def _as_sequence(values) -> ExtendedSequence:
    if isinstance(values, ExtendedSequence):
        return normalize(values)
    values = [to_fraction(x) for x in values]
    return finite(*[x for x in values if x != 0], zero_count=sum(1 for x in values if x == 0))


class _Terms:
    """Exact terms of a nonnegative sequence, largest first, 1-based, zero after the support."""

    def __init__(self, s, name, limit):
        self.sequence = _as_sequence(s)
        if not self.sequence.is_nonnegative:
            raise ValueError("%s must be nonnegative" % name)
        self.name = name
        self.limit = limit
        self._stream = chain(self.sequence.magnitudes(), repeat(Fraction(0)))
        self._terms = [Fraction(0)]

    def __getitem__(self, k) -> Fraction:
        if k > self.limit:
            raise ValueError("%s: index %d is beyond the work bound %d, raise the precision level"
                             % (self.name, k, self.limit))
        while len(self._terms) <= k:
            x = next(self._stream)
            if not isinstance(x, Fraction):
                raise ValueError("term %d of %s is irrational" % (len(self._terms), self.name))
            self._terms.append(x)
        return self._terms[k]

    def window(self, n):
        return [self[k] for k in range(1, n + 1)]


class _Gaps:
    """delta_k = sum_{i<=k} (lambda_i - d_i), with delta_0 = 0."""

    def __init__(self, lam: _Terms, d: _Terms):
        self.lam, self.d = lam, d
        self._sums = [Fraction(0)]

    def __getitem__(self, k) -> Fraction:
        while len(self._sums) <= k:
            i = len(self._sums)
            self._sums.append(self._sums[-1] + self.lam[i] - self.d[i])
        return self._sums[k]


def _first(predicate, start, limit, what):
    for k in range(start, limit + 1):
        if predicate(k):
            return k
    raise ValueError("no %s up to the work bound %d" % (what, limit))


def _is_nonincreasing(values):
    return all(x >= y for x, y in zip(values, values[1:]))


def _majorized(small, large):
    """small is majorized by large: sorted partial sums dominated, equal totals."""
    a, b = sorted(small, reverse=True), sorted(large, reverse=True)
    gap = Fraction(0)
    for x, y in zip(a, b):
        gap += y - x
        if gap < 0:
            return False
    return gap == 0 and len(a) == len(b)


def _exact_excess(lam: _Terms, d: _Terms, settings, allow_infinite=False) -> CertifiedValue:
    sigma = side_excess(lam.sequence, d.sequence, settings)
    if sigma.is_exact and sigma.value > 0:
        return sigma
    if allow_infinite and sigma.is_infinite and sigma.sign() == 1:
        return sigma
    raise ValueError("sum(%s - %s) = %s must be a positive%s exact value"
                     % (lam.name, d.name, sigma, "" if allow_infinite else " finite"))


def _certify_dominance(lam: _Terms, d: _Terms, settings) -> bool:
    """Checks lambda_i >= d_i for every i; returns whether lambda_i > d_i infinitely often."""
    head = max(len(lam.sequence.positive_prefix), len(d.sequence.positive_prefix))
    a, b = tail_after(lam.sequence, head), tail_after(d.sequence, head)
    j = dominance_index(a, b, settings.work_bound)
    if j is None:
        raise ValueError("cannot certify %s_i >= %s_i beyond index %d" % (lam.name, d.name, head))
    for i in range(1, head + j):
        if lam[i] < d[i]:
            raise ValueError("%s_%d = %s is below %s_%d = %s" % (lam.name, i, lam[i], d.name, i, d[i]))
    if b.length == 0:
        return bool(a.length)
    return a != b


def convmove(lam: Sequence, delta) -> TransformPlan:
    """Moves delta from the largest to the smallest term of a nonincreasing list."""
    lam = [to_fraction(x) for x in lam]
    delta = to_fraction(delta)
    if not lam:
        raise ValueError("empty list")
    if not _is_nonincreasing(lam):
        raise ValueError("lambda must be nonincreasing")
    if not 0 <= delta <= lam[0] - lam[-1]:
        raise ValueError("Delta = %s is outside [0, %s]" % (delta, lam[0] - lam[-1]))
    moved = list(lam)
    moved[0] -= delta
    moved[-1] += delta
    rearranged = sorted(moved, reverse=True)
    sums, dominated = Fraction(0), True
    for x, y in zip(lam, rearranged):
        sums += x - y
        dominated = dominated and sums >= 0
    plan = TransformPlan("convmove", tuple(moved), tuple(lam), {"Delta": delta},
                         {"partial_sums": dominated, "trace": sums == 0})
    return _finish(plan)


def one_neg_transform(lambda_pos, d, length=None, blocks=None, settings=None) -> TransformPlan:
    """Moves alpha from lambda_{n0} onto all later terms so that the excess tail bounds lambda.

    The mass goes out in blocks (n_{k-1}, n_k] that grow at least linearly,
    2^-k spread evenly on block k, so lambda~_n <= C t_{n+1} holds with
    C_1 = 2/alpha + 1 from the second block on.
    """
    settings = resolve_settings(settings)
    blocks = settings.one_neg_blocks if blocks is None else blocks
    length = 0 if length is None else length
    lam = _Terms(lambda_pos, "lambda", settings.work_bound)
    dd = _Terms(d, "d", settings.work_bound)
    if not (lam.sequence.positive_tail.length and dd.sequence.positive_tail.length):
        raise ValueError("lambda and d must both have infinitely many positive terms")
    _certify_dominance(lam, dd, settings)
    sigma = _exact_excess(lam, dd, settings).value

    limit = settings.work_bound - 1
    # one exists when sum(lambda - d) > 0 and d is nonincreasing
    n0 = _first(lambda n: lam[n] > dd[n] and lam[n] > lam[n + 1], 1, limit,
                "index with lambda_n > d_n and lambda_n > lambda_(n+1)")
    cuts = [n0, _first(lambda n: lam[n + 1] < Fraction(1, 2), n0 + 1, limit, "first cut")]
    while len(cuts) - 1 < blocks or cuts[-1] < length:
        k = len(cuts)
        start = max(2 * cuts[-1] - cuts[-2], cuts[-1]) + 1
        cuts.append(_first(lambda n: lam[n + 1] < Fraction(1, 2 ** k), start, limit, "cut %d" % k))
    gammas = []
    for k in range(1, len(cuts)):
        width = cuts[k] - cuts[k - 1]
        gammas.extend([Fraction(1, 2 ** k * width)] * width)

    alpha = min((lam[n0] - lam[n0 + 1]) / (1 + gammas[0]), (lam[n0] - dd[n0]) / 2)
    end = cuts[-1]
    window = lam.window(end)
    window[n0 - 1] -= alpha
    for offset, gamma in enumerate(gammas):
        window[n0 + offset] += alpha * gamma
    reference = dd.window(end)

    # t_{n+1} = sum_{i>n} (lambda~_i - d_i)
    remaining, t_next = sigma, []
    for x, y in zip(window, reference):
        remaining -= x - y
        t_next.append(remaining)
    c1 = 2 / alpha + 1
    constant = max([c1] + [x / t for x, t in zip(window, t_next)])
    shifted, partial_ok = Fraction(0), True
    for i in range(1, end + 1):
        shifted += lam[i] - window[i - 1]
        partial_ok = partial_ok and shifted >= 0
    checks = {
        "nonincreasing": _is_nonincreasing(window + [lam[end + 1]]),
        "dominates_d": all(x >= y for x, y in zip(window, reference)),
        "partial_sums": partial_ok,
        "moved_mass": shifted == alpha / 2 ** (len(cuts) - 1),
        "gamma_mass": sum(gammas, Fraction(0)) == 1 - Fraction(1, 2 ** (len(cuts) - 1)),
        "c1_bound": all(window[n - 1] <= c1 * t_next[n - 1] for n in range(cuts[1] + 1, end + 1)),
    }
    plan = TransformPlan("one_neg", tuple(window), tuple(reference),
                         {"n0": n0, "alpha": alpha, "cuts": cuts, "C1": c1, "C": constant, "sigma": sigma,
                          "gammas": gammas, "tail_mass": Fraction(1, 2 ** (len(cuts) - 1))},
                         checks)
    logger.info("one_neg: n0=%d, alpha=%s, %d blocks up to n=%d", n0, alpha, len(cuts) - 1, end)
    return _finish(plan)


def _midseq_case(lam: _Terms, d: _Terms, settings):
    # past `head` only the tails remain; the one that dominates fixes the direction of delta
    head = max(len(lam.sequence.positive_prefix), len(d.sequence.positive_prefix))
    a, b = tail_after(lam.sequence, head), tail_after(d.sequence, head)
    if a == b:
        return 1, head
    j = dominance_index(b, a, settings.work_bound)
    if j is not None:
        return 1, head + j - 1
    j = dominance_index(a, b, settings.work_bound)
    if j is None:
        raise ValueError("neither tail dominates the other, cannot locate the liminf of delta")
    return 2, head + j - 1


def _midseq_first_case(lam, d, gaps, sigma, settled, settings):
    # delta_k >= sigma from `settled` on
    below = [k for k in range(1, settled + 1) if gaps[k] < sigma]
    M = max(below, default=0)
    Z = max([k for k in range(1, settled + 1) if gaps[k] == 0], default=0)
    d_Z = lam[1] + 1 if Z == 0 else d[Z]
    alpha = d_Z - d[Z + 1]
    beta = min([gaps[k] for k in range(Z + 1, settled + 1)] + [sigma])
    N = max(M + 1, int(sigma // alpha) + 1, int(M * sigma // beta) + 1)

    width = max(settings.truncation, Z + N + 1)
    reference = d.window(width + 1)
    moved = list(reference)
    for i in range(Z + 1, Z + N + 1):
        moved[i - 1] += sigma / N
    i0 = next((i for i in range(Z + 1, Z + N + 1) if moved[i - 1] > reference[i - 1] and moved[i - 1] > moved[i]),
              None)
    if i0 is None:
        raise ValueError("midseq: no index in %d..%d where the raised window drops strictly" % (Z + 1, Z + N))
    eps = min(moved[i0 - 1] - reference[i0 - 1], (moved[i0 - 1] - moved[i0]) / 2)
    moved[i0 - 1] -= eps
    for i in range(i0 + 1, width + 2):
        moved[i - 1] += eps / 2 ** (i - i0)
    window, reference = moved[:width], reference[:width]

    shifted, partial_ok = Fraction(0), True
    for i in range(1, width + 1):
        shifted += lam[i] - window[i - 1]
        partial_ok = partial_ok and shifted >= 0
    excess = sum(window, Fraction(0)) - sum(reference, Fraction(0))
    checks = {
        "nonincreasing": _is_nonincreasing(moved),
        "dominates_d": all(x >= y for x, y in zip(window, reference)),
        "partial_sums": partial_ok,
        "excess": excess == sigma - eps / 2 ** (width - i0),
        "tail_gap": shifted == gaps[width] - sigma + eps / 2 ** (width - i0),
        "strict": all(x > y for x, y in zip(window[i0:], reference[i0:])),
    }
    parameters = {"case": 1, "M": M, "Z": Z, "N": N, "alpha": alpha, "beta": beta, "sigma": sigma,
                  "i0": i0, "epsilon": eps, "settled": settled}
    return window, reference, parameters, checks


def _midseq_markers(gaps, settled, width, limit):
    markers, previous = [], 0
    while True:
        top = max(previous + 1, settled)
        low = min(gaps[k] for k in range(previous + 1, top + 1))
        m = max(k for k in range(previous + 1, top + 1) if gaps[k] == low)
        while gaps[m + 1] == low:
            m += 1
            if m > limit:
                raise ValueError("delta stays at %s beyond the work bound" % low)
        if m > width:
            return markers
        markers.append(m)
        previous = m


def _midseq_second_case(lam, d, gaps, sigma, settled, settings):
    width = max(settings.truncation, settled + 1)
    markers = _midseq_markers(gaps, settled, width, settings.work_bound)
    if len(markers) < 2:
        raise ValueError("fewer than two minimum markers within %d terms, raise the truncation" % width)

    ends = [0, markers[0]]
    slopes = [gaps[markers[0]] / markers[0]]
    gap = None
    if slopes[0] == 0:
        # a zero first slope leaves only the jump of d at the end of the block for the next one
        ends[1] = _first(lambda n: d[n] > d[n + 1], markers[0], settings.work_bound - 1, "drop of d")
        gap = d[ends[1]] - d[ends[1] + 1]
        if d[ends[1] + 1] == 0 and d[ends[1]] == 0:
            raise ValueError("d vanishes from index %d, no room for a positive slope" % ends[1])
    for j in range(1, len(markers)):
        rise = gaps[markers[j]] - gaps[markers[j - 1]]
        if j == 1 and gap is not None:
            step = -(-rise // gap)
        else:
            step = int(rise // slopes[-1]) + 1
        end = max(ends[-1] + 1, markers[j], ends[-1] + step)
        if end > width:
            break
        slopes.append(rise / (end - ends[-1]))
        ends.append(end)
    if len(ends) < 3:
        raise ValueError("the second block ends beyond %d terms, raise the truncation" % width)

    count = len(ends) - 1
    markers = markers[:count]
    window, reference = [], d.window(ends[-1])
    for j in range(count):
        for i in range(ends[j] + 1, ends[j + 1] + 1):
            window.append(reference[i - 1] + slopes[j])

    shifted, partial_ok, block_ok = Fraction(0), True, True
    for i in range(1, ends[-1] + 1):
        shifted += lam[i] - window[i - 1]
        partial_ok = partial_ok and shifted >= 0
        if i in ends:
            block_ok = block_ok and shifted == gaps[i] - gaps[markers[ends.index(i) - 1]]
    levels = [gaps[m] for m in markers]
    checks = {
        "nonincreasing": _is_nonincreasing(window),
        "dominates_d": all(x >= y for x, y in zip(window, reference)),
        "partial_sums": partial_ok,
        "block_gaps": block_ok,
        "markers": all(x < y for x, y in zip(levels, levels[1:])) and levels[-1] < sigma,
        "excess": sum(window, Fraction(0)) - sum(reference, Fraction(0)) == levels[-1],
        "strict": all(x > y for x, y in zip(window[ends[1]:], reference[ends[1]:])),
    }
    parameters = {"case": 2, "markers": markers, "ends": ends[1:], "slopes": slopes, "sigma": sigma,
                  "sigma_window": levels[-1], "gap_window": shifted, "settled": settled}
    return window, reference, parameters, checks


def midseq_transform(lambda_pos, d, settings=None) -> TransformPlan:
    """Replaces lambda by a sequence between d and lambda with the same excess sigma and liminf gap 0."""
    settings = resolve_settings(settings)
    lam = _Terms(lambda_pos, "lambda", settings.work_bound)
    dd = _Terms(d, "d", settings.work_bound)
    majorization = riemann_majorizes(lam.sequence, dd.sequence, settings=settings)
    if not majorization.holds:
        raise ValueError("partial sums of lambda must dominate those of d: %s" % majorization.reason)
    sigma = _exact_excess(lam, dd, settings).value
    case, settled = _midseq_case(lam, dd, settings)
    gaps = _Gaps(lam, dd)
    if case == 1:
        window, reference, parameters, checks = _midseq_first_case(lam, dd, gaps, sigma, settled, settings)
    else:
        window, reference, parameters, checks = _midseq_second_case(lam, dd, gaps, sigma, settled, settings)
    logger.info("midseq: case %d, sigma=%s, window %d", case, sigma, len(window))
    return _finish(TransformPlan("midseq", tuple(window), tuple(reference), parameters, checks))


def exequal_transform(lambda_pos, lambda_neg, d_pos, d_neg, blocks=None, settings=None) -> TransformPlan:
    """Cuts the positive side into blocks whose excess matches the negative side at the block markers.

    All four sequences are nonnegative magnitudes with lambda >= d termwise on
    each side and the same total excess on both sides.
    """
    settings = resolve_settings(settings)
    blocks = settings.exequal_blocks if blocks is None else blocks
    limit = settings.work_bound
    lp, ln = _Terms(lambda_pos, "lambda+", limit), _Terms(lambda_neg, "lambda-", limit)
    dp, dn = _Terms(d_pos, "d+", limit), _Terms(d_neg, "d-", limit)
    for lam, d in ((lp, dp), (ln, dn)):
        if not _certify_dominance(lam, d, settings):
            raise ValueError("%s_i > %s_i holds only finitely often, no strict excess to move"
                             % (lam.name, d.name))
    sigma_pos = _exact_excess(lp, dp, settings, allow_infinite=True)
    sigma_neg = _exact_excess(ln, dn, settings, allow_infinite=True)
    if sigma_pos.compare(sigma_neg) != 0:
        raise ValueError("excesses differ: %s on the positive side, %s on the negative" % (sigma_pos, sigma_neg))
    positive, negative = _Gaps(lp, dp), _Gaps(ln, dn)

    moved, rows = [], []
    end, previous_m = 0, 0
    for _ in range(blocks):
        level = positive[end + 1]
        m = _first(lambda i: negative[i] > level, previous_m + 1, limit, "negative marker above %s" % level)
        n = _first(lambda i: positive[i] >= negative[m], end + 1, limit, "positive marker")
        eta = positive[n] - negative[m]
        if dp[n] == 0:
            raise ValueError("d+ vanishes at the marker %d" % n)
        r = _first(lambda i: lp[i] < dp[n], n + 1, limit, "term of lambda+ below d+_%d" % n)
        N = int(eta // (dp[n] - lp[r])) + 1
        start, stop = end + 1, r + N - 1
        block = [lp[i] for i in range(start, stop + 1)]
        block[n - start] -= eta
        for i in range(r, r + N):
            block[i - start] += eta / N
        moved.extend(block)
        rows.append({"block": (start, stop), "m": m, "n": n, "eta": eta, "r": r, "N": N,
                     "majorized": _majorized(block, [lp[i] for i in range(start, stop + 1)])})
        end, previous_m = stop, m

    reference = dp.window(end)
    matched = []
    for row in rows:
        n = row["n"]
        matched.append(sum(moved[:n], Fraction(0)) - sum(reference[:n], Fraction(0)) == negative[row["m"]])
    checks = {
        "majorized": all(row.pop("majorized") for row in rows),
        "dominates_d": all(x >= y for x, y in zip(moved, reference)),
        "matched_excess": all(matched),
        "markers_increase": all(a["m"] < b["m"] and a["n"] < b["n"] for a, b in zip(rows, rows[1:])),
    }
    parameters = {"blocks": [row["block"] for row in rows], "m": [row["m"] for row in rows],
                  "n": [row["n"] for row in rows], "eta": [row["eta"] for row in rows],
                  "r": [row["r"] for row in rows], "N": [row["N"] for row in rows],
                  "sigma": str(sigma_pos)}
    logger.info("exequal: %d blocks covering 1..%d", len(rows), end)
    return _finish(TransformPlan("exequal", tuple(moved), tuple(reference), parameters, checks))


def fis_transform(lambda_pos, d: Sequence, settings=None) -> TransformPlan:
    """Makes the first N terms equal to d, settling the difference within the first M terms."""
    settings = resolve_settings(settings)
    d = [to_fraction(x) for x in d]
    if not d or any(x <= 0 for x in d) or not _is_nonincreasing(d):
        raise ValueError("d must be a nonempty positive nonincreasing list")
    lam = _Terms(lambda_pos, "lambda", settings.work_bound)
    N = len(d)
    gap = Fraction(0)
    for k in range(1, N + 1):
        gap += lam[k] - d[k - 1]
        if gap < 0:
            raise ValueError("partial sums fail at k=%d: sum(lambda) - sum(d) = %s" % (k, gap))
    total_d, last = sum(d, Fraction(0)), d[-1]

    def surplus(m):
        return sum(lam.window(m), Fraction(0)) - total_d - (m - N) * last

    M = _first(lambda m: surplus(m) <= 0, N, settings.work_bound, "index where the surplus is used up")
    window = list(d) + [last] * (M - N - 1) + ([surplus(M) + last] if M > N else [])
    original = lam.window(M)
    checks = {
        "prefix_equals_d": window[:N] == d,
        "majorized": _majorized(window, original),
        "minimal": M == N or surplus(M - 1) > 0,
        "positive": all(x > 0 for x in window),
    }
    sequence = normalize(ExtendedSequence(tuple(window), tail_after(lam.sequence, M)))
    plan = TransformPlan("fis", tuple(window), tuple(original), {"M": M, "N": N}, checks, sequence)
    return _finish(plan)


def fiz_transform(lam, M: int, settings=None) -> TransformPlan:
    """Turns M negative terms into zeros, paying with the largest positive term.

    J is the largest positive term p together with the first run of M
    consecutive negative terms (largest magnitudes first) whose magnitudes sum
    below p. An infinite negative tail has no M smallest terms, so the run is
    taken from the top instead; any run whose sum stays below p works. On J the
    new values are (sum_J lambda, 0, ..., 0), which keeps the sum of J and is
    majorized by lambda on J.
    """
    settings = resolve_settings(settings)
    lam = normalize(lam)
    if M < 0:
        raise ValueError("M must be a natural number, got %d" % M)
    if lam.positive_count == 0:
        raise ValueError("lambda has no positive term")
    if lam.negative_count < M:
        raise ValueError("lambda has only %s negative terms, %d are needed" % (lam.negative_count, M))
    prefix = lam.positive_prefix
    p = prefix[0] if prefix else lam.positive_tail.head()
    if not isinstance(p, Fraction):
        raise ValueError("the largest positive term %s is irrational" % p)

    magnitudes = _Terms(ExtendedSequence(lam.negative_magnitudes, lam.negative_tail), "negatives",
                        settings.work_bound)
    start = 0
    run = sum(magnitudes.window(M), Fraction(0))
    while run >= p:
        if not is_infinite(lam.negative_count) and start + M >= lam.negative_count:
            raise ValueError("no run of %d negative terms sums below the largest positive term %s" % (M, p))
        run += magnitudes[start + M + 1] - magnitudes[start + 1]
        start += 1
    J = [magnitudes[i] for i in range(start + 1, start + M + 1)]
    head = p - run

    stop = start + M
    negative_prefix = lam.negative_magnitudes
    if stop <= len(negative_prefix):
        rest, negative_tail = list(negative_prefix[stop:]), lam.negative_tail
    else:
        rest, negative_tail = [], lam.negative_tail.drop(stop - len(negative_prefix))
    negatives = magnitudes.window(start) + rest
    if prefix:
        positives, positive_tail = [head] + list(prefix[1:]), lam.positive_tail
    else:
        positives, positive_tail = [head], lam.positive_tail.drop(1)
    sequence = normalize(ExtendedSequence(tuple(positives) + tuple(-x for x in negatives), positive_tail,
                                          negative_tail, add_counts(lam.zero_count, M)))
    original = [p] + [-x for x in J]
    window = [head] + [Fraction(0)] * M
    checks = {
        "size": len(window) == M + 1,
        "positive_sum": head > 0,
        "majorized": _majorized(window, original),
        "zeros_added": sequence.zero_count == add_counts(lam.zero_count, M),
    }
    plan = TransformPlan("fiz", tuple(window), tuple(original),
                         {"M": M, "positive": p, "run_start": start + 1, "run": J}, checks, sequence)
    return _finish(plan)
