from fractions import Fraction

import numpy as np
import pytest

from diagonal_toolbox.decision import (CONDITION_NAMES, check_necessity, decide, enumerate_splittings, explain,
                                       kernel_test, render_text, verdict_to_json)
from diagonal_toolbox.decision.kernel import _window_scan
from diagonal_toolbox.essentials import KernelResult, Outcome, Status
from diagonal_toolbox.majorization import random_pair
from diagonal_toolbox.seqcore import (ExtendedSequence, GeometricTail, MultiTail, PerturbedTail, finite, materialize,
                                      negate, normalize)
from diagonal_toolbox.seqcore.counts import INFINITY
from diagonal_toolbox.settings import Settings

HALF = Fraction(1, 2)


def geometric(first=1, ratio=HALF, zero_count=0):
    return ExtendedSequence((), GeometricTail(Fraction(first), Fraction(ratio)), zero_count=zero_count)


def kernel_gap_instance():
    """lambda_n = 2**(1-n) with one zero; d is (1/2, 1/2) followed by lambda shifted one place, where every
    7th pair of tail terms from the 5th on is moved apart by 4**-m. The shifted sums fail at n = 6, 13, 20, ...
    by 4**(1-n), which is o(lambda_{n+1})."""
    lam = ExtendedSequence((), GeometricTail(1, HALF), zero_count=1)
    tail = PerturbedTail(GeometricTail(HALF, HALF), start=5, step=7, amplitude=1, decay=Fraction(1, 4))
    return lam, ExtendedSequence((HALF, HALF), tail)


def finitely_many_violations_instance():
    """Like the gap instance, but the perturbations sit at m = 120, 150, 180 inside a long explicit prefix."""
    prefix = [Fraction(1, 2 ** n) for n in range(200)]
    tail = MultiTail((GeometricTail(Fraction(1, 2 ** 200), HALF), GeometricTail(Fraction(1, 2 ** 1000), HALF)))
    d_prefix = [HALF] + prefix
    d_prefix[0], d_prefix[1] = HALF, HALF
    for m in (120, 150, 180):
        d_prefix[m] += Fraction(1, 4 ** m)
        d_prefix[m + 1] -= Fraction(1, 4 ** m)
    lam = ExtendedSequence(tuple(prefix), tail, zero_count=1)
    d = ExtendedSequence(tuple(d_prefix), tail)
    return lam, d


@pytest.mark.parametrize("lam, d", [
    (ExtendedSequence((Fraction(-1),), GeometricTail(1, HALF)), geometric(HALF)),
    (ExtendedSequence((Fraction(-1),), GeometricTail(1, HALF)), geometric(HALF, zero_count=2)),
    (ExtendedSequence((), GeometricTail(1, HALF), GeometricTail(HALF, HALF)), geometric(HALF)),
    (ExtendedSequence((Fraction(1), Fraction(1)), negative_tail=GeometricTail(HALF, HALF)), geometric(HALF)),
])
def test_diagonal_with_positive_excess(lam, d):
    verdict = decide(lam, d)
    assert verdict.outcome is Outcome.DIAGONAL
    assert verdict.sigma_plus.value == 1
    assert verdict.sigma_minus.value == 1
    assert not verdict.splittings


def test_necessity_conditions_all_hold():
    trace = check_necessity(ExtendedSequence((Fraction(-1),), GeometricTail(1, HALF)), geometric(HALF))
    assert tuple(c.name for c in trace.conditions) == CONDITION_NAMES
    assert trace.status is Status.HOLDS
    assert not trace.failures


def test_majorization_failure_carries_witness():
    verdict = decide(geometric(HALF), geometric(1))
    assert verdict.outcome is Outcome.NOT_DIAGONAL
    condition = verdict.trace["positive_majorization"]
    assert condition.fails
    assert condition.witness == {"n": 1}


def test_kernel_witness_gives_not_diagonal():
    verdict = decide(geometric(zero_count=1), geometric())
    assert verdict.outcome is Outcome.NOT_DIAGONAL
    assert verdict.sigma_plus.value == 0
    assert len(verdict.splittings) == 2
    assert all(result.has_no for result in verdict.splittings)


def test_finite_instances():
    assert decide(finite(3, 1), finite(2, 2)).outcome is Outcome.DIAGONAL
    assert decide(finite(3, 1), finite(2, 1)).outcome is Outcome.NOT_DIAGONAL
    assert decide(finite(1, 1), finite(2, zero_count=1)).outcome is Outcome.NOT_DIAGONAL
    assert decide(finite(1), geometric()).outcome is Outcome.NOT_DIAGONAL


def test_enumerate_splittings():
    splittings = enumerate_splittings(finite(1, zero_count=3), finite(1, zero_count=1))
    assert [(s.z1, s.z2) for s in splittings] == [(0, 2), (1, 1), (2, 0)]
    assert enumerate_splittings(finite(1), finite(1, zero_count=1)) == []
    both_infinite = enumerate_splittings(finite(1, zero_count=INFINITY), finite(1, zero_count=INFINITY))
    assert [str(s) for s in both_infinite] == ["(∞, 0, 0)"]
    assert len(enumerate_splittings(finite(1, zero_count=INFINITY), finite(1))) == 3


def test_kernel_without_excess_zeros():
    d = ExtendedSequence((Fraction(3, 4), Fraction(3, 4)), GeometricTail(Fraction(1, 4), HALF))
    outcome = kernel_test(geometric(), d)
    assert outcome.result is KernelResult.YES
    assert outcome.z == 0


def test_kernel_one_zero_against_itself():
    outcome = kernel_test(geometric(zero_count=1), geometric())
    assert outcome.result is KernelResult.NO
    assert outcome.p == 1
    assert outcome.epsilon == HALF
    assert outcome.to_json()["epsilon"] == "1/2"


def test_kernel_zero_shortage():
    outcome = kernel_test(geometric(), geometric(zero_count=1))
    assert outcome.no
    assert outcome.condition == "kernel"


def test_kernel_slower_d_tail():
    # equal sums, the tail of d decays more slowly
    outcome = kernel_test(ExtendedSequence((Fraction(3, 2),), GeometricTail(Fraction(1, 3), Fraction(1, 3)),
                                           zero_count=1),
                          ExtendedSequence((Fraction(1),), GeometricTail(HALF, HALF)))
    assert outcome.yes


def test_kernel_gap_instance_is_inconclusive():
    lam, d = kernel_gap_instance()
    outcome = kernel_test(lam, d)
    assert outcome.result is KernelResult.INCONCLUSIVE
    assert outcome.p == 1
    assert "n = 6, 13, 20" in outcome.reason

    verdict = decide(lam, d)
    assert verdict.outcome is Outcome.KERNEL_INCONCLUSIVE
    document = verdict_to_json(verdict)
    assert document["outcome"] == "KernelInconclusive"
    assert len(document["splittings"]) == 2


def test_kernel_gap_violations_recur_through_the_horizon():
    lam, d = kernel_gap_instance()
    horizon = 10 ** 4
    lam_terms, d_terms = materialize(lam, horizon + 1), materialize(d, horizon + 1)
    smallest = Settings().epsilons[-1]
    sum_l, sum_d, violations = Fraction(0), d_terms[0], []
    for n in range(1, horizon + 1):
        sum_l += lam_terms[n - 1]
        sum_d += d_terms[n]
        gap = sum_l - sum_d
        if gap < 0:
            violations.append(n)
            assert n < 40 or gap + smallest * lam_terms[n] >= 0
        else:
            assert gap == 0
    assert violations == list(range(6, horizon + 1, 7))


def test_finitely_many_violations_are_not_inconclusive():
    lam, d = finitely_many_violations_instance()
    settings = Settings(work_bound=200)
    positive = ExtendedSequence(lam.positive_prefix, lam.positive_tail, zero_count=1)
    outcome = kernel_test(positive, d, settings)
    assert outcome.result is KernelResult.YES
    assert outcome.reason.startswith("identical tails")
    assert decide(lam, d, settings).outcome is Outcome.DIAGONAL

    shift = _window_scan(normalize(positive), normalize(d), 1, settings)
    assert shift.result is KernelResult.UNKNOWN
    assert "3 shifted, 0 relaxed and 0 uncertain" in shift.reason


def test_kernel_identical_multi_tails():
    tail = MultiTail((GeometricTail(1, HALF), GeometricTail(1, Fraction(1, 3))))
    lam = ExtendedSequence((), tail, zero_count=1)
    outcome = kernel_test(lam, ExtendedSequence((), tail))
    assert outcome.result is KernelResult.NO
    assert outcome.epsilon == HALF

    # d = (1/2, 1/2) followed by all but the first term of the tail
    outcome = kernel_test(lam, ExtendedSequence((HALF, HALF), tail.drop(1)))
    assert outcome.result is KernelResult.YES


def test_infinite_kernel_turns_a_certified_gap_into_no():
    lam, d = kernel_gap_instance()
    outcome = kernel_test(ExtendedSequence((), lam.positive_tail, zero_count=INFINITY), d)
    assert outcome.result is KernelResult.NO
    assert outcome.p == 1
    assert outcome.condition == "shifted-sums"


def test_random_pairs_mirror_symmetry():
    rng = np.random.default_rng(11)
    for _ in range(200):
        lam, d = random_pair(rng)
        verdict, mirrored = decide(lam, d), decide(negate(lam), negate(d))
        assert verdict.outcome is mirrored.outcome, (str(lam), str(d))
        assert verdict.sigma_plus.to_json() == mirrored.sigma_minus.to_json()
        assert verdict.sigma_minus.to_json() == mirrored.sigma_plus.to_json()


def test_random_pairs_precision_monotonicity():
    rng = np.random.default_rng(12)
    definite = {Outcome.DIAGONAL, Outcome.NOT_DIAGONAL}
    for _ in range(200):
        lam, d = random_pair(rng)
        outcomes = {decide(lam, d, Settings(precision_level=level)).outcome for level in (1, 2, 3)}
        assert len(outcomes & definite) <= 1, (str(lam), str(d), outcomes)


def test_mirror_symmetry():
    lam = ExtendedSequence((Fraction(-2),), GeometricTail(1, HALF))
    d = geometric(HALF)
    verdict, mirrored = decide(lam, d), decide(negate(lam), negate(d))
    assert verdict.outcome is mirrored.outcome is Outcome.NOT_DIAGONAL
    assert verdict.sigma_plus.value == mirrored.sigma_minus.value == 1
    assert verdict.sigma_minus.value == mirrored.sigma_plus.value == 2
    assert verdict.trace["negative_trace"].fails
    assert mirrored.trace["positive_trace"].fails


def test_precision_escalation_keeps_definite_verdicts():
    lam = ExtendedSequence((Fraction(-1),), GeometricTail(1, HALF))
    for level in (1, 2, 3):
        assert decide(lam, geometric(HALF), Settings(precision_level=level)).outcome is Outcome.DIAGONAL


def test_explain_and_render():
    lam = ExtendedSequence((Fraction(-1),), GeometricTail(1, HALF))
    document = explain(lam, geometric(HALF), depth=4)
    assert document["schema"] == 1
    assert document["outcome"] == "Diagonal"
    assert document["sigma_plus"] == "1"
    assert set(document["conditions"]) == set(CONDITION_NAMES)
    assert document["delta"]
    text = render_text(document)
    assert text.startswith("outcome: Diagonal")
    assert "delta at the knots:" in text
