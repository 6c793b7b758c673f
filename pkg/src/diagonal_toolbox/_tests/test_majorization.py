from fractions import Fraction

import numpy as np
import pytest

from diagonal_toolbox.majorization import (delta, dominance_index, dra_check, excess, first_true, knots,
                                           lebesgue_majorizes, lr_equivalence_check, random_finite_pair,
                                           riemann_majorizes, side_excess, tail_difference)
from diagonal_toolbox.seqcore import ExtendedSequence, GeometricTail, PowerTail, finite

HALF = Fraction(1, 2)


def geometric(first=1, ratio=HALF):
    return ExtendedSequence((), GeometricTail(Fraction(first), Fraction(ratio)))


def test_first_true_finds_threshold():
    assert first_true(lambda k: k >= 37, 1, 1000) == 37
    assert first_true(lambda k: k >= 37, 1, 10) is None
    assert first_true(lambda k: True, 5, 4) is None


def test_dominance_index_geometric():
    assert dominance_index(GeometricTail(1, HALF), GeometricTail(HALF, HALF), 100) == 1
    assert dominance_index(GeometricTail(HALF, HALF), GeometricTail(1, HALF), 100) is None
    # 2^-k overtakes 100 * 3^-k from k = 12 on
    assert dominance_index(GeometricTail(HALF, HALF), GeometricTail(Fraction(100, 3), Fraction(1, 3)),
                           1000) == 12


def test_riemann_equal_sums_holds():
    d = ExtendedSequence((Fraction(3, 4), Fraction(3, 4)), GeometricTail(Fraction(1, 4), HALF))
    assert riemann_majorizes(geometric(), d).holds


def test_riemann_prefix_witness():
    result = riemann_majorizes(finite(1), finite(HALF, HALF, HALF))
    assert result.fails
    assert result.witness == 3
    assert result.value.value == -HALF


def test_riemann_tail_witness():
    result = riemann_majorizes(geometric(), geometric(1, Fraction(2, 3)))
    assert result.fails
    assert result.witness == 2


def test_riemann_rejects_signed_input():
    with pytest.raises(ValueError):
        riemann_majorizes(finite(1, -1), finite(1))


def test_side_excess_closed_forms():
    assert side_excess(geometric(), geometric(HALF)).value == 1
    harmonic = ExtendedSequence((), PowerTail(1, 1))
    shifted = ExtendedSequence((), PowerTail(1, 1, 1))
    assert side_excess(harmonic, shifted).value == 1
    faster = side_excess(ExtendedSequence((), PowerTail(2, 1)), harmonic)
    assert faster.is_infinite and faster.sign() == 1
    assert tail_difference(GeometricTail(1, HALF), GeometricTail(1, HALF)).value == 0


def test_excess_of_signed_pair():
    lam = ExtendedSequence((Fraction(-1),), GeometricTail(1, HALF))
    report = excess(lam, geometric(HALF))
    assert report.sigma_plus.value == 1
    assert report.sigma_minus.value == 1
    assert report.total.value == 2
    assert report.mirrored().sigma_plus == report.sigma_minus


def test_delta_values():
    assert delta(HALF, finite(1), finite(HALF, HALF)).value == HALF
    assert delta(-HALF, finite(-1), finite()).value == HALF
    with pytest.raises(ValueError):
        delta(0, finite(1), finite(1))


def test_knots_of_finite_sequence():
    k = knots(finite(1, HALF, -1))
    assert tuple(k) == (1, HALF)
    assert k.complete
    assert tuple(knots(finite(1, HALF, -1), direction=-1)) == (-1,)
    assert not knots(geometric(), depth=4).complete


def test_lebesgue_witness_is_negative():
    lam, d = finite(1), finite(HALF, HALF, HALF)
    result = lebesgue_majorizes(lam, d)
    assert result.fails
    assert delta(result.witness, lam, d).sign() == -1


def test_lebesgue_holds_with_tails():
    assert lebesgue_majorizes(geometric(), geometric(HALF)).holds


def test_lr_equivalence_on_random_pairs():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        lam, d = random_finite_pair(rng)
        report = lr_equivalence_check(lam, d)
        assert report.ok, report.discrepancies
        assert report.agree and report.liminf_equal


def test_lr_equivalence_rejects_tails():
    with pytest.raises(ValueError):
        lr_equivalence_check(geometric(), finite(1))


def test_dra_check():
    report = dra_check([3, 1, 2], [1, 1, 2])
    assert report.ok
    assert report.difference_before == report.difference_after == 2
    with pytest.raises(ValueError):
        dra_check([1, 1], [2, 1])
