from fractions import Fraction

import numpy as np
import pytest

from diagonal_toolbox.cli.oracles import TRANSFORMER_KINDS, _midseq_instance, transformer_postconditions
from diagonal_toolbox.construct import (convmove, exequal_transform, fis_transform, fiz_transform,
                                        midseq_transform, one_neg_transform)
from diagonal_toolbox.construct.transformers import _Gaps, _midseq_first_case, _Terms
from diagonal_toolbox.seqcore import ExtendedSequence, GeometricTail, finite, materialize
from diagonal_toolbox.settings import resolve_settings

HALF = Fraction(1, 2)


def geometric(first=1, ratio=HALF):
    return ExtendedSequence((), GeometricTail(Fraction(first), Fraction(ratio)))


def test_convmove():
    plan = convmove([4, 2, 0], 1)
    assert plan.window == (3, 2, 1)
    assert plan.ok
    assert plan.to_json()["parameters"] == {"Delta": "1"}
    with pytest.raises(ValueError):
        convmove([4, 2, 0], 5)
    with pytest.raises(ValueError):
        convmove([0, 1], 0)


def test_midseq_equal_tails():
    lam = ExtendedSequence((Fraction(2),), GeometricTail(HALF, HALF))
    d = ExtendedSequence((Fraction(1),), GeometricTail(HALF, HALF))
    plan = midseq_transform(lam, d)
    assert plan.ok, plan.failed
    assert plan.parameters["case"] == 1
    assert plan.parameters["i0"] == 1
    assert plan.parameters["epsilon"] == Fraction(3, 4)
    assert plan.window[:2] == (Fraction(5, 4), Fraction(7, 8))
    assert len(plan.window) == 200


def test_midseq_dominating_tail():
    lam = ExtendedSequence((Fraction(2),), GeometricTail(Fraction(3, 4), HALF))
    d = ExtendedSequence((Fraction(1),), GeometricTail(HALF, HALF))
    plan = midseq_transform(lam, d)
    assert plan.ok, plan.failed
    assert plan.parameters["case"] == 2
    assert plan.parameters["sigma"] == Fraction(3, 2)
    assert plan.window[:3] == (2, Fraction(3, 4), Fraction(3, 8))


def test_midseq_requires_majorization():
    with pytest.raises(ValueError):
        midseq_transform(geometric(HALF), geometric(1))


def test_one_neg_cuts():
    plan = one_neg_transform(geometric(), geometric(HALF))
    assert plan.ok, plan.failed
    assert plan.parameters["n0"] == 1
    assert plan.parameters["alpha"] == Fraction(1, 4)
    assert plan.parameters["C1"] == 9
    assert plan.parameters["cuts"] == [1, 2, 4, 7, 11, 16, 22, 29, 37]
    assert plan.window[:2] == (Fraction(3, 4), Fraction(5, 8))


def test_exequal_symmetric_sides():
    plan = exequal_transform(geometric(), geometric(), geometric(HALF), geometric(HALF), blocks=2)
    assert plan.ok, plan.failed
    assert plan.parameters["m"] == [2, 6]
    assert plan.parameters["n"] == [2, 6]
    assert plan.parameters["eta"] == [0, 0]
    assert plan.parameters["blocks"] == [(1, 4), (5, 8)]
    assert plan.parameters["sigma"] == "1"


def test_exequal_rejects_unequal_excess():
    with pytest.raises(ValueError, match="excesses differ"):
        exequal_transform(geometric(), geometric(), geometric(HALF), geometric(Fraction(1, 4)))


def test_fis_window():
    lam = ExtendedSequence((Fraction(2), Fraction(1)), GeometricTail(HALF, HALF))
    plan = fis_transform(lam, [1, 1, 1])
    assert plan.ok, plan.failed
    assert plan.parameters == {"M": 4, "N": 3}
    assert plan.window == (1, 1, 1, Fraction(3, 4))
    assert materialize(plan.sequence, 5) == [1, 1, 1, Fraction(3, 4), Fraction(1, 8)]
    with pytest.raises(ValueError):
        fis_transform(lam, [3, 1])


def test_fiz_geometric_negatives():
    lam = ExtendedSequence((Fraction(1),), negative_tail=GeometricTail(Fraction(1, 4), HALF))
    plan = fiz_transform(lam, 2)
    assert plan.ok, plan.failed
    assert plan.window == (Fraction(5, 8), 0, 0)
    assert plan.sequence.zero_count == 2
    assert plan.sequence.negative_tail == GeometricTail(Fraction(1, 16), HALF)


def test_fiz_slides_the_run():
    plan = fiz_transform(finite(HALF, -HALF, Fraction(-1, 8), Fraction(-1, 16)), 2)
    assert plan.ok, plan.failed
    assert plan.parameters["run_start"] == 2
    assert plan.window[0] == Fraction(5, 16)
    assert plan.sequence.negative_magnitudes == (HALF,)
    with pytest.raises(ValueError):
        fiz_transform(finite(1, Fraction(-1, 4)), 2)


def test_fiz_needs_a_run_inside_the_support():
    with pytest.raises(ValueError, match="no run of 2 negative terms"):
        fiz_transform(finite(Fraction(1, 4), -HALF, -HALF, Fraction(-1, 4)), 2)


def test_midseq_zero_first_slope():
    lam = ExtendedSequence((Fraction(2), Fraction(3, 2)), GeometricTail(Fraction(3, 4), HALF))
    d = ExtendedSequence((Fraction(2), Fraction(1)), GeometricTail(HALF, HALF))
    plan = midseq_transform(lam, d)
    assert plan.ok, plan.failed
    assert plan.parameters["case"] == 2
    assert plan.parameters["slopes"][:3] == [0, HALF, Fraction(1, 4)]
    assert plan.parameters["ends"][:3] == [1, 2, 3]
    assert plan.window[:4] == (2, Fraction(3, 2), Fraction(3, 4), Fraction(3, 8))


def test_midseq_first_case_without_a_drop():
    settings = resolve_settings(None)
    lam, d = _Terms(finite(2, 1), "lambda", settings.work_bound), _Terms(finite(2, 1), "d", settings.work_bound)
    with pytest.raises(ValueError, match="drops strictly"):
        _midseq_first_case(lam, d, _Gaps(lam, d), Fraction(-1), 2, settings)


@pytest.mark.parametrize("kind", TRANSFORMER_KINDS)
def test_transformer_postconditions(kind):
    report = transformer_postconditions(kind, seed=7, trials=50)
    assert report.trials == 50
    assert report.ok, report.violations[:3]


def test_random_midseq_instances_cover_both_cases():
    rng = np.random.default_rng(3)
    cases = set()
    for _ in range(50):
        plan = midseq_transform(*_midseq_instance(rng))
        assert plan.ok, plan.failed
        cases.add(plan.parameters["case"])
    assert cases == {1, 2}
