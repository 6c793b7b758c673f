import math
from fractions import Fraction
from itertools import islice

import mpmath
import pytest
from hypothesis import given, seed, settings
from hypothesis import strategies as st

from diagonal_toolbox.decision import decide
from diagonal_toolbox.essentials import Outcome
from diagonal_toolbox.majorization import delta, lebesgue_majorizes, riemann_majorizes
from diagonal_toolbox.seqcore import (MINUS_INFINITY, PLUS_INFINITY, CertifiedValue, ExtendedSequence, FiniteTail,
                                      GeometricTail, MultiTail, PerturbedTail, PowerTail, PowerTerm, ZeroTail,
                                      compare_magnitudes, concat, dumps_sequence, finite, level_function,
                                      loads_sequence, materialize, negate, negative_part, normalize,
                                      partial_sum, positive_part, sequence_from_json, terms_at_least, total_sum)
from diagonal_toolbox.seqcore.sequence import is_normalized, term
from diagonal_toolbox.settings import Settings

HALF = Fraction(1, 2)


def geometric(first=1, ratio=HALF, **kwargs):
    return ExtendedSequence((), GeometricTail(Fraction(first), Fraction(ratio)), **kwargs)


def test_finite_sorts_by_sign():
    s = finite(Fraction(1, 4), 1, -1, Fraction(-1, 2))
    assert s.positive_prefix == (1, Fraction(1, 4))
    assert s.negative_magnitudes == (1, HALF)
    assert s.length == 4


def test_explicit_zero_rejected():
    with pytest.raises(ValueError):
        normalize(ExtendedSequence((Fraction(1), Fraction(0))))


def test_normalize_absorbs_larger_tail_terms():
    s = normalize(ExtendedSequence((Fraction(1, 8),), GeometricTail(1, HALF)))
    assert s.positive_prefix == (1, HALF, Fraction(1, 4), Fraction(1, 8))
    assert s.positive_tail == GeometricTail(Fraction(1, 8), HALF)
    assert materialize(s, 6) == [1, HALF, Fraction(1, 4), Fraction(1, 8), Fraction(1, 8), Fraction(1, 16)]


def test_materialize_positive_first_on_ties():
    s = ExtendedSequence((-HALF,), GeometricTail(1, HALF))
    assert materialize(s, 4) == [1, HALF, -HALF, Fraction(1, 4)]


def test_materialize_zeros_come_last():
    assert materialize(finite(2, -1, zero_count=2), 4) == [2, -1, 0, 0]


def test_sums_of_geometric_tail():
    s = geometric()
    assert partial_sum(s, 3).value == Fraction(7, 4)
    assert total_sum(s).value == 2
    assert level_function(s, Fraction(1, 4)).value == 1
    assert level_function(finite(3, 1), 2).value == 1


def test_term_indexing():
    s = geometric(zero_count=0)
    assert term(s, 1) == 1
    assert term(s, 4) == Fraction(1, 8)
    with pytest.raises(IndexError):
        term(finite(1), 2)


def test_negate_swaps_tails():
    s = ExtendedSequence((Fraction(-3),), GeometricTail(1, HALF), zero_count=1)
    n = negate(s)
    assert n.positive_prefix == (3,)
    assert n.negative_tail == GeometricTail(1, HALF)
    assert n.zero_count == 1
    assert positive_part(s).zero_count == 2
    assert negative_part(s).positive_prefix == (3,)


def test_concat_merges_tails():
    s = concat(geometric(), ExtendedSequence((), GeometricTail(Fraction(1, 3), Fraction(1, 3))))
    assert isinstance(s.positive_tail, MultiTail)
    assert total_sum(s).value == 2 + HALF


def test_power_terms_compare_exactly():
    tail = PowerTail(1, HALF)
    assert isinstance(tail.term(3), PowerTerm)
    assert isinstance(tail.term(4), Fraction)
    assert compare_magnitudes(tail.term(4), HALF) == 0
    assert compare_magnitudes(tail.term(3), HALF) == 1
    value = tail.term(2).certified()
    assert Fraction(7071, 10000) < value.lower() <= value.upper() < Fraction(7072, 10000)


def test_certified_infinities():
    assert (PLUS_INFINITY + MINUS_INFINITY).is_unknown
    assert (PLUS_INFINITY + 5).compare(PLUS_INFINITY) == 0
    assert CertifiedValue.interval(-1, 1).sign() is None
    assert CertifiedValue.exact(HALF).compare(Fraction(1, 3)) == 1
    assert CertifiedValue.interval(1, 2).to_json() == "[1, 2]"


def test_codec_roundtrip():
    s = ExtendedSequence((Fraction(-1),), GeometricTail(1, HALF),
                         MultiTail((GeometricTail(HALF, HALF), PowerTail(1, 2, 3))), math.inf)
    assert loads_sequence(dumps_sequence(s)) == normalize(s)


def test_codec_rejects_floats_and_unknown_keys():
    with pytest.raises(ValueError):
        sequence_from_json({"prefix": [0.5]})
    with pytest.raises(ValueError):
        sequence_from_json({"prefix": ["1"], "tail": None})
    assert sequence_from_json({"zeros": "inf"}).zero_count == math.inf


@seed(1)
@given(first=st.fractions(min_value=Fraction(1, 100), max_value=10),
       ratio=st.fractions(min_value=Fraction(1, 100), max_value=Fraction(99, 100)),
       n=st.integers(min_value=1, max_value=40))
def test_partial_sum_matches_materialized_terms(first, ratio, n):
    s = geometric(first, ratio)
    assert partial_sum(s, n).value == sum(materialize(s, n), Fraction(0))


def test_normalize_keeps_small_prefix_terms_below_irrational_heads():
    s = normalize(ExtendedSequence((Fraction(1, 100),), PowerTail(1, HALF)))
    assert s.positive_prefix == (1,)
    assert s.positive_tail == MultiTail((FiniteTail((Fraction(1, 100),)), PowerTail(1, HALF, 1)))
    assert is_normalized(s)
    assert terms_at_least(s, Fraction(1, 100)) == 10001
    assert loads_sequence(dumps_sequence(s)) == s
    assert decide(s, s).outcome is Outcome.DIAGONAL


def test_power_tail_rational_terms():
    tail = PowerTail(1, HALF)
    assert tail.term(1) == 1 and isinstance(tail.term(1), Fraction)
    assert isinstance(tail.term(2), PowerTerm)
    assert PowerTail(2, Fraction(3, 2), 1).term(3) == Fraction(1, 4)


def test_finite_tail():
    tail = FiniteTail((Fraction(1, 4), 1, HALF))
    assert tail.values == (1, HALF, Fraction(1, 4))
    assert tail.count_at_least(HALF) == 2
    assert tail.sum_first(2).value == Fraction(3, 2)
    assert tail.total().value == Fraction(7, 4)
    assert tail.drop(3) == ZeroTail()
    with pytest.raises(IndexError):
        tail.term(4)
    with pytest.raises(ValueError):
        FiniteTail((1, 0))


def perturbed(start=5, step=7, amplitude=1, decay=Fraction(1, 4)):
    return PerturbedTail(GeometricTail(HALF, HALF), start, step, amplitude, decay)


def test_perturbed_tail_terms_and_sums():
    tail = perturbed()
    assert tail.term(5) == Fraction(1, 32) + Fraction(1, 1024)
    assert tail.term(6) == Fraction(1, 64) - Fraction(1, 1024)
    assert tail.term(12) == Fraction(1, 2 ** 12) + Fraction(1, 4 ** 12)
    assert [tail.term(k) for k in range(1, 20)] == list(islice(tail.terms(), 19))
    assert tail.sum_first(5).value == 1 - Fraction(1, 32) + Fraction(1, 1024)
    assert tail.sum_first(6).value == 1 - Fraction(1, 64)
    assert tail.total().value == 1
    dropped = tail.drop(5)
    assert dropped.term(1) == tail.term(6)
    assert dropped.total().value == Fraction(1, 32) - Fraction(1, 1024)
    assert tail.count_at_least(Fraction(1, 32)) == 5


def test_perturbed_tail_validation():
    with pytest.raises(ValueError, match="step"):
        perturbed(step=2)
    with pytest.raises(ValueError, match="decay faster"):
        perturbed(decay=HALF)
    with pytest.raises(ValueError, match="ordering"):
        perturbed(start=1, amplitude=1, decay=Fraction(1, 3))
    with pytest.raises(ValueError, match="integer"):
        perturbed(start=HALF)


def test_codec_perturbed_and_finite_tails():
    s = ExtendedSequence((HALF, HALF), perturbed(), MultiTail((FiniteTail((Fraction(1, 3),)), PowerTail(1, 2, 2))))
    assert loads_sequence(dumps_sequence(s)) == normalize(s)
    parsed = sequence_from_json({"pos_tail": {"type": "perturbed", "base": {"type": "geometric", "first": "1/2",
                                                                             "ratio": "1/2"},
                                              "start": 5, "step": 7, "amplitude": "1", "decay": "1/4"}})
    assert parsed.positive_tail == perturbed()
    with pytest.raises(ValueError, match="natural number"):
        sequence_from_json({"pos_tail": dict(perturbed().to_json(), step="7")})


def test_total_sum_encloses_one_plus_zeta_two():
    value = total_sum(ExtendedSequence((Fraction(1),), PowerTail(1, 2)))
    with mpmath.workdps(60):
        target = Fraction(mpmath.nstr(1 + mpmath.pi ** 2 / 6, 50))
    assert value.lower() <= target <= value.upper()
    assert value.width <= Settings().tolerance


signed_rationals = st.fractions(min_value=-4, max_value=4, max_denominator=12).filter(lambda x: x != 0)
magnitudes = st.lists(st.fractions(min_value=Fraction(1, 12), max_value=4, max_denominator=12), min_size=1,
                      max_size=8)
tails = st.one_of(
    st.just(ZeroTail()),
    st.builds(GeometricTail, st.fractions(min_value=Fraction(1, 12), max_value=4, max_denominator=12),
              st.sampled_from([HALF, Fraction(1, 3), Fraction(3, 4)])),
    st.builds(PowerTail, st.integers(1, 3), st.sampled_from([HALF, Fraction(1), Fraction(2)]), st.integers(0, 3)),
)


@seed(2)
@settings(deadline=None)
@given(prefix=st.lists(signed_rationals, max_size=6), positive=tails, negative=tails,
       zeros=st.sampled_from([0, 1, 3, math.inf]))
def test_normalize_is_idempotent(prefix, positive, negative, zeros):
    once = normalize(ExtendedSequence(tuple(prefix), positive, negative, zeros))
    assert normalize(once) == once
    assert is_normalized(once)


@seed(3)
@settings(deadline=None)
@given(values=magnitudes)
def test_level_function_is_convex_and_piecewise_linear(values):
    s = finite(*values)
    points = sorted(set(values))
    grid = sorted(set(points) | {(a + b) / 2 for a, b in zip(points, points[1:])} | {points[0] / 2, points[-1] * 2})
    g = [level_function(s, a).value for a in grid]
    assert all(x >= y for x, y in zip(g, g[1:]))
    slopes = [(y - x) / (b - a) for a, b, x, y in zip(grid, grid[1:], g, g[1:])]
    assert all(x <= y for x, y in zip(slopes, slopes[1:]))
    for a, b in zip(points, points[1:]):
        third = a + (b - a) / 3
        assert level_function(s, third).value == (2 * level_function(s, a).value + level_function(s, b).value) / 3
    assert g[-1] == 0


@seed(4)
@settings(deadline=None)
@given(first=st.fractions(min_value=Fraction(1, 100), max_value=10),
       ratio=st.fractions(min_value=Fraction(1, 100), max_value=HALF),
       depth=st.integers(min_value=20, max_value=60))
def test_level_function_tends_to_the_total(first, ratio, depth):
    s = geometric(first, ratio)
    alpha = first * ratio ** depth
    gap = total_sum(s).value - level_function(s, alpha).value
    assert gap == alpha * (depth + 1 + ratio / (1 - ratio))
    assert gap < Fraction(1, 1000)


@seed(5)
@settings(deadline=None)
@given(lam=magnitudes, d=magnitudes)
def test_delta_sign_is_decided_at_the_knots(lam, d):
    L, D = finite(*lam), finite(*d)
    points = sorted(set(lam) | set(d))
    grid = (points + [(a + b) / 2 for a, b in zip(points, points[1:])]
            + [points[-1] * 2, points[0] / 2, points[0] / 2 ** 40])
    on_grid = all(delta(a, L, D).sign() >= 0 for a in grid)
    assert lebesgue_majorizes(L, D).holds == on_grid
    for a, b in zip(points, points[1:]):
        third = a + (b - a) / 3
        assert delta(third, L, D).value == (2 * delta(a, L, D).value + delta(b, L, D).value) / 3


@seed(6)
@settings(deadline=None)
@given(lam=magnitudes, d=magnitudes)
def test_riemann_and_lebesgue_agree(lam, d):
    L, D = finite(*lam), finite(*d)
    assert riemann_majorizes(L, D).holds == lebesgue_majorizes(L, D).holds
