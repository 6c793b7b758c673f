from fractions import Fraction

import pytest

from diagonal_toolbox.essentials import Outcome, OutputFormat, Status, combine_statuses
from diagonal_toolbox.settings import Settings, default_settings, resolve_settings
from diagonal_toolbox.util import get_exit_code, get_outcome, get_outcome_name, get_precision_bounds


def test_packaged_defaults():
    settings = default_settings()
    assert settings.precision_level == 1
    assert settings.work_bound == 10 ** 4
    assert settings.knot_depth == 64
    assert settings.horizon == 10 ** 4
    assert settings.truncation == 200
    assert settings.tolerance == Fraction(1, 10 ** 12)
    assert settings.output_format is OutputFormat.JSON
    assert len(settings.epsilons) == 17
    assert settings.epsilons[-1] == Fraction(1, 2 ** 16)


def test_default_settings_are_copies():
    settings = default_settings()
    settings.update("construct", "truncation", 5)
    settings.update_variables()
    assert settings.truncation == 5
    assert resolve_settings(None).truncation == 200


def test_explicit_bounds_and_escalation():
    settings = Settings(work_bound=200)
    assert settings.work_bound == 200
    assert settings.horizon == 200
    escalated = settings.escalated()
    assert escalated.precision_level == 2
    assert escalated.work_bound == 10 ** 5
    assert escalated.knot_depth == 512
    assert settings.work_bound == 200


def test_top_level_does_not_escalate():
    with pytest.warns(UserWarning):
        assert Settings(precision_level=3).escalated() is None


def test_invalid_settings():
    with pytest.raises(ValueError):
        Settings(precision_level=4)
    with pytest.raises(ValueError):
        Settings(output_format="xml")
    with pytest.raises(TypeError):
        resolve_settings("fast")


def test_save_and_load(tmp_path):
    path = tmp_path / "settings.json"
    Settings(truncation=40, output_format="text", knot_depth=9).save(path)
    loaded = Settings(path)
    assert loaded.truncation == 40
    assert loaded.output_format is OutputFormat.TEXT
    assert loaded.knot_depth == 9


def test_switchers():
    assert get_precision_bounds(2) == (10 ** 5, 512)
    assert get_precision_bounds(9) is None
    assert get_outcome("KernelInconclusive") is Outcome.KERNEL_INCONCLUSIVE
    assert get_outcome("Maybe") is None
    assert get_outcome_name(Outcome.PRECISION_UNKNOWN) == "PrecisionUnknown"
    assert get_exit_code(Outcome.NOT_DIAGONAL) == 1


def test_combine_statuses():
    assert combine_statuses([Status.HOLDS, Status.UNKNOWN, Status.FAILS]) is Status.FAILS
    assert combine_statuses([Status.HOLDS, Status.UNKNOWN]) is Status.UNKNOWN
    assert combine_statuses([]) is Status.HOLDS
