import inspect
import json
from fractions import Fraction

import pytest

from diagonal_toolbox.cli import main
from diagonal_toolbox.cli.oracles import TRANSFORMER_KINDS, lr_equivalence
from diagonal_toolbox.cli.problem import ProblemSpecError, dumps_problem, loads_problem
from diagonal_toolbox.essentials import OutputFormat
from diagonal_toolbox.seqcore import GeometricTail

GEOMETRIC_HALF = {"type": "geometric", "first": "1/2", "ratio": "1/2"}
GEOMETRIC_ONE = {"type": "geometric", "first": "1", "ratio": "1/2"}
HARMONIC = {"type": "power", "coefficient": "1", "exponent": "1"}

STRICTLY_POSITIVE = {"lambda": {"prefix": ["-1"], "pos_tail": GEOMETRIC_ONE}, "d": {"pos_tail": GEOMETRIC_HALF}}
KERNEL_WITNESS = {"lambda": {"pos_tail": GEOMETRIC_ONE, "zeros": 1}, "d": {"pos_tail": GEOMETRIC_ONE}}
FINITE = {"lambda": {"prefix": ["3", "1"]}, "d": {"prefix": ["2", "2"]}}


@pytest.fixture
def write_problem(tmp_path):
    def write(document, name="problem.json"):
        path = tmp_path / name
        path.write_text(document if isinstance(document, str) else json.dumps(document))
        return str(path)
    return write


def test_check_exit_codes(write_problem, capsys):
    assert main(["check", write_problem(STRICTLY_POSITIVE)]) == 0
    document = json.loads(capsys.readouterr().out)
    assert document["outcome"] == "Diagonal"
    assert document["sigma_plus"] == "1"
    assert main(["check", write_problem(KERNEL_WITNESS)]) == 1


def test_check_rejects_malformed_input(write_problem, tmp_path):
    assert main(["check", write_problem('{"lambda": {"prefix": ["1"]}, ')]) == 64
    assert main(["check", str(tmp_path / "missing.json")]) == 64
    assert main(["check", write_problem({"lambda": {"prefix": [0.5]}, "d": {}})]) == 64
    assert main(["check", write_problem(dict(FINITE, options={"precision": 7}))]) == 64


def test_check_writes_report(write_problem, tmp_path):
    out = tmp_path / "verdict.json"
    assert main(["check", write_problem(FINITE), "--out", str(out)]) == 0
    assert json.loads(out.read_text())["outcome"] == "Diagonal"


def test_explain_text(write_problem, capsys):
    assert main(["explain", write_problem(STRICTLY_POSITIVE), "--format", "text", "--depth", "3"]) == 0
    text = capsys.readouterr().out
    assert text.startswith("outcome: Diagonal")
    assert "positive_majorization" in text


def test_build_finite(write_problem, tmp_path, capsys):
    out = tmp_path / "matrix.json"
    assert main(["build", write_problem(FINITE), "--out", str(out)]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["builder"] == "schur-horn"
    assert result["realization"]["ok"]
    assert len(json.loads(out.read_text())) == 2


def test_build_tbound(write_problem, tmp_path, capsys):
    out = tmp_path / "matrix.txt"
    assert main(["build", write_problem(STRICTLY_POSITIVE), "--truncation", "20", "--format", "text",
                 "--out", str(out)]) == 0
    result = json.loads(capsys.readouterr().out)
    assert result["builder"] == "tbound"
    assert result["verdict"] == "Diagonal"
    assert result["realization"]["ok"]
    assert result["trace"]["exact_residual"] == "-1/1048576"
    assert len(out.read_text().splitlines()) == 21


def test_build_refuses(write_problem):
    assert main(["build", write_problem({"lambda": {"prefix": ["3", "1"]}, "d": {"prefix": ["2", "1"]}})]) == 1
    two_sided = {"pos_tail": HARMONIC, "neg_tail": HARMONIC}
    assert main(["build", write_problem({"lambda": two_sided, "d": two_sided})]) == 5


def test_oracles(capsys):
    assert main(["oracle", "lr-equivalence", "--n", "50"]) == 0
    assert json.loads(capsys.readouterr().out)["ok"]
    assert main(["oracle", "schur-horn-roundtrip", "--dim", "4", "--trials", "10"]) == 0
    for transform in TRANSFORMER_KINDS:
        assert main(["oracle", "transformer-postconditions", "--transform", transform, "--trials", "20"]) == 0


def test_oracle_input_errors():
    assert main(["oracle", "nonsense"]) == 64
    assert main(["oracle", "lr-equivalence", "--dim", "3"]) == 64


def test_problem_roundtrip():
    spec = loads_problem(json.dumps(dict(STRICTLY_POSITIVE, options={"truncation": 50, "format": "text"})))
    assert spec.lam.positive_tail == GeometricTail(1, Fraction(1, 2))
    assert loads_problem(dumps_problem(spec)) == spec
    settings = spec.settings(precision=2)
    assert settings.truncation == 50
    assert settings.output_format is OutputFormat.TEXT
    assert settings.work_bound == 10 ** 5


def test_problem_errors_carry_position():
    with pytest.raises(ProblemSpecError) as info:
        loads_problem('{\n"lambda": }')
    assert info.value.line == 2
    assert str(info.value).startswith("line 2, column")
    with pytest.raises(ProblemSpecError, match="missing key 'd'"):
        loads_problem(json.dumps({"lambda": {}}))
    with pytest.raises(ProblemSpecError, match="unknown keys"):
        loads_problem(json.dumps(dict(FINITE, extra=1)))


def test_lr_equivalence_defaults_to_a_thousand_pairs():
    assert inspect.signature(lr_equivalence).parameters["n"].default == 1000
