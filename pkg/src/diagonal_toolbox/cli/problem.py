"""Problem files: a pair of sequences with run options, as JSON.

::

    {"lambda": {"prefix": ["-1"], "pos_tail": {"type": "geometric", "first": "1", "ratio": "1/2"}},
     "d": {"pos_tail": {"type": "geometric", "first": "1/2", "ratio": "1/2"}},
     "options": {"precision": 1, "truncation": 200, "format": "json"}}
"""
import json
from dataclasses import dataclass, field

from ..seqcore.codec import sequence_from_json, sequence_to_json
from ..seqcore.sequence import ExtendedSequence
from ..settings import MAX_PRECISION_LEVEL, Settings
from ..util import get_output_format

PROBLEM_KEYS = ("lambda", "d", "options")
OPTION_KEYS = ("precision", "work_bound", "knot_depth", "truncation", "format")


class ProblemSpecError(ValueError):

    def __init__(self, message, line=None, column=None):
        if line is not None:
            message = "line %d, column %d: %s" % (line, column, message)
        super().__init__(message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class ProblemSpec:
    lam: ExtendedSequence
    d: ExtendedSequence
    options: dict = field(default_factory=dict)

    def settings(self, **overrides) -> Settings:
        """Settings for this problem; keyword overrides (from the command line) win over the file."""
        return settings_from_options(self.options, **overrides)

    def to_json(self):
        return {"lambda": sequence_to_json(self.lam), "d": sequence_to_json(self.d), "options": dict(self.options)}


def settings_from_options(options, **overrides) -> Settings:
    options = dict(options)
    options.update({k: v for k, v in overrides.items() if v is not None})
    kwargs = {"precision_level": options.get("precision", 1),
              "work_bound": options.get("work_bound"),
              "knot_depth": options.get("knot_depth")}
    if "truncation" in options:
        kwargs["truncation"] = options["truncation"]
    if "format" in options:
        kwargs["output_format"] = options["format"]
    return Settings(**kwargs)


def _natural(value, where, low=0):
    if isinstance(value, bool) or not isinstance(value, int) or value < low:
        raise ProblemSpecError("%s: expected an integer >= %d, got %r" % (where, low, value))
    return value


def _options(data):
    if not isinstance(data, dict):
        raise ProblemSpecError("options: expected an object, got %r" % (data,))
    unknown = set(data) - set(OPTION_KEYS)
    if unknown:
        raise ProblemSpecError("options: unknown keys %s" % ", ".join(sorted(unknown)))
    options = dict(data)
    if "precision" in options and not 1 <= _natural(options["precision"], "options.precision", 1) \
            <= MAX_PRECISION_LEVEL:
        raise ProblemSpecError("options.precision: expected 1 to %d, got %d"
                               % (MAX_PRECISION_LEVEL, options["precision"]))
    for key in ("work_bound", "knot_depth", "truncation"):
        if key in options:
            _natural(options[key], "options." + key, 1)
    if "format" in options and get_output_format(options["format"]) is None:
        raise ProblemSpecError("options.format: expected \"json\" or \"text\", got %r" % (options["format"],))
    return options


def problem_from_json(data) -> ProblemSpec:
    if not isinstance(data, dict):
        raise ProblemSpecError("expected an object with \"lambda\" and \"d\", got %r" % (data,))
    unknown = set(data) - set(PROBLEM_KEYS)
    if unknown:
        raise ProblemSpecError("unknown keys %s" % ", ".join(sorted(unknown)))
    for key in ("lambda", "d"):
        if key not in data:
            raise ProblemSpecError("missing key %r" % key)
    try:
        lam = sequence_from_json(data["lambda"], "lambda")
        d = sequence_from_json(data["d"], "d")
    except (ValueError, TypeError) as e:
        raise ProblemSpecError(str(e))
    return ProblemSpec(lam, d, _options(data.get("options", {})))


def loads_problem(text: str) -> ProblemSpec:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemSpecError(e.msg, e.lineno, e.colno)
    return problem_from_json(data)


def load_problem(filename) -> ProblemSpec:
    try:
        with open(filename) as f:
            text = f.read()
    except OSError as e:
        raise ProblemSpecError("cannot read %s: %s" % (filename, e.strerror))
    return loads_problem(text)


def dumps_problem(spec: ProblemSpec, **kwargs) -> str:
    return json.dumps(spec.to_json(), **kwargs)
