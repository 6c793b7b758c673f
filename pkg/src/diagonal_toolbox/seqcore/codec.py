"""JSON encoding of sequences.

Rationals travel as "p/q" strings and infinite counts as the string "inf"::

    {"prefix": ["-1"], "pos_tail": {"type": "geometric", "first": "1", "ratio": "1/2"},
     "neg_tail": {"type": "zero", "count": 0}, "zeros": 0}
"""
import json

from .certified import format_rational, to_fraction
from .counts import count_from_json, count_to_json
from .sequence import ExtendedSequence, normalize
from .tails import FiniteTail, GeometricTail, MultiTail, PerturbedTail, PowerTail, ZeroTail

SEQUENCE_KEYS = ("prefix", "pos_tail", "neg_tail", "zeros")


def _rational(value, where):
    # plain JSON integers are accepted, floats are not
    if isinstance(value, float):
        raise ValueError("%s: %r is a binary float, write it as a \"p/q\" string" % (where, value))
    try:
        return to_fraction(value)
    except TypeError as e:
        raise ValueError("%s: %s" % (where, e))


def tail_from_json(data, where="tail"):
    if data is None:
        return ZeroTail()
    if not isinstance(data, dict) or "type" not in data:
        raise ValueError("%s: expected an object with a \"type\" field, got %r" % (where, data))
    kind = data["type"]
    if kind == "zero":
        return ZeroTail(count_from_json(data.get("count", 0)))
    if kind == "geometric":
        return GeometricTail(_rational(data["first"], where + ".first"), _rational(data["ratio"], where + ".ratio"))
    if kind == "power":
        offset = data.get("offset", 0)
        if not isinstance(offset, int) or isinstance(offset, bool):
            raise ValueError("%s.offset: expected a natural number, got %r" % (where, offset))
        return PowerTail(_rational(data["coefficient"], where + ".coefficient"),
                         _rational(data["exponent"], where + ".exponent"), offset)
    if kind == "finite":
        values = data["values"]
        if not isinstance(values, list):
            raise ValueError("%s.values: expected a list" % where)
        return FiniteTail(tuple(_rational(v, "%s.values[%d]" % (where, i)) for i, v in enumerate(values)))
    if kind == "perturbed":
        base = tail_from_json(data["base"], where + ".base")
        counters = {}
        for name, default in (("start", None), ("step", None), ("offset", 0)):
            value = data.get(name, default)
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError("%s.%s: expected a natural number, got %r" % (where, name, value))
            counters[name] = value
        return PerturbedTail(base, amplitude=_rational(data["amplitude"], where + ".amplitude"),
                             decay=_rational(data["decay"], where + ".decay"), **counters)
    if kind == "multi":
        return MultiTail(tuple(tail_from_json(c, "%s.components[%d]" % (where, i))
                               for i, c in enumerate(data["components"])))
    raise ValueError("%s: unknown tail type %r" % (where, kind))


def sequence_to_json(s: ExtendedSequence) -> dict:
    return {
        "prefix": [format_rational(x) for x in s.prefix],
        "pos_tail": s.positive_tail.to_json(),
        "neg_tail": s.negative_tail.to_json(),
        "zeros": count_to_json(s.zero_count),
    }


def sequence_from_json(data, where="sequence") -> ExtendedSequence:
    if not isinstance(data, dict):
        raise ValueError("%s: expected an object, got %r" % (where, data))
    unknown = set(data) - set(SEQUENCE_KEYS)
    if unknown:
        raise ValueError("%s: unknown keys %s" % (where, ", ".join(sorted(unknown))))
    prefix = data.get("prefix", [])
    if not isinstance(prefix, list):
        raise ValueError("%s.prefix: expected a list" % where)
    try:
        s = ExtendedSequence(
            tuple(_rational(x, "%s.prefix[%d]" % (where, i)) for i, x in enumerate(prefix)),
            tail_from_json(data.get("pos_tail"), where + ".pos_tail"),
            tail_from_json(data.get("neg_tail"), where + ".neg_tail"),
            count_from_json(data.get("zeros", 0)))
    except (KeyError, TypeError) as e:
        raise ValueError("%s: malformed field %s" % (where, e))
    return normalize(s)


def dumps_sequence(s: ExtendedSequence, **kwargs) -> str:
    return json.dumps(sequence_to_json(s), **kwargs)


def loads_sequence(text: str) -> ExtendedSequence:
    return sequence_from_json(json.loads(text))
