import json
import logging

from ..majorization.delta import delta_table
from ..seqcore.certified import format_rational
from ..seqcore.sequence import normalize
from .verdict import Verdict, decide

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


def verdict_to_json(verdict: Verdict, delta_rows=None):
    document = {
        "schema": SCHEMA_VERSION,
        "outcome": verdict.name,
        "reason": verdict.reason,
        "precision_level": verdict.precision_level,
        "conditions": verdict.trace.to_json(),
        "sigma_plus": verdict.sigma_plus.to_json(),
        "sigma_minus": verdict.sigma_minus.to_json(),
        "excess": verdict.trace.excess.to_json(),
        "splittings": [s.to_json() for s in verdict.splittings],
    }
    if delta_rows is not None:
        document["delta"] = [{"alpha": format_rational(alpha), "delta": value.to_json()}
                             for alpha, value in delta_rows]
    return document


def explain(lam, d, settings=None, depth=8):
    """Decides the instance and returns the full JSON report of how."""
    lam, d = normalize(lam), normalize(d)
    verdict = decide(lam, d, settings)
    return verdict_to_json(verdict, delta_table(lam, d, depth, settings))


def render_text(document) -> str:
    lines = ["outcome: %s" % document["outcome"]]
    if document.get("reason"):
        lines.append("  %s" % document["reason"])
    lines.append("sigma_plus = %s, sigma_minus = %s" % (document["sigma_plus"], document["sigma_minus"]))
    lines.append("necessary conditions:")
    for name, condition in document["conditions"].items():
        line = "  %-22s %s" % (name, condition["status"])
        if "witness" in condition:
            line += "  witness %s" % json.dumps(condition["witness"])
        if condition.get("reason"):
            line += "  (%s)" % condition["reason"]
        lines.append(line)
    if document["splittings"]:
        lines.append("splittings (z0, z1, z2):")
        for row in document["splittings"]:
            s = row["splitting"]
            lines.append("  (%s, %s, %s)  positive %s, negative %s"
                         % (s["z0"], s["z1"], s["z2"], row["positive"]["result"], row["negative"]["result"]))
            for side in ("positive", "negative"):
                if row[side].get("reason"):
                    lines.append("      %s: %s" % (side, row[side]["reason"]))
    if document.get("delta"):
        lines.append("delta at the knots:")
        for row in document["delta"]:
            lines.append("  alpha = %-16s delta = %s" % (row["alpha"], row["delta"]))
    return "\n".join(lines)
