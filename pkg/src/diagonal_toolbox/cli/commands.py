"""The subcommands. Each returns the process exit status."""
import json
import logging
from fractions import Fraction

from ..construct.eigen import verify_realization
from ..construct.matrices import dump_matrix
from ..construct.schur_horn import schur_horn_realization
from ..construct.tbound import infmove_build, one_neg_build, tbound_build
from ..decision.report import explain, render_text, verdict_to_json
from ..decision.verdict import decide
from ..essentials import Outcome, OutputFormat
from ..seqcore.certified import format_rational, to_fraction
from ..seqcore.counts import is_infinite
from ..seqcore.sequence import materialize, negative_part, positive_part, total_sum
from ..util import EXIT_INPUT_ERROR, EXIT_NO_BUILDER, get_exit_code, get_outcome
from .oracles import get_oracle

logger = logging.getLogger(__name__)

BUILDERS = ("auto", "schur-horn", "tbound", "infmove")


class NoBuilder(Exception):
    pass


def _emit(document, settings, out=None):
    if settings.output_format is OutputFormat.TEXT:
        text = render_text(document) if "outcome" in document else json.dumps(document, indent=2)
    else:
        text = json.dumps(document, indent=2)
    if out is None:
        print(text)
    else:
        with open(out, "w") as f:
            f.write(text + "\n")
        logger.info("report written to %s", out)


def cmd_check(spec, settings, out=None):
    verdict = decide(spec.lam, spec.d, settings)
    _emit(verdict_to_json(verdict), settings, out)
    return get_exit_code(verdict.outcome)


def cmd_explain(spec, settings, out=None, depth=8):
    document = explain(spec.lam, spec.d, settings, depth)
    _emit(document, settings, out)
    return get_exit_code(get_outcome(document["outcome"]))


def _is_finite(s):
    return not is_infinite(s.length)


def _choose_builder(spec, requested):
    lam, d = spec.lam, spec.d
    if requested != "auto":
        return requested
    if _is_finite(lam) and _is_finite(d):
        return "schur-horn"
    if lam.negative_count == 1 and d.is_nonnegative and is_infinite(lam.positive_count) \
            and is_infinite(d.positive_count):
        return "tbound"
    raise NoBuilder("no construction matches this instance: only finite instances (Schur-Horn) and a single "
                    "negative eigenvalue (t-bound) are built; the two-sided orchestrations are not implemented")


def _build_schur_horn(spec, settings):
    lam, d = spec.lam, spec.d
    if not (_is_finite(lam) and _is_finite(d)):
        raise NoBuilder("the Schur-Horn builder needs finitely many terms on both sides")
    realization = schur_horn_realization(materialize(lam, lam.length), materialize(d, d.length), settings)
    return realization, {"dimension": len(realization.eigenvalues)}


def _single_negative(lam):
    magnitudes = lam.negative_magnitudes or (lam.negative_tail.head(),)
    return to_fraction(magnitudes[0])


def _build_tbound(spec, settings):
    lam, d = spec.lam, spec.d
    if lam.negative_count != 1 or not d.is_nonnegative:
        raise NoBuilder("the t-bound builder needs exactly one negative eigenvalue and a nonnegative diagonal")
    n = settings.truncation
    lambda_pos, d_pos = positive_part(lam), positive_part(d)
    window, d_window = materialize(lambda_pos, n), materialize(d_pos, n)
    if len(window) < n or len(d_window) < n:
        raise NoBuilder("the t-bound builder needs infinitely many positive terms on both sides")
    if all(x >= y for x, y in zip(window, d_window)):
        trace = tbound_build(window, d_window, _single_negative(lam), n, settings=settings)
        return trace.realization(), trace.to_json()
    plan, trace = one_neg_build(lambda_pos, d_pos, n, settings)
    document = trace.to_json()
    document["transform"] = plan.to_json()
    return trace.realization(), document


def _build_infmove(spec, settings, epsilon):
    lam = spec.lam
    if lam.positive_count != 1:
        raise NoBuilder("the infmove builder needs exactly one positive eigenvalue")
    lambda1 = materialize(positive_part(lam), 1)[0]
    negatives = negative_part(lam)
    count = negatives.positive_count
    n = settings.truncation if is_infinite(count) else min(count, settings.truncation)
    window = materialize(negatives, n)
    total = total_sum(negatives, settings)
    if not total.is_exact:
        raise NoBuilder("the negative eigenvalues must have an exact sum, got %s" % total)
    trace = infmove_build(lambda1, window, epsilon, n, total.value - sum(window, Fraction(0)), settings)
    return trace.realization(), trace.to_json()


def cmd_build(spec, settings, out=None, builder="auto", epsilon="1/2"):
    try:
        builder = _choose_builder(spec, builder)
    except NoBuilder as e:
        logger.error("%s", e)
        return EXIT_NO_BUILDER
    verdict = None
    # infmove realizes its own diagonal, d is not used
    if builder != "infmove":
        verdict = decide(spec.lam, spec.d, settings)
        if verdict.outcome is not Outcome.DIAGONAL:
            logger.error("nothing to build: the verdict is %s (%s)", verdict.name, verdict.reason)
            _emit(verdict_to_json(verdict), settings)
            return get_exit_code(verdict.outcome)
    try:
        if builder == "schur-horn":
            realization, document = _build_schur_horn(spec, settings)
        elif builder == "tbound":
            realization, document = _build_tbound(spec, settings)
        else:
            realization, document = _build_infmove(spec, settings, to_fraction(epsilon))
    except (NoBuilder, ValueError, TypeError) as e:
        logger.error("%s builder: %s", builder, e)
        return EXIT_NO_BUILDER

    output_format = settings.output_format.value
    if out is None:
        out = "%s_matrix.%s" % (settings.export_name, "json" if output_format == "json" else "txt")
    dump_matrix(realization.matrix, out, output_format)
    check = verify_realization(realization.matrix, realization.eigenvalues, realization.diagonal,
                               settings=settings)
    result = {"builder": builder, "matrix_file": out, "realization": check.to_json(),
              "eigenvalues": [format_rational(x) for x in realization.eigenvalues],
              "diagonal": [format_rational(x) for x in realization.diagonal],
              "trace": document}
    if verdict is not None:
        result["verdict"] = verdict.name
    print(json.dumps(result, indent=2))
    if not check.ok:
        logger.warning("realization residuals exceed %.3g", check.tolerance)
    return 0


def cmd_oracle(kind, params, settings):
    oracle = get_oracle(kind)
    if oracle is None:
        logger.error("unknown oracle %r", kind)
        return EXIT_INPUT_ERROR
    try:
        report = oracle(settings=settings, **params)
    except TypeError as e:
        logger.error("bad parameters for %s: %s", kind, e)
        return EXIT_INPUT_ERROR
    except ValueError as e:
        logger.error("%s: %s", kind, e)
        return EXIT_INPUT_ERROR
    print(json.dumps(report.to_json(), indent=2))
    return 0 if report.ok else 1
