from .certified import (CertifiedValue, ValueKind, ZERO, PLUS_INFINITY, MINUS_INFINITY, UNKNOWN,
                        format_rational, to_fraction)
from .counts import INFINITY, Count, add_counts, is_infinite
from .tails import (FiniteTail, GeometricTail, MultiTail, PerturbedTail, PowerTail, PowerTerm, Tail, ZeroTail,
                    compare_magnitudes, magnitude_value, merge_tails)
from .sequence import (ExtendedSequence, concat, decreasing_rearrangement, finite, level_function,
                       materialize, negate, negative_part, normalize, partial_sum, positive_part,
                       terms_at_least, total_sum)
from .codec import dumps_sequence, loads_sequence, sequence_from_json, sequence_to_json

__all__ = ["CertifiedValue", "ValueKind", "ZERO", "PLUS_INFINITY", "MINUS_INFINITY", "UNKNOWN",
           "format_rational", "to_fraction", "INFINITY", "Count", "add_counts", "is_infinite",
           "FiniteTail", "GeometricTail", "MultiTail", "PerturbedTail", "PowerTail", "PowerTerm", "Tail",
           "ZeroTail", "compare_magnitudes", "magnitude_value", "merge_tails", "ExtendedSequence", "concat",
           "decreasing_rearrangement", "finite", "level_function", "materialize", "negate",
           "negative_part", "normalize", "partial_sum", "positive_part", "terms_at_least",
           "total_sum", "dumps_sequence", "loads_sequence", "sequence_from_json", "sequence_to_json"]
