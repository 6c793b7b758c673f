from .results import MajorizationResult
from .excess import ExcessReport, excess, side_excess, summability, tail_difference
from .riemann import dominance_index, first_true, riemann_majorizes
from .delta import KnotList, delta, delta_table, knots, lebesgue_majorizes
from .oracle import LRReport, dra_check, lr_equivalence_check, random_finite_pair, random_pair, random_sequence

__all__ = ["MajorizationResult", "ExcessReport", "excess", "side_excess", "summability",
           "tail_difference", "dominance_index", "first_true", "riemann_majorizes", "KnotList",
           "delta", "delta_table", "knots", "lebesgue_majorizes", "LRReport", "dra_check",
           "lr_equivalence_check", "random_finite_pair", "random_pair", "random_sequence"]
