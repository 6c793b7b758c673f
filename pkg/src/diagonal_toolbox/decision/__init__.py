from .necessity import CONDITION_NAMES, ConditionResult, NecessityTrace, check_necessity
from .splitting import Splitting, enumerate_splittings
from .kernel import KernelOutcome, kernel_test
from .verdict import SplittingResult, Verdict, decide, split_kernel
from .report import explain, render_text, verdict_to_json

__all__ = ["CONDITION_NAMES", "ConditionResult", "NecessityTrace", "check_necessity", "Splitting",
           "enumerate_splittings", "KernelOutcome", "kernel_test", "SplittingResult", "Verdict",
           "decide", "split_kernel", "explain", "render_text", "verdict_to_json"]
