from dataclasses import dataclass, field
from typing import Optional

from ..essentials import Status
from ..seqcore.certified import CertifiedValue, format_rational


@dataclass(frozen=True)
class MajorizationResult:
    """Three-valued outcome of a majorization test.

    ``witness`` is the first failing index n (Riemann form) or a level alpha
    with delta(alpha) < 0 (Lebesgue form); ``value`` is the certified gap there.
    """
    status: Status
    witness: Optional[object] = None
    value: Optional[CertifiedValue] = None
    reason: str = field(default="", compare=False)

    @property
    def holds(self):
        return self.status is Status.HOLDS

    @property
    def fails(self):
        return self.status is Status.FAILS

    def to_json(self):
        result = {"status": self.status.value}
        if self.witness is not None:
            result["witness"] = self.witness if isinstance(self.witness, int) else format_rational(self.witness)
        if self.value is not None:
            result["value"] = self.value.to_json()
        if self.reason:
            result["reason"] = self.reason
        return result


def holds(reason=""):
    return MajorizationResult(Status.HOLDS, reason=reason)


def unknown(reason=""):
    return MajorizationResult(Status.UNKNOWN, reason=reason)


def fails(witness, value, reason=""):
    return MajorizationResult(Status.FAILS, witness, value, reason)
