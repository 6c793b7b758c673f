import logging
from dataclasses import dataclass
from typing import List

from ..seqcore.counts import INFINITY, Count, check_count, count_to_json, format_count, is_infinite
from ..seqcore.sequence import ExtendedSequence, normalize

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Splitting:
    """How the zero eigenvalues of lambda are shared out.

    ``z0`` of them meet the zeros of d, ``z1`` go to the negative block and
    ``z2`` to the positive block.
    """
    z0: Count
    z1: Count
    z2: Count

    def __post_init__(self):
        for name in ("z0", "z1", "z2"):
            object.__setattr__(self, name, check_count(getattr(self, name)))

    def to_json(self):
        return {"z0": count_to_json(self.z0), "z1": count_to_json(self.z1), "z2": count_to_json(self.z2)}

    def __str__(self):
        return "(%s, %s, %s)" % (format_count(self.z0), format_count(self.z1), format_count(self.z2))


def enumerate_splittings(lam: ExtendedSequence, d: ExtendedSequence) -> List[Splitting]:
    lam_zeros, d_zeros = normalize(lam).zero_count, normalize(d).zero_count
    if not is_infinite(lam_zeros):
        if d_zeros > lam_zeros:
            logger.debug("no splitting: d has %s zeros, lambda only %d", format_count(d_zeros), lam_zeros)
            return []
        spare = lam_zeros - d_zeros
        return [Splitting(d_zeros, z1, spare - z1) for z1 in range(spare + 1)]
    if is_infinite(d_zeros):
        # the zeros of d absorb the whole kernel
        return [Splitting(INFINITY, 0, 0)]
    return [Splitting(d_zeros, 0, INFINITY), Splitting(d_zeros, INFINITY, 0),
            Splitting(d_zeros, INFINITY, INFINITY)]
