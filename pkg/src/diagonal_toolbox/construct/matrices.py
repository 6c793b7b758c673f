import json
import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np
from scipy.linalg import block_diag

from ..seqcore.certified import format_rational

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Realization:
    """A symmetric matrix with its intended spectrum and diagonal."""
    matrix: np.ndarray
    eigenvalues: Tuple
    diagonal: Tuple

    def to_json(self):
        return {"eigenvalues": [_number(x) for x in self.eigenvalues],
                "diagonal": [_number(x) for x in self.diagonal],
                "matrix": matrix_to_json(self.matrix)}


def _number(x):
    if isinstance(x, (int, float, np.floating)):
        return float(x)
    return format_rational(x)


def block_diagonal(blocks: Sequence) -> np.ndarray:
    return block_diag(*[np.atleast_2d(np.asarray(b)) for b in blocks])


def compose_realizations(realizations: Sequence[Realization]) -> Realization:
    """Direct sum: the block matrix realizes the concatenated spectra and diagonals."""
    if not realizations:
        raise ValueError("nothing to compose")
    matrix = block_diagonal([r.matrix for r in realizations])
    eigenvalues = tuple(x for r in realizations for x in r.eigenvalues)
    diagonal = tuple(x for r in realizations for x in r.diagonal)
    logger.debug("composed %d blocks into a %dx%d matrix", len(realizations), *matrix.shape)
    return Realization(matrix, eigenvalues, diagonal)


def matrix_to_json(matrix) -> list:
    return np.asarray(matrix, dtype=np.float64).tolist()


def matrix_to_text(matrix) -> str:
    """Dense row-major text, one row per line."""
    rows = np.asarray(matrix, dtype=np.float64)
    return "\n".join(" ".join("%.17g" % x for x in row) for row in rows)


def dump_matrix(matrix, filename, output_format="json"):
    with open(filename, "w") as f:
        if output_format == "json":
            json.dump(matrix_to_json(matrix), f)
        else:
            f.write(matrix_to_text(matrix) + "\n")
