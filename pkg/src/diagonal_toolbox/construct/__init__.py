from .rotations import Move, NolossChain, RotationChain, loglem_index, loss_chain, noloss_chain, offdiag_move
from .eigen import RealizationReport, jacobi_eigenvalues, realization_tolerance, verify_realization
from .matrices import Realization, block_diagonal, compose_realizations, dump_matrix, matrix_to_json, matrix_to_text
from .schur_horn import schur_horn_build, schur_horn_realization
from .tbound import BuildTrace, infmove_build, one_neg_build, tbound_build
from .transformers import (TransformPlan, convmove, exequal_transform, fis_transform, fiz_transform,
                           midseq_transform, one_neg_transform)

__all__ = ["Move", "NolossChain", "RotationChain", "loglem_index", "loss_chain", "noloss_chain", "offdiag_move",
           "RealizationReport", "jacobi_eigenvalues", "realization_tolerance", "verify_realization", "Realization",
           "block_diagonal", "compose_realizations", "dump_matrix", "matrix_to_json", "matrix_to_text",
           "schur_horn_build", "schur_horn_realization", "BuildTrace", "infmove_build", "one_neg_build", "tbound_build",
           "TransformPlan", "convmove", "exequal_transform", "fis_transform", "fiz_transform",
           "midseq_transform", "one_neg_transform"]
