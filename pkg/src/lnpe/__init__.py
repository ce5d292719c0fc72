"""Local Neighbor Propagation Embedding.

LLE reconstructs each sample from its k nearest neighbors.  LNPE then
reconstructs the original data again from the reconstructed data, on the
same neighbor sets, ``t`` more times.  The products of the weight matrices
reach multi-hop neighbors, and all of them enter the embedding objective.
"""

from .datasets import (
    DATASETS,
    SyntheticDataset,
    generate,
    generate_helix,
    generate_s_curve,
    generate_sphere,
    generate_swiss_roll,
)
from .embedding import Embedding, embed, null_space_multiplicity
from .exceptions import DisconnectedGraphError, LNPEError, SingularSystemError
from .metrics import QualityReport, continuity, quality_report, trustworthiness
from .neighbors import NeighborGraph, knn_graph
from .pipeline import LNPEResult, lle, lnpe
from .propagation import (
    PropagationConfig,
    PropagationTrace,
    accumulate_objective,
    matrix_product_chain,
    run_propagation,
)
from .weights import RegularizationConfig, SparseWeightMatrix, solve_local_weights

__version__ = "0.1.0"

__all__ = [
    "DATASETS",
    "SyntheticDataset",
    "generate",
    "generate_helix",
    "generate_s_curve",
    "generate_sphere",
    "generate_swiss_roll",
    "Embedding",
    "embed",
    "null_space_multiplicity",
    "DisconnectedGraphError",
    "LNPEError",
    "SingularSystemError",
    "QualityReport",
    "continuity",
    "quality_report",
    "trustworthiness",
    "NeighborGraph",
    "knn_graph",
    "LNPEResult",
    "lle",
    "lnpe",
    "PropagationConfig",
    "PropagationTrace",
    "accumulate_objective",
    "matrix_product_chain",
    "run_propagation",
    "RegularizationConfig",
    "SparseWeightMatrix",
    "solve_local_weights",
]
