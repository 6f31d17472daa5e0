"""Verification and experimentation toolkit for the density-1/4 threshold
in curve intersection graphs.

The exhaustively checkable core: admissibility predicates, weight
reduction with dangerous-triple preservation, exact simplex minimization
of the quotient weight, the constructive embedding of weak-2-subdivisions
in block models, and the crossing-count separator pipeline on genuine
curve arrangements.
"""

__version__ = "0.1.0"

from .admissible import (
    AdmissibilityWitness,
    find_admissible_subgraph,
    is_eps_admissible,
    is_H_admissible,
    is_zero_admissible,
)
from .embedding import (
    EmbedParams,
    RegularPartitionModel,
    embed_weak_2_subdivision,
    run_embedding_batch,
    sample_block_model,
    verify_embedding,
)
from .enumeration import canonical_form, enumerate_graphs
from .errors import CapacityError, GeneralPositionError, GenerationError, InputFormatError
from .geometry import (
    CurveArrangement,
    Polyline,
    extremal_four_part_graph,
    intersection_graph,
    measure_biclique_growth,
    planar_separator,
    planarize,
    random_curves,
    separator_biclique,
)
from .graphs import (
    BicliquePair,
    DenseGraph,
    density,
    from_graph6,
    is_alpha_beta_dense,
    is_delta_full,
    max_balanced_empty_pair,
    pair_density,
    to_graph6,
)
from .subdivisions import (
    SubdivisionPattern,
    contains_induced_weak_subdivision,
    is_weak_subdivision,
    partial_subdivisions,
    weak_contains_weak,
)
from .turan import (
    MinimizePhiResult,
    VertexWeightedGraph,
    WeightedCompleteGraph,
    collapse_weights,
    complete_ize,
    dangerous_triples,
    minimize_phi,
    normalize_partition,
    phi_weight,
    quotient,
    verify_claim_s8,
    verify_clique_partition_bound,
    verify_observations,
    verify_prop_quarter,
)
