"""Simplicial isometric embeddings of indefinite metric polyhedra into R^p_q."""

from .complex import (
    IndefiniteMetric,
    SimplicialComplex,
    build_complex,
    closed_star,
    complete_complex,
    metric_from_lengths,
    metric_from_squares,
    signed_square,
    signed_sqrt,
)
from .gluing import GluingOptions, build_star_complex, iota, partition_vertices, solve_gluing
from .gram import classify, gram_form, inertia, obstruction, segment_energy
from .greene import GreeneOptions, free_euclidean_start, solve_greene, target_half_dimension
from .minkowski import (
    Signature,
    SimplicialMap,
    concat,
    edge_independence,
    general_position,
    inner,
    phi,
    phi_jacobian,
    random_map,
    scale,
)
from .spanning import solve_spanning, spanning_family
from .verify import (
    verify,
    verify_immersion,
    verify_isometry,
    verify_local_embedding,
    verify_simplicial_embedding,
)

__version__ = "0.1.0"
