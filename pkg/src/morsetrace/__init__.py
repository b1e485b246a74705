"""Persistence-guided discrete Morse graph reconstruction on grid density fields."""

from .errors import (
    GradientInvariantError,
    InvalidFieldError,
    InvalidFiltrationError,
    InvalidGraphError,
    InvalidGridError,
    InvalidParameterError,
    NoiseModelError,
    SimplexNotFoundError,
)
from .filtration import Filtration, lower_star_filtration
from .grid import GridSpec, ScalarField, SimplicialComplex, build_grid_complex
from .morse import (
    GradientField,
    cancel_all,
    collect_manifolds,
    oracle_extract_graph,
    oracle_reconstruct,
    unstable_manifold,
)
from .noise import (
    HiddenGraph,
    InstanceReport,
    NeighborhoodMask,
    NoiseParams,
    check_containment,
    check_delta,
    generate_instance,
    rasterize,
    subcomplex_betti,
    threshold_baseline,
    truth_betti1,
    truth_edge_pairs,
    truth_vertices,
    validate_instance,
)
from .persistence import (
    PairingSet,
    PersistencePair,
    compute_pairs,
    compute_pairs_reduction,
    persistence_of,
    sorted_pairs,
)
from .reconstruct import (
    Forest,
    ReconstructedGraph,
    betti1,
    build_forest,
    extract_graph,
    generator_edges,
    reconstruct,
    trace_path,
)

__version__ = "0.1.0"
