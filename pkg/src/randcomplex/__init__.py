"""Random simplicial complexes: generators, homology, census, experiments."""

__version__ = "0.1.0"

from .complexes import (
    ComponentDecomposition,
    Graph,
    PointCloud,
    SimplicialComplex,
    components,
    f_vector,
    skeleton_graph,
)
from .generators import (
    DensitySpec,
    RngStream,
    balls_intersect,
    cech_complex,
    clique_complex,
    gen_er_graph,
    geometric_graph,
    rips_complex,
    sample_points,
)
from .homology import (
    BettiVector,
    BoundaryMatrix,
    betti_numbers,
    betti_numbers_exact,
    boundary_matrix,
    check_field_independence,
    euler_characteristic,
)
from .census import (
    CanonicalGraph,
    CensusReport,
    MuEstimate,
    canonical_form,
    cross_polytope_counts,
    empty_simplex_count,
    enumerate_extension_types,
    er_covariance_faces,
    er_expected_faces,
    er_variance_faces,
    estimate_mu,
    faces_on_large_components,
    isolated_empty_simplex_count,
    subgraph_counts,
    y_count,
    z_count,
)
from .experiments import (
    ExperimentResult,
    RegimeSpec,
    instance_census,
    ks_to_normal,
    run_experiment,
    theorem_targets,
    tv_to_poisson,
)

__all__ = [
    "BettiVector",
    "BoundaryMatrix",
    "CanonicalGraph",
    "CensusReport",
    "ComponentDecomposition",
    "DensitySpec",
    "ExperimentResult",
    "Graph",
    "MuEstimate",
    "PointCloud",
    "RegimeSpec",
    "RngStream",
    "SimplicialComplex",
    "balls_intersect",
    "betti_numbers",
    "betti_numbers_exact",
    "boundary_matrix",
    "canonical_form",
    "cech_complex",
    "check_field_independence",
    "clique_complex",
    "components",
    "cross_polytope_counts",
    "empty_simplex_count",
    "enumerate_extension_types",
    "er_covariance_faces",
    "er_expected_faces",
    "er_variance_faces",
    "estimate_mu",
    "euler_characteristic",
    "f_vector",
    "faces_on_large_components",
    "gen_er_graph",
    "geometric_graph",
    "instance_census",
    "isolated_empty_simplex_count",
    "ks_to_normal",
    "rips_complex",
    "run_experiment",
    "sample_points",
    "skeleton_graph",
    "subgraph_counts",
    "theorem_targets",
    "tv_to_poisson",
    "y_count",
    "z_count",
]
