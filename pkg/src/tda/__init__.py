"""Computational topology: simplicial homology, persistence barcodes,
zigzag decomposition, simplicial cosheaf homology, and level-set
persistence over interval covers."""

from .complexes import (
    IntervalCover,
    SimplicialComplex,
    build_cech,
    build_complex,
    build_rips,
    eccentricity_values,
    min_enclosing_ball,
    nerve_of_interval_cover,
    simplex,
)
from .cosheaf import (
    SimplicialCosheaf,
    SimplicialSheaf,
    bar_census,
    colimit_over_subcomplex,
    constant_cosheaf,
    cosheaf_boundary,
    cosheaf_homology,
    sheaf_cohomology,
    validate,
)
from .errors import TdaError
from .homology import (
    HomologyResult,
    boundary_matrix,
    chain_map,
    coboundary_matrix,
    cohomology,
    homology,
    induced_map,
)
from .leray import (
    LerayCosheaf,
    MappedComplex,
    build_leray_cosheaf,
    global_homology,
    preimage_subcomplex,
    sublevel_module,
)
from .persistence import (
    Bar,
    Barcode,
    ExplicitModule,
    FilteredComplex,
    barcode_to_diagram,
    cech_filtration,
    compute_barcode,
    decompose_explicit,
    lower_star_filtration,
    rips_filtration,
    superlevel_filtration,
)
from .zigzag import (
    FiniteDiagram,
    IntegerBar,
    ZigzagModule,
    colimit,
    decompose_zigzag,
    forward_module_to_zigzag,
    generalized_rank,
    limit,
)

__version__ = "0.1.0"

__all__ = [
    "Bar",
    "Barcode",
    "ExplicitModule",
    "FilteredComplex",
    "FiniteDiagram",
    "HomologyResult",
    "IntegerBar",
    "IntervalCover",
    "LerayCosheaf",
    "MappedComplex",
    "SimplicialComplex",
    "SimplicialCosheaf",
    "SimplicialSheaf",
    "TdaError",
    "ZigzagModule",
    "bar_census",
    "barcode_to_diagram",
    "boundary_matrix",
    "build_cech",
    "build_complex",
    "build_leray_cosheaf",
    "build_rips",
    "cech_filtration",
    "chain_map",
    "coboundary_matrix",
    "cohomology",
    "colimit",
    "colimit_over_subcomplex",
    "compute_barcode",
    "constant_cosheaf",
    "cosheaf_boundary",
    "cosheaf_homology",
    "decompose_explicit",
    "decompose_zigzag",
    "eccentricity_values",
    "forward_module_to_zigzag",
    "generalized_rank",
    "global_homology",
    "homology",
    "induced_map",
    "limit",
    "lower_star_filtration",
    "min_enclosing_ball",
    "nerve_of_interval_cover",
    "preimage_subcomplex",
    "rips_filtration",
    "sheaf_cohomology",
    "simplex",
    "sublevel_module",
    "superlevel_filtration",
    "validate",
]
