"""Cellular pseudomanifolds as ranked face lattices.

The package models a face lattice purely combinatorially — every face is
identified with its vertex set — and provides the closed constructions
(dual, tensor, join, cartesian, barycentric subdivision), the swap-relation
machinery (decomposition, quotient, inflation), the low-excess
classifications with a brute-force oracle, and exact circle diagrams that
certify excess-2 lattices as boundary complexes.
"""

from .classify import (
    CatalogItem,
    brute_force_enumerate,
    build_family,
    count_excess1,
    count_neighbourly_reducible_excess2,
    count_neighbourly_reducible_excess2_printed,
    count_reducible_excess2,
    enumerate_excess1,
    enumerate_reducible_excess2,
)
from .constructions import barycentric, cartesian, cycle, dual, join, standard_sphere, tensor
from .gale import (
    MAX_SEARCH_VERTICES,
    BlockedShift,
    DegenerateDiagram,
    GaleDiagram,
    SearchOptions,
    cofacets,
    find_join_faces,
    gale_search,
    gale_validate,
    is_join_reduction_normal_form,
    reduce_join_face,
    shift_point,
    sphere_from_diagram,
)
from .io import (
    Manifest,
    ManifestEntry,
    ParseError,
    ValidationError,
    dumps_diagram,
    dumps_lattice,
    load_diagram,
    load_lattice,
    loads_diagram,
    loads_lattice,
    save_diagram,
    save_lattice,
    write_catalog,
)
from .lattice import (
    Face,
    FaceLattice,
    Graph,
    InfeasibleSize,
    InvalidParameter,
    LatticeError,
    NotALattice,
    NotComparable,
    NotProper,
    NotRanked,
    PreconditionFailed,
    ValidationReport,
    boundary,
    build_from_faces,
    euler_char_of_bsd,
    facet_graph,
    from_facets,
    interval,
    is_isomorphic,
    is_neighbourly,
    is_simplicial,
    iter_isomorphisms,
    join_faces,
    link,
    meet,
    relabel,
    validate,
    vertex_graph,
)
from .symmetry import (
    Decomposition,
    decompose,
    inflate,
    is_automorphism,
    is_primitive,
    is_proper,
    is_reducible,
    quotient,
    transposition_classes,
)

__version__ = "0.1.0"

__all__ = [
    # lattice core
    "Face",
    "FaceLattice",
    "Graph",
    "ValidationReport",
    "LatticeError",
    "NotALattice",
    "NotRanked",
    "NotProper",
    "NotComparable",
    "InvalidParameter",
    "InfeasibleSize",
    "PreconditionFailed",
    "build_from_faces",
    "from_facets",
    "validate",
    "meet",
    "join_faces",
    "interval",
    "boundary",
    "link",
    "facet_graph",
    "vertex_graph",
    "is_simplicial",
    "is_neighbourly",
    "euler_char_of_bsd",
    "relabel",
    "iter_isomorphisms",
    "is_isomorphic",
    # constructions
    "standard_sphere",
    "cycle",
    "dual",
    "tensor",
    "join",
    "cartesian",
    "barycentric",
    # symmetry
    "is_automorphism",
    "transposition_classes",
    "is_primitive",
    "is_proper",
    "is_reducible",
    "Decomposition",
    "decompose",
    "quotient",
    "inflate",
    # classification
    "CatalogItem",
    "build_family",
    "enumerate_excess1",
    "enumerate_reducible_excess2",
    "count_excess1",
    "count_reducible_excess2",
    "count_neighbourly_reducible_excess2",
    "count_neighbourly_reducible_excess2_printed",
    "brute_force_enumerate",
    # circle diagrams
    "GaleDiagram",
    "DegenerateDiagram",
    "BlockedShift",
    "SearchOptions",
    "MAX_SEARCH_VERTICES",
    "cofacets",
    "gale_validate",
    "sphere_from_diagram",
    "shift_point",
    "gale_search",
    "find_join_faces",
    "reduce_join_face",
    "is_join_reduction_normal_form",
    # files and catalogs
    "ParseError",
    "ValidationError",
    "load_lattice",
    "loads_lattice",
    "save_lattice",
    "dumps_lattice",
    "load_diagram",
    "loads_diagram",
    "save_diagram",
    "dumps_diagram",
    "ManifestEntry",
    "Manifest",
    "write_catalog",
    "__version__",
]
