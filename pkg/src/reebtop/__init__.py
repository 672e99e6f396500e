"""Exact combinatorial topology of branched surfaces and Reeb graphs.

Build finite simplicial models (products, doubles, flaps, bouquets), compute
their integral homology and cohomology rings by Smith normal form, search
for elementary collapses, sweep out Reeb graphs of rational vertex fields,
and verify the closed-form predictions for doubled models exactly.
"""

from .algebra import (
    HomologyGroup,
    IntegerMatrix,
    SnfDecomposition,
    boundary_matrix,
    chain_basis,
    homology,
    mayer_vietoris_check,
    smith_normal_form,
)
from .branched import (
    BranchedModel,
    BranchLocus,
    CollapseCertificate,
    CollapseFailure,
    attach_double,
    attach_flap,
    bouquet,
    check_local_structure_dim2,
    collapse_to,
    replay_certificate,
)
from .cohomology import (
    CochainClass,
    cochain_class,
    cohomology_basis,
    cup_product,
    restrict_class,
    restrict_to_part,
)
from .complexes import (
    SimplicialComplex,
    SimplicialMap,
    barycentric_subdivision,
    boundary_subcomplex,
    complex_from_json,
    complex_to_json,
    disjoint_union,
    double,
    from_facets,
    link,
    product,
    read_complex,
    wedge,
    write_complex,
)
from .models import concentric_disc, perturb_values, standard_model
from .recipes import Recipe, parse_recipe, run_recipe
from .reeb import ReebGraph, VertexField, graph_invariants, reeb_graph
from .verify import (
    DoublesInstance,
    HandleData,
    build_instance,
    handle_predictions,
    verify_bouquet_assembly,
    verify_contractible_candidate,
    verify_contractible_suite,
    verify_double_attachment,
    verify_doubles_suite,
)

__all__ = [
    "BranchLocus",
    "BranchedModel",
    "CochainClass",
    "CollapseCertificate",
    "CollapseFailure",
    "DoublesInstance",
    "HandleData",
    "HomologyGroup",
    "IntegerMatrix",
    "Recipe",
    "ReebGraph",
    "SimplicialComplex",
    "SimplicialMap",
    "SnfDecomposition",
    "VertexField",
    "attach_double",
    "attach_flap",
    "barycentric_subdivision",
    "boundary_matrix",
    "boundary_subcomplex",
    "bouquet",
    "build_instance",
    "chain_basis",
    "check_local_structure_dim2",
    "cochain_class",
    "cohomology_basis",
    "collapse_to",
    "complex_from_json",
    "complex_to_json",
    "concentric_disc",
    "cup_product",
    "disjoint_union",
    "double",
    "from_facets",
    "graph_invariants",
    "handle_predictions",
    "homology",
    "link",
    "mayer_vietoris_check",
    "parse_recipe",
    "perturb_values",
    "product",
    "read_complex",
    "reeb_graph",
    "replay_certificate",
    "restrict_class",
    "restrict_to_part",
    "run_recipe",
    "smith_normal_form",
    "standard_model",
    "verify_bouquet_assembly",
    "verify_contractible_candidate",
    "verify_contractible_suite",
    "verify_double_attachment",
    "verify_doubles_suite",
    "wedge",
    "write_complex",
]
