"""Arc-disjoint out-/in-branching pairs in semicomplete digraphs.

The package decides whether a semicomplete digraph has an out-branching
rooted at u and an in-branching rooted at v sharing no arc (a "good
(u,v)-pair"), constructs such a pair when one exists, and otherwise emits a
machine-checkable certificate explaining why none can exist.
"""

from .branchings import (
    DeficientSet,
    GoodPair,
    Tree,
    bfs_tree,
    edmonds_deficiency,
    out_branching_vs_path,
    two_arc_disjoint_out_branchings,
)
from .digraph import (
    ArcPath,
    Digraph,
    StrongDecomposition,
    arc_disjoint_paths,
    cut_arcs,
    is_k_arc_strong,
    local_arc_connectivity,
    small_isomorphism,
    strong_decomposition,
    terminal_initial_sets,
    validate_semicomplete,
)
from .errors import (
    BadEndpoints,
    BranchpairsError,
    ConstraintUnsatisfiable,
    InternalInconsistency,
    NoBasePath,
    NotSemicomplete,
    NotStrong,
    ParseError,
    PreconditionViolated,
    SizeMismatch,
    TooLarge,
)
from .fixtures import Fixture, exception_catalog, fixture, fixture_names
from .goodpair import (
    ChainObstruction,
    CutArcObstruction,
    ExtensionObstruction,
    NoPairCertificate,
    RootMisplaced,
    SameRootStructure,
    SmallException,
    construct_good_pair,
    decide_good_pair,
    extend_trees_across_cut,
    same_root_pair,
    verify_certificate,
    verify_good_pair,
)
from .hamilton import (
    hamiltonian_cycle,
    hamiltonian_path_between,
    hamiltonian_path_from,
)
from .oracle import (
    CONSTRAINTS,
    GeneratorConfig,
    enumerate_semicomplete,
    oracle_good_pair,
    oracle_good_pair_targets,
    oracle_path_pair,
    random_semicomplete,
    semicomplete_count,
    semicomplete_from_index,
)
from .structures import (
    ConsecutiveSingletons,
    TypeCertificate,
    TypedObstruction,
    arc_disjoint_path_pair,
    detect_obstruction_type,
    detect_odd_chain,
    relabel_type_certificate,
    verify_type_certificate,
)

__version__ = "0.1.0"

__all__ = [
    "ArcPath",
    "Digraph",
    "StrongDecomposition",
    "arc_disjoint_paths",
    "cut_arcs",
    "is_k_arc_strong",
    "local_arc_connectivity",
    "small_isomorphism",
    "strong_decomposition",
    "terminal_initial_sets",
    "validate_semicomplete",
    "BranchpairsError",
    "BadEndpoints",
    "ConstraintUnsatisfiable",
    "InternalInconsistency",
    "NoBasePath",
    "NotSemicomplete",
    "NotStrong",
    "ParseError",
    "PreconditionViolated",
    "SizeMismatch",
    "TooLarge",
    "DeficientSet",
    "GoodPair",
    "Tree",
    "bfs_tree",
    "edmonds_deficiency",
    "out_branching_vs_path",
    "two_arc_disjoint_out_branchings",
    "hamiltonian_cycle",
    "hamiltonian_path_between",
    "hamiltonian_path_from",
    "ConsecutiveSingletons",
    "TypeCertificate",
    "TypedObstruction",
    "arc_disjoint_path_pair",
    "detect_obstruction_type",
    "detect_odd_chain",
    "relabel_type_certificate",
    "verify_type_certificate",
    "ChainObstruction",
    "CutArcObstruction",
    "ExtensionObstruction",
    "NoPairCertificate",
    "RootMisplaced",
    "SameRootStructure",
    "SmallException",
    "construct_good_pair",
    "decide_good_pair",
    "extend_trees_across_cut",
    "same_root_pair",
    "verify_certificate",
    "verify_good_pair",
    "Fixture",
    "exception_catalog",
    "fixture",
    "fixture_names",
    "CONSTRAINTS",
    "GeneratorConfig",
    "enumerate_semicomplete",
    "oracle_good_pair",
    "oracle_good_pair_targets",
    "oracle_path_pair",
    "random_semicomplete",
    "semicomplete_count",
    "semicomplete_from_index",
    "__version__",
]
