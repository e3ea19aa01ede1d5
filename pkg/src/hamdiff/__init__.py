"""hamdiff: families of cycle-different Hamiltonian paths in complete
graphs.

Builds, exactly maximizes, and certifies families of undirected Hamiltonian
paths of K_n in which the union of any two member paths contains a cycle
whose length lies in a chosen set (or contains a 4-clique).
"""

from .core import (
    CapacityError,
    Cycle,
    DSpec,
    DSpecParseError,
    HamPath,
    UnionGraph,
    ValidationError,
    canonical_cycle,
    canonicalize,
    cycle_lengths,
    enumerate_paths,
    iter_simple_cycles,
    parse_dspec,
    union_of,
)
from .relations import (
    CompatibilityGraph,
    DifferencePredicate,
    Witness,
    are_different,
    build_compat_graph,
    contains_k4,
    find_witness,
    witness_cycle_of_length,
)
from .search import (
    BipartiteGraph,
    CliqueResult,
    independent_check,
    max_clique,
    max_matching,
)
from .constructions import (
    BlockSystem,
    ConstructedFamily,
    bipartite_family,
    block_family,
    count_no_even_neighbors,
    endpoint_swap_quadruple,
    fixed_endpoint_family,
    greedy_family,
    k4_family,
    k5_incidence_graph,
    shifted_block_family,
    triangle_matching_family,
)
from .bounds import (
    FormulaTable,
    applicable_formulas,
    balanced_tripartite_path_bound,
    bipartition_of_path,
    count_multipartite_ham_paths,
    eval_formula,
    ham_cycle_closure,
    string_type_count,
    third_cycle,
)
from .certify import (
    FamilyCertificate,
    VerificationError,
    certificate_doc,
    dump_certificate,
    load_certificate_doc,
    recheck_certificate,
    verify_family,
)
from ._kernels import IMPLEMENTATION as KERNEL_IMPLEMENTATION

__version__ = "0.1.0"
