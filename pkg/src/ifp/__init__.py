"""Cirquents: propositional formulas with clustered disjunction.

A cirquent is a negation-normal-form formula whose disjunction
occurrences are partitioned into clusters; truth requires choosing one
side per cluster, not per occurrence.  This package parses, prints,
evaluates and decides cirquents, and synthesizes and checks proofs in a
five-rule calculus whose axioms are classical tautologies.
"""

from .core import (
    And,
    Cirquent,
    InvalidPathError,
    LEFT_STEP,
    Literal,
    Or,
    Path,
    RIGHT_STEP,
    ROOT,
    atoms,
    canonicalize_ids,
    cluster_iso,
    clusters,
    is_classical,
    level,
    nearest_common_ancestor,
    node_count,
    or_positions,
    positions,
    replace_at,
    same_shape,
    singleton_clusters,
    subcirquent_at,
    walk,
)
from .semantics import (
    DEFAULT_MAX_ATOMS,
    DEFAULT_MAX_CLUSTERS,
    Interpretation,
    Metaselection,
    MissingAtomError,
    MissingClusterError,
    NotClassicalError,
    TooLargeError,
    TruthTable,
    classical_countermodel,
    classical_tautology,
    compile_classical,
    countermodel,
    ensure_within_bounds,
    eval_classical,
    interpretations,
    metaselections,
    metatrue,
    true_under,
    truth_table,
    valid,
    witness_metaselection,
)
from .calculus import (
    AND_KIND,
    AXIOM,
    CLUSTER_OR_KIND,
    CheckFailure,
    ConnectiveConstraintError,
    CopyMismatchError,
    ProofEntry,
    ProofScript,
    RULES,
    RuleApp,
    RuleError,
    RuleHint,
    SINGLETON_OR_KIND,
    ShapeMismatchError,
    apply_rule_backward,
    apply_rule_forward,
    check_proof,
    cluster_struct_match,
    is_axiom,
    match_step,
)
from .syntax import (
    DuplicateKeyError,
    NegatedIndexedDisjunctionError,
    NonpositiveClusterIdError,
    ParseError,
    format_interpretation,
    format_metaselection,
    format_path,
    parse,
    parse_interpretation,
    parse_metaselection,
    parse_path,
    parse_proof,
    print_cirquent,
    print_proof,
)
from .prover import (
    Decision,
    Derivation,
    Invalid,
    PreconditionError,
    ReductionInvariantError,
    ReductionStep,
    StateTuple,
    Valid,
    decide,
    eliminate_nested,
    nested_pairs,
    prove,
    reduce_to_classical,
    resolve_cluster,
    state_tuple,
)

__version__ = "0.1.0"
