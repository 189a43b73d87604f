"""Token-conserving port-graph rewriting for SKI combinator terms."""

from .costs import (
    CostReport,
    account,
    balance_audit,
    default_costs,
    make_phi_node_count,
    phi_zero,
    rewrite_cost,
)
from .engine import (
    BUDGET_EXHAUSTED,
    NORMAL_FORM,
    ReductionSession,
    StrategyConfig,
    Trace,
    reduce,
)
from .molgraph import (
    MolGraph,
    MolParseError,
    MolStructureError,
    cap_free_edges,
    isomorphic,
    parse_mol,
    s_is_combinator,
    serialize_mol,
    validate,
)
from .rewrites import (
    COMB_SCHEMA,
    EXTENDED_VERIFY_TABLE,
    REDUCTION_SCHEMAS,
    SCHEMAS,
    SCHEMAS_BY_NAME,
    VERIFY_TABLE,
    Match,
    RewriteSchema,
    StepRecord,
    apply_rewrite,
    comb_pass,
    find_transform,
)
from .ski import (
    App,
    Atom,
    NotATerm,
    SkiTerm,
    TermParseError,
    Var,
    decode,
    normal_form,
    parse_term,
    root_edge,
    term_size,
    term_to_mol,
    term_to_string,
)
from .tokens import (
    TOKEN_TYPES,
    FreshNameSource,
    InsufficientTokens,
    Ledger,
    TokenType,
    detect_waste,
    excise_waste,
    mint,
    synth_apply,
    synth_duplicate_erase,
    token_rewrite_ss_aa,
    verify_schema,
    waste_rewrite,
)

__all__ = [name for name in dir() if not name.startswith("_")]
