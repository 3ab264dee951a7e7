"""Misère Sprouts workbench."""
from __future__ import annotations

from sprouts.moves import Move, apply, child_keys, children, decompose, legal_moves
from sprouts.position import (
    ParseError,
    Position,
    RenderError,
    canon_key,
    canonical_land,
    check_invariants,
    lives,
    parse,
    prune_dead,
    render,
    split_lands,
    start_position,
)
from sprouts.solver import (
    BudgetExhausted,
    Node,
    ProofDb,
    SearchEngine,
    node_children,
    node_lives,
    node_of,
    parse_node_key,
    prune,
    simplify,
    verify,
)
from sprouts.store import (
    BasisDb,
    StoreFileError,
    build_basis,
    load_basis,
    load_proof,
    save_basis,
    save_proof,
)
from sprouts.trees import (
    TreeId,
    TreeStore,
    count_distinct_cts,
    count_nim_reducible,
    enumerate_rcts,
    grundy,
    nim_sum,
    parse_id,
    rct_of,
)

__all__ = [
    "BasisDb",
    "BudgetExhausted",
    "Move",
    "Node",
    "ParseError",
    "Position",
    "ProofDb",
    "RenderError",
    "SearchEngine",
    "StoreFileError",
    "TreeId",
    "TreeStore",
    "apply",
    "build_basis",
    "canon_key",
    "canonical_land",
    "check_invariants",
    "child_keys",
    "children",
    "count_distinct_cts",
    "count_nim_reducible",
    "decompose",
    "enumerate_rcts",
    "grundy",
    "legal_moves",
    "lives",
    "load_basis",
    "load_proof",
    "nim_sum",
    "node_children",
    "node_lives",
    "node_of",
    "parse",
    "parse_id",
    "parse_node_key",
    "prune",
    "prune_dead",
    "rct_of",
    "render",
    "save_basis",
    "save_proof",
    "simplify",
    "split_lands",
    "start_position",
    "verify",
]
