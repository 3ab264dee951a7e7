"""Misère outcome search over sum-decomposed nodes.

A node keeps three parts: lands too big for the basis, a *0/*1 parity
bit that absorbs every *1 summand, and a multiset of basis tree IDs for
the small remainders.  A move touches exactly one part, so positions
whose big parts agree collapse into one node no matter how their small
components arose.
"""
from __future__ import annotations

import threading
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable

from sprouts.moves import child_keys, decompose
from sprouts.position import Position, lives, parse
from sprouts.trees import TreeId, parse_id

ZERO = TreeId(0, 0, False, "W")
ONE = TreeId(1, 0, False, "L")


@dataclass(frozen=True, slots=True)
class Node:
    lands: tuple[str, ...]
    parity: int
    rcts: tuple[TreeId, ...]

    @property
    def key(self) -> str:
        ids = ",".join(t.text for t in self.rcts)
        return ";".join(self.lands) + f"|{self.parity}|{ids}"


def parse_node_key(key: str) -> Node:
    parts = key.split("|")
    if len(parts) != 3 or parts[1] not in ("0", "1"):
        raise ValueError(f"bad node key {key!r}")
    lands = tuple(parts[0].split(";")) if parts[0] else ()
    rcts = tuple(parse_id(s) for s in parts[2].split(",")) if parts[2] else ()
    return Node(lands, int(parts[1]), rcts)


def simplify(lands: Iterable[str], parity: int, rcts: Iterable[TreeId], basis) -> Node:
    """Fold basis-known lands and *1 factors into the other two parts."""
    keep_lands: list[str] = []
    pool: list[TreeId] = list(rcts)
    for land in lands:
        t = basis.positions.get(land + "!")
        if t is None:
            keep_lands.append(land)
        else:
            pool.append(t)
    parity &= 1
    keep: list[TreeId] = []
    for t in pool:
        if t.plus:
            parity ^= 1
            t = basis.store.toggle_plus_one(t)
        if t == ZERO:
            continue
        if t == ONE:
            parity ^= 1
            continue
        keep.append(t)
    keep.sort(key=lambda t: (t.sort_key, t.text))
    return Node(tuple(sorted(keep_lands)), parity, tuple(keep))


def node_of(p: Position, basis) -> Node:
    return simplify((q.canonical[:-1] for q in decompose(p)), 0, (), basis)


def _land_position(land: str) -> Position:
    p = parse(land + "!")
    p._canonical = land + "!"
    return p


def node_children(n: Node, basis) -> list[Node]:
    """One move in exactly one part, re-simplified; deduped, key order."""
    out: dict[str, Node] = {}

    def add(c: Node) -> None:
        out.setdefault(c.key, c)

    for i, land in enumerate(n.lands):
        rest = n.lands[:i] + n.lands[i + 1:]
        for ck in child_keys(_land_position(land)):
            parts = tuple(q.canonical[:-1] for q in decompose(parse(ck)))
            add(simplify(rest + parts, n.parity, n.rcts, basis))
    if n.parity:
        add(Node(n.lands, 0, n.rcts))
    seen: set[TreeId] = set()
    for j, t in enumerate(n.rcts):
        if t in seen:
            continue
        seen.add(t)
        rest_r = n.rcts[:j] + n.rcts[j + 1:]
        for c in basis.store.children_of(t):
            add(simplify(n.lands, n.parity, rest_r + (c,), basis))
    return [out[k] for k in sorted(out)]


@lru_cache(maxsize=None)
def _land_lives(land: str) -> int:
    return lives(parse(land + "!"))


def node_lives(n: Node) -> int:
    return sum(_land_lives(land) for land in n.lands)


def default_policy(children: list[Node]) -> list[Node]:
    """Cheapest first: few lives, many independent lands."""
    return sorted(children, key=lambda c: (node_lives(c), -len(c.lands), c.key))


@dataclass
class ProofDb:
    root: str
    run: str
    entries: dict[str, tuple[str, str | None]]
    nodes_explored: int = 0


class BudgetExhausted(Exception):
    pass


class SearchEngine:
    """Depth-first search with a transposition memo, resumable under budgets."""

    def __init__(self, basis, policy: Callable[[list[Node]], list[Node]] | None = None):
        self.basis = basis
        self.policy = policy or default_policy
        self.memo: dict[str, str] = {}
        self.witness: dict[str, str | None] = {}
        self.nodes_explored = 0
        self.cancel = threading.Event()
        self._max_nodes: int | None = None
        self._deadline: float | None = None

    def solve(
        self,
        node: Node,
        budget_nodes: int | None = None,
        budget_secs: float | None = None,
    ) -> str:
        """W, L, or Unknown when the budget runs out or cancel is set."""
        self._max_nodes = None if budget_nodes is None else self.nodes_explored + budget_nodes
        self._deadline = None if budget_secs is None else time.monotonic() + budget_secs
        try:
            return self._solve(node)
        except BudgetExhausted:
            return "Unknown"

    def _tick(self) -> None:
        self.nodes_explored += 1
        if self._max_nodes is not None and self.nodes_explored > self._max_nodes:
            raise BudgetExhausted
        if self._deadline is not None and time.monotonic() > self._deadline:
            raise BudgetExhausted
        if self.cancel.is_set():
            raise BudgetExhausted

    def _solve(self, node: Node) -> str:
        key = node.key
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self._tick()
        kids = node_children(node, self.basis)
        if not kids:
            self.memo[key] = "W"
            self.witness[key] = None
            return "W"
        outcome = "L"
        wit: str | None = None
        for child in self.policy(kids):
            if self._solve(child) == "L":
                outcome = "W"
                wit = child.key
                break
        self.memo[key] = outcome
        self.witness[key] = wit
        return outcome

    def proof(self, node: Node) -> ProofDb:
        if node.key not in self.memo:
            raise ValueError(f"node {node.key} not resolved")
        entries = {k: (v, self.witness.get(k)) for k, v in self.memo.items()}
        return ProofDb(node.key, self.basis.run, entries, self.nodes_explored)


def prune(db: ProofDb, basis) -> ProofDb:
    """Keep only the entries that demonstrate the root's outcome."""
    keep: dict[str, tuple[str, str | None]] = {}
    stack = [db.root]
    while stack:
        key = stack.pop()
        if key in keep:
            continue
        entry = db.entries.get(key)
        if entry is None:
            raise ValueError(f"proof incomplete at {key}")
        keep[key] = entry
        outcome, wit = entry
        if outcome == "W":
            if wit is not None:
                stack.append(wit)
        else:
            stack.extend(c.key for c in node_children(parse_node_key(key), basis))
    return ProofDb(db.root, db.run, keep, db.nodes_explored)


def verify(db: ProofDb, basis) -> tuple[bool, str]:
    """Re-derive every entry's obligation; (ok, first violation or 'ok')."""
    if db.run != basis.run:
        return False, f"proof run {db.run} does not match basis run {basis.run}"
    if db.root not in db.entries:
        return False, f"root {db.root} missing"
    for key in sorted(db.entries):
        outcome, wit = db.entries[key]
        try:
            node = parse_node_key(key)
        except ValueError as e:
            return False, str(e)
        child_set = {c.key for c in node_children(node, basis)}
        if outcome == "L":
            if not child_set:
                return False, f"{key}: terminal node recorded as L"
            for ck in sorted(child_set):
                got = db.entries.get(ck)
                if got is None:
                    return False, f"{key}: child {ck} missing"
                if got[0] != "W":
                    return False, f"{key}: child {ck} is not W"
        elif outcome == "W":
            if not child_set:
                if wit is not None:
                    return False, f"{key}: terminal node with witness"
            elif wit is None:
                return False, f"{key}: W entry without witness"
            elif wit not in child_set:
                return False, f"{key}: witness {wit} is not a child"
            elif db.entries.get(wit, ("",))[0] != "L":
                return False, f"{key}: witness {wit} is not an L entry"
        else:
            return False, f"{key}: bad outcome {outcome!r}"
    return True, "ok"
