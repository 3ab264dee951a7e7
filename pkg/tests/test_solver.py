"""Sum decomposition, the search engine, and proof databases."""
from __future__ import annotations

import pytest

from sprouts.position import parse, start_position
from sprouts.solver import (
    BudgetExhausted,
    Node,
    SearchEngine,
    default_policy,
    node_children,
    node_lives,
    node_of,
    parse_node_key,
    prune,
    simplify,
    verify,
)
from sprouts.store import build_basis
from sprouts.trees import parse_id


def make_node(basis, rcts) -> Node:
    return simplify((), 0, rcts, basis)


def test_node_key_round_trip():
    for key in ["|0|", "|1|", "|0|3-1-L", "0.0.0.0.}]|0|", "a2a.}];2.}]|1|2-0-W,3-1-L"]:
        assert parse_node_key(key).key == key


@pytest.mark.parametrize("bad", ["", "|2|", "0.}]|x|", "|0", "|0|bogus", "|0|3-1"])
def test_node_key_rejects_garbage(bad):
    with pytest.raises(ValueError):
        parse_node_key(bad)


def test_node_of_small_starts(basis3):
    assert node_of(parse("!"), basis3).key == "|0|"
    assert node_of(start_position(1), basis3).key == "|0|"
    assert node_of(start_position(2), basis3).key == "|0|3-1-L"
    assert node_of(start_position(3), basis3).key == "|1|"
    # a land outside the basis stays a land
    assert node_of(start_position(4), basis3).key == "0.0.0.0.}]|0|"


def test_simplify_folds_known_parts(basis3):
    st = basis3.store
    one = st.nim(1)
    zero = st.nim(0)
    r31 = basis3.positions["0.0.}]!"]
    assert r31.text == "3-1-L"
    flagged = st.toggle_plus_one(r31)
    # *0 vanishes, *1 flips parity, a flag peels off into parity
    assert simplify((), 0, [zero, one], basis3).key == "|1|"
    assert simplify((), 1, [one], basis3).key == "|0|"
    assert simplify((), 0, [flagged], basis3).key == "|1|3-1-L"
    assert simplify(["0.0.}]"], 0, [], basis3).key == "|0|3-1-L"
    assert simplify(["0.0.0.0.}]"], 0, [], basis3).key == "0.0.0.0.}]|0|"


def test_node_children(basis3):
    n2 = node_of(start_position(2), basis3)
    assert [c.key for c in node_children(n2, basis3)] == ["|0|2-0-W"]
    n3 = node_of(start_position(3), basis3)
    assert [c.key for c in node_children(n3, basis3)] == ["|0|"]
    # tree moves: replace one summand by one of its children
    two = basis3.store.nim(2)
    n = make_node(basis3, [two, two])
    keys = [c.key for c in node_children(n, basis3)]
    assert keys == ["|0|2-0-W", "|1|2-0-W"]


def test_solve_small_starts(basis3):
    want = {1: "W", 2: "L", 3: "L", 4: "L"}
    for p, w in want.items():
        eng = SearchEngine(basis3)
        assert eng.solve(node_of(start_position(p), basis3)) == w


def test_solve_explored_counts(basis3):
    eng = SearchEngine(basis3)
    assert eng.solve(node_of(start_position(2), basis3)) == "L"
    assert eng.nodes_explored == 4


def test_sums_are_not_additive():
    # a context that tells *2 + *2 + *2 apart from *2 even though both
    # games have the same Grundy value
    basis = build_basis(3)
    st = basis.store
    one, two = st.nim(1), st.nim(2)
    x = st.intern({one, st.intern({two})})

    def outcome(rcts):
        return SearchEngine(basis).solve(make_node(basis, rcts))

    assert outcome([x]) == "W"
    assert outcome([two, x]) == "W"
    assert outcome([two, two, two, x]) == "L"
    assert outcome([two, two]) == "L"


def test_policy_orders_cheap_nodes_first(basis3):
    n4 = node_of(start_position(4), basis3)
    kids = default_policy(node_children(n4, basis3))
    costs = [node_lives(c) for c in kids]
    assert costs == sorted(costs)


def test_proof_round(basis3):
    n4 = node_of(start_position(4), basis3)
    eng = SearchEngine(basis3)
    assert eng.solve(n4) == "L"
    db = eng.proof(n4)
    assert db.root == n4.key
    assert db.run == basis3.run
    assert len(db.entries) == eng.nodes_explored == 108
    ok, msg = verify(db, basis3)
    assert ok, msg

    small = prune(db, basis3)
    assert len(small.entries) == 36
    assert small.root == db.root
    ok, msg = verify(small, basis3)
    assert ok, msg


def test_verify_rejects_tampering(basis3):
    n2 = node_of(start_position(2), basis3)
    eng = SearchEngine(basis3)
    eng.solve(n2)
    db = eng.proof(n2)
    assert verify(db, basis3)[0]

    flipped = prune(db, basis3)
    key = flipped.root
    value, witness = flipped.entries[key]
    flipped.entries[key] = ("W" if value == "L" else "L", witness)
    ok, msg = verify(flipped, basis3)
    assert not ok and key in msg

    orphan = prune(db, basis3)
    orphan.entries.pop("|0|")
    assert not verify(orphan, basis3)[0]

    alien = prune(db, basis3)
    alien.run = "0" * 16
    ok, msg = verify(alien, basis3)
    assert not ok and "run" in msg


def test_budget_and_resume(basis3):
    n4 = node_of(start_position(4), basis3)
    eng = SearchEngine(basis3)
    assert eng.solve(n4, budget_nodes=5) == "Unknown"
    assert eng.nodes_explored == 6
    with pytest.raises(ValueError):
        eng.proof(n4)  # nothing proven about the root yet
    # the memo survives, so a second call finishes cheaper than from scratch
    assert eng.solve(n4) == "L"
    assert eng.nodes_explored == 111


def test_time_budget(basis3):
    n4 = node_of(start_position(4), basis3)
    eng = SearchEngine(basis3)
    assert eng.solve(n4, budget_secs=0.0) == "Unknown"


def test_cancel_event(basis3):
    n4 = node_of(start_position(4), basis3)
    eng = SearchEngine(basis3)
    eng.cancel.set()
    assert eng.solve(n4) == "Unknown"
    eng.cancel.clear()
    assert eng.solve(n4) == "L"


def test_witnesses_point_at_losing_children(basis3):
    n4 = node_of(start_position(4), basis3)
    eng = SearchEngine(basis3)
    eng.solve(n4)
    db = prune(eng.proof(n4), basis3)
    for key, (value, witness) in db.entries.items():
        node = parse_node_key(key)  # every stored key must stay parseable
        if value == "W" and (node.lands or node.parity or node.rcts):
            assert witness is not None
            assert db.entries[witness][0] == "L"
        if value == "L":
            assert witness is None
