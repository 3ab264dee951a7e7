"""On-disk formats: basis files and proof files."""
from __future__ import annotations

import pytest

from sprouts.moves import decompose
from sprouts.position import parse, start_position
from sprouts.solver import SearchEngine, node_of, verify
from sprouts.store import (
    BASIS_MAGIC,
    PROOF_MAGIC,
    StoreFileError,
    build_basis,
    load_basis,
    load_proof,
    proof_text,
    save_basis,
    save_proof,
)


def test_build_basis_counts_and_closure():
    b2 = build_basis(2)
    assert b2.spots == 2
    assert b2.distinct_rcts == 5
    assert len(b2.positions) == 24
    assert b2.positions["0.0.}]!"].text == "3-1-L"
    # every land of every recorded position is itself recorded
    for key in b2.positions:
        for land in decompose(parse(key)):
            assert land.canonical in b2.positions


def test_build_is_deterministic():
    assert build_basis(2).run == build_basis(2).run == "9e78bae3c8e2e0ea"
    assert build_basis(3).run != build_basis(2).run


def test_basis_round_trip(tmp_path):
    db = build_basis(2)
    path = tmp_path / "b2.txt"
    save_basis(db, path)
    text = path.read_text()
    lines = text.splitlines()
    assert lines[0] == f"{BASIS_MAGIC} spots=2 run={db.run}"
    assert lines[1] == "T 0-0-W :"
    assert lines[2] == "T 1-0-L : 0-0-W"
    assert lines[3] == "T 2-0-W : 0-0-W 1-0-L"

    again = load_basis(path)
    assert again.spots == db.spots
    assert again.run == db.run
    assert again.positions == db.positions
    assert again.store.forward == db.store.forward
    assert again.store.inverse == db.store.inverse

    save_basis(again, tmp_path / "b2b.txt")
    assert (tmp_path / "b2b.txt").read_text() == text


def test_loaded_store_keeps_allocating(tmp_path):
    db = build_basis(2)
    save_basis(db, tmp_path / "b.txt")
    again = load_basis(tmp_path / "b.txt")
    # serial counters resume past loaded rows instead of reissuing them
    fresh = again.store.intern({again.store.nim(3)})
    assert fresh not in db.store.forward
    assert fresh.serial >= 1


def _basis_lines(tmp_path):
    path = tmp_path / "b.txt"
    save_basis(build_basis(2), path)
    return path, path.read_text().splitlines()


def _expect_error(tmp_path, lines, lineno, needle):
    path = tmp_path / "bad.txt"
    path.write_text("\n".join(lines) + "\n")
    with pytest.raises(StoreFileError) as exc:
        load_basis(path)
    assert exc.value.line == lineno
    assert needle in str(exc.value)


def test_basis_rejects_bad_files(tmp_path):
    path, lines = _basis_lines(tmp_path)

    empty = tmp_path / "empty.txt"
    empty.write_text("")
    with pytest.raises(StoreFileError, match="empty file"):
        load_basis(empty)

    _expect_error(tmp_path, ["WRONG v9 spots=2 run=x", *lines[1:]], 1, "bad header")
    _expect_error(tmp_path, [lines[0].replace("spots=2", "spots=two"), *lines[1:]], 1, "bad spots")
    _expect_error(tmp_path, [*lines, "T 9-9-W"], len(lines) + 1, "malformed tree line")
    _expect_error(tmp_path, [*lines, "T bogus : 0-0-W"], len(lines) + 1, "bad tree id")
    _expect_error(tmp_path, [*lines, "P too many words here"], len(lines) + 1, "malformed map line")
    _expect_error(tmp_path, [*lines, "Q what"], len(lines) + 1, "unknown record")
    _expect_error(tmp_path, [*lines, ""], len(lines) + 1, "blank line")
    # a child id with no T row of its own
    _expect_error(tmp_path, [*lines, "T 9-1-W : 8-1-W"], 0, "dangling child")
    # valid lines whose content no longer matches the header checksum
    swapped = [l.replace("P 0.0.}]! 3-1-L", "P 0.0.}]! 1-0-L") for l in lines]
    _expect_error(tmp_path, swapped, 1, "checksum mismatch")


def test_basis_rejects_dangling_position_id(tmp_path):
    path, lines = _basis_lines(tmp_path)
    # drop every T line for 3-1-L and its companion but keep the P reference;
    # recompute nothing: the dangling check fires before the checksum one
    kept = [l for l in lines if not l.startswith(("T 3-1-L", "T 3-1+1-W"))]
    bad = tmp_path / "dangling.txt"
    bad.write_text("\n".join(kept) + "\n")
    with pytest.raises(StoreFileError, match="dangling"):
        load_basis(bad)


def test_proof_text_is_stable(basis3):
    eng = SearchEngine(basis3)
    n3 = node_of(start_position(3), basis3)
    eng.solve(n3)
    db = eng.proof(n3)
    assert proof_text(db) == (
        f"{PROOF_MAGIC} root=|1| run={basis3.run}\n"
        "N |0| W\n"
        "N |1| L\n"
    )


def test_proof_round_trip(tmp_path, basis3):
    eng = SearchEngine(basis3)
    n4 = node_of(start_position(4), basis3)
    eng.solve(n4)
    db = eng.proof(n4)
    path = tmp_path / "p4.txt"
    save_proof(db, path)
    again = load_proof(path)
    assert again.root == db.root
    assert again.run == db.run
    assert again.entries == db.entries
    ok, msg = verify(again, basis3)
    assert ok, msg


def test_proof_rejects_bad_files(tmp_path, basis3):
    head = f"{PROOF_MAGIC} root=|0| run={basis3.run}"

    for lines, lineno, needle in [
        (["SPROUTS-RCT v1 root=|0| run=x"], 1, "bad header"),
        ([head, "N |0|"], 2, "malformed entry"),
        ([head, "N |0| X"], 2, "malformed entry"),
        ([head, "N |0| L |1|"], 2, "malformed entry"),  # losses carry no witness
    ]:
        path = tmp_path / "bad.txt"
        path.write_text("\n".join(lines) + "\n")
        with pytest.raises(StoreFileError) as exc:
            load_proof(path)
        assert exc.value.line == lineno
        assert needle in str(exc.value)


def test_proof_from_other_run_fails_verify(tmp_path, basis3):
    path = tmp_path / "p.txt"
    path.write_text(f"{PROOF_MAGIC} root=|0| run={'f' * 16}\nN |0| W\n")
    db = load_proof(path)
    ok, msg = verify(db, basis3)
    assert not ok
    assert "run" in msg
