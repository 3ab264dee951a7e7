"""Persistence for tree bases and proof databases.

Both artifacts are line-oriented text keyed by a run checksum, so files
from different builds refuse to mix: IDs are only meaningful against
the store that allocated their serials.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path

from sprouts.moves import decompose
from sprouts.position import Position, parse, start_position
from sprouts.solver import ProofDb
from sprouts.trees import TreeId, TreeStore, parse_id, rct_of

BASIS_MAGIC = "SPROUTS-RCT v1"
PROOF_MAGIC = "SPROUTS-PROOF v1"


class StoreFileError(ValueError):
    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line


@dataclass
class BasisDb:
    spots: int
    store: TreeStore
    positions: dict[str, TreeId] = field(default_factory=dict)
    run: str = ""

    @property
    def distinct_rcts(self) -> int:
        return len(set(self.positions.values()))


def build_basis(spots: int) -> BasisDb:
    """RCT map of the S_spots game tree, closed under taking lands alone.

    Lands seen only inside multi-land positions get standalone entries so
    the solver can absorb them one component at a time.
    """
    store = TreeStore(reduced=True)
    memo: dict[str, TreeId] = {}
    rct_of(start_position(spots), store, memo)
    done: set[str] = set()
    while True:
        todo = [k for k in memo if k not in done]
        if not todo:
            break
        for key in todo:
            done.add(key)
            pos = parse(key)
            pos._canonical = key
            for land in decompose(pos):
                if land.canonical not in memo:
                    rct_of(land, store, memo)
    db = BasisDb(spots, store, memo)
    db.run = _checksum(_basis_body(db))
    return db


def _checksum(lines: list[str]) -> str:
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()[:16]


def _basis_body(db: BasisDb) -> list[str]:
    lines = []
    for t in sorted(db.store.forward, key=lambda t: (t.sort_key, t.plus)):
        kids = db.store.forward[t]
        tail = " " + " ".join(c.text for c in kids) if kids else ""
        lines.append(f"T {t.text} :{tail}")
    for pos in sorted(db.positions):
        lines.append(f"P {pos} {db.positions[pos].text}")
    return lines


def save_basis(db: BasisDb, path) -> None:
    body = _basis_body(db)
    run = _checksum(body)
    header = f"{BASIS_MAGIC} spots={db.spots} run={run}"
    Path(path).write_text("\n".join([header] + body) + "\n")


def load_basis(path) -> BasisDb:
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise StoreFileError(path, 1, "empty file")
    head = lines[0].split()
    if head[:2] != BASIS_MAGIC.split() or len(head) != 4 \
            or not head[2].startswith("spots=") or not head[3].startswith("run="):
        raise StoreFileError(path, 1, f"bad header {lines[0]!r}")
    try:
        spots = int(head[2].removeprefix("spots="))
    except ValueError:
        raise StoreFileError(path, 1, f"bad spots field {head[2]!r}")
    run = head[3].removeprefix("run=")

    store = TreeStore(reduced=True)
    positions: dict[str, TreeId] = {}
    for no, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if not fields:
            raise StoreFileError(path, no, "blank line")
        if fields[0] == "T":
            if len(fields) < 3 or fields[2] != ":":
                raise StoreFileError(path, no, f"malformed tree line {line!r}")
            try:
                t = parse_id(fields[1])
                cs = tuple(parse_id(s) for s in fields[3:])
            except ValueError as e:
                raise StoreFileError(path, no, str(e))
            store.forward[t] = tuple(sorted(cs, key=lambda c: c.sort_key))
            store.inverse[frozenset(cs)] = t
            store._by_hnp[(t.height, t.serial, t.plus)] = t
            if not t.plus:
                nxt = store._serials.get(t.height, 1)
                store._serials[t.height] = max(nxt, t.serial + 1)
        elif fields[0] == "P":
            if len(fields) != 3:
                raise StoreFileError(path, no, f"malformed map line {line!r}")
            try:
                positions[fields[1]] = parse_id(fields[2])
            except ValueError as e:
                raise StoreFileError(path, no, str(e))
        else:
            raise StoreFileError(path, no, f"unknown record {fields[0]!r}")

    for t, cs in store.forward.items():
        for c in cs:
            if c not in store.forward:
                raise StoreFileError(path, 0, f"dangling child {c.text} under {t.text}")
    for pos, t in positions.items():
        if t not in store.forward:
            raise StoreFileError(path, 0, f"dangling id {t.text} for {pos}")

    db = BasisDb(spots, store, positions, run)
    actual = _checksum(_basis_body(db))
    if actual != run:
        raise StoreFileError(path, 1, f"checksum mismatch: header {run}, content {actual}")
    return db


def proof_text(db: ProofDb) -> str:
    lines = [f"{PROOF_MAGIC} root={db.root} run={db.run}"]
    for key in sorted(db.entries):
        outcome, wit = db.entries[key]
        tail = f" {wit}" if wit is not None else ""
        lines.append(f"N {key} {outcome}{tail}")
    return "\n".join(lines) + "\n"


def save_proof(db: ProofDb, path) -> None:
    Path(path).write_text(proof_text(db))


def load_proof(path) -> ProofDb:
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise StoreFileError(path, 1, "empty file")
    head = lines[0].split()
    if head[:2] != PROOF_MAGIC.split() or len(head) != 4 \
            or not head[2].startswith("root=") or not head[3].startswith("run="):
        raise StoreFileError(path, 1, f"bad header {lines[0]!r}")
    root = head[2].removeprefix("root=")
    run = head[3].removeprefix("run=")
    entries: dict[str, tuple[str, str | None]] = {}
    for no, line in enumerate(lines[1:], start=2):
        fields = line.split()
        if len(fields) == 3 and fields[0] == "N" and fields[2] in ("W", "L"):
            entries[fields[1]] = (fields[2], None)
        elif len(fields) == 4 and fields[0] == "N" and fields[2] == "W":
            entries[fields[1]] = ("W", fields[3])
        else:
            raise StoreFileError(path, no, f"malformed entry {line!r}")
    return ProofDb(root, run, entries)
