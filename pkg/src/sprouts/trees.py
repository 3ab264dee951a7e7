"""Canonical trees, reduced canonical trees, and the interning store.

A canonical tree is the game tree of a position with identical subtrees
merged; a set of child IDs identifies one tree.  The reduced store
additionally applies, in order: mex collapse of all-Nim child sets holding a
*0 or *1, collapse of wins dominated by *0, replacement by a reducer child
set, and factoring out a *1 summand.  IDs are height-serial pairs; serial 0
is reserved for Nim-heaps, and odd Nim-heaps above *1 live under the +1 flag
of the next even heap.
"""
from __future__ import annotations

import re
from itertools import chain, combinations
from typing import Iterable, NamedTuple

from sprouts.position import Position, parse
from sprouts.moves import child_keys


class TreeId(NamedTuple):
    height: int
    serial: int
    plus: bool
    win: str

    @property
    def true_height(self) -> int:
        return self.height + (1 if self.plus else 0)

    @property
    def is_nim(self) -> bool:
        return self.serial == 0

    @property
    def nim_size(self) -> int:
        if not self.is_nim:
            raise ValueError(f"{self.text} is not a Nim-heap")
        return self.true_height

    @property
    def sort_key(self) -> tuple[int, int, int]:
        return (self.true_height, self.height, self.serial)

    @property
    def text(self) -> str:
        plus = "+1" if self.plus else ""
        return f"{self.height}-{self.serial}{plus}-{self.win}"

    @property
    def base_text(self) -> str:
        """ID without the win letter, as used in node keys."""
        plus = "+1" if self.plus else ""
        return f"{self.height}-{self.serial}{plus}"


_ID_RE = re.compile(r"(\d+)-(\d+)(\+1)?-(W|L)\Z")


def parse_id(s: str) -> TreeId:
    m = _ID_RE.match(s)
    if not m:
        raise ValueError(f"bad tree id {s!r}")
    return TreeId(int(m.group(1)), int(m.group(2)), m.group(3) is not None, m.group(4))


def _nim_id(n: int) -> TreeId:
    if n == 0:
        return TreeId(0, 0, False, "W")
    if n == 1:
        return TreeId(1, 0, False, "L")
    if n % 2 == 0:
        return TreeId(n, 0, False, "W")
    return TreeId(n - 1, 0, True, "W")


def outcome_of(ids: Iterable[TreeId]) -> str:
    """W when terminal or when some move leaves the opponent losing."""
    ids = tuple(ids)
    if not ids:
        return "W"
    return "W" if any(c.win == "L" for c in ids) else "L"


class TreeStore:
    """Interning store; reduced mode applies the full reduction pipeline."""

    def __init__(self, reduced: bool = True):
        self.reduced = reduced
        self.forward: dict[TreeId, tuple[TreeId, ...]] = {}
        self.inverse: dict[frozenset[TreeId], TreeId] = {}
        self._serials: dict[int, int] = {}
        self._by_hnp: dict[tuple[int, int, bool], TreeId] = {}
        self._symbolic: dict[TreeId, str] = {}
        zero = TreeId(0, 0, False, "W")
        one = TreeId(1, 0, False, "L")
        for t, cs in ((zero, frozenset()), (one, frozenset({zero}))):
            self.forward[t] = tuple(sorted(cs, key=lambda c: c.sort_key))
            self.inverse[cs] = t
            self._by_hnp[(t.height, t.serial, t.plus)] = t

    def __len__(self) -> int:
        return len(self.forward)

    def children_of(self, t: TreeId) -> tuple[TreeId, ...]:
        return self.forward[t]

    def nim(self, n: int) -> TreeId:
        top = n if n % 2 == 0 else n - 1  # odd heaps ride on the even row below
        for k in range(2, top + 1, 2):
            t = TreeId(k, 0, False, "W")
            if t not in self.forward:
                self._register(t, frozenset(_nim_id(j) for j in range(k)))
        return _nim_id(n)

    def toggle_plus_one(self, t: TreeId) -> TreeId:
        """ID of t with a *1 summand added or removed."""
        if t.is_nim:
            return self.nim(t.nim_size ^ 1)
        return self._by_hnp[(t.height, t.serial, not t.plus)]

    def _register(self, t: TreeId, cs: frozenset[TreeId]) -> None:
        assert cs not in self.inverse, (t, cs)
        self.forward[t] = tuple(sorted(cs, key=lambda c: c.sort_key))
        self.inverse[cs] = t
        self._by_hnp[(t.height, t.serial, t.plus)] = t
        if (t.height, t.serial) in ((0, 0), (1, 0)):
            return
        derived = frozenset({t} | {self.toggle_plus_one(c) for c in cs})
        f = TreeId(t.height, t.serial, True, outcome_of(derived))
        assert derived not in self.inverse, (f, derived)
        self.forward[f] = tuple(sorted(derived, key=lambda c: c.sort_key))
        self.inverse[derived] = f
        self._by_hnp[(f.height, f.serial, f.plus)] = f

    # -- reductions ---------------------------------------------------------

    def reduce_mex(self, cs: frozenset[TreeId]) -> TreeId | None:
        """Nim value of an all-Nim child set holding a *0 or *1."""
        if not cs or not all(c.is_nim for c in cs):
            return None
        sizes = {c.nim_size for c in cs}
        if 0 not in sizes and 1 not in sizes:
            return None
        n = 0
        while n in sizes:
            n += 1
        return self.nim(n)

    def reduce_to_zero(self, cs: frozenset[TreeId]) -> TreeId | None:
        """*0 for winning sets where every child can answer back to *0."""
        if outcome_of(cs) != "W":
            return None
        zero = self._by_hnp[(0, 0, False)]
        if all(zero in self.forward[c] for c in cs):
            return zero
        return None

    def find_reducer(self, children: list[TreeId]) -> TreeId | None:
        """Smallest height-prefix whose ID every excluded child contains."""
        for i in range(1, len(children)):
            if children[i].true_height < children[i - 1].true_height + 2:
                continue
            rid = self.inverse.get(frozenset(children[:i]))
            if rid is None:
                continue  # prefix itself reducible, never stored
            if all(rid in self.forward[c] for c in children[i:]):
                return rid
        return None

    def factor_star1(self, cs: frozenset[TreeId]) -> TreeId | None:
        """G when cs is exactly G plus a *1 summand toggled into its children."""
        mh = max(c.true_height for c in cs)
        tops = [c for c in cs if c.true_height == mh and not c.plus]
        if len(tops) != 1:
            return None
        g = tops[0]
        derived = frozenset({g} | {self.toggle_plus_one(c) for c in self.forward[g]})
        return g if derived == cs else None

    # -- interning ----------------------------------------------------------

    def _reduce(self, cs: frozenset[TreeId]) -> TreeId | None:
        """Reduction result or existing ID; None means a fresh row is needed."""
        r = self.reduce_mex(cs)
        if r is not None:
            return r
        if cs:
            r = self.reduce_to_zero(cs)
            if r is not None:
                return r
            r = self.find_reducer(sorted(cs, key=lambda c: c.sort_key))
            if r is not None:
                return r
        # factored sets are pre-registered alongside their base row, so a
        # plain lookup covers factor_star1 as well as already-interned rows
        return self.inverse.get(cs)

    def intern(self, ids: Iterable[TreeId]) -> TreeId:
        cs = frozenset(ids)
        if not self.reduced:
            hit = self.inverse.get(cs)
            if hit is not None:
                return hit
            return self._new_row(cs, canonical=True)
        hit = self._reduce(cs)
        if hit is not None:
            return hit
        return self._new_row(cs, canonical=False)

    def _new_row(self, cs: frozenset[TreeId], canonical: bool) -> TreeId:
        if not cs:
            return self._by_hnp[(0, 0, False)]
        h = 1 + max(c.true_height for c in cs)
        if canonical and all(c.is_nim for c in cs) and {c.nim_size for c in cs} == set(range(len(cs))):
            t = TreeId(h, 0, False, outcome_of(cs))
        else:
            serial = self._serials.get(h, 1)
            self._serials[h] = serial + 1
            t = TreeId(h, serial, False, outcome_of(cs))
        if canonical:
            self.forward[t] = tuple(sorted(cs, key=lambda c: c.sort_key))
            self.inverse[cs] = t
            self._by_hnp[(t.height, t.serial, t.plus)] = t
        else:
            self._register(t, cs)
        return t

    # -- string form --------------------------------------------------------

    def symbolic(self, t: TreeId) -> str:
        """Brace form with Nim-heaps abbreviated, e.g. {*1;{*2}}."""
        hit = self._symbolic.get(t)
        if hit is not None:
            return hit
        if t.is_nim:
            s = f"*{t.nim_size}"
        else:
            kids = sorted(self.forward[t], key=self._struct_key)
            s = "{" + ";".join(self.symbolic(c) for c in kids) + "}"
        self._symbolic[t] = s
        return s

    def _struct_key(self, t: TreeId):
        # serial-free ordering: insertion order must not leak into output
        return (
            t.true_height,
            0 if t.is_nim else 1,
            len(self.forward[t]),
            self.symbolic(t),
        )


# ---------------------------------------------------------------------------


def rct_of(
    p: Position,
    store: TreeStore,
    memo: dict[str, TreeId] | None = None,
) -> TreeId:
    """Tree ID of p, interning every position in its game tree."""
    if memo is None:
        memo = {}

    def rec(key: str, pos: Position | None) -> TreeId:
        t = memo.get(key)
        if t is not None:
            return t
        if pos is None:
            pos = parse(key)
            pos._canonical = key
        ids = {rec(k, None) for k in child_keys(pos)}
        t = store.intern(ids)
        memo[key] = t
        return t

    return rec(p.canonical, p)


def count_distinct_cts(p: Position) -> int:
    """Distinct canonical trees in the game tree of p, root included."""
    store = TreeStore(reduced=False)
    memo: dict[str, TreeId] = {}
    rct_of(p, store, memo)
    return len(set(memo.values()))


def count_nim_reducible(p: Position) -> tuple[int, int]:
    """(distinct canonical trees, how many of them reduce to a Nim-heap)."""
    cstore = TreeStore(reduced=False)
    rstore = TreeStore(reduced=True)
    cmemo: dict[str, TreeId] = {}
    rmemo: dict[str, TreeId] = {}
    rct_of(p, cstore, cmemo)
    rct_of(p, rstore, rmemo)
    pairing: dict[TreeId, TreeId] = {}
    for key, cid in cmemo.items():
        rid = rmemo[key]
        assert pairing.setdefault(cid, rid) == rid, key
    return len(pairing), sum(1 for rid in pairing.values() if rid.is_nim)


def _subsets(ids: list[TreeId]):
    return chain.from_iterable(combinations(ids, k) for k in range(len(ids) + 1))


def enumerate_rcts(
    height: int,
    canonical_only: bool = False,
    store: TreeStore | None = None,
) -> tuple[int, list[TreeId]]:
    """Count trees of height <= height; reduced mode also returns them.

    Canonical-only counts obey c(0) = 1, c(h+1) = 2^c(h), so they are
    computed by formula.  In reduced mode every level is the image of all
    child subsets of the previous level under intern; the top level of a
    deep run is streamed without storing fresh rows, since distinct
    irreducible subsets are distinct trees.
    """
    if canonical_only:
        if height >= 6:
            raise ValueError("canonical-only count at height >= 6 does not fit in memory")
        c = 1
        for _ in range(height):
            c = 2 ** c
        return c, []
    if store is None:
        store = TreeStore(reduced=True)
    level = [store.nim(0)]
    stream = height >= 5
    for k in range(1, height + 1):
        if k < height or not stream:
            cur = {store.intern(sub) for sub in _subsets(level)}
            level = sorted(cur, key=lambda t: t.sort_key)
        else:
            store.nim(height)  # mex results can reach *height
            seen: set[TreeId] = set()
            fresh = 0
            for sub in _subsets(level):
                r = store._reduce(frozenset(sub))
                if r is None:
                    fresh += 1
                else:
                    seen.add(r)
            return len(seen) + fresh, []
    return len(level), level


def grundy(p: Position, memo: dict[str, int] | None = None) -> int:
    """Normal-play Grundy value of a position."""
    if memo is None:
        memo = {}

    def rec(key: str, pos: Position | None) -> int:
        g = memo.get(key)
        if g is not None:
            return g
        if pos is None:
            pos = parse(key)
            pos._canonical = key
        vals = {rec(k, None) for k in child_keys(pos)}
        g = 0
        while g in vals:
            g += 1
        memo[key] = g
        return g

    return rec(p.canonical, p)


def nim_sum(m: int, n: int) -> int:
    return m ^ n
