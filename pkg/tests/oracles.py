"""Slow reference implementations the fast paths are validated against.

Game trees here are hash-consed frozensets of child trees, with no identifiers
and no shared state with sprouts.trees. Outcomes come from the bare win/loss
recursion, sums from componentwise move recursion, and reductions from direct
set arithmetic (reducer validity is plain set membership, which is what the
database-miss shortcut in the real store stands in for).
"""
from __future__ import annotations

from sprouts.position import Position, parse
import sprouts.moves as moves

_INTERN: dict[frozenset, frozenset] = {}
_SERIAL: dict[int, int] = {}


def tree(children=()) -> frozenset:
    f = frozenset(children)
    got = _INTERN.get(f)
    if got is not None:
        return got
    _INTERN[f] = f
    _SERIAL[id(f)] = len(_SERIAL)
    return f


EMPTY = tree()

_NIMS: list[frozenset] = [EMPTY]
_NIM_SIZE: dict[int, int] = {id(EMPTY): 0}


def nim_tree(n: int) -> frozenset:
    while len(_NIMS) <= n:
        t = tree(_NIMS)
        _NIMS.append(t)
        _NIM_SIZE[id(t)] = len(_NIMS) - 1
    return _NIMS[n]


def nim_size(t: frozenset) -> int | None:
    nim_tree(height(t))
    return _NIM_SIZE.get(id(t))


_HEIGHT: dict[int, int] = {id(EMPTY): 0}


def height(t: frozenset) -> int:
    h = _HEIGHT.get(id(t))
    if h is None:
        h = 1 + max(height(c) for c in t)
        _HEIGHT[id(t)] = h
    return h


_WIN: dict[int, bool] = {id(EMPTY): True}


def misere_win(t: frozenset) -> bool:
    """True when the player to move wins t under last-move-loses play."""
    w = _WIN.get(id(t))
    if w is None:
        w = any(not misere_win(c) for c in t)
        _WIN[id(t)] = w
    return w


_SUM_WIN: dict[tuple[int, ...], bool] = {}


def sum_win(components) -> bool:
    """Misère outcome of a sum of trees; a move is a move in one component."""
    ts = tuple(sorted(components, key=lambda t: _SERIAL[id(t)]))
    key = tuple(id(t) for t in ts)
    w = _SUM_WIN.get(key)
    if w is not None:
        return w
    w = False
    for i, t in enumerate(ts):
        for c in t:
            if not sum_win(ts[:i] + (c,) + ts[i + 1 :]):
                w = True
                break
        if w:
            break
    if not w and all(not t for t in ts):
        w = True  # no move anywhere: the previous mover made the last move
    _SUM_WIN[key] = w
    return w


_GAME: dict[str, frozenset] = {}


def game_tree(p: Position) -> frozenset:
    """Canonical tree of a position, built purely from move generation."""
    key = p.canonical
    t = _GAME.get(key)
    if t is None:
        t = tree(game_tree(c) for c in moves.children(p))
        _GAME[key] = t
    return t


def grundy_tree(t: frozenset) -> int:
    seen = {grundy_tree(c) for c in t}
    g = 0
    while g in seen:
        g += 1
    return g


def reduce_set(children) -> frozenset:
    """One reduction step: deduped reduced children in, value tree out."""
    cs = tree(children)
    sizes = [nim_size(c) for c in cs]
    if cs and all(s is not None for s in sizes):
        if 0 in sizes or 1 in sizes:
            n = 0
            while n in sizes:
                n += 1
            return nim_tree(n)
    # to the empty tree, under the win proviso
    if cs and any(not misere_win(c) for c in cs) and all(EMPTY in c for c in cs):
        return EMPTY
    # general reducer: smallest height-prefix whose tree every excluded
    # child admits as a move
    ch = sorted(cs, key=height)
    for i in range(1, len(ch)):
        if height(ch[i]) < height(ch[i - 1]) + 2:
            continue
        g = tree(ch[:i])
        if all(g in ch[j] for j in range(i, len(ch))):
            return g
    return cs


_RCT: dict[int, frozenset] = {}


def rct_tree(t: frozenset) -> frozenset:
    r = _RCT.get(id(t))
    if r is None:
        r = reduce_set(rct_tree(c) for c in t)
        _RCT[id(t)] = r
    return r


def position_tree(text: str) -> frozenset:
    return game_tree(parse(text))


def all_trees_of_height(h: int) -> list[frozenset]:
    """Every canonical tree of height <= h (the power-set tower)."""
    level = [EMPTY]
    for _ in range(h):
        out = []
        for bits in range(1 << len(level)):
            out.append(tree(t for i, t in enumerate(level) if bits >> i & 1))
        level = out
    return level
