"""Move generation, move application, and land decomposition.

A move joins two live occurrences in one region (or one occurrence to
itself) through a fresh degree-2 midpoint.  Two-boundary moves merge their
boundaries into one walk; same-boundary moves split the region in two and
route each remaining boundary to a chosen side.  Results are pruned,
re-partitioned into connected lands, and returned in canonical form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, combinations, product

from sprouts.position import (
    Land,
    Position,
    Region,
    Walk,
    canon_key,
    parse,
    prune_dead,
    split_lands,
)


@dataclass(frozen=True)
class Move:
    land: int
    region: int
    kind: str  # "join" | "split"
    b1: int
    o1: int
    b2: int  # == b1 for split moves
    o2: int  # == o1 for a self-loop
    dist: tuple[int, ...] = field(default=())  # boundaries routed to side 1


def _subsets(items: tuple[int, ...]):
    return chain.from_iterable(
        combinations(items, k) for k in range(len(items) + 1)
    )


def legal_moves(p: Position) -> list[Move]:
    """Every legal move, including all 2^k split distributions."""
    out: list[Move] = []
    for li, land in enumerate(p.lands):
        for ri, region in enumerate(land):
            nb = len(region)
            for b1 in range(nb):
                for b2 in range(b1 + 1, nb):
                    for o1 in range(len(region[b1])):
                        for o2 in range(len(region[b2])):
                            out.append(Move(li, ri, "join", b1, o1, b2, o2))
            for b in range(nb):
                w = region[b]
                others = tuple(i for i in range(nb) if i != b)
                dists = list(_subsets(others))
                for o1 in range(len(w)):
                    if p.degree[w[o1]] <= 1:
                        for d in dists:
                            out.append(Move(li, ri, "split", b, o1, b, o1, d))
                    for o2 in range(o1 + 1, len(w)):
                        if w[o1] == w[o2]:
                            continue
                        for d in dists:
                            out.append(Move(li, ri, "split", b, o1, b, o2, d))
    return out


def _check(p: Position, m: Move) -> None:
    if m.land >= len(p.lands) or m.region >= len(p.lands[m.land]):
        raise ValueError("illegal move: no such region")
    region = p.lands[m.land][m.region]
    nb = len(region)
    if m.b1 >= nb or m.b2 >= nb or m.o1 >= len(region[m.b1]) or m.o2 >= len(region[m.b2]):
        raise ValueError("illegal move: no such occurrence")
    if m.kind == "join":
        if m.b1 == m.b2:
            raise ValueError("illegal move: join endpoints share a boundary")
        if m.dist:
            raise ValueError("illegal move: join takes no distribution")
    elif m.kind == "split":
        if m.b1 != m.b2:
            raise ValueError("illegal move: split endpoints on two boundaries")
        bad = set(m.dist) - (set(range(nb)) - {m.b1})
        if bad:
            raise ValueError("illegal move: distribution not among other boundaries")
        x, y = region[m.b1][m.o1], region[m.b2][m.o2]
        if m.o1 != m.o2 and x == y:
            raise ValueError("illegal move: one life is not enough for two ends")
        if m.o1 == m.o2 and p.degree[x] > 1:
            raise ValueError("illegal move: self-loop needs 2 lives")
    else:
        raise ValueError(f"illegal move: unknown kind {m.kind!r}")


def apply(p: Position, m: Move) -> Position:
    """Play m; result is pruned, decomposed into lands, and canonical."""
    _check(p, m)
    land = p.lands[m.land]
    region = land[m.region]
    degree = dict(p.degree)
    z = max(degree, default=-1) + 1
    degree[z] = 2
    if m.kind == "join":
        b1w, b2w = region[m.b1], region[m.b2]
        x, y = b1w[m.o1], b2w[m.o2]
        merged = (
            list(b1w[m.o1 + 1:] + b1w[: m.o1 + 1])
            + [z]
            + list(b2w[m.o2:] + b2w[: m.o2])
            + [y, z, x]
        )
        if degree[y] == 0:
            del merged[len(b1w) + 1]
        if degree[x] == 0:
            del merged[-1]
        degree[x] += 1
        degree[y] += 1
        rest = tuple(w for i, w in enumerate(region) if i not in (m.b1, m.b2))
        new_regions: tuple[Region, ...] = (rest + (tuple(merged),),)
    else:
        w = region[m.b1]
        x, y = w[m.o1], w[m.o2]
        if m.o1 == m.o2:
            beta = w[m.o1 + 1:] + w[: m.o1]
            side1: Walk = (x, z)
            side2: Walk = (x,) + beta + (z,)
            degree[x] += 2
        else:
            seq = w[m.o1:] + w[: m.o1]
            j = (m.o2 - m.o1) % len(w)
            side1 = (x,) + seq[1:j] + (y, z)
            side2 = (y,) + seq[j + 1:] + (x, z)
            degree[x] += 1
            degree[y] += 1
        in1 = set(m.dist)
        r1 = tuple(region[i] for i in sorted(in1)) + (side1,)
        r2 = tuple(
            region[i] for i in range(len(region)) if i != m.b1 and i not in in1
        ) + (side2,)
        new_regions = (r1, r2)
    new_land = land[: m.region] + new_regions + land[m.region + 1:]
    lands = p.lands[: m.land] + (new_land,) + p.lands[m.land + 1:]
    q = normalize_lands(prune_dead(Position(lands, degree)))
    s = q.canonical
    out = parse(s)
    out._canonical = s
    return out


def _components(land: Land) -> list[Land]:
    n = len(land)
    if n <= 1:
        return [land] if land else []
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    first: dict[int, int] = {}
    for ri, region in enumerate(land):
        for w in region:
            for v in w:
                if v in first:
                    a, b = find(first[v]), find(ri)
                    if a != b:
                        parent[b] = a
                else:
                    first[v] = ri
    groups: dict[int, list[int]] = {}
    for ri in range(n):
        groups.setdefault(find(ri), []).append(ri)
    return [
        tuple(land[i] for i in members)
        for _, members in sorted(groups.items(), key=lambda kv: kv[1][0])
    ]


def normalize_lands(p: Position) -> Position:
    """Re-partition lands into connected components of regions."""
    lands: list[Land] = []
    for land in p.lands:
        lands.extend(_components(land))
    return Position(tuple(lands), p.degree)


def decompose(p: Position) -> tuple[Position, ...]:
    """Independent lands of p, each as a standalone position."""
    return split_lands(normalize_lands(p))


# ---------------------------------------------------------------------------
# children with symmetry-aware move thinning.  legal_moves stays exhaustive;
# here interchangeable anonymous boundaries (letter-free, hence not linked to
# anything outside their own walk) are represented once, both as split
# distributions and as join/pivot endpoints.  Canonical dedupe of the
# resulting children is unchanged; only redundant apply calls are skipped.


def _anon_sig(w: Walk, degree: dict[int, int]) -> tuple | None:
    occurs = {}
    for v in w:
        occurs[v] = occurs.get(v, 0) + 1
    for v, k in occurs.items():
        if degree[v] == 2 and k != 2:
            return None  # linked to another boundary
    ids: dict[int, int] = {}
    base = tuple((degree[v], ids.setdefault(v, len(ids))) for v in w)
    cands = []
    for seq in (base, tuple(reversed(base))):
        for r in range(len(seq)):
            rot = seq[r:] + seq[:r]
            ren: dict[int, int] = {}
            cands.append(tuple((d, ren.setdefault(i, len(ren))) for d, i in rot))
    return min(cands)


def _moves_thinned(p: Position):
    for li, land in enumerate(p.lands):
        for ri, region in enumerate(land):
            nb = len(region)
            sigs = [_anon_sig(w, p.degree) for w in region]
            # joins: one boundary per signature class on each side
            reps: dict[tuple | None, list[int]] = {}
            for b, s in enumerate(sigs):
                if s is None:
                    reps.setdefault(None, []).append(b)
                else:
                    reps.setdefault(s, []).append(b)
            join_bs: list[tuple[int, int]] = []
            classes = list(reps.values())
            for ci, members in enumerate(classes):
                unique = sigs[members[0]] is None
                pool1 = members if unique else members[:1]
                for b1 in pool1:
                    for cj in range(ci, len(classes)):
                        other = classes[cj]
                        if cj == ci:
                            cands = [b for b in other if b > b1][: len(other) if unique else 1]
                        else:
                            cands = other if sigs[other[0]] is None else other[:1]
                        for b2 in cands:
                            if b2 != b1:
                                join_bs.append((min(b1, b2), max(b1, b2)))
            for b1, b2 in sorted(set(join_bs)):
                for o1 in range(len(region[b1])):
                    for o2 in range(len(region[b2])):
                        yield Move(li, ri, "join", b1, o1, b2, o2)
            # splits: pivot once per signature class; distributions by multiset
            pivot_seen: set = set()
            for b in range(nb):
                s = sigs[b]
                if s is not None:
                    if s in pivot_seen:
                        continue
                    pivot_seen.add(s)
                w = region[b]
                others = [i for i in range(nb) if i != b]
                groups: dict[tuple, list[int]] = {}
                solo: list[int] = []
                for i in others:
                    os = sigs[i]
                    if os is None:
                        solo.append(i)
                    else:
                        groups.setdefault(os, []).append(i)
                glists = list(groups.values())
                dists = []
                for usub in _subsets(tuple(solo)):
                    for counts in product(*(range(len(g) + 1) for g in glists)):
                        take = list(usub)
                        for g, c in zip(glists, counts):
                            take.extend(g[:c])
                        dists.append(tuple(sorted(take)))
                for o1 in range(len(w)):
                    if p.degree[w[o1]] <= 1:
                        for d in dists:
                            yield Move(li, ri, "split", b, o1, b, o1, d)
                    for o2 in range(o1 + 1, len(w)):
                        if w[o1] == w[o2]:
                            continue
                        for d in dists:
                            yield Move(li, ri, "split", b, o1, b, o2, d)


_child_cache: dict[str, tuple[str, ...]] = {}


def child_keys(p: Position) -> tuple[str, ...]:
    """Canonical strings of all distinct children, sorted; memoized."""
    key = p.canonical
    hit = _child_cache.get(key)
    if hit is not None:
        return hit
    seen: set[str] = set()
    for m in _moves_thinned(p):
        seen.add(apply(p, m).text)
    res = tuple(sorted(seen, key=canon_key))
    _child_cache[key] = res
    return res


def children(p: Position) -> list[Position]:
    out = []
    for s in child_keys(p):
        q = parse(s)
        q._canonical = s
        out.append(q)
    return out
