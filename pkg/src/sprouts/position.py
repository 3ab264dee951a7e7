"""Planar positions for misère Sprouts: parsing, rendering, canonization.

In-memory form: a position holds lands; a land holds regions; a region holds
boundaries; a boundary is a cyclic walk of live-vertex occurrences (ints).
``degree`` maps each live vertex to 0..2 and lives(v) = 3 - degree(v); dead
vertices (degree 3) are never stored.  A degree-2 vertex always has exactly
two occurrences.  When both sit cyclically adjacent on one boundary the pair
renders as the digit 2; split across two boundaries it renders as an
uppercase letter; non-adjacent on one boundary, as a lowercase letter.
"""
from __future__ import annotations

import string
from functools import lru_cache

Walk = tuple[int, ...]
Region = tuple[Walk, ...]
Land = tuple[Region, ...]

_LETTERS = set(string.ascii_letters)

# Canonical comparisons rank digits < uppercase < lowercase < '.' < '}' < ']'
# < '!'.  ASCII already orders the alphanumerics; punctuation is remapped
# above 'z' so plain string comparison realizes the canonical order.
_ENC = str.maketrans(".}]!", "{|}~")
_DEC = str.maketrans("{|}~", ".}]!")


def canon_key(s: str) -> str:
    """Sort key realizing the canonical character order on grammar strings."""
    return s.translate(_ENC)


class ParseError(ValueError):
    def __init__(self, message: str, index: int):
        super().__init__(f"{message} (at index {index})")
        self.index = index


class RenderError(ValueError):
    pass


class Position:
    """Immutable position.  Equality and hashing use the canonical string."""

    __slots__ = ("lands", "degree", "_text", "_canonical")

    def __init__(self, lands: tuple[Land, ...], degree: dict[int, int]):
        self.lands = lands
        self.degree = degree
        self._text: str | None = None
        self._canonical: str | None = None

    @property
    def text(self) -> str:
        if self._text is None:
            self._text = render(self)
        return self._text

    @property
    def canonical(self) -> str:
        if self._canonical is None:
            self._canonical = _canonical_text(self)
        return self._canonical

    def __eq__(self, other: object):
        if not isinstance(other, Position):
            return NotImplemented
        return self.canonical == other.canonical

    def __hash__(self) -> int:
        return hash(self.canonical)

    def __repr__(self) -> str:
        return f"Position({self.text!r})"


def start_position(spots: int) -> Position:
    """All spots in one region of one land; 3*spots lives."""
    if spots < 0:
        raise ValueError("spots must be >= 0")
    if spots == 0:
        return Position((), {})
    region = tuple((i,) for i in range(spots))
    return Position(((region,),), {i: 0 for i in range(spots)})


def lives(p: Position) -> int:
    return sum(3 - d for d in p.degree.values())


def split_lands(p: Position) -> tuple[Position, ...]:
    """Each land as a standalone position (sum components)."""
    out = []
    for land in p.lands:
        verts = {v for region in land for w in region for v in w}
        out.append(Position((land,), {v: p.degree[v] for v in verts}))
    return tuple(out)


# ---------------------------------------------------------------------------
# parsing


def parse(text: str) -> Position:
    if text == "!":
        return Position((), {})
    lands: list[Land] = []
    regions: list[Region] = []
    boundaries: list[Walk] = []
    walk: list[int] = []
    degree: dict[int, int] = {}
    origin: dict[int, str] = {}
    # letter -> (vertex, land#, region#, boundary#) of its first occurrence
    first: dict[str, tuple[int, int, int, int]] = {}
    closed: set[str] = set()
    next_id = 0
    done = False

    def close_boundary(i: int) -> None:
        w = tuple(walk)
        if len(w) > 1 and any(degree[v] == 0 for v in w):
            raise ParseError("digit 0 must be alone on its boundary", i)
        pos_of: dict[int, list[int]] = {}
        for k, v in enumerate(w):
            pos_of.setdefault(v, []).append(k)
        for v, ks in pos_of.items():
            if len(ks) == 2 and origin[v].islower():
                a, b = ks
                if (b - a) % len(w) == 1 or (a - b) % len(w) == 1:
                    raise ParseError(
                        "adjacent occurrences must be written with digit 2", i)
        boundaries.append(w)
        walk.clear()

    for i, ch in enumerate(text):
        if done:
            raise ParseError("content after '!'", i)
        if ch == ".":
            if not walk:
                raise ParseError("empty boundary", i)
            close_boundary(i)
        elif ch == "}":
            if walk:
                raise ParseError("boundary not terminated with '.'", i)
            regions.append(tuple(boundaries))
            boundaries.clear()
        elif ch == "]":
            if walk:
                raise ParseError("boundary not terminated with '.'", i)
            if boundaries:
                raise ParseError("region not terminated with '}'", i)
            if not regions:
                raise ParseError("land has no region", i)
            for letter, (_, li, _, _) in first.items():
                if li == len(lands) and letter not in closed:
                    raise ParseError(
                        f"letter {letter!r} must pair within its land", i)
            lands.append(tuple(regions))
            regions.clear()
        elif ch == "!":
            if walk or boundaries or regions:
                raise ParseError("land not terminated with ']'", i)
            if not lands:
                raise ParseError("position has no land", i)
            done = True
        elif ch in "012":
            v = next_id
            next_id += 1
            degree[v] = int(ch)
            origin[v] = ch
            walk.append(v)
            if ch == "2":
                walk.append(v)
        elif ch in _LETTERS:
            if ch in closed:
                raise ParseError(f"letter {ch!r} appears more than twice", i)
            here = (len(lands), len(regions), len(boundaries))
            if ch in first:
                v, li, ri, bi = first[ch]
                if li != here[0]:
                    raise ParseError(
                        f"letter {ch!r} must pair within its land", i)
                same_boundary = (ri, bi) == here[1:]
                if ch.isupper() and same_boundary:
                    raise ParseError(
                        f"uppercase {ch!r} needs two distinct boundaries", i)
                if ch.islower() and not same_boundary:
                    raise ParseError(
                        f"lowercase {ch!r} needs both occurrences on one boundary", i)
                closed.add(ch)
                walk.append(v)
            else:
                v = next_id
                next_id += 1
                degree[v] = 2
                origin[v] = ch
                first[ch] = (v, *here)
                walk.append(v)
        else:
            raise ParseError(f"invalid character {ch!r}", i)
    if not done:
        raise ParseError("missing '!' terminator", len(text))
    return Position(tuple(lands), degree)


# ---------------------------------------------------------------------------
# rendering

# token classes: '0' '1' '2' literal digits, 'U' cross-boundary letter,
# 'l' same-boundary non-adjacent letter
Token = tuple[str, int]


def _land_tokens(land: Land, degree: dict[int, int]) -> tuple[tuple[tuple[Token, ...], ...], ...]:
    occ: dict[int, list[tuple[int, int, int]]] = {}
    for ri, region in enumerate(land):
        for bi, w in enumerate(region):
            for pi, v in enumerate(w):
                occ.setdefault(v, []).append((ri, bi, pi))
    cls: dict[int, str] = {}
    for v, occs in occ.items():
        d = degree[v]
        if d == 0 or d == 1:
            if len(occs) != 1:
                raise RenderError(f"degree-{d} vertex with {len(occs)} occurrences")
            cls[v] = "01"[d]
        elif d == 2:
            if len(occs) != 2:
                raise RenderError(f"degree-2 vertex with {len(occs)} occurrences")
            (r1, b1, p1), (r2, b2, p2) = occs
            if (r1, b1) == (r2, b2):
                n = len(land[r1][b1])
                adjacent = (p2 - p1) % n == 1 or (p1 - p2) % n == 1
                cls[v] = "2" if adjacent else "l"
            else:
                cls[v] = "U"
        else:
            raise RenderError("dead vertex in walk")
    out = []
    for region in land:
        toks_region = []
        for w in region:
            if len(w) > 2 and w[0] == w[-1] and cls[w[0]] == "2":
                w = (w[-1],) + w[:-1]
            toks: list[Token] = []
            i = 0
            while i < len(w):
                v = w[i]
                c = cls[v]
                if c == "2":
                    if i + 1 >= len(w) or w[i + 1] != v:
                        raise RenderError("non-adjacent digit-2 pair")
                    toks.append(("2", v))
                    i += 2
                else:
                    toks.append((c, v))
                    i += 1
            toks_region.append(tuple(toks))
        out.append(tuple(toks_region))
    return tuple(out)


def render(p: Position) -> str:
    parts: list[str] = []
    name: dict[int, str] = {}
    pools = {"U": string.ascii_uppercase, "l": string.ascii_lowercase}
    used = {"U": 0, "l": 0}
    for land in p.lands:
        for region in _land_tokens(land, p.degree):
            for toks in region:
                for c, v in toks:
                    if c in "012":
                        parts.append(c)
                        continue
                    ch = name.get(v)
                    if ch is None:
                        k = used[c]
                        if k >= 26:
                            raise RenderError("letter pool exhausted")
                        ch = pools[c][k]
                        used[c] = k + 1
                        name[v] = ch
                    parts.append(ch)
                parts.append(".")
            parts.append("}")
        parts.append("]")
    parts.append("!")
    return "".join(parts)


# ---------------------------------------------------------------------------
# canonization: lexicographically minimal rendering over boundary rotations,
# land reflection, boundary/region/land order, and renaming.  Renaming is
# realized by first-use letter allocation, so the search is over structural
# orders only.  Work happens in the encoded alphabet (see _ENC) where plain
# string comparison is the canonical order.


def canonical_land(land: Land, degree: dict[int, int]) -> str:
    return _min_pattern(_renumber(_land_tokens(land, degree)))


def _renumber(tokens):
    ids: dict[int, int] = {}

    def rid(v: int) -> int:
        if v not in ids:
            ids[v] = len(ids)
        return ids[v]

    return tuple(
        tuple(tuple((c, rid(v)) for c, v in toks) for toks in region)
        for region in tokens
    )


@lru_cache(maxsize=None)
def _min_pattern(regions) -> str:
    mirrored = tuple(
        tuple(tuple(reversed(toks)) for toks in region) for region in regions
    )
    best = _search_land(regions, None)
    if mirrored != regions:
        best = _search_land(mirrored, best)
    return best.translate(_DEC)


def _search_land(regions, best: str | None) -> str:
    name: dict[int, str] = {}
    hold = [best]

    def chunk(toks, rot: int, nu: int, nl: int):
        chars: list[str] = []
        temp: dict[int, str] = {}
        n = len(toks)
        for k in range(n):
            c, v = toks[(rot + k) % n]
            if c in "012":
                chars.append(c)
                continue
            ch = name.get(v) or temp.get(v)
            if ch is None:
                if c == "U":
                    if nu >= 26:
                        raise RenderError("letter pool exhausted")
                    ch = chr(65 + nu)
                    nu += 1
                else:
                    if nl >= 26:
                        raise RenderError("letter pool exhausted")
                    ch = chr(97 + nl)
                    nl += 1
                temp[v] = ch
            chars.append(ch)
        chars.append("{")
        return "".join(chars), temp, nu, nl

    def worse(out: str) -> bool:
        b = hold[0]
        return b is not None and out > b[: len(out)]

    def rec_regions(rem: tuple[int, ...], out: str, nu: int, nl: int) -> None:
        if not rem:
            leaf = out + "}"
            b = hold[0]
            if b is None or leaf < b:
                hold[0] = leaf
            return
        ests = []
        seen: set = set()
        for i in rem:
            region = regions[i]
            if all(c in "012" for toks in region for c, _ in toks):
                sig = tuple(sorted(tuple(c for c, _ in toks) for toks in region))
                if sig in seen:
                    continue
                seen.add(sig)
            est = min(
                chunk(toks, rot, nu, nl)[0]
                for toks in region
                for rot in range(len(toks))
            )
            ests.append((est, i))
        ests.sort()
        for _, i in ests:
            rec_bounds(regions[i], (1 << len(regions[i])) - 1,
                       tuple(j for j in rem if j != i), out, nu, nl)

    def rec_bounds(region, mask: int, rem: tuple[int, ...],
                   out: str, nu: int, nl: int) -> None:
        if not mask:
            out2 = out + "|"
            if worse(out2):
                return
            rec_regions(rem, out2, nu, nl)
            return
        cands = []
        seen: set = set()
        for j, toks in enumerate(region):
            if not mask >> j & 1:
                continue
            for rot in range(len(toks)):
                s, temp, nu2, nl2 = chunk(toks, rot, nu, nl)
                key = (s, tuple(temp))
                if key in seen:
                    continue
                seen.add(key)
                cands.append((s, j, temp, nu2, nl2))
        cands.sort(key=lambda t: t[0])
        for s, j, temp, nu2, nl2 in cands:
            out2 = out + s
            if worse(out2):
                break
            name.update(temp)
            rec_bounds(region, mask & ~(1 << j), rem, out2, nu2, nl2)
            for v in temp:
                del name[v]

    rec_regions(tuple(range(len(regions))), "", 0, 0)
    return hold[0]


def _canonical_text(p: Position) -> str:
    pats = sorted(
        (canonical_land(land, p.degree) for land in p.lands), key=canon_key
    )
    return _merge_patterns(pats)


def _merge_patterns(pats: list[str]) -> str:
    """Join per-land patterns, continuing letter allocation across lands."""
    nu = nl = 0
    parts: list[str] = []
    for pat in pats:
        du, dl = nu, nl
        for ch in pat:
            if "A" <= ch <= "Z":
                k = ord(ch) - 65 + du
                if k >= 26:
                    raise RenderError("letter pool exhausted")
                nu = max(nu, k + 1)
                parts.append(chr(65 + k))
            elif "a" <= ch <= "z":
                k = ord(ch) - 97 + dl
                if k >= 26:
                    raise RenderError("letter pool exhausted")
                nl = max(nl, k + 1)
                parts.append(chr(97 + k))
            else:
                parts.append(ch)
    parts.append("!")
    return "".join(parts)


# ---------------------------------------------------------------------------
# pruning


def prune_dead(p: Position) -> Position:
    """Drop dead occurrences and unplayable structure.

    A region whose distinct live vertices carry fewer than 2 lives in total
    admits no move.  Such a region is removed outright when each of its live
    vertices also occurs elsewhere; a live vertex stranded entirely inside
    unplayable regions (always degree 2) is kept as a junk region with walk
    (v, v) so no lives are lost.  Degree-2 vertices left with a single
    occurrence are doubled in place.  Idempotent.
    """
    new_lands: list[Land] = []
    kept_verts: set[int] = set()
    for land in p.lands:
        cleaned: list[list[Walk]] = []
        for region in land:
            walks = []
            for w in region:
                w2 = tuple(v for v in w if p.degree[v] <= 2)
                if w2:
                    walks.append(w2)
            cleaned.append(walks)
        playable = []
        for walks in cleaned:
            verts = {v for w in walks for v in w}
            playable.append(sum(3 - p.degree[v] for v in verts) >= 2)
        in_play = {
            v
            for walks, ok in zip(cleaned, playable) if ok
            for w in walks for v in w
        }
        kept = [walks for walks, ok in zip(cleaned, playable) if ok]
        stranded: list[int] = []
        for walks, ok in zip(cleaned, playable):
            if ok:
                continue
            for w in walks:
                for v in w:
                    if v not in in_play and v not in stranded:
                        stranded.append(v)
        for v in stranded:
            kept.append([(v, v)])
        counts: dict[int, int] = {}
        for walks in kept:
            for w in walks:
                for v in w:
                    counts[v] = counts.get(v, 0) + 1
        regions_out: list[Region] = []
        for walks in kept:
            fixed = []
            for w in walks:
                parts: list[int] = []
                for v in w:
                    parts.append(v)
                    if p.degree[v] == 2 and counts[v] == 1:
                        parts.append(v)
                fixed.append(tuple(parts))
            regions_out.append(tuple(fixed))
        if regions_out:
            new_lands.append(tuple(regions_out))
            kept_verts.update(v for r in regions_out for w in r for v in w)
    degree = {v: d for v, d in p.degree.items() if v in kept_verts}
    return Position(tuple(new_lands), degree)


def check_invariants(p: Position) -> None:
    """Raise on structural violations; for tests and debugging."""
    occs: dict[int, list[tuple[int, int, int]]] = {}
    for li, land in enumerate(p.lands):
        for ri, region in enumerate(land):
            for bi, w in enumerate(region):
                if not w:
                    raise ValueError("empty boundary")
                for v in w:
                    occs.setdefault(v, []).append((li, ri, bi))
    if set(occs) != set(p.degree):
        raise ValueError("degree map does not match walks")
    for v, where in occs.items():
        d = p.degree[v]
        if d not in (0, 1, 2):
            raise ValueError(f"bad degree {d}")
        if d == 2:
            if len(where) != 2:
                raise ValueError("degree-2 vertex must occur twice")
            if where[0][0] != where[1][0]:
                raise ValueError("vertex occurs in two lands")
        else:
            if len(where) != 1:
                raise ValueError(f"degree-{d} vertex must occur once")
            if d == 0:
                li, ri, bi = where[0]
                if len(p.lands[li][ri][bi]) != 1:
                    raise ValueError("degree-0 vertex must be alone on its boundary")
