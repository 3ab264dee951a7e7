"""Command-line surface.

stdout carries only the answer so scripts can assert on it; everything
else goes to stderr.  Exit codes: 0 success, 2 failure, 3 budget
exhausted.
"""
from __future__ import annotations

import argparse
import os
import sys

from sprouts.moves import children
from sprouts.position import ParseError, lives, parse, start_position
from sprouts.solver import SearchEngine, node_of, parse_node_key, prune, verify
from sprouts.store import (StoreFileError, build_basis, load_basis, load_proof,
                           save_basis, save_proof)
from sprouts.trees import (TreeStore, count_distinct_cts, count_nim_reducible,
                           enumerate_rcts, grundy, rct_of)

OK, FAIL, EXHAUSTED = 0, 2, 3

LONG_RUN_SPOTS = 6
LONG_RUN_HEIGHT = 5


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return FAIL


def _position(args):
    if getattr(args, "spots", None) is not None:
        return start_position(args.spots)
    return parse(args.pos)


def _needs_long_run(args, value: int, limit: int, what: str) -> bool:
    if value >= limit and not args.long_run:
        print(f"error: {what} {value} needs --long-run", file=sys.stderr)
        return True
    return False


def _basis_path(args) -> str | None:
    return args.basis or os.environ.get("SPROUTS_BASIS")


def _load_basis_arg(args):
    path = _basis_path(args)
    if path is None:
        raise FileNotFoundError("no basis given (--basis or SPROUTS_BASIS)")
    return load_basis(path)


def cmd_parse(args) -> int:
    print(parse(args.pos).canonical)
    return OK


def cmd_lives(args) -> int:
    print(lives(parse(args.pos)))
    return OK


def cmd_moves(args) -> int:
    for child in children(parse(args.pos)):
        print(child.canonical)
    return OK


def cmd_ct_count(args) -> int:
    if args.spots is not None and _needs_long_run(args, args.spots, LONG_RUN_SPOTS, "spots"):
        return FAIL
    p = _position(args)
    if args.nim_reducible:
        total, nim = count_nim_reducible(p)
        print(f"{total} {nim}")
    else:
        print(count_distinct_cts(p))
    return OK


def cmd_rct(args) -> int:
    p = parse(args.pos)
    if args.build:
        store = TreeStore(reduced=True)
        t = rct_of(p, store)
        print(f"{t.text} {store.symbolic(t)}")
        return OK
    db = _load_basis_arg(args)
    t = db.positions.get(p.canonical)
    if t is None:
        return _fail(f"position {p.canonical} is not in the basis")
    print(f"{t.text} {db.store.symbolic(t)}")
    return OK


def cmd_grundy(args) -> int:
    print(grundy(parse(args.pos)))
    return OK


def cmd_enum_rct(args) -> int:
    if not args.canonical_only and _needs_long_run(args, args.height, LONG_RUN_HEIGHT, "height"):
        return FAIL
    store = TreeStore(reduced=True)
    count, level = enumerate_rcts(args.height, args.canonical_only, store)
    if args.canonical_only:
        # the tower count at height 5 already has ~20k digits
        sys.set_int_max_str_digits(
            max(sys.get_int_max_str_digits(), count.bit_length() // 3 + 10)
        )
    print(count)
    if args.list:
        for t in level:
            print(f"{t.text} {store.symbolic(t)}")
    return OK


def cmd_basis(args) -> int:
    if _needs_long_run(args, args.spots, LONG_RUN_SPOTS, "spots"):
        return FAIL
    db = build_basis(args.spots)
    save_basis(db, args.out)
    print(f"spots={db.spots} rcts={db.distinct_rcts} positions={len(db.positions)} run={db.run}")
    return OK


def cmd_solve(args) -> int:
    db = _load_basis_arg(args)
    if args.node is not None:
        root = parse_node_key(args.node)
    else:
        root = node_of(_position(args), db)
    engine = SearchEngine(db)
    result = engine.solve(root, args.budget_nodes, args.budget_secs)
    print(result)
    if args.proof_out and result != "Unknown":
        save_proof(engine.proof(root), args.proof_out)
    print(f"explored={engine.nodes_explored} memo={len(engine.memo)}", file=sys.stderr)
    return EXHAUSTED if result == "Unknown" else OK


def cmd_prune(args) -> int:
    db = _load_basis_arg(args)
    proof = load_proof(args.proof)
    kept = prune(proof, db)
    save_proof(kept, args.out)
    print(len(kept.entries))
    return OK


def cmd_verify(args) -> int:
    db = _load_basis_arg(args)
    proof = load_proof(args.proof)
    ok, detail = verify(proof, db)
    print("ok" if ok else detail)
    return OK if ok else FAIL


def cmd_serve(args) -> int:
    from sprouts.service import serve

    db = _load_basis_arg(args)
    print(f"serving basis spots={db.spots} on {args.host}:{args.port}", file=sys.stderr)
    serve(db, args.host, args.port)
    return OK


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="sprouts")
    sub = top.add_subparsers(dest="command", required=True)

    def pos_arg(p):
        p.add_argument("pos", help="position string, e.g. '0.0.}]!'")

    def spots_or_pos(p):
        g = p.add_mutually_exclusive_group(required=True)
        g.add_argument("--spots", type=int)
        g.add_argument("--pos")

    def basis_flag(p):
        p.add_argument("--basis", help="basis file (default: $SPROUTS_BASIS)")

    p = sub.add_parser("parse", help="validate and canonize a position")
    pos_arg(p)
    p.set_defaults(fn=cmd_parse)

    p = sub.add_parser("lives", help="remaining lives of a position")
    pos_arg(p)
    p.set_defaults(fn=cmd_lives)

    p = sub.add_parser("moves", help="canonical children, one per line")
    pos_arg(p)
    p.set_defaults(fn=cmd_moves)

    p = sub.add_parser("ct-count", help="distinct canonical trees in the game tree")
    spots_or_pos(p)
    p.add_argument("--nim-reducible", action="store_true",
                   help="also count trees whose reduction is a Nim-heap")
    p.add_argument("--long-run", action="store_true")
    p.set_defaults(fn=cmd_ct_count)

    p = sub.add_parser("rct", help="reduced canonical tree of a position")
    pos_arg(p)
    basis_flag(p)
    p.add_argument("--build", action="store_true", help="compute from scratch")
    p.set_defaults(fn=cmd_rct)

    p = sub.add_parser("grundy", help="normal-play nimber of a position")
    pos_arg(p)
    p.set_defaults(fn=cmd_grundy)

    p = sub.add_parser("enum-rct", help="count trees up to a height")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--canonical-only", action="store_true")
    p.add_argument("--list", action="store_true")
    p.add_argument("--long-run", action="store_true")
    p.set_defaults(fn=cmd_enum_rct)

    p = sub.add_parser("basis", help="build and save a basis")
    p.add_argument("--spots", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--long-run", action="store_true")
    p.set_defaults(fn=cmd_basis)

    p = sub.add_parser("solve", help="misère outcome of a position or node")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--spots", type=int)
    g.add_argument("--pos")
    g.add_argument("--node", help="node key, e.g. '|0|3-1-L'")
    basis_flag(p)
    p.add_argument("--budget-nodes", type=int)
    p.add_argument("--budget-secs", type=float)
    p.add_argument("--proof-out")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("prune", help="shrink a proof to the demonstration core")
    p.add_argument("--proof", required=True)
    p.add_argument("--out", required=True)
    basis_flag(p)
    p.set_defaults(fn=cmd_prune)

    p = sub.add_parser("verify", help="re-check every proof entry")
    p.add_argument("--proof", required=True)
    basis_flag(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("serve", help="start the steering service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    basis_flag(p)
    p.set_defaults(fn=cmd_serve)

    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, StoreFileError, FileNotFoundError, ValueError) as e:
        return _fail(str(e))


if __name__ == "__main__":
    sys.exit(main())
