"""HTTP steering service.

Each session owns one search engine over a shared read-only basis.  The
operator inspects nodes, descends and backtracks along an ancestor
stack, and launches budgeted background solves whose partial memo
survives cancellation.
"""
from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field

from fastapi import FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from sprouts.position import ParseError, parse, start_position
from sprouts.solver import (Node, SearchEngine, node_children, node_lives,
                            node_of, parse_node_key, prune)
from sprouts.store import BasisDb, proof_text


@dataclass
class Session:
    id: str
    engine: SearchEngine
    stack: list[str]
    lock: threading.Lock = field(default_factory=threading.Lock)
    worker: threading.Thread | None = None
    auto_key: str | None = None
    auto_status: str = "idle"


class CreateSession(BaseModel):
    spots: int | None = None
    position: str | None = None


class DescendBody(BaseModel):
    childKey: str


class AutoBody(BaseModel):
    nodeKey: str | None = None
    budgetNodes: int | None = None
    budgetSecs: float | None = None


def _error(code: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=code, content={"error": message})


def create_app(basis: BasisDb) -> FastAPI:
    app = FastAPI(title="sprouts steering service")
    sessions: dict[str, Session] = {}

    def summary(s: Session, node: Node, with_children: bool = True) -> dict:
        out = {
            "key": node.key,
            "lands": list(node.lands),
            "parity": node.parity,
            "rcts": [t.text for t in node.rcts],
            "status": s.engine.memo.get(node.key, "Unknown"),
            "lives": node_lives(node),
            "landCount": len(node.lands),
        }
        if with_children:
            out["children"] = [
                summary(s, c, with_children=False)
                for c in node_children(node, basis)
            ]
        return out

    def session_or_none(sid: str) -> Session | None:
        return sessions.get(sid)

    @app.post("/sessions")
    def create(body: CreateSession):
        if (body.spots is None) == (body.position is None):
            return _error(409, "give exactly one of spots, position")
        try:
            if body.spots is not None:
                root = node_of(start_position(body.spots), basis)
            else:
                root = node_of(parse(body.position), basis)
        except (ParseError, ValueError) as e:
            return _error(409, str(e))
        s = Session(uuid.uuid4().hex[:12], SearchEngine(basis), [root.key])
        sessions[s.id] = s
        return {"id": s.id, "root": summary(s, root)}

    @app.get("/sessions/{sid}/node")
    def node_view(sid: str, key: str | None = None):
        s = session_or_none(sid)
        if s is None:
            return _error(404, f"unknown session {sid}")
        key = key or s.stack[-1]
        try:
            node = parse_node_key(key)
        except ValueError as e:
            return _error(404, str(e))
        return summary(s, node)

    @app.post("/sessions/{sid}/descend")
    def descend(sid: str, body: DescendBody):
        s = session_or_none(sid)
        if s is None:
            return _error(404, f"unknown session {sid}")
        with s.lock:
            focus = parse_node_key(s.stack[-1])
            child_set = {c.key for c in node_children(focus, basis)}
            if body.childKey not in child_set:
                return _error(409, f"{body.childKey} is not a child of the focus")
            s.stack.append(body.childKey)
            return summary(s, parse_node_key(body.childKey))

    @app.post("/sessions/{sid}/back")
    def back(sid: str):
        s = session_or_none(sid)
        if s is None:
            return _error(404, f"unknown session {sid}")
        with s.lock:
            if len(s.stack) == 1:
                return _error(409, "already at the root")
            s.stack.pop()
            return summary(s, parse_node_key(s.stack[-1]))

    @app.post("/sessions/{sid}/auto")
    def auto(sid: str, body: AutoBody):
        s = session_or_none(sid)
        if s is None:
            return _error(404, f"unknown session {sid}")
        with s.lock:
            if s.worker is not None and s.worker.is_alive():
                return _error(409, "a search is already running")
            key = body.nodeKey or s.stack[-1]
            try:
                node = parse_node_key(key)
            except ValueError as e:
                return _error(409, str(e))
            s.engine.cancel.clear()
            s.auto_key = key
            s.auto_status = "running"

            def run() -> None:
                result = s.engine.solve(node, body.budgetNodes, body.budgetSecs)
                if result != "Unknown":
                    s.auto_status = "done"
                elif s.engine.cancel.is_set():
                    s.auto_status = "cancelled"
                else:
                    s.auto_status = "exhausted"

            s.worker = threading.Thread(target=run, daemon=True)
            s.worker.start()
        return {"key": key, "status": s.auto_status}

    @app.get("/sessions/{sid}/progress")
    def progress(sid: str):
        s = session_or_none(sid)
        if s is None:
            return _error(404, f"unknown session {sid}")
        key = s.auto_key
        return {
            "status": s.auto_status,
            "key": key,
            "result": s.engine.memo.get(key, "Unknown") if key else "Unknown",
            "nodesExplored": s.engine.nodes_explored,
            "memoSize": len(s.engine.memo),
        }

    @app.post("/sessions/{sid}/cancel")
    def cancel(sid: str):
        s = session_or_none(sid)
        if s is None:
            return _error(404, f"unknown session {sid}")
        with s.lock:
            if s.worker is None or not s.worker.is_alive():
                return _error(409, "no running search")
            s.engine.cancel.set()
        s.worker.join()
        return {"status": s.auto_status, "memoSize": len(s.engine.memo)}

    @app.get("/sessions/{sid}/proof")
    def proof(sid: str, key: str | None = None):
        s = session_or_none(sid)
        if s is None:
            return _error(404, f"unknown session {sid}")
        key = key or s.auto_key or s.stack[-1]
        if key not in s.engine.memo:
            return _error(409, f"{key} is not resolved")
        db = prune(s.engine.proof(parse_node_key(key)), basis)
        return PlainTextResponse(proof_text(db))

    return app


def serve(basis: BasisDb, host: str = "127.0.0.1", port: int = 8000) -> None:
    import uvicorn

    uvicorn.run(create_app(basis), host=host, port=port, log_level="warning")
