from __future__ import annotations

import io
import os
import pickle
from contextlib import redirect_stdout
from pathlib import Path

import pytest

import sprouts.moves as moves
from sprouts import cli
from sprouts.store import build_basis, load_basis, save_basis

CACHE = Path(__file__).parent / ".cache"
BASIS5 = CACHE / "basis5.txt"
CHILDREN5 = CACHE / "children5.pkl"


@pytest.fixture(scope="session")
def basis3():
    return build_basis(3)


@pytest.fixture(scope="session")
def basis5():
    """The 5-spot basis, built once and cached on disk with its move cache."""
    CACHE.mkdir(exist_ok=True)
    if CHILDREN5.exists():
        with open(CHILDREN5, "rb") as f:
            moves._child_cache.update(pickle.load(f))
    loaded = len(moves._child_cache)
    if BASIS5.exists():
        db = load_basis(str(BASIS5))
    else:
        db = build_basis(5)
        save_basis(db, str(BASIS5))
    yield db
    # deep solves grow the move cache a lot; keep that work for the next run
    if len(moves._child_cache) > loaded + 1000:
        with open(CHILDREN5, "wb") as f:
            pickle.dump(dict(moves._child_cache), f, protocol=4)


@pytest.fixture(scope="session")
def basis5_path(basis5) -> str:
    return str(BASIS5)


def run_cli(args, env: dict[str, str | None] | None = None) -> tuple[int, str]:
    """Run the CLI entry point in-process, capturing stdout."""
    saved: dict[str, str | None] = {}
    for k, v in (env or {}).items():
        saved[k] = os.environ.get(k)
        if v is None:
            os.environ.pop(k, None)
        else:
            os.environ[k] = v
    buf = io.StringIO()
    try:
        with redirect_stdout(buf):
            code = cli.main([str(a) for a in args])
    finally:
        for k, v in saved.items():
            if v is None:
                os.environ.pop(k, None)
            else:
                os.environ[k] = v
    return code, buf.getvalue()


@pytest.fixture
def cli_run():
    return run_cli
