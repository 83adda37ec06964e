from __future__ import annotations

import sys
import time
from contextlib import contextmanager
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from homolog.corpus import lookup  # noqa: E402
from homolog.field import PrimeField  # noqa: E402
from homolog.algebra import make_algebra  # noqa: E402

CRITERIA: dict[str, str] = {}


@lru_cache(maxsize=None)
def corpus_algebra(name: str):
    return lookup(name).document().algebra()


def a2(p: int = 2):
    return make_algebra(PrimeField(p), ["1", "2"], [("a", "1", "2")], name="a2")


def loop(n: int, p: int = 3):
    return make_algebra(PrimeField(p), ["1"], [("x", "1", "1")], [[(1, "x" + ".x" * (n - 1))]], name=f"x{n}")


def kronecker(p: int = 2):
    return make_algebra(PrimeField(p), ["1", "2"], [("a", "1", "2"), ("b", "1", "2")], name="kronecker")


@contextmanager
def criterion(key: str, title: str, limit: float | None = None):
    """Record one acceptance line; failures inside the block or over ``limit`` seconds mark it failed."""
    t0 = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        CRITERIA[key] = f"FAIL  {key}: {title} ({time.perf_counter() - t0:.2f} s) -- {str(exc).splitlines()[0] if str(exc) else type(exc).__name__}"
        raise
    elapsed = time.perf_counter() - t0
    if limit is not None and elapsed >= limit:
        CRITERIA[key] = f"FAIL  {key}: {title} ({elapsed:.2f} s, limit {limit} s)"
        raise AssertionError(f"criterion {key} took {elapsed:.2f} s, limit {limit} s")
    CRITERIA[key] = f"PASS  {key}: {title} ({elapsed:.2f} s)"


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(CRITERIA, key=lambda k: (int(k.rstrip("abcd")), k)):
        terminalreporter.write_line(CRITERIA[key])


@pytest.fixture
def A2():
    return a2()
