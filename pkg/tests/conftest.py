import contextlib
import json
import pathlib
import sys

import pytest

sys.path.insert(0, str(pathlib.Path(__file__).parent))

from templink.graph import TemporalEdgeList, build_adjacency, degrees  # noqa: E402

GOLDEN = pathlib.Path(__file__).parent / "golden" / "synthetic.json"
_criteria = []


@pytest.fixture
def criterion():
    """``with criterion("name"):`` records a PASS/FAIL line for the summary."""

    @contextlib.contextmanager
    def record(name, note=""):
        try:
            yield
        except BaseException as exc:
            _criteria.append((name, False, f"{type(exc).__name__}: {exc}"[:200]))
            raise
        else:
            _criteria.append((name, True, note))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, note in _criteria:
        line = f"{'PASS' if ok else 'FAIL'}  {name}"
        if note:
            line += f"  ({note})"
        terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def golden():
    return json.loads(GOLDEN.read_text())


def make_edges(pairs, times=None, n=None):
    u = [a for a, _ in pairs]
    v = [b for _, b in pairs]
    t = times if times is not None else list(range(len(pairs)))
    if n is None:
        n = max(u + v) + 1 if pairs else 0
    return TemporalEdgeList(u, v, t, n)


@pytest.fixture
def path3():
    """Path 0-1-2 with unit weights: (adjacency, degrees)."""
    adj = build_adjacency(make_edges([(0, 1), (1, 2)]))
    return adj, degrees(adj)
