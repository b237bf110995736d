"""Text formats for pair, score and trace files.

pairs file   ``u v [label]`` per line, ``#`` comments
score file   ``u v score`` per line, score with 12 decimals, ``#`` header
"""
from __future__ import annotations

import os

import numpy as np

from .graph import IngestError
from .scorers import QueryPairSet

SCORE_FORMAT = "{:d} {:d} {:.12f}\n"


def _lines(path):
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            s = line.strip()
            if s and not s.startswith("#"):
                yield lineno, s.split()


def read_pairs(path) -> QueryPairSet:
    """Read a pairs file; labels are attached only if every line carries one."""
    rows, labels, n_fields = [], [], None
    for lineno, f in _lines(path):
        if len(f) not in (2, 3) or (n_fields is not None and len(f) != n_fields):
            raise IngestError(f"expected 'u v' or 'u v label', got {' '.join(f)!r}", lineno)
        n_fields = len(f)
        try:
            a, b = int(f[0]), int(f[1])
            if a < 0 or b < 0:
                raise ValueError
            if n_fields == 3:
                lab = int(f[2])
                if lab not in (0, 1):
                    raise ValueError
                labels.append(lab)
        except ValueError:
            raise IngestError(f"bad pair record {' '.join(f)!r}", lineno) from None
        if a == b:
            raise IngestError(f"pair joins node {a} to itself", lineno)
        rows.append((a, b))
    arr = np.array(rows, dtype=np.int64).reshape(-1, 2)
    return QueryPairSet(arr[:, 0], arr[:, 1], np.array(labels, dtype=np.int8) if labels else None)


def write_pairs(pairs: QueryPairSet, path, header: str = "") -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for line in header.splitlines():
            fh.write(f"# {line}\n")
        if pairs.labels is None:
            for a, b in zip(pairs.u.tolist(), pairs.v.tolist()):
                fh.write(f"{a} {b}\n")
        else:
            for a, b, lab in zip(pairs.u.tolist(), pairs.v.tolist(), pairs.labels.tolist()):
                fh.write(f"{a} {b} {lab}\n")


def write_scores(pairs: QueryPairSet, scores, path, header: str = "") -> None:
    """Scores in input pair order."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        for line in header.splitlines():
            fh.write(f"# {line}\n")
        for a, b, s in zip(pairs.u.tolist(), pairs.v.tolist(), np.asarray(scores).tolist()):
            fh.write(SCORE_FORMAT.format(a, b, s))


def read_scores(path):
    """Return ``(pairs, scores)`` from a score file."""
    rows, scores = [], []
    for lineno, f in _lines(path):
        if len(f) != 3:
            raise IngestError(f"expected 'u v score', got {' '.join(f)!r}", lineno)
        try:
            rows.append((int(f[0]), int(f[1])))
            scores.append(float(f[2]))
        except ValueError:
            raise IngestError(f"bad score record {' '.join(f)!r}", lineno) from None
    arr = np.array(rows, dtype=np.int64).reshape(-1, 2)
    return QueryPairSet(arr[:, 0], arr[:, 1]), np.array(scores)


def check_aligned(a: QueryPairSet, b: QueryPairSet, what: str = "files") -> None:
    if len(a) != len(b) or not (np.array_equal(a.u, b.u) and np.array_equal(a.v, b.v)):
        raise ValueError(f"{what} are not aligned pair-for-pair")


def write_text(path, text: str) -> None:
    with open(os.fspath(path), "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
