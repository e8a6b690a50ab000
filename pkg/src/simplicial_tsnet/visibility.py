"""Natural visibility graphs.

Samples ``i < j`` are linked when every intermediate sample lies strictly
below the straight segment joining them. A sample sitting exactly on the
segment blocks the link. All comparisons are plain IEEE double arithmetic
without tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import DomainError, ParseError
from .series import TimeSeries

QUADRATIC = "quadratic"
DIVIDE_AND_CONQUER = "divide-and-conquer"
METHODS = (QUADRATIC, DIVIDE_AND_CONQUER)


@dataclass(frozen=True, eq=False)
class VisibilityGraph:
    """Simple undirected graph on ``0..node_count-1``.

    ``edges`` is an ``(m, 2)`` integer array with ``i < j`` in each row,
    sorted lexicographically.
    """

    node_count: int
    edges: np.ndarray

    def __post_init__(self) -> None:
        e = np.asarray(self.edges, dtype=np.int64).reshape(-1, 2)
        if e.size:
            if (e[:, 0] >= e[:, 1]).any():
                e = np.sort(e, axis=1)
            if (e[:, 0] == e[:, 1]).any():
                raise DomainError("self-loops are not allowed")
            if e.min() < 0 or e.max() >= self.node_count:
                raise DomainError("edge endpoint outside node range")
            e = np.unique(e, axis=0)
        e.setflags(write=False)
        object.__setattr__(self, "edges", e)

    @property
    def edge_count(self) -> int:
        return int(self.edges.shape[0])

    @cached_property
    def neighbors(self) -> tuple[np.ndarray, ...]:
        """Sorted neighbor array per node."""
        n = self.node_count
        if not self.edge_count:
            return tuple(np.empty(0, dtype=np.int64) for _ in range(n))
        src = np.concatenate([self.edges[:, 0], self.edges[:, 1]])
        dst = np.concatenate([self.edges[:, 1], self.edges[:, 0]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        bounds = np.searchsorted(src, np.arange(n + 1))
        return tuple(dst[bounds[k] : bounds[k + 1]] for k in range(n))

    @cached_property
    def adjacency_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(nb.tolist()) for nb in self.neighbors)

    def degrees(self) -> np.ndarray:
        return np.bincount(self.edges.ravel(), minlength=self.node_count)

    def edge_set(self) -> set[tuple[int, int]]:
        return set(map(tuple, self.edges.tolist()))

    def connected_components(self) -> int:
        """Component count by breadth-first search."""
        adj = self.adjacency_sets
        seen = [False] * self.node_count
        count = 0
        for s in range(self.node_count):
            if seen[s]:
                continue
            count += 1
            seen[s] = True
            frontier = [s]
            while frontier:
                nxt = []
                for u in frontier:
                    for v in adj[u]:
                        if not seen[v]:
                            seen[v] = True
                            nxt.append(v)
                frontier = nxt
        return count

    @classmethod
    def from_edges(cls, edges: Sequence[tuple[int, int]], node_count: int | None = None) -> "VisibilityGraph":
        e = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if node_count is None:
            node_count = int(e.max()) + 1 if e.size else 0
        return cls(node_count, e)


def _check_indices(ts: TimeSeries, i: int, j: int) -> None:
    if not (0 <= i < j < len(ts)):
        raise DomainError(f"need 0 <= i < j < {len(ts)}, got i={i}, j={j}")


def visible(ts: TimeSeries, i: int, j: int) -> bool:
    """True when no sample strictly between ``i`` and ``j`` reaches the segment i--j."""
    _check_indices(ts, i, j)
    y = ts.values
    yi, yj = float(y[i]), float(y[j])
    span = float(j - i)
    for r in range(i + 1, j):
        line = yj + (yi - yj) * float(j - r) / span
        if not y[r] < line:
            return False
    return True


def _visible_quadratic(y: np.ndarray) -> np.ndarray:
    n = y.size
    rows = []
    for i in range(n - 1):
        slopes = (y[i + 1 :] - y[i]) / np.arange(1, n - i, dtype=np.float64)
        hit = np.empty(slopes.size, dtype=bool)
        hit[0] = True
        hit[1:] = slopes[1:] > np.maximum.accumulate(slopes)[:-1]
        js = np.flatnonzero(hit) + (i + 1)
        rows.append(np.column_stack([np.full(js.size, i, dtype=np.int64), js]))
    return np.concatenate(rows) if rows else np.empty((0, 2), dtype=np.int64)


def _sweep(y: np.ndarray, pivot: int, others: np.ndarray) -> np.ndarray:
    """Indices in ``others`` (ordered outward from ``pivot``) visible from the pivot."""
    if not others.size:
        return others
    slopes = (y[others] - y[pivot]) / np.abs(others - pivot).astype(np.float64)
    hit = np.empty(slopes.size, dtype=bool)
    hit[0] = True
    hit[1:] = slopes[1:] > np.maximum.accumulate(slopes)[:-1]
    return others[hit]


def _visible_divide_and_conquer(y: np.ndarray) -> np.ndarray:
    # The interval maximum blocks every pair straddling it, so only pairs
    # involving the pivot are examined before recursing on either side.
    chunks = []
    stack = [(0, y.size)]
    while stack:
        lo, hi = stack.pop()
        if hi - lo < 2:
            continue
        p = lo + int(np.argmax(y[lo:hi]))
        left = _sweep(y, p, np.arange(p - 1, lo - 1, -1, dtype=np.int64))
        right = _sweep(y, p, np.arange(p + 1, hi, dtype=np.int64))
        if left.size:
            chunks.append(np.column_stack([left, np.full(left.size, p, dtype=np.int64)]))
        if right.size:
            chunks.append(np.column_stack([np.full(right.size, p, dtype=np.int64), right]))
        stack.append((lo, p))
        stack.append((p + 1, hi))
    return np.concatenate(chunks) if chunks else np.empty((0, 2), dtype=np.int64)


def build_visibility_graph(ts: TimeSeries, method: str = QUADRATIC) -> VisibilityGraph:
    """Natural visibility graph of ``ts``.

    ``quadratic`` scans each row left to right, keeping the running maximum
    slope seen from the source sample; ``divide-and-conquer`` recurses around
    interval maxima. Both produce the same edge set.
    """
    if len(ts) < 2:
        raise DomainError(f"visibility graph needs at least 2 samples, got {len(ts)}")
    if method == QUADRATIC:
        edges = _visible_quadratic(ts.values)
    elif method == DIVIDE_AND_CONQUER:
        edges = _visible_divide_and_conquer(ts.values)
    else:
        raise DomainError(f"unknown method {method!r}; choose from {METHODS}")
    return VisibilityGraph(len(ts), edges)


# --------------------------------------------------------------------------- export


def write_edge_list(g: VisibilityGraph, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for i, j in g.edges.tolist():
            fh.write(f"{i} {j}\n")


def read_edge_list(path: str | Path, node_count: int | None = None) -> VisibilityGraph:
    """Inverse of :func:`write_edge_list`; blank lines and ``#`` comments are ignored."""
    pairs = []
    for line_no, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if len(parts) != 2:
                raise ValueError
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"{path}: line {line_no}: expected 'i j', got {line!r}") from None
    if not pairs and node_count is None:
        raise ParseError(f"{path}: empty edge list")
    return VisibilityGraph.from_edges(pairs, node_count)


def write_dot(g: VisibilityGraph, path: str | Path, name: str = "visibility") -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        fh.write(f"graph {name} {{\n")
        for v in range(g.node_count):
            fh.write(f"  {v};\n")
        for i, j in g.edges.tolist():
            fh.write(f"  {i} -- {j};\n")
        fh.write("}\n")
