"""Maximal clique enumeration.

The maximal cliques of a graph are the simplices of its clique complex.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError
from .visibility import VisibilityGraph

BRUTE_FORCE_LIMIT = 20


@dataclass(frozen=True, eq=False)
class CliqueComplex:
    """Maximal cliques as sorted vertex tuples, in lexicographic order."""

    simplices: tuple[tuple[int, ...], ...]
    node_count: int

    @classmethod
    def from_cliques(cls, cliques: Iterable[Iterable[int]], node_count: int) -> "CliqueComplex":
        canon = sorted({tuple(sorted(c)) for c in cliques})
        return cls(tuple(canon), int(node_count))

    @cached_property
    def dims(self) -> np.ndarray:
        return np.fromiter((len(s) - 1 for s in self.simplices), dtype=np.int64, count=len(self.simplices))

    @property
    def q_max(self) -> int:
        return int(self.dims.max()) if self.simplices else -1

    def __len__(self) -> int:
        return len(self.simplices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CliqueComplex):
            return NotImplemented
        return self.node_count == other.node_count and self.simplices == other.simplices

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"CliqueComplex(simplices={len(self)}, q_max={self.q_max}, node_count={self.node_count})"


def degeneracy_order(adj: Sequence[frozenset[int]]) -> list[int]:
    """Repeatedly remove a minimum-degree vertex (lowest index on ties)."""
    deg = [len(a) for a in adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * len(adj)
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        for u in adj[v]:
            if not removed[u]:
                deg[u] -= 1
                heapq.heappush(heap, (deg[u], u))
    return order


def _expand(r: list[int], p: set[int], x: set[int], adj: Sequence[frozenset[int]], out: list[tuple[int, ...]]) -> None:
    if not p:
        if not x:
            out.append(tuple(sorted(r)))
        return
    # pivot: most neighbours inside P, lowest index on ties
    pivot = min(p | x, key=lambda u: (-len(p & adj[u]), u))
    for v in sorted(p - adj[pivot]):
        nv = adj[v]
        r.append(v)
        _expand(r, p & nv, x & nv, adj, out)
        r.pop()
        p.discard(v)
        x.add(v)


def maximal_cliques(g: VisibilityGraph) -> CliqueComplex:
    """All maximal cliques via pivoting Bron-Kerbosch over a degeneracy ordering.

    Isolated vertices come out as 0-simplices.
    """
    adj = g.adjacency_sets
    position = {v: k for k, v in enumerate(degeneracy_order(adj))}
    out: list[tuple[int, ...]] = []
    for v in sorted(position, key=position.get):
        later = {u for u in adj[v] if position[u] > position[v]}
        earlier = {u for u in adj[v] if position[u] < position[v]}
        _expand([v], later, earlier, adj, out)
    return CliqueComplex.from_cliques(out, g.node_count)


def brute_force_cliques(g: VisibilityGraph) -> CliqueComplex:
    """Exhaustive subset enumeration, used as a test oracle only."""
    n = g.node_count
    if n > BRUTE_FORCE_LIMIT:
        raise DomainError(f"brute-force enumeration refused for {n} > {BRUTE_FORCE_LIMIT} nodes")
    adj = g.adjacency_sets
    cliques = []
    for mask in range(1, 1 << n):
        members = [v for v in range(n) if mask >> v & 1]
        if any(b not in adj[a] for a, b in combinations(members, 2)):
            continue
        extendable = any(
            not mask >> w & 1 and all(w in adj[m] for m in members) for w in range(n)
        )
        if not extendable:
            cliques.append(members)
    return CliqueComplex.from_cliques(cliques, n)


def write_cliques(complex_: CliqueComplex, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for s in complex_.simplices:
            fh.write(" ".join(map(str, s)) + "\n")


def read_cliques(path: str | Path, node_count: int | None = None) -> CliqueComplex:
    simplices = [
        tuple(int(tok) for tok in line.split())
        for line in Path(path).read_text(encoding="utf-8").splitlines()
        if line.strip()
    ]
    if node_count is None:
        node_count = max((max(s) for s in simplices), default=-1) + 1
    return CliqueComplex.from_cliques(simplices, node_count)
