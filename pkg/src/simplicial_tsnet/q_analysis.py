"""Q-analysis of a clique complex: structure vectors, node dimensions, entropy.

Levels are indexed ``q = 0..q_max``. Per-node participation ``Q_q^i`` counts
simplices of dimension *exactly* ``q`` containing node ``i``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .cliques import CliqueComplex
from .errors import DomainError, InvariantViolation


class DisjointSet:
    """Array-backed union-find with path halving and union by size."""

    def __init__(self, size: int) -> None:
        self.parent = list(range(size))
        self.size = [1] * size
        self.components = size

    def find(self, a: int) -> int:
        parent = self.parent
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True


def _check_level(complex_: CliqueComplex, q: int) -> None:
    if not len(complex_):
        raise DomainError("empty complex")
    if not 0 <= q <= complex_.q_max:
        raise DomainError(f"q must lie in 0..{complex_.q_max}, got {q}")


def q_components(complex_: CliqueComplex, q: int) -> tuple[int, dict[int, int]]:
    """Number of q-connected components among simplices of dimension >= q.

    Two such simplices are q-near when they share at least ``q + 1``
    vertices. Returns the count and a map from simplex position (in
    ``complex_.simplices``) to a component label ``0..count-1``, labels
    assigned in order of first appearance. Lower-dimensional simplices get
    no label.
    """
    _check_level(complex_, q)
    members = [k for k, s in enumerate(complex_.simplices) if len(s) - 1 >= q]
    local = {k: pos for pos, k in enumerate(members)}
    dsu = DisjointSet(len(members))

    # vertex -> qualifying simplices, so only simplices with a common vertex are compared
    incident: dict[int, list[int]] = {}
    for k in members:
        for v in complex_.simplices[k]:
            incident.setdefault(v, []).append(k)

    for k in members:
        shared = Counter()
        for v in complex_.simplices[k]:
            for other in incident[v]:
                if other > k:
                    shared[other] += 1
        for other, count in shared.items():
            if count >= q + 1:
                dsu.union(local[k], local[other])

    labels: dict[int, int] = {}
    root_label: dict[int, int] = {}
    for k in members:
        root = dsu.find(local[k])
        labels[k] = root_label.setdefault(root, len(root_label))
    return dsu.components, labels


@dataclass(frozen=True)
class StructureVectors:
    Q: tuple[int, ...]
    Ns: tuple[int, ...]
    f: tuple[int, ...]
    Qhat: tuple[float, ...]

    @property
    def q_max(self) -> int:
        return len(self.Q) - 1


def structure_vectors(complex_: CliqueComplex) -> StructureVectors:
    """First, second and third structure vectors plus the exact-dimension counts ``f``."""
    if not len(complex_):
        raise DomainError("empty complex")
    q_max = complex_.q_max
    f = np.bincount(complex_.dims, minlength=q_max + 1)
    ns = np.cumsum(f[::-1])[::-1]
    Q = [q_components(complex_, q)[0] for q in range(q_max + 1)]
    qhat = [1.0 - Q[q] / int(ns[q]) if ns[q] else 0.0 for q in range(q_max + 1)]
    return StructureVectors(
        Q=tuple(Q),
        Ns=tuple(int(x) for x in ns),
        f=tuple(int(x) for x in f),
        Qhat=tuple(qhat),
    )


@dataclass(frozen=True, eq=False)
class NodeParticipation:
    """``counts[i, q]`` is the number of q-dimensional simplices containing node ``i``."""

    counts: np.ndarray

    @property
    def dims(self) -> np.ndarray:
        """Topological dimension of every node: its total number of maximal cliques."""
        return self.counts.sum(axis=1)

    @property
    def max_dim(self) -> int:
        d = self.dims
        return int(d.max()) if d.size else 0


def node_dimensions(complex_: CliqueComplex) -> NodeParticipation:
    if not len(complex_):
        raise DomainError("empty complex")
    counts = np.zeros((complex_.node_count, complex_.q_max + 1), dtype=np.int64)
    for s in complex_.simplices:
        counts[list(s), len(s) - 1] += 1
    counts.setflags(write=False)
    return NodeParticipation(counts)


def _normalized_entropy(weights: np.ndarray) -> float:
    w = weights[weights > 0]
    if w.size <= 1:
        return 0.0
    if (w == w[0]).all():
        return 1.0
    p = w / w.sum()
    h = -float(np.sum(p * np.log(p)))
    return min(max(h / math.log(w.size), 0.0), 1.0)


def topological_entropy(complex_: CliqueComplex, q: int, participation: NodeParticipation | None = None) -> float:
    """Shannon entropy of node participation in q-simplices, normalised by ``log N_q``.

    ``N_q`` is the number of nodes in at least one q-simplex. Returns 0 when
    ``N_q <= 1``. The result is clamped to [0, 1] against rounding.
    """
    _check_level(complex_, q)
    part = participation if participation is not None else node_dimensions(complex_)
    return _normalized_entropy(part.counts[:, q])


def entropy_vector(complex_: CliqueComplex, participation: NodeParticipation | None = None) -> tuple[float, ...]:
    part = participation if participation is not None else node_dimensions(complex_)
    return tuple(topological_entropy(complex_, q, part) for q in range(complex_.q_max + 1))


def covered_edges(complex_: CliqueComplex) -> int:
    """Distinct vertex pairs inside some simplex; equals the graph's edge count."""
    pairs = set()
    for s in complex_.simplices:
        for a in range(len(s)):
            for b in range(a + 1, len(s)):
                pairs.add((s[a], s[b]))
    return len(pairs)


@dataclass(frozen=True, eq=False)
class Analysis:
    """All six characterisers of one complex."""

    vectors: StructureVectors
    entropy: tuple[float, ...]
    participation: NodeParticipation
    q_max: int
    simplex_count: int
    node_count: int
    edge_count: int

    @property
    def node_dims(self) -> np.ndarray:
        return self.participation.dims

    @property
    def max_dim(self) -> int:
        return self.participation.max_dim


def verify_identities(a: Analysis, graph_components: int | None = None) -> None:
    """Raise :class:`InvariantViolation` unless the bookkeeping identities hold."""
    v = a.vectors
    suffix = np.cumsum(np.asarray(v.f)[::-1])[::-1].tolist()
    problems = []
    if list(v.Ns) != suffix:
        problems.append(f"Ns {v.Ns} is not the suffix sum of f {v.f}")
    if v.Q[-1] != v.f[-1]:
        problems.append(f"Q[q_max]={v.Q[-1]} differs from f[q_max]={v.f[-1]}")
    if v.Qhat[-1] != 0.0:
        problems.append(f"Qhat[q_max]={v.Qhat[-1]} is not 0")
    lhs = int(a.node_dims.sum())
    rhs = sum((q + 1) * fq for q, fq in enumerate(v.f))
    if lhs != rhs:
        problems.append(f"sum of node dimensions {lhs} != sum (q+1) f[q] = {rhs}")
    for q in range(a.q_max + 1):
        if v.Ns[q] and not 1 <= v.Q[q] <= v.Ns[q]:
            problems.append(f"Q[{q}]={v.Q[q]} outside [1, Ns[{q}]={v.Ns[q]}]")
    if graph_components is not None and v.Q[0] != graph_components:
        problems.append(f"Q[0]={v.Q[0]} but the graph has {graph_components} components")
    if any(not 0.0 <= s <= 1.0 for s in a.entropy):
        problems.append(f"entropy outside [0, 1]: {a.entropy}")
    if problems:
        raise InvariantViolation("; ".join(problems))


def analyze(complex_: CliqueComplex, graph_components: int | None = None, check: bool = True) -> Analysis:
    """Compute every characteriser and, unless ``check`` is false, verify the identities.

    ``graph_components`` (from a BFS over the source graph) enables the
    ``Q[0]`` cross-check.
    """
    if not len(complex_):
        raise DomainError("empty complex")
    part = node_dimensions(complex_)
    result = Analysis(
        vectors=structure_vectors(complex_),
        entropy=entropy_vector(complex_, part),
        participation=part,
        q_max=complex_.q_max,
        simplex_count=len(complex_),
        node_count=complex_.node_count,
        edge_count=covered_edges(complex_),
    )
    if check:
        verify_identities(result, graph_components)
    return result
