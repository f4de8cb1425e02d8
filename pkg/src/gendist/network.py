"""Networks of large embeddings and their distances.

A network has red edges between isomorphic vertices (cost 0) and blue edges
between a vertex and a large subalgebra of it (cost 1).  Distances are
minimum blue-lengths, found by 0-1 breadth-first search.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

from .algebra import FiniteAlgebra, enumerate_subalgebras, fa_isomorphic, is_large_subalgebra
from .census import HARD_LIMIT, MonounaryCensus
from .errors import ContractViolation
from .monounary import MonoAlg, canonical_code

__all__ = [
    "Network",
    "build_subalgebra_network",
    "enumerate_monounary",
    "enumerate_monounary_tables",
    "build_monounary_network",
    "network_distance",
    "component_diameter",
    "export_dot",
    "census",
    "oracle_distance",
    "TABLE_LIMIT",
]

TABLE_LIMIT = 6
"""Largest size for which ``enumerate_monounary_tables`` scans all n^n tables."""


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Network:
    """Vertices ``0..len(vertices)-1`` with undirected red and blue edges (no loops)."""

    vertices: tuple
    red_edges: frozenset[tuple[int, int]]
    blue_edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        n = len(self.vertices)
        for u, v in self.red_edges | self.blue_edges:
            if not (0 <= u < v < n):
                raise ContractViolation(f"edge ({u}, {v}) is not a normalized pair of vertices")

    def __len__(self) -> int:
        return len(self.vertices)

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """``adjacency[u]`` lists ``(v, weight)``; a doubly linked pair keeps weight 0."""
        best: list[dict[int, int]] = [{} for _ in self.vertices]
        for edges, w in ((self.blue_edges, 1), (self.red_edges, 0)):
            for u, v in edges:
                best[u][v] = min(w, best[u].get(v, w))
                best[v][u] = best[u][v]
        return tuple(tuple(sorted(d.items())) for d in best)

    def iso_classes(self) -> list[int]:
        """Class tag per vertex: red components numbered by first vertex."""
        tag = [-1] * len(self)
        red_adj: list[list[int]] = [[] for _ in self.vertices]
        for u, v in self.red_edges:
            red_adj[u].append(v)
            red_adj[v].append(u)
        k = 0
        for s in range(len(self)):
            if tag[s] >= 0:
                continue
            tag[s] = k
            stack = [s]
            while stack:
                x = stack.pop()
                for y in red_adj[x]:
                    if tag[y] < 0:
                        tag[y] = k
                        stack.append(y)
            k += 1
        return tag


# --------------------------------------------------------------------------
# construction


def build_subalgebra_network(fa: FiniteAlgebra) -> Network:
    """The network over all subalgebras of ``fa``, one vertex per subuniverse.

    A blue edge joins ``u`` and ``v`` when one is a large subalgebra of the
    other, or when a copy ``w`` of one (``w`` isomorphic to it) is a proper
    large subalgebra of the other.
    """
    subs = enumerate_subalgebras(fa)
    n = len(subs)
    red = {(i, j) for i in range(n) for j in range(i + 1, n) if fa_isomorphic(subs[i], subs[j])}
    iso = [[i == j or _pair(i, j) in red for j in range(n)] for i in range(n)]
    large_in = [[False] * n for _ in range(n)]  # large_in[w][v]: w a proper large subalgebra of v
    for w in range(n):
        for v in range(n):
            if w != v and subs[w].elements < subs[v].elements:
                large_in[w][v] = is_large_subalgebra(subs[w], subs[v])
    blue = set()
    for u in range(n):
        for v in range(n):
            if u != v and any(iso[u][w] and large_in[w][v] for w in range(n)):
                blue.add(_pair(u, v))
    labels = tuple(s.describe() for s in subs)
    return Network(tuple(subs), frozenset(red), frozenset(blue), labels)


@lru_cache(maxsize=4)
def census(cap: int) -> MonounaryCensus:
    """Shared census of monounary classes up to ``cap`` elements."""
    return MonounaryCensus(cap)


def enumerate_monounary(cap: int) -> list[MonoAlg]:
    """One representative per isomorphism class with at most ``cap`` elements, by size."""
    if cap < 1:
        raise ContractViolation("cap must be >= 1")
    if cap > HARD_LIMIT:
        raise ContractViolation(f"cap {cap} exceeds the hard limit of {HARD_LIMIT} elements")
    c = census(cap)
    return [c.algebra(v) for v in range(len(c))]


def enumerate_monounary_tables(cap: int) -> list[MonoAlg]:
    """Same classes as ``enumerate_monounary``, by scanning every n^n table.

    Representatives are the first table of each class in lexicographic order.
    Kept as an independent cross-check of the census.
    """
    if cap < 1:
        raise ContractViolation("cap must be >= 1")
    if cap > TABLE_LIMIT:
        raise ContractViolation(f"table scan limited to {TABLE_LIMIT} elements")
    out: list[MonoAlg] = []
    for n in range(1, cap + 1):
        seen: set[bytes] = set()
        for f in product(range(n), repeat=n):
            a = MonoAlg(f)
            code = canonical_code(a).data
            if code not in seen:
                seen.add(code)
                out.append(a)
    return out


def build_monounary_network(cap: int) -> Network:
    """Network over the monounary classes with at most ``cap`` elements.

    Blue edges come from the census moves (removing a tail that ends in a
    source, or removing a one-generated component); red edges are absent
    since each class is a single vertex.
    """
    vertices = enumerate_monounary(cap)
    c = census(cap)
    blue = set()
    for u in range(len(c)):
        for v in c.neighbors(u):
            if u < v:
                blue.add((u, int(v)))
    labels = tuple(canonical_code(a).data.decode() for a in vertices)
    return Network(tuple(vertices), frozenset(), frozenset(blue), labels)


def oracle_distance(a: MonoAlg, b: MonoAlg, cap: int | None = None) -> float:
    """Blue-length distance in the census network of classes up to ``cap``.

    The default cap is ``|a| + |b|`` (at least 1), clipped to the hard limit.
    """
    if cap is None:
        cap = max(1, min(a.n + b.n, HARD_LIMIT))
    if max(a.n, b.n) > cap:
        raise ContractViolation(f"cap {cap} is smaller than the inputs")
    if cap > HARD_LIMIT:
        raise ContractViolation(f"cap {cap} exceeds the hard limit of {HARD_LIMIT} elements")
    c = census(cap)
    d = int(c.distances_from(c.vertex_of(a))[c.vertex_of(b)])
    return math.inf if d < 0 else d


# --------------------------------------------------------------------------
# distances


def _zero_one_bfs(net: Network, source: int) -> list[float]:
    adj = net.adjacency
    dist = [math.inf] * len(net)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v, w in adj[u]:
            nd = du + w
            if nd < dist[v]:
                dist[v] = nd
                if w:
                    queue.append(v)
                else:
                    queue.appendleft(v)
    return dist


def _check_vertex(net: Network, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < len(net):
        raise ContractViolation(f"unknown vertex {v!r}")


def network_distance(net: Network, u: int, v: int) -> float:
    """Minimum blue-length of a path from ``u`` to ``v``; ``inf`` if none."""
    _check_vertex(net, u)
    _check_vertex(net, v)
    return _zero_one_bfs(net, u)[v]


def component_diameter(net: Network, start: int) -> float:
    """Largest distance between two vertices of the component of ``start``."""
    _check_vertex(net, start)
    comp = [v for v, d in enumerate(_zero_one_bfs(net, start)) if d < math.inf]
    best = 0
    for u in comp:
        dist = _zero_one_bfs(net, u)
        best = max(best, max(dist[v] for v in comp))
    return best


def export_dot(net: Network, name: str = "network") -> str:
    """Graphviz text; red edges dashed, blue edges solid, labels ``size tag``."""
    tags = net.iso_classes()
    lines = [f"graph {name} {{"]
    for v, x in enumerate(net.vertices):
        size = len(x)
        extra = net.labels[v] if v < len(net.labels) else ""
        label = f"{size} #{tags[v]}" + (f"\\n{extra}" if extra else "")
        label = label.replace('"', '\\"')
        lines.append(f'  v{v} [label="{label}"];')
    for u, v in sorted(net.red_edges):
        lines.append(f"  v{u} -- v{v} [style=dashed,color=red];")
    for u, v in sorted(net.blue_edges):
        lines.append(f"  v{u} -- v{v} [color=blue];")
    lines.append("}")
    return "\n".join(lines) + "\n"
