"""Weighted graphs built from pair matrices: percolation-threshold networks,
the minimum-spanning-tree baseline, degrees, hubs and cliques."""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .errors import ContractError, DegenerateGraphError
from .matrix import Degenerate, PairMatrix


@dataclass(frozen=True, order=True)
class Edge:
    u: str
    v: str
    weight: float

    def __post_init__(self):
        if self.u == self.v:
            raise ContractError(f"self-loop on {self.u}")
        if self.v < self.u:
            u, v = self.v, self.u
            object.__setattr__(self, "u", u)
            object.__setattr__(self, "v", v)
        if not math.isfinite(self.weight):
            raise ContractError(f"edge ({self.u}, {self.v}) has non-finite weight {self.weight}")

    @property
    def key(self) -> tuple[str, str]:
        return (self.u, self.v)


class WeightedGraph:
    """Undirected simple graph with float edge weights.

    Edges are normalized so ``u < v`` lexicographically and kept in
    lexicographic order; at most one edge per unordered pair.
    """

    def __init__(self, nodes: Iterable[str], edges: Iterable[Edge | tuple]):
        self.nodes = tuple(nodes)
        if len(set(self.nodes)) != len(self.nodes):
            raise ContractError("duplicate node")
        known = set(self.nodes)
        by_key: dict[tuple[str, str], Edge] = {}
        for e in edges:
            if not isinstance(e, Edge):
                e = Edge(*e)
            if e.u not in known or e.v not in known:
                raise ContractError(f"edge ({e.u}, {e.v}) references an unknown node")
            if e.key in by_key:
                raise ContractError(f"duplicate edge ({e.u}, {e.v})")
            by_key[e.key] = e
        self.edges = tuple(sorted(by_key.values(), key=lambda e: e.key))
        self._by_key = by_key

    def __repr__(self) -> str:
        return f"WeightedGraph({len(self.nodes)} nodes, {len(self.edges)} edges)"

    def __eq__(self, other):
        if not isinstance(other, WeightedGraph):
            return NotImplemented
        return set(self.nodes) == set(other.nodes) and self.edges == other.edges

    __hash__ = None

    def edge_keys(self) -> set[tuple[str, str]]:
        return set(self._by_key)

    def weight(self, u: str, v: str) -> float:
        return self._by_key[(u, v) if u < v else (v, u)].weight

    def total_weight(self) -> float:
        return math.fsum(e.weight for e in self.edges)

    def adjacency(self) -> dict[str, set[str]]:
        adj: dict[str, set[str]] = {n: set() for n in self.nodes}
        for e in self.edges:
            adj[e.u].add(e.v)
            adj[e.v].add(e.u)
        return adj

    def without(self, edge: Edge) -> "WeightedGraph":
        return WeightedGraph(self.nodes, [e for e in self.edges if e.key != edge.key])


class Preference(enum.Enum):
    """Which channel ranks the edges and which end of it is preferred."""

    ConvergentPreferential = ("cp", "gamma", False)
    StrengthPreferential = ("sp", "gamma", True)
    StabilityPreferential = ("s", "beta", False)
    SmallDistance = ("ud", "ud", False)

    def __init__(self, code: str, channel: str, larger_preferred: bool):
        self.code = code
        self.channel = channel
        self.larger_preferred = larger_preferred

    @classmethod
    def parse(cls, text: str) -> "Preference":
        for p in cls:
            if text.lower() in (p.code, p.name.lower()):
                return p
        raise ContractError(f"unknown preference {text!r}; expected one of cp, sp, s, ud")


@dataclass(frozen=True)
class ThresholdNetwork:
    graph: WeightedGraph
    removed: tuple[Edge, ...]
    bridge: Edge
    preference: Preference


class UnionFind:
    def __init__(self, items: Iterable[str]):
        self.parent = {x: x for x in items}
        self.size = {x: 1 for x in self.parent}
        self.components = len(self.parent)

    def find(self, x: str) -> str:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: str, y: str) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.components -= 1
        return True


def connected_components(g: WeightedGraph) -> list[list[str]]:
    """Components as sorted node lists, ordered by their smallest member."""
    adj = g.adjacency()
    seen: set[str] = set()
    comps = []
    for start in sorted(g.nodes):
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            for nb in adj[queue.popleft()]:
                if nb not in seen:
                    seen.add(nb)
                    comp.append(nb)
                    queue.append(nb)
        comps.append(sorted(comp))
    return comps


def is_connected(g: WeightedGraph) -> bool:
    return len(g.nodes) > 0 and len(connected_components(g)) == 1


def _require_connected(g: WeightedGraph) -> None:
    if not g.nodes:
        raise ContractError("graph has no nodes")
    comps = connected_components(g)
    if len(comps) > 1:
        listing = "; ".join("{" + ", ".join(c) + "}" for c in comps)
        raise DegenerateGraphError(f"graph is disconnected; components: {listing}")


def build_graph(matrix: PairMatrix, channel: str) -> WeightedGraph:
    """Complete graph over the matrix entities, minus degenerate pairs."""
    if not matrix.has_channel(channel):
        raise ContractError(f"matrix has no {channel!r} channel")
    edges = []
    for res in matrix:
        val = res.value(channel)
        if isinstance(val, Degenerate):
            continue
        edges.append(Edge(res.a, res.b, float(val)))
    if not edges:
        raise DegenerateGraphError(f"every pair is degenerate on channel {channel!r}")
    g = WeightedGraph(matrix.entities, edges)
    _require_connected(g)
    return g


def sort_edges(g: WeightedGraph, p: Preference) -> list[Edge]:
    """Most preferred first; equal weights fall back to lexicographic pair order."""
    if p.larger_preferred:
        return sorted(g.edges, key=lambda e: (-e.weight, e.u, e.v))
    return sorted(g.edges, key=lambda e: (e.weight, e.u, e.v))


def npt(g: WeightedGraph, p: Preference) -> ThresholdNetwork:
    """Network on the percolation threshold.

    Edges are dropped from the least preferred end one at a time; the first
    drop that disconnects the node set (an isolated node counts) is undone
    and the process stops there.

    Dropping edges from the tail of the ranking leaves a prefix of it, and
    connectivity of prefixes is monotone, so the stopping point is the
    shortest connected prefix. It is found by adding edges in preference
    order to a union-find until one component remains.
    """
    if not g.edges:
        raise ContractError("graph has no edges")
    _require_connected(g)
    order = sort_edges(g, p)
    uf = UnionFind(g.nodes)
    k = 0
    for k, e in enumerate(order, start=1):
        uf.union(e.u, e.v)
        if uf.components == 1:
            break
    kept = order[:k]
    return ThresholdNetwork(
        graph=WeightedGraph(g.nodes, kept),
        removed=tuple(reversed(order[k:])),
        bridge=order[k - 1],
        preference=p,
    )


def mst(g: WeightedGraph) -> WeightedGraph:
    """Kruskal; ties broken by lexicographic pair order."""
    _require_connected(g)
    uf = UnionFind(g.nodes)
    tree = []
    for e in sorted(g.edges, key=lambda e: (e.weight, e.u, e.v)):
        if uf.union(e.u, e.v):
            tree.append(e)
            if len(tree) == len(g.nodes) - 1:
                break
    return WeightedGraph(g.nodes, tree)


def degrees(g: WeightedGraph) -> tuple[dict[str, int], float]:
    deg = {n: 0 for n in g.nodes}
    for e in g.edges:
        deg[e.u] += 1
        deg[e.v] += 1
    mean = 2 * len(g.edges) / len(g.nodes) if g.nodes else 0.0
    return deg, mean


def hubs(g: WeightedGraph, k: int) -> list[str]:
    if k < 1:
        raise ContractError(f"k must be >= 1, got {k}")
    deg, _ = degrees(g)
    return sorted(deg, key=lambda n: (-deg[n], n))[:k]


def min_degree_nodes(g: WeightedGraph) -> list[str]:
    deg, _ = degrees(g)
    low = min(deg.values())
    return sorted(n for n, d in deg.items() if d == low)


def cliques(g: WeightedGraph, min_size: int = 3) -> list[tuple[str, ...]]:
    """Maximal cliques with at least ``min_size`` members.

    Bron-Kerbosch with a Tomita pivot. Each clique is a sorted tuple; the
    list runs by size descending, then lexicographically.
    """
    if min_size < 3:
        raise ContractError(f"min_size must be >= 3, got {min_size}")
    adj = g.adjacency()
    found: list[tuple[str, ...]] = []

    def expand(r: list[str], p: set[str], x: set[str]) -> None:
        if not p and not x:
            if len(r) >= min_size:
                found.append(tuple(sorted(r)))
            return
        if len(r) + len(p) < min_size:
            return
        pivot = max(p | x, key=lambda u: (len(adj[u] & p), u))
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    expand([], set(g.nodes), set())
    return sorted(found, key=lambda c: (-len(c), c))


def summarize(g: WeightedGraph, top_k: int = 3, min_clique: int = 3) -> dict:
    deg, mean = degrees(g)
    lows = min_degree_nodes(g)
    return {
        "nodes": len(g.nodes),
        "edges": len(g.edges),
        "degrees": {n: deg[n] for n in sorted(deg)},
        "mean_degree": mean,
        "hubs": hubs(g, min(top_k, len(g.nodes))),
        "min_degree_nodes": lows,
        "unique_min_degree_node": lows[0] if len(lows) == 1 else None,
        "cliques": [list(c) for c in cliques(g, min_clique)],
    }


def network_summary(net: ThresholdNetwork, top_k: int = 3, min_clique: int = 3) -> dict:
    out = {"preference": net.preference.name, "channel": net.preference.channel}
    out.update(summarize(net.graph, top_k, min_clique))
    out["bridge"] = {"u": net.bridge.u, "v": net.bridge.v, "weight": net.bridge.weight}
    out["removed_count"] = len(net.removed)
    return out
