"""Per-language thesaurus graph and shortest-path queries."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse import csgraph

from .parser import RelationType
from .store import Dictionary

DEFAULT_ALL_PAIRS_CAP = 50_000


class NodeAbsent(LookupError):
    """A query named a word that is not a node of the graph."""


class CapExceeded(RuntimeError):
    """The graph is too large for the all-pairs precompute."""


@dataclass(frozen=True)
class Edge:
    weight: float
    labels: frozenset


@dataclass(frozen=True)
class PathResult:
    length: float
    nodes: tuple


def default_weights() -> dict[RelationType, float]:
    return dict.fromkeys(RelationType, 1.0)


class ThesaurusGraph:
    """Undirected weighted graph over the words of one language.

    ``edges`` maps a sorted ``(a, b)`` pair to its :class:`Edge`. Neighbour
    lists are kept sorted so every traversal is deterministic.
    """

    def __init__(self, language: str, nodes: Iterable[str], edges: Mapping[tuple, Edge]):
        self.language = language
        self.nodes = frozenset(nodes)
        self.edges = dict(sorted(edges.items()))
        adj: dict[str, dict[str, float]] = {n: {} for n in sorted(self.nodes)}
        for (a, b), e in self.edges.items():
            if a == b or a not in adj or b not in adj:
                raise ValueError(f"bad edge {a!r}-{b!r}")
            adj[a][b] = e.weight
            adj[b][a] = e.weight
        self.adj = {n: dict(sorted(nb.items())) for n, nb in adj.items()}

    def __contains__(self, node):
        return node in self.nodes

    def __len__(self):
        return len(self.nodes)

    def __eq__(self, other):
        if not isinstance(other, ThesaurusGraph):
            return NotImplemented
        return (self.language, self.nodes, self.edges) == (other.language, other.nodes, other.edges)

    def __repr__(self):
        return f"ThesaurusGraph({self.language!r}, {len(self.nodes)} nodes, {len(self.edges)} edges)"

    def edge(self, a: str, b: str) -> Optional[Edge]:
        return self.edges.get((a, b) if a <= b else (b, a))

    def to_tsv(self) -> str:
        """Edge list with header ``node_a node_b weight labels``; labels joined by ``|``."""
        order = {rt: i for i, rt in enumerate(RelationType)}
        lines = ["node_a\tnode_b\tweight\tlabels"]
        for (a, b), e in self.edges.items():
            labels = "|".join(rt.value for rt in sorted(e.labels, key=order.__getitem__))
            lines.append(f"{a}\t{b}\t{e.weight!r}\t{labels}")
        return "\n".join(lines) + "\n"


def build_graph(dictionary: Dictionary, language: str,
                weights: Optional[Mapping[RelationType, float]] = None) -> ThesaurusGraph:
    """Build the thesaurus graph of ``language`` from the dictionary's relations.

    Every headword of the language becomes a node, and so does every relation
    target, page or no page. A pair linked by several relation types gets one
    edge whose weight is the smallest configured weight among them.
    """
    config = default_weights()
    if weights:
        config.update({RelationType(k): float(v) for k, v in weights.items()})
    for rt, w in config.items():
        if not (w > 0 and math.isfinite(w)):
            raise ValueError(f"weight for {rt.value} must be positive and finite, got {w}")

    nodes = set()
    labels: dict[tuple, set] = {}
    for entry in dictionary.entries:
        if entry.language != language:
            continue
        nodes.add(entry.headword)
        for m in entry.meanings:
            for rt, targets in m.relations.items():
                for t in targets:
                    nodes.add(t)
                    if t == entry.headword:
                        continue
                    pair = (entry.headword, t) if entry.headword < t else (t, entry.headword)
                    labels.setdefault(pair, set()).add(rt)

    edges = {pair: Edge(min(config[rt] for rt in ls), frozenset(ls)) for pair, ls in labels.items()}
    return ThesaurusGraph(language, nodes, edges)


def _dijkstra(graph: ThesaurusGraph, sources) -> dict[str, float]:
    dist: dict[str, float] = {}
    heap = [(0.0, s) for s in sorted(set(sources))]
    heapq.heapify(heap)
    while heap:
        d, u = heapq.heappop(heap)
        if u in dist:
            continue
        dist[u] = d
        for v, w in graph.adj[u].items():
            if v not in dist:
                heapq.heappush(heap, (d + w, v))
    return dist


def _require(graph: ThesaurusGraph, nodes):
    for n in nodes:
        if n not in graph.nodes:
            raise NodeAbsent(n)


def multi_source_distances(graph: ThesaurusGraph, sources: Iterable[str]) -> dict[str, float]:
    """Distance from the nearest source to every reachable node.

    Unreachable nodes are absent from the result.
    """
    sources = set(sources)
    _require(graph, sources)
    return _dijkstra(graph, sources)


def _tight(du: float, via: float) -> bool:
    return math.isclose(du, via, rel_tol=1e-12, abs_tol=1e-12)


def shortest_path(graph: ThesaurusGraph, source: str, target: str) -> Optional[PathResult]:
    """Minimum-weight path from ``source`` to ``target``, or None when unreachable.

    Among equally short paths the lexicographically smallest node sequence
    is returned. Raises :class:`NodeAbsent` for words outside the graph.
    """
    _require(graph, (source, target))
    to_target = _dijkstra(graph, [target])
    if source not in to_target:
        return None
    # Walk greedily from the source over edges that stay on a shortest path.
    nodes = [source]
    length = 0.0
    u = source
    while u != target:
        v = min(v for v, w in graph.adj[u].items() if v in to_target and _tight(to_target[u], w + to_target[v]))
        length += graph.adj[u][v]
        nodes.append(v)
        u = v
    return PathResult(length, tuple(nodes))


def connected_components(graph: ThesaurusGraph) -> dict[str, int]:
    index = sorted(graph.nodes)
    if not index:
        return {}
    _, labels = csgraph.connected_components(_csr(graph, index), directed=False)
    return dict(zip(index, labels.tolist()))


def _csr(graph: ThesaurusGraph, index: list[str]) -> csr_matrix:
    pos = {n: i for i, n in enumerate(index)}
    rows, cols, data = [], [], []
    for (a, b), e in graph.edges.items():
        if a in pos and b in pos:
            rows += [pos[a], pos[b]]
            cols += [pos[b], pos[a]]
            data += [e.weight, e.weight]
    n = len(index)
    return csr_matrix((np.asarray(data, dtype=float), (rows, cols)), shape=(n, n))


class DistanceOracle:
    """Precomputed shortest-path lengths between all node pairs.

    Distances are stored as one dense matrix per connected component;
    pairs in different components are unreachable (``inf``).
    """

    def __init__(self, graph: ThesaurusGraph):
        self.language = graph.language
        index = sorted(graph.nodes)
        full = _csr(graph, index)
        self._component = {}
        self._members: dict[int, list[str]] = {}
        self._pos = {}
        self._blocks = {}
        if not index:
            return
        _, labels = csgraph.connected_components(full, directed=False)
        rows: dict[int, list[int]] = {}
        for i, cid in enumerate(labels.tolist()):
            rows.setdefault(cid, []).append(i)
        for cid, idx in rows.items():
            names = [index[i] for i in idx]
            self._members[cid] = names
            for p, n in enumerate(names):
                self._component[n] = cid
                self._pos[n] = p
            if len(idx) == 1:
                self._blocks[cid] = np.zeros((1, 1))
            else:
                sub = full[idx][:, idx]
                self._blocks[cid] = csgraph.shortest_path(sub, method="D", directed=False)

    def __len__(self):
        return len(self._component)

    def __contains__(self, node):
        return node in self._component

    def distance(self, u: str, v: str) -> float:
        try:
            cu, cv = self._component[u], self._component[v]
        except KeyError as exc:
            raise NodeAbsent(exc.args[0]) from None
        if cu != cv:
            return math.inf
        return float(self._blocks[cu][self._pos[u], self._pos[v]])

    __call__ = distance

    def distances_from(self, u: str) -> dict[str, float]:
        """Finite distances from ``u``, same shape as :func:`multi_source_distances`."""
        if u not in self._component:
            raise NodeAbsent(u)
        cid = self._component[u]
        row = self._blocks[cid][self._pos[u]]
        return {n: float(row[i]) for i, n in enumerate(self._members[cid])}


def all_pairs_precompute(graph: ThesaurusGraph, cap: int = DEFAULT_ALL_PAIRS_CAP) -> DistanceOracle:
    if len(graph.nodes) > cap:
        raise CapExceeded(f"{len(graph.nodes)} nodes exceeds the all-pairs cap of {cap}")
    return DistanceOracle(graph)
