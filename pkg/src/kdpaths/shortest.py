"""Shortest-path trees and a lazy loopless K-shortest-paths iterator (Yen)."""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from . import kernels
from .graph import Graph, Path

FORWARD = "from-root"
REVERSE = "to-root"

DEFAULT_KSP_BUDGET = 1_000_000


@dataclass(frozen=True)
class SpTree:
    """Shortest-path tree rooted at ``root``.

    With ``direction == FORWARD`` distances are root->n, otherwise n->root.
    ``parent_edge[n]`` is the tree edge entering n (forward) or leaving n
    toward the root (reverse); -1 for the root and unreached nodes.
    """

    graph: Graph
    root: int
    direction: str
    dist: np.ndarray
    parent_edge: np.ndarray

    def reachable(self, n: int) -> bool:
        return bool(np.isfinite(self.dist[n]))

    def path(self, n: int) -> Path | None:
        return extract_path(self, n)


def dijkstra(
    g: Graph,
    root: int,
    direction: str = FORWARD,
    banned_nodes=None,
    banned_edges=None,
    stop: int = -1,
) -> SpTree:
    """Dijkstra from ``root``; parent ties go to the smallest edge id.

    If ``stop`` is given the search ends once that node is settled, so only
    nodes settled before it carry final distances.
    """
    if not 0 <= root < g.node_count:
        raise IndexError(f"root {root} out of range")
    if direction not in (FORWARD, REVERSE):
        raise ValueError(f"unknown direction {direction!r}")
    dist, parent = kernels.dijkstra(
        g, root, reverse=direction == REVERSE,
        banned_nodes=banned_nodes, banned_edges=banned_edges, stop=stop,
    )
    return SpTree(g, root, direction, dist, parent)


def extract_path(tree: SpTree, n: int) -> Path | None:
    """Tree path root->n (forward) or n->root (reverse); ``None`` if unreachable.

    The cached length is the tree distance, so it matches ``tree.dist[n]``
    bit for bit.
    """
    d = float(tree.dist[n])
    if d == float("inf"):
        return None
    g = tree.graph
    parent = tree.parent_edge
    edges = []
    nodes = [n]
    u = n
    if tree.direction == FORWARD:
        while u != tree.root:
            e = int(parent[u])
            edges.append(e)
            u = g._tail[e]
            nodes.append(u)
        edges.reverse()
        nodes.reverse()
    else:
        while u != tree.root:
            e = int(parent[u])
            edges.append(e)
            u = g._head[e]
            nodes.append(u)
    return Path(tuple(edges), tuple(nodes), d)


class KspIterator:
    """Loopless s->t paths in nondecreasing length (Yen's algorithm).

    Paths of equal length come out in lexicographic order of their node
    sequence, then of their edge-id sequence.  Spur paths are computed with a
    banned-node/banned-edge Dijkstra toward ``target`` followed by a
    lexicographic walk along tight edges, so no graph copies are made.

    ``next()`` returns ``None`` either when the path space is exhausted
    (``exhausted`` becomes True) or when ``budget`` paths have been emitted
    (``budget_hit`` becomes True).
    """

    def __init__(self, g: Graph, source: int, target: int, budget: int = DEFAULT_KSP_BUDGET):
        if source == target:
            raise ValueError("source and target must differ")
        for x in (source, target):
            if not 0 <= x < g.node_count:
                raise IndexError(f"node {x} out of range")
        if budget < 1:
            raise ValueError("budget must be >= 1")
        self.graph = g
        self.source = source
        self.target = target
        self.budget = budget
        self.emitted: list[Path] = []
        self.exhausted = False
        self.budget_hit = False
        self._heap: list[tuple] = []
        self._seen: set[tuple[int, ...]] = set()
        # root edge prefix -> edges already used to leave that prefix
        self._branches: dict[tuple[int, ...], set[int]] = {}
        self._started = False

    @property
    def emitted_count(self) -> int:
        return len(self.emitted)

    def __iter__(self):
        return self

    def __next__(self) -> Path:
        p = self.next()
        if p is None:
            raise StopIteration
        return p

    def _spur(self, spur: int, banned_nodes, banned_edges) -> list[int] | None:
        g = self.graph
        dist, _ = kernels.dijkstra(
            g, self.target, reverse=True,
            banned_nodes=banned_nodes, banned_edges=banned_edges, stop=spur,
        )
        if dist[spur] == float("inf"):
            return None
        return kernels.lex_walk(g, dist, spur, banned_edges=banned_edges)

    def _push(self, edges: tuple[int, ...]) -> None:
        if edges in self._seen:
            return
        self._seen.add(edges)
        g = self.graph
        p = g.path_from_edges(edges)
        heapq.heappush(self._heap, (p.length, p.nodes, p.edges, p))

    def _expand(self, last: Path) -> None:
        for i in range(len(last.edges)):
            root_edges = last.edges[:i]
            banned_edges = self._branches.get(root_edges, ())
            spur = self._spur(last.nodes[i], last.nodes[:i], banned_edges)
            if spur is not None:
                self._push(root_edges + tuple(spur))

    def next(self) -> Path | None:
        if self.exhausted or self.budget_hit:
            return None
        if len(self.emitted) >= self.budget:
            self.budget_hit = True
            return None
        if not self._started:
            self._started = True
            spur = self._spur(self.source, (), ())
            if spur is not None:
                self._push(tuple(spur))
        elif self.emitted:
            self._expand(self.emitted[-1])
        if not self._heap:
            self.exhausted = True
            return None
        p = heapq.heappop(self._heap)[3]
        self.emitted.append(p)
        for i in range(len(p.edges)):
            self._branches.setdefault(p.edges[:i], set()).add(p.edges[i])
        return p


def ksp_next(it: KspIterator) -> Path | None:
    return it.next()
