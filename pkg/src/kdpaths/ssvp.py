"""Simple single-via paths in length order, and the SVP-D / SSVP-D+ heuristics."""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass

import numpy as np

from .exact import Query, ResultSet, SolverOptions, _default_measure, run_incremental
from .graph import Graph, Path, PathSet, Walk, concat
from .shortest import FORWARD, REVERSE, dijkstra, extract_path
from .similarity import Measure


@dataclass(frozen=True)
class SsvpEntry:
    via: int
    path: Path | Walk | None  # None until materialised at pop time
    length: float
    repaired: bool


class SsvpIterator:
    """Yields the shortest path, then the simple single-via path of every node
    off it, in nondecreasing length (ties by via-node id).

    A node's single-via path joins the tree paths s->n and n->t.  When that
    join revisits a node, two repairs are tried: keep s->n and route n->t
    avoiding every other node of s->n (s included), or keep n->t and route
    s->n avoiding every other node of n->t (t included).  The shorter one
    (ties: smaller node sequence) goes back into the queue, which keeps the
    output globally sorted because a repair is never shorter than the join.
    Nodes with no feasible repair are dropped.
    """

    def __init__(self, g: Graph, source: int, target: int):
        if source == target:
            raise ValueError("source and target must differ")
        self.graph = g
        self.source = source
        self.target = target
        self.fwd = None
        self.rev = None
        self.shortest: Path | None = None
        self.emitted_vias: list[int | None] = []
        self.repairs = 0
        self.dropped = 0
        self._queue: list[tuple[float, int, bool, Path | None]] = []
        self._started = False

    def __iter__(self):
        return self

    def __next__(self) -> Path:
        p = self.next()
        if p is None:
            raise StopIteration
        return p

    def _setup(self) -> Path | None:
        g, s, t = self.graph, self.source, self.target
        self.fwd = dijkstra(g, s, FORWARD)
        self.rev = dijkstra(g, t, REVERSE)
        sp = extract_path(self.fwd, t)
        if sp is None:
            return None
        self.shortest = sp
        key = self.fwd.dist + self.rev.dist
        ok = np.isfinite(key)
        ok[list(sp.nodes)] = False
        vias = np.nonzero(ok)[0]
        self._queue = [(float(key[n]), int(n), False, None) for n in vias]
        heapq.heapify(self._queue)
        self.emitted_vias.append(None)
        return sp

    def _repair(self, n: int, head: Path, tail: Path) -> Path | None:
        g, s, t = self.graph, self.source, self.target
        cands = []
        t1 = dijkstra(g, n, FORWARD, banned_nodes=head.nodes[:-1], stop=t)
        rest = extract_path(t1, t)
        if rest is not None:
            cands.append(concat(head, rest))
        t2 = dijkstra(g, n, REVERSE, banned_nodes=tail.nodes[1:], stop=s)
        front = extract_path(t2, s)
        if front is not None:
            cands.append(concat(front, tail))
        if not cands:
            return None
        return min(cands, key=lambda p: (p.length, p.nodes, p.edges))

    def pending(self) -> list[SsvpEntry]:
        """Queue contents in pop order (unmaterialised joins have ``path=None``)."""
        return [SsvpEntry(n, path, length, repaired)
                for length, n, repaired, path in sorted(self._queue, key=lambda e: e[:2])]

    def next(self) -> Path | None:
        if not self._started:
            self._started = True
            return self._setup()
        while self._queue:
            length, n, repaired, path = heapq.heappop(self._queue)
            if repaired:
                self.emitted_vias.append(n)
                return path
            head = extract_path(self.fwd, n)
            tail = extract_path(self.rev, n)
            joined = concat(head, tail)
            if isinstance(joined, Path):
                self.emitted_vias.append(n)
                return joined
            fixed = self._repair(n, head, tail)
            if fixed is None:
                self.dropped += 1
                continue
            self.repairs += 1
            heapq.heappush(self._queue, (fixed.length, n, True, fixed))
        return None


def ssvp_next(it: SsvpIterator) -> Path | None:
    return it.next()


def solve_svp_d(
    g: Graph,
    q: Query,
    opts: SolverOptions | None = None,
    measure: Measure | None = None,
) -> ResultSet:
    """Exact subset search restricted to the simple-single-via-path universe."""
    q.check(g)
    opts = opts or SolverOptions()
    measure = _default_measure(g, measure)
    it = SsvpIterator(g, q.source, q.target)
    paths, proven, stats = run_incremental(it.next, q.k, q.theta, measure, opts)
    stats["repairs"] = it.repairs
    return ResultSet(PathSet.of(paths), q.k, proven, stats)


def solve_ssvp_d_plus(
    g: Graph,
    q: Query,
    opts: SolverOptions | None = None,
    measure: Measure | None = None,
) -> ResultSet:
    """Greedy pass over the single-via stream: keep a path iff it is
    dissimilar to everything kept so far; stop at ``k``."""
    q.check(g)
    t0 = time.perf_counter()
    limit = opts.wall_time_limit if opts is not None else None
    deadline = None if limit is None else t0 + limit
    measure = _default_measure(g, measure)
    it = SsvpIterator(g, q.source, q.target)
    accepted: list[Path] = []
    trace: list[tuple[int | None, bool]] = []
    generated = 0
    reason = "k_reached"
    while len(accepted) < q.k:
        p = it.next()
        if p is None:
            reason = "exhausted"
            break
        generated += 1
        ok = all(measure(p, a) < q.theta for a in accepted)
        trace.append((it.emitted_vias[-1], ok))
        if ok:
            accepted.append(p)
        if deadline is not None and time.perf_counter() > deadline and len(accepted) < q.k:
            reason = "timeout"
            break
    stats = {
        "paths_generated": generated,
        "subsets_emitted": 0,
        "repairs": it.repairs,
        "trace": trace,
        "termination": reason,
        "wall_time": time.perf_counter() - t0,
    }
    return ResultSet(PathSet.of(accepted), q.k, reason != "timeout", stats)
