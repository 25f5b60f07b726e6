"""Exact k-dissimilar-paths solver and a brute-force reference."""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .graph import Graph, Path, PathSet
from .shortest import DEFAULT_KSP_BUDGET, KspIterator
from .similarity import Measure, make_weighted_jaccard
from .subsets import DEFAULT_SUBSET_BUDGET, SubsetBudgetExceeded, SubsetEnumerator

EPS = 1e-9


@dataclass(frozen=True)
class Query:
    source: int
    target: int
    k: int = 3
    theta: float = 0.5

    def __post_init__(self):
        if self.source == self.target:
            raise ValueError("source and target must differ")
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0 < self.theta <= 1:
            raise ValueError("theta must lie in (0, 1]")

    def check(self, g: Graph) -> None:
        for x in (self.source, self.target):
            if not 0 <= x < g.node_count:
                raise IndexError(f"node {x} out of range [0, {g.node_count})")


@dataclass(frozen=True)
class SolverOptions:
    ksp_budget: int = DEFAULT_KSP_BUDGET
    subset_budget: int = DEFAULT_SUBSET_BUDGET
    wall_time_limit: float | None = None  # seconds

    def __post_init__(self):
        if self.ksp_budget < 1 or self.subset_budget < 1:
            raise ValueError("budgets must be >= 1")


@dataclass
class ResultSet:
    """Solver output.

    ``proven_optimal`` means the run was not cut short by a budget or the
    time limit.  For the exact solver that certifies optimality; for the
    heuristics it certifies the answer is the heuristic's own full answer.
    """

    paths: PathSet
    k: int
    proven_optimal: bool
    stats: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return len(self.paths) == self.k

    @property
    def collective_length(self) -> float:
        return self.paths.collective_length

    def __len__(self) -> int:
        return len(self.paths)


def signature(paths: Sequence[Path]):
    return tuple(sorted(p.sort_key() for p in paths))


def better(cand: Sequence[Path], cand_len: float, best: Sequence[Path], best_len: float) -> bool:
    """Larger cardinality wins, then smaller collective length, then signature."""
    if len(cand) != len(best):
        return len(cand) > len(best)
    if cand_len < best_len - EPS:
        return True
    if cand_len > best_len + EPS:
        return False
    return signature(cand) < signature(best)


def _default_measure(g: Graph, measure: Measure | None) -> Measure:
    return measure if measure is not None else make_weighted_jaccard(g)


def run_incremental(
    next_path: Callable[[], Path | None],
    k: int,
    theta: float,
    measure: Measure,
    opts: SolverOptions,
    use_bound: bool = True,
    truncated: Callable[[], str | None] = lambda: None,
) -> tuple[list[Path], bool, dict]:
    """Shared loop of the exact solver and of SVP-D.

    Consumes a nondecreasing-length path stream, feeds each path to the subset
    enumerator and keeps the best compatible subset.  Stops once
    ``len(p) + (sum of the first k-1 stream lengths)`` exceeds the incumbent's
    collective length (with a full incumbent), or when the stream ends.
    ``truncated`` reports why a ``None`` from the stream was not a true end.
    """
    t0 = time.perf_counter()
    deadline = None if opts.wall_time_limit is None else t0 + opts.wall_time_limit
    enum = SubsetEnumerator(k, theta, measure, budget=opts.subset_budget)
    best: list[Path] = []
    best_len = 0.0
    lk1 = 0.0
    lk1_trace = []
    stats = {"paths_generated": 0, "subsets_emitted": 0, "duplicates_skipped": 0}
    reason = "exhausted"
    seen: set[tuple[int, ...]] = set()

    p = next_path()
    while p is not None:
        if use_bound and len(best) == k and p.length + lk1 > best_len + EPS:
            reason = "bound"
            break
        stats["paths_generated"] += 1
        if p.edges in seen:
            stats["duplicates_skipped"] += 1
        else:
            seen.add(p.edges)
            try:
                em = enum.add_path(p)
            except SubsetBudgetExceeded:
                reason = "subset_budget"
                break
            if len(enum.paths) < k:
                lk1 += p.length
            lk1_trace.append(lk1)
            stats["subsets_emitted"] += len(em)
            if len(em):
                top = int(em.sizes.max())
                if top >= len(best):
                    sel = np.nonzero(em.sizes == top)[0]
                    lens = em.lengths[sel]
                    lo = lens.min()
                    for i in sel[lens <= lo + EPS]:
                        cand = [enum.paths[j] for j in em.members(int(i))]
                        cand_len = math.fsum(c.length for c in cand)
                        if not best or better(cand, cand_len, best, best_len):
                            best, best_len = cand, cand_len
        if deadline is not None and time.perf_counter() > deadline:
            reason = "timeout"
            break
        p = next_path()
    else:
        why = truncated()
        if why:
            reason = why

    stats["lk1"] = lk1
    stats["lk1_trace"] = lk1_trace
    stats["termination"] = reason
    stats["wall_time"] = time.perf_counter() - t0
    return best, reason in ("bound", "exhausted"), stats


def solve_exact(
    g: Graph,
    q: Query,
    opts: SolverOptions | None = None,
    measure: Measure | None = None,
    use_bound: bool = True,
) -> ResultSet:
    """Maximum-cardinality, minimum-collective-length set of at most ``k``
    pairwise dissimilar s->t paths, over all simple paths.

    ``use_bound=False`` disables the early-termination test and runs the path
    stream to exhaustion (or budget); meant for checking the bound.
    """
    q.check(g)
    opts = opts or SolverOptions()
    measure = _default_measure(g, measure)
    it = KspIterator(g, q.source, q.target, budget=opts.ksp_budget)
    paths, proven, stats = run_incremental(
        it.next, q.k, q.theta, measure, opts, use_bound=use_bound,
        truncated=lambda: "ksp_budget" if it.budget_hit else None,
    )
    return ResultSet(PathSet.of(paths), q.k, proven, stats)


class OracleInapplicable(RuntimeError):
    pass


def all_simple_paths(g: Graph, s: int, t: int, cap: int | None = None) -> list[Path]:
    """Every simple s->t path by depth-first search, sorted by
    (length, node sequence, edge sequence)."""
    out: list[Path] = []
    head, w = g._head, g._w
    adj = [g.out_edges(u).tolist() for u in range(g.node_count)]
    on_path = [False] * g.node_count
    edges: list[int] = []
    nodes: list[int] = [s]
    on_path[s] = True

    def dfs(u: int, length: float) -> None:
        if u == t:
            out.append(Path(tuple(edges), tuple(nodes), length))
            if cap is not None and len(out) > cap:
                raise OracleInapplicable(f"more than {cap} simple paths")
            return
        for e in adj[u]:
            v = head[e]
            if on_path[v]:
                continue
            on_path[v] = True
            edges.append(e)
            nodes.append(v)
            dfs(v, length + w[e])
            nodes.pop()
            edges.pop()
            on_path[v] = False

    dfs(s, 0.0)
    out.sort(key=Path.sort_key)
    return out


def brute_force_oracle(
    g: Graph,
    q: Query,
    path_cap: int = 5000,
    measure: Measure | None = None,
) -> ResultSet:
    """Reference answer from full path enumeration.

    Tries cardinalities k, k-1, ... and, for the first one admitting a
    pairwise-compatible subset, searches all such subsets of the sorted path
    list; a branch is cut only when even the shortest remaining completion is
    strictly longer than the incumbent.
    """
    q.check(g)
    t0 = time.perf_counter()
    measure = _default_measure(g, measure)
    paths = all_simple_paths(g, q.source, q.target, cap=path_cap)
    n = len(paths)
    lengths = [p.length for p in paths]
    compat = np.ones((n, n), dtype=bool)
    for i, j in itertools.combinations(range(n), 2):
        compat[i, j] = compat[j, i] = measure(paths[i], paths[j]) < q.theta

    best: list[Path] = []
    best_len = math.inf
    for size in range(min(q.k, n), 0, -1):

        def search(chosen: list[int], start: int, total: float) -> None:
            nonlocal best, best_len
            need = size - len(chosen)
            if need == 0:
                cand = [paths[i] for i in chosen]
                cand_len = math.fsum(lengths[i] for i in chosen)
                if not best or better(cand, cand_len, best, best_len):
                    best, best_len = cand, cand_len
                return
            for i in range(start, n - need + 1):
                if best and total + need * lengths[i] > best_len + EPS:
                    break
                if all(compat[i, j] for j in chosen):
                    chosen.append(i)
                    search(chosen, i + 1, total + lengths[i])
                    chosen.pop()

        search([], 0, 0.0)
        if best:
            break
    stats = {"paths_generated": n, "wall_time": time.perf_counter() - t0}
    return ResultSet(PathSet.of(best), q.k, True, stats)
