"""Greedy baseline over the loopless K-shortest-paths stream."""

from __future__ import annotations

import time

from .exact import Query, ResultSet, SolverOptions, _default_measure
from .graph import Graph, Path, PathSet
from .shortest import KspIterator
from .similarity import Measure


def solve_greedy_ksp(
    g: Graph,
    q: Query,
    opts: SolverOptions | None = None,
    measure: Measure | None = None,
) -> ResultSet:
    """Accept the shortest path, then every next shortest path that is
    dissimilar to all accepted ones, until ``k`` are accepted.

    Plain greedy semantics only: no lower-bound pruning of the path stream.
    """
    q.check(g)
    opts = opts or SolverOptions()
    measure = _default_measure(g, measure)
    t0 = time.perf_counter()
    deadline = None if opts.wall_time_limit is None else t0 + opts.wall_time_limit
    it = KspIterator(g, q.source, q.target, budget=opts.ksp_budget)
    accepted: list[Path] = []
    reason = "k_reached"
    while len(accepted) < q.k:
        p = it.next()
        if p is None:
            reason = "ksp_budget" if it.budget_hit else "exhausted"
            break
        if all(measure(p, a) < q.theta for a in accepted):
            accepted.append(p)
        if deadline is not None and time.perf_counter() > deadline and len(accepted) < q.k:
            reason = "timeout"
            break
    stats = {
        "paths_generated": it.emitted_count,
        "subsets_emitted": 0,
        "termination": reason,
        "wall_time": time.perf_counter() - t0,
    }
    return ResultSet(PathSet.of(accepted), q.k, reason in ("k_reached", "exhausted"), stats)
