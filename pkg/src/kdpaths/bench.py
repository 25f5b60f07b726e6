"""Single queries, seeded benchmark batches, metrics and GeoJSON export."""

from __future__ import annotations

import csv
import io
import json
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .exact import Query, ResultSet, SolverOptions, solve_exact
from .graph import Graph, GraphFormatError
from .greedy import solve_greedy_ksp
from .shortest import DEFAULT_KSP_BUDGET, FORWARD, dijkstra
from .similarity import make_weighted_jaccard
from .ssvp import solve_ssvp_d_plus, solve_svp_d
from .subsets import DEFAULT_SUBSET_BUDGET

ALGORITHMS = {
    "exact": solve_exact,
    "svpd": solve_svp_d,
    "ssvpd-plus": solve_ssvp_d_plus,
    "greedy-ksp": solve_greedy_ksp,
}

CSV_COLUMNS = [
    "query_id", "s", "t", "algo", "k", "theta", "time_ms", "cardinality",
    "collective_len", "excess_pct", "complete", "proven",
]


@dataclass
class BenchConfig:
    algorithms: list[str] = field(default_factory=lambda: ["ssvpd-plus"])
    k: int = 3
    theta: float = 0.5
    queries: list[tuple[int, int]] | None = None
    random_count: int | None = None
    seed: int = 0
    ksp_budget: int = DEFAULT_KSP_BUDGET
    subset_budget: int = DEFAULT_SUBSET_BUDGET
    timeout_ms: float | None = None
    threads: int = 1

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if not 0 < self.theta <= 1:
            raise ValueError("theta must lie in (0, 1]")
        if self.random_count is not None and self.random_count < 1:
            raise ValueError("random query count must be >= 1")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise ValueError(f"unknown algorithm(s): {', '.join(unknown)}")

    @property
    def options(self) -> SolverOptions:
        limit = None if self.timeout_ms is None else self.timeout_ms / 1000.0
        return SolverOptions(self.ksp_budget, self.subset_budget, limit)


def random_queries(g: Graph, count: int, seed: int) -> list[tuple[int, int]]:
    """``count`` ordered pairs s != t with t reachable from s, drawn uniformly
    by rejection from ``numpy.random.default_rng(seed)``."""
    if g.node_count < 2:
        raise ValueError("graph needs at least two nodes")
    rng = np.random.default_rng(seed)
    reach: dict[int, np.ndarray] = {}
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * count:
            raise ValueError("could not draw connected query pairs")
        s, t = (int(x) for x in rng.integers(0, g.node_count, size=2))
        if s == t:
            continue
        if s not in reach:
            reach[s] = np.isfinite(dijkstra(g, s, FORWARD).dist)
        if reach[s][t]:
            out.append((s, t))
    return out


def read_query_file(reader) -> list[tuple[int, int]]:
    out = []
    for lineno, raw in enumerate(reader, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode()
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) != 2:
            raise GraphFormatError("expected 's t'", lineno)
        try:
            out.append((int(tok[0]), int(tok[1])))
        except ValueError:
            raise GraphFormatError("node ids must be integers", lineno) from None
    return out


def excess_pct(result: ResultSet, sp_length: float) -> float | None:
    """Mean of (len(p) / len(sp) - 1) * 100 over the result paths."""
    if not len(result) or not sp_length:
        return None
    return float(np.mean([(p.length / sp_length - 1.0) * 100.0 for p in result.paths]))


def run_query(g: Graph, algo: str, q: Query, opts: SolverOptions) -> tuple[ResultSet, float]:
    solver = ALGORITHMS[algo]
    t0 = time.perf_counter()
    res = solver(g, q, opts)
    return res, time.perf_counter() - t0


def report(g: Graph, algo: str, q: Query, res: ResultSet, elapsed: float) -> dict:
    """JSON-ready description of one result."""
    sim = make_weighted_jaccard(g)
    paths = list(res.paths)
    stats = {k: v for k, v in res.stats.items() if k not in ("lk1_trace", "trace")}
    return {
        "algorithm": algo,
        "source": q.source,
        "target": q.target,
        "k": q.k,
        "theta": q.theta,
        "paths": [
            {"rank": i + 1, "length": p.length, "nodes": list(p.nodes), "edges": list(p.edges)}
            for i, p in enumerate(paths)
        ],
        "similarity": [[round(sim(a, b), 12) for b in paths] for a in paths],
        "collective_length": res.collective_length,
        "complete": res.complete,
        "proven_optimal": res.proven_optimal,
        "time_ms": elapsed * 1000.0,
        "stats": stats,
    }


def run_single(g: Graph, algo: str, q: Query, opts: SolverOptions | None = None) -> dict:
    q.check(g)
    res, elapsed = run_query(g, algo, q, opts or SolverOptions())
    return report(g, algo, q, res, elapsed)


@dataclass
class QueryMetrics:
    rows: list[dict]
    aggregates: dict[str, dict]


def aggregate(rows: list[dict]) -> dict[str, dict]:
    """Per-algorithm summary recomputed from per-query rows only."""
    out: dict[str, dict] = {}
    for algo in dict.fromkeys(r["algo"] for r in rows):
        rs = [r for r in rows if r["algo"] == algo]
        times = [r["time_ms"] for r in rs]
        complete = [r for r in rs if r["complete"]]
        excess = [r["excess_pct"] for r in complete if r["excess_pct"] is not None]
        out[algo] = {
            "queries": len(rs),
            "mean_time_ms": statistics.fmean(times),
            "median_time_ms": statistics.median(times),
            "avg_excess_pct": statistics.fmean(excess) if excess else None,
            "completeness_pct": 100.0 * len(complete) / len(rs),
            "truncated": sum(not r["proven"] for r in rs),
        }
    return out


def _row(g: Graph, cfg: BenchConfig, qid: int, s: int, t: int, algo: str) -> dict:
    q = Query(s, t, cfg.k, cfg.theta)
    res, elapsed = run_query(g, algo, q, cfg.options)
    sp = dijkstra(g, s, FORWARD, stop=t).dist[t]
    ex = excess_pct(res, float(sp))
    return {
        "query_id": qid, "s": s, "t": t, "algo": algo, "k": cfg.k, "theta": cfg.theta,
        "time_ms": elapsed * 1000.0,
        "cardinality": len(res),
        "collective_len": res.collective_length,
        "excess_pct": ex,
        "complete": res.complete,
        "proven": res.proven_optimal,
        "paths": [list(p.nodes) for p in res.paths],
    }


def run_batch(g: Graph, cfg: BenchConfig) -> QueryMetrics:
    """Run every configured algorithm on the same query list."""
    if cfg.queries is not None:
        queries = list(cfg.queries)
    elif cfg.random_count is not None:
        queries = random_queries(g, cfg.random_count, cfg.seed)
    else:
        raise ValueError("no queries: give a query list or a random count")
    for s, t in queries:
        Query(s, t, cfg.k, cfg.theta).check(g)
    jobs = [(qid, s, t, algo) for qid, (s, t) in enumerate(queries) for algo in cfg.algorithms]
    if cfg.threads > 1:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            rows = list(pool.map(lambda j: _row(g, cfg, *j), jobs))
    else:
        rows = [_row(g, cfg, *j) for j in jobs]
    rows.sort(key=lambda r: (r["query_id"], cfg.algorithms.index(r["algo"])))
    return QueryMetrics(rows, aggregate(rows))


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(round(v, 9))
    return str(v)


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in CSV_COLUMNS])
    return buf.getvalue()


def metrics_to_json(m: QueryMetrics) -> str:
    return json.dumps({"rows": m.rows, "aggregates": m.aggregates}, indent=2)


class ExportError(ValueError):
    pass


def export_geojson(result: ResultSet, g: Graph, algorithm: str = "") -> bytes:
    """FeatureCollection with one LineString per result path."""
    if g.coords is None:
        raise ExportError("graph has no coordinates; load a .co file or use a generated grid")
    feats = []
    for rank, p in enumerate(result.paths, start=1):
        feats.append({
            "type": "Feature",
            "geometry": {
                "type": "LineString",
                "coordinates": [list(map(float, g.coords[n])) for n in p.nodes],
            },
            "properties": {"rank": rank, "length": p.length, "algorithm": algorithm},
        })
    return json.dumps({"type": "FeatureCollection", "features": feats}).encode()
