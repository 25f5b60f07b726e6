"""Road-network graph, path values and file loaders."""

from __future__ import annotations

import io
import math
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Sequence, TextIO

import numpy as np


class GraphFormatError(ValueError):
    """Malformed input line; carries the 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class GraphDomainError(GraphFormatError):
    """Syntactically valid input that violates a graph invariant."""


@dataclass(frozen=True, slots=True)
class Path:
    """Simple path stored as edge ids plus the visited node sequence."""

    edges: tuple[int, ...]
    nodes: tuple[int, ...]
    length: float

    @property
    def source(self) -> int:
        return self.nodes[0]

    @property
    def target(self) -> int:
        return self.nodes[-1]

    def __len__(self) -> int:
        return len(self.edges)

    def sort_key(self):
        return (self.length, self.nodes, self.edges)


@dataclass(frozen=True, slots=True)
class Walk:
    """Joined edge sequence that revisits a node (result of a non-simple concat)."""

    edges: tuple[int, ...]
    nodes: tuple[int, ...]
    length: float


@dataclass(frozen=True)
class PathSet:
    paths: tuple[Path, ...]
    collective_length: float

    @classmethod
    def of(cls, paths: Iterable[Path]) -> "PathSet":
        paths = tuple(sorted(paths, key=Path.sort_key))
        if len({p.edges for p in paths}) != len(paths):
            raise ValueError("duplicate path in path set")
        return cls(paths, math.fsum(p.length for p in paths))

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)


def _readonly(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _csr(keys: np.ndarray, other: np.ndarray, n: int):
    # stable sort keeps edge ids ascending inside each row
    order = np.argsort(keys, kind="stable").astype(np.int64)
    indptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(np.bincount(keys, minlength=n), out=indptr[1:])
    return _readonly(indptr), _readonly(order), _readonly(other[order].astype(np.int64))


class Graph:
    """Immutable directed graph with positive edge weights.

    Edges are addressed by dense integer ids in insertion order; parallel arcs
    are kept as distinct edges.  Both a forward (out-edge) and a reverse
    (in-edge) CSR index are built at construction time.
    """

    def __init__(
        self,
        node_count: int,
        tails: Sequence[int],
        heads: Sequence[int],
        weights: Sequence[float],
        coords: np.ndarray | None = None,
    ):
        tail = np.asarray(tails, dtype=np.int64).reshape(-1)
        head = np.asarray(heads, dtype=np.int64).reshape(-1)
        weight = np.asarray(weights, dtype=np.float64).reshape(-1)
        if not (len(tail) == len(head) == len(weight)):
            raise ValueError("tails, heads and weights differ in length")
        if node_count < 0:
            raise GraphDomainError("negative node count")
        if len(tail):
            if tail.min() < 0 or head.min() < 0 or max(tail.max(), head.max()) >= node_count:
                raise GraphDomainError("edge endpoint out of range")
            if np.any(tail == head):
                raise GraphDomainError("self-loop")
            if not np.all(np.isfinite(weight)) or np.any(weight <= 0):
                raise GraphDomainError("edge weights must be finite and > 0")
        self.node_count = int(node_count)
        self.tail = _readonly(tail)
        self.head = _readonly(head)
        self.weight = _readonly(weight)
        self.fwd_indptr, self.fwd_edges, self.fwd_nbrs = _csr(tail, head, self.node_count)
        self.rev_indptr, self.rev_edges, self.rev_nbrs = _csr(head, tail, self.node_count)
        if coords is not None:
            coords = np.asarray(coords, dtype=np.float64)
            if coords.shape != (self.node_count, 2):
                raise ValueError("coords must have shape (node_count, 2)")
            coords = _readonly(coords.copy())
        self.coords = coords
        # python-side copies for tight loops
        self._w = weight.tolist()
        self._tail = tail.tolist()
        self._head = head.tolist()

    @property
    def edge_count(self) -> int:
        return len(self._w)

    def __repr__(self) -> str:
        return f"Graph(nodes={self.node_count}, edges={self.edge_count})"

    def out_edges(self, n: int) -> np.ndarray:
        return self.fwd_edges[self.fwd_indptr[n] : self.fwd_indptr[n + 1]]

    def in_edges(self, n: int) -> np.ndarray:
        return self.rev_edges[self.rev_indptr[n] : self.rev_indptr[n + 1]]

    def with_coords(self, coords: np.ndarray) -> "Graph":
        return Graph(self.node_count, self.tail, self.head, self.weight, coords)

    def edge(self, e: int) -> tuple[int, int, float]:
        return self._tail[e], self._head[e], self._w[e]

    def empty_path(self, node: int) -> Path:
        if not 0 <= node < self.node_count:
            raise IndexError(f"node {node} out of range")
        return Path((), (node,), 0.0)

    def path_from_edges(self, edges: Sequence[int], source: int | None = None) -> Path:
        """Build a :class:`Path` from an edge-id sequence.

        Raises ``ValueError`` if the edges are not connected head-to-tail or
        the sequence revisits a node.
        """
        edges = tuple(int(e) for e in edges)
        if not edges:
            if source is None:
                raise ValueError("empty path needs an explicit source node")
            return self.empty_path(source)
        tail, head, w = self._tail, self._head, self._w
        nodes = [tail[edges[0]]]
        length = 0.0
        for e in edges:
            if tail[e] != nodes[-1]:
                raise ValueError(f"edge {e} does not continue the path at node {nodes[-1]}")
            nodes.append(head[e])
            length += w[e]
        if len(set(nodes)) != len(nodes):
            raise ValueError("edge sequence revisits a node")
        return Path(edges, tuple(nodes), length)

    def path_from_nodes(self, nodes: Sequence[int]) -> Path:
        """Path along ``nodes`` using the lowest-id cheapest arc between each pair."""
        edges = []
        for u, v in zip(nodes, nodes[1:]):
            best = None
            for e in self.out_edges(u).tolist():
                if self._head[e] == v and (best is None or self._w[e] < self._w[best]):
                    best = e
            if best is None:
                raise ValueError(f"no arc {u}->{v}")
            edges.append(best)
        return self.path_from_edges(edges, source=nodes[0])


def path_nodes(p: Path | Walk) -> tuple[int, ...]:
    return p.nodes


def is_simple(p: Path | Walk) -> bool:
    return len(set(p.nodes)) == len(p.nodes)


def concat(prefix: Path | Walk, suffix: Path | Walk) -> Path | Walk:
    """Join two paths at a shared endpoint.

    Returns a :class:`Walk` when the joined sequence visits some node twice.
    """
    if prefix.nodes[-1] != suffix.nodes[0]:
        raise ValueError(
            f"cannot join: prefix ends at {prefix.nodes[-1]}, suffix starts at {suffix.nodes[0]}"
        )
    nodes = prefix.nodes + suffix.nodes[1:]
    edges = prefix.edges + suffix.edges
    length = prefix.length + suffix.length
    if len(set(nodes)) == len(nodes):
        return Path(edges, nodes, length)
    return Walk(edges, nodes, length)


def validate_path(g: Graph, p: Path) -> None:
    """Raise ``ValueError`` unless ``p`` is a well-formed simple path of ``g``."""
    ref = g.path_from_edges(p.edges, source=p.nodes[0])
    if ref.nodes != p.nodes:
        raise ValueError("node sequence does not match edges")
    if abs(ref.length - p.length) > 1e-9:
        raise ValueError(f"cached length {p.length} != edge sum {ref.length}")


# ---------------------------------------------------------------- loaders


def _text_lines(reader: BinaryIO | TextIO | bytes | str):
    if isinstance(reader, bytes):
        reader = io.BytesIO(reader)
    elif isinstance(reader, str):
        reader = io.StringIO(reader)
    for lineno, raw in enumerate(reader, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        yield lineno, raw.strip()


def _weight(tok: str, lineno: int) -> float:
    try:
        w = float(tok)
    except ValueError:
        raise GraphFormatError(f"bad weight {tok!r}", lineno) from None
    if not math.isfinite(w) or w <= 0:
        raise GraphDomainError(f"non-positive weight {tok}", lineno)
    return w


def _int(tok: str, lineno: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise GraphFormatError(f"expected integer, got {tok!r}", lineno) from None


def load_dimacs_gr(reader) -> Graph:
    """Read a 9th DIMACS challenge ``.gr`` file (1-based ids)."""
    n = m = None
    tails: list[int] = []
    heads: list[int] = []
    weights: list[float] = []
    for lineno, line in _text_lines(reader):
        if not line or line[0] == "c":
            continue
        tok = line.split()
        if tok[0] == "p":
            if len(tok) != 4 or tok[1] != "sp":
                raise GraphFormatError("expected 'p sp <n> <m>'", lineno)
            if n is not None:
                raise GraphFormatError("duplicate problem line", lineno)
            n, m = _int(tok[2], lineno), _int(tok[3], lineno)
            if n < 0 or m < 0:
                raise GraphDomainError("negative size in problem line", lineno)
        elif tok[0] == "a":
            if len(tok) != 4:
                raise GraphFormatError("expected 'a <u> <v> <w>'", lineno)
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            w = _weight(tok[3], lineno)
            if n is None:
                raise GraphFormatError("arc before problem line", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphDomainError(f"node id out of range [1,{n}]", lineno)
            if u == v:
                raise GraphDomainError("self-loop", lineno)
            tails.append(u - 1)
            heads.append(v - 1)
            weights.append(w)
        else:
            raise GraphFormatError(f"unknown line type {tok[0]!r}", lineno)
    if n is None:
        raise GraphFormatError("missing problem line")
    if m != len(tails):
        raise GraphFormatError(f"problem line announces {m} arcs, found {len(tails)}")
    return Graph(n, tails, heads, weights)


def load_dimacs_co(reader, node_count: int) -> np.ndarray:
    """Read a DIMACS ``.co`` file into an ``(n, 2)`` array of (lon, lat) degrees."""
    coords = np.full((node_count, 2), np.nan)
    for lineno, line in _text_lines(reader):
        if not line or line[0] in "cp":
            continue
        tok = line.split()
        if tok[0] != "v" or len(tok) != 4:
            raise GraphFormatError("expected 'v <id> <x> <y>'", lineno)
        i = _int(tok[1], lineno)
        if not 1 <= i <= node_count:
            raise GraphDomainError(f"node id out of range [1,{node_count}]", lineno)
        coords[i - 1] = (_int(tok[2], lineno) / 1e6, _int(tok[3], lineno) / 1e6)
    if np.isnan(coords).any():
        missing = int(np.isnan(coords[:, 0]).argmax()) + 1
        raise GraphDomainError(f"no coordinates for node {missing}")
    return coords


def load_edge_list(reader) -> Graph:
    """Read whitespace separated ``u v w`` lines with 0-based ids."""
    tails: list[int] = []
    heads: list[int] = []
    weights: list[float] = []
    for lineno, line in _text_lines(reader):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if len(tok) != 3:
            raise GraphFormatError("expected 'u v w'", lineno)
        u, v = _int(tok[0], lineno), _int(tok[1], lineno)
        w = _weight(tok[2], lineno)
        if u < 0 or v < 0:
            raise GraphDomainError("negative node id", lineno)
        if u == v:
            raise GraphDomainError("self-loop", lineno)
        tails.append(u)
        heads.append(v)
        weights.append(w)
    n = max(max(tails), max(heads)) + 1 if tails else 0
    return Graph(n, tails, heads, weights)


def _fmt_weight(w: float) -> str:
    return str(int(w)) if float(w).is_integer() else repr(float(w))


def dump_dimacs_gr(g: Graph, out: TextIO) -> None:
    out.write(f"p sp {g.node_count} {g.edge_count}\n")
    for u, v, w in zip(g._tail, g._head, g._w):
        out.write(f"a {u + 1} {v + 1} {_fmt_weight(w)}\n")


def dump_dimacs_co(g: Graph, out: TextIO) -> None:
    if g.coords is None:
        raise ValueError("graph has no coordinates")
    out.write(f"p aux sp co {g.node_count}\n")
    for i, (x, y) in enumerate(g.coords.tolist(), start=1):
        out.write(f"v {i} {round(x * 1e6)} {round(y * 1e6)}\n")


def dump_edge_list(g: Graph, out: TextIO) -> None:
    for u, v, w in zip(g._tail, g._head, g._w):
        out.write(f"{u} {v} {_fmt_weight(w)}\n")


def read_graph(path: str, fmt: str = "dimacs", coords_path: str | None = None) -> Graph:
    loader = {"dimacs": load_dimacs_gr, "edgelist": load_edge_list}.get(fmt)
    if loader is None:
        raise ValueError(f"unknown graph format {fmt!r}")
    with open(path, "rb") as fh:
        g = loader(fh)
    if coords_path:
        with open(coords_path, "rb") as fh:
            g = g.with_coords(load_dimacs_co(fh, g.node_count))
    return g


def gen_grid(rows: int, cols: int, seed: int = 0) -> Graph:
    """4-connected grid with both arc directions sharing one integer weight in [1, 10].

    Node ``r * cols + c`` sits at lon ``c / 1000``, lat ``r / 1000``.
    """
    if rows < 2 or cols < 2:
        raise ValueError("grid needs rows, cols >= 2")
    rng = np.random.default_rng(seed)
    pairs = []
    for r in range(rows):
        for c in range(cols):
            u = r * cols + c
            if c + 1 < cols:
                pairs.append((u, u + 1))
            if r + 1 < rows:
                pairs.append((u, u + cols))
    w = rng.integers(1, 11, size=len(pairs)).astype(np.float64)
    tails, heads, weights = [], [], []
    for (u, v), wt in zip(pairs, w.tolist()):
        tails += [u, v]
        heads += [v, u]
        weights += [wt, wt]
    rr, cc = np.divmod(np.arange(rows * cols), cols)
    coords = np.column_stack([cc / 1000.0, rr / 1000.0])
    return Graph(rows * cols, tails, heads, weights, coords)
