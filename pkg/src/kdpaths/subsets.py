"""Incremental generation of pairwise-compatible path subsets.

Each time an item is added, every stored compatible subset of size <= k-1
whose members are all compatible with the new item is extended by it and
emitted.  Extensions that are still below size k are stored for later rounds.
Subsets containing an incompatible pair are never built.

Stored subsets are rows of a padded ``int32`` id matrix (padding = -1), so the
compatibility filter is a single kernel call over a contiguous block.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import kernels
from .graph import Path
from .similarity import JaccardIndex, Measure

DEFAULT_SUBSET_BUDGET = 5_000_000


class SubsetBudgetExceeded(RuntimeError):
    def __init__(self, count: int, budget: int):
        self.count = count
        self.budget = budget
        super().__init__(f"stored subsets would reach {count} (budget {budget})")


@dataclass
class Emission:
    """Subsets created by one ``add``: each is a stored row plus ``new_id``."""

    new_id: int
    rows: np.ndarray  # (m, k-1) member ids without new_id, -1 padded
    sizes: np.ndarray  # (m,) cardinality including new_id
    lengths: np.ndarray  # (m,) summed item lengths including new_id

    def __len__(self) -> int:
        return len(self.sizes)

    def members(self, i: int) -> tuple[int, ...]:
        row = self.rows[i]
        return tuple(sorted(int(x) for x in row[row >= 0])) + (self.new_id,)

    def __iter__(self) -> Iterator[frozenset[int]]:
        for i in range(len(self)):
            yield frozenset(self.members(i))


class SubsetEnumerator:
    """Binomial-tree subset generation with similarity pruning.

    Items are either paths (``add_path``, compatibility computed with the
    measure) or opaque entries with a caller-supplied compatibility vector
    (``add``).
    """

    def __init__(self, k: int, theta: float = 1.0, measure: Measure | None = None,
                 budget: int = DEFAULT_SUBSET_BUDGET):
        if k < 1:
            raise ValueError("k must be >= 1")
        if budget < 1:
            raise ValueError("budget must be >= 1")
        self.k = k
        self.theta = theta
        self.measure = measure
        self.budget = budget
        self.paths: list[Path] = []
        self.lengths: list[float] = []
        self._keys: dict[tuple[int, ...], int] = {}
        self._compat: list[np.ndarray] = []  # row i: bool over ids < i
        width = max(k - 1, 1)
        self._ids = np.full((1024, width), -1, dtype=np.int32)
        self._size = np.zeros(1024, dtype=np.int32)
        self._len = np.zeros(1024, dtype=np.float64)
        self._count = 1  # row 0 is the empty set
        self._index = None
        g = getattr(measure, "graph", None)
        if g is not None:
            self._index = JaccardIndex(g)

    @property
    def stored_count(self) -> int:
        return self._count

    def compatible(self, i: int, j: int) -> bool:
        if i == j:
            return True
        if i < j:
            i, j = j, i
        return bool(self._compat[i][j])

    def stored(self) -> list[frozenset[int]]:
        out = []
        for r in range(self._count):
            row = self._ids[r]
            out.append(frozenset(int(x) for x in row[row >= 0]))
        return out

    def _similarities(self, p: Path) -> np.ndarray:
        if self._index is not None:
            return self._index.add(p)
        return np.array([self.measure(p, q) for q in self.paths], dtype=np.float64)

    def add_path(self, p: Path) -> Emission:
        if p.edges in self._keys:
            raise ValueError("path already registered")
        if self.measure is None:
            raise ValueError("add_path needs a similarity measure")
        sims = self._similarities(p)
        self._keys[p.edges] = len(self.paths)
        self.paths.append(p)
        return self.add(sims < self.theta, p.length)

    def add(self, compat: Sequence[bool], length: float = 0.0) -> Emission:
        """Register one item compatible with earlier items where ``compat`` is True."""
        new_id = len(self._compat)
        compat = np.asarray(compat, dtype=bool).reshape(-1)
        if len(compat) != new_id:
            raise ValueError(f"compat vector needs {new_id} entries, got {len(compat)}")
        self._compat.append(compat)
        self.lengths.append(length)
        if new_id >= len(self.paths):
            self.paths.append(None)  # opaque item

        hits = kernels.scan_compatible(self._ids, self._count, compat.view(np.uint8))
        rows = self._ids[hits]
        sizes = self._size[hits] + 1
        lengths = self._len[hits] + length
        emission = Emission(new_id, rows, sizes, lengths)

        keep = sizes <= self.k - 1
        n_new = int(keep.sum())
        if n_new:
            total = self._count + n_new
            if total > self.budget:
                raise SubsetBudgetExceeded(total, self.budget)
            self._reserve(total)
            new_rows = rows[keep].copy()
            # the new id goes in the first padding slot
            new_rows[np.arange(n_new), sizes[keep] - 1] = new_id
            sl = slice(self._count, total)
            self._ids[sl] = new_rows
            self._size[sl] = sizes[keep]
            self._len[sl] = lengths[keep]
            self._count = total
        return emission

    def _reserve(self, n: int) -> None:
        cap = len(self._size)
        if n <= cap:
            return
        while cap < n:
            cap *= 2
        ids = np.full((cap, self._ids.shape[1]), -1, dtype=np.int32)
        ids[: self._count] = self._ids[: self._count]
        self._ids = ids
        self._size = np.resize(self._size, cap)
        self._len = np.resize(self._len, cap)
