"""Path similarity.

Any callable ``(Path, Path) -> float`` returning a symmetric value in [0, 1]
with ``sim(p, p) == 1`` can serve as a measure.  The default is the
weight-based Jaccard coefficient over edge ids.
"""

from __future__ import annotations

from typing import Callable, Iterable

import numpy as np

from .graph import Graph, Path

Measure = Callable[[Path, Path], float]


def make_weighted_jaccard(g: Graph) -> Measure:
    """Weighted Jaccard bound to the edge weights of ``g``."""
    w = g._w

    def weighted_jaccard(p: Path, q: Path) -> float:
        a, b = set(p.edges), set(q.edges)
        union = sum(w[e] for e in a | b)
        if union == 0:
            return 0.0
        return sum(w[e] for e in a & b) / union

    weighted_jaccard.graph = g  # lets solvers pick the vectorised index
    return weighted_jaccard


def weighted_jaccard(g: Graph, p: Path, q: Path) -> float:
    """Shared-edge weight over union-edge weight; 0 for two empty paths."""
    return make_weighted_jaccard(g)(p, q)


def dissimilar_to_set(p: Path, paths: Iterable[Path], theta: float, measure: Measure) -> bool:
    """True iff ``measure(p, q) < theta`` for every ``q`` in ``paths``."""
    if not 0 < theta <= 1:
        raise ValueError("theta must lie in (0, 1]")
    return all(measure(p, q) < theta for q in paths)


class JaccardIndex:
    """Incremental weighted-Jaccard against every path added so far.

    Keeps an edge -> path-ids inverted index; the shared weight of a new path
    with each registered path is accumulated with ``bincount`` and the union is
    ``len(p) + len(q) - shared``.
    """

    def __init__(self, g: Graph):
        self._w = g._w
        self._postings: dict[int, list[int]] = {}
        self._lengths: list[float] = []

    def __len__(self) -> int:
        return len(self._lengths)

    def add(self, p: Path) -> np.ndarray:
        """Register ``p`` and return its similarity to each earlier path."""
        n = len(self._lengths)
        sims = np.zeros(n)
        if n:
            ids: list[int] = []
            wts: list[float] = []
            for e in p.edges:
                post = self._postings.get(e)
                if post:
                    ids.extend(post)
                    wts.extend([self._w[e]] * len(post))
            if ids:
                shared = np.bincount(ids, weights=wts, minlength=n)
                union = p.length + np.asarray(self._lengths) - shared
                np.divide(shared, union, out=sims, where=union > 0)
        for e in p.edges:
            self._postings.setdefault(e, []).append(n)
        self._lengths.append(p.length)
        return sims
