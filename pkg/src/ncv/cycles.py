from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ncv.config import DEFAULT_BUDGETS, Budgets
from ncv.graph import Graph

CACHE_VERSION = 1


@dataclass(frozen=True, eq=False)
class CycleCatalog:
    """Every simple cycle of ``graph`` as an edge bitmask, grouped by length."""

    graph: Graph
    by_length: dict[int, tuple[int, ...]]
    _matrices: dict = field(default_factory=dict, repr=False)

    @property
    def spectrum(self) -> list[int]:
        return sorted(l for l, cs in self.by_length.items() if cs)

    @property
    def counts(self) -> dict[int, int]:
        return {l: len(self.by_length[l]) for l in self.spectrum}

    def count(self, length: int) -> int:
        return len(self.by_length.get(length, ()))

    def __len__(self) -> int:
        return sum(len(cs) for cs in self.by_length.values())

    def __iter__(self):
        for l in self.spectrum:
            yield from self.by_length[l]

    def incidence(self) -> tuple[np.ndarray, np.ndarray]:
        """(cycles x edges) 0/1 matrix and (cycles x spectrum) length indicator."""
        if "inc" not in self._matrices:
            spec = self.spectrum
            masks = [c for l in spec for c in self.by_length[l]]
            m = self.graph.m
            inc = np.zeros((len(masks), m), dtype=np.int32)
            ind = np.zeros((len(masks), len(spec)), dtype=np.int64)
            row = 0
            for j, l in enumerate(spec):
                for c in self.by_length[l]:
                    for i in range(m):
                        if c >> i & 1:
                            inc[row, i] = 1
                    ind[row, j] = 1
                    row += 1
            self._matrices["inc"] = (inc, ind)
        return self._matrices["inc"]


def spectrum(cat: CycleCatalog) -> list[int]:
    return cat.spectrum


def enumerate_cycles(
    g: Graph,
    budgets: Budgets = DEFAULT_BUDGETS,
    cache_dir: Optional[str] = None,
) -> CycleCatalog:
    """Enumerate all simple cycles exactly once.

    Each cycle is grown from its smallest vertex ``r`` through vertices
    larger than ``r`` only, and emitted when it closes back to ``r`` with its
    second vertex smaller than its last (fixing the traversal direction).
    """
    if cache_dir:
        cached = _load_cache(g, cache_dir)
        if cached is not None:
            return cached

    adj = g.adjacency
    eid = [[-1] * g.n for _ in range(g.n)]
    for i, (u, v) in enumerate(g.edges):
        eid[u][v] = eid[v][u] = i

    found: dict[int, list[int]] = {}
    total = 0
    limit = budgets.max_cycles

    for r in range(g.n):
        allowed = ~((1 << (r + 1)) - 1)
        root_nbrs = adj[r] & allowed
        if root_nbrs.bit_count() < 2:
            continue
        # stack entries: (tip vertex, visited vertex mask, path edge mask, path length)
        for second in _bits(root_nbrs):
            start_mask = 1 << eid[r][second]
            stack = [(second, (1 << r) | (1 << second), start_mask, 1)]
            while stack:
                v, visited, emask, length = stack.pop()
                nbrs = adj[v]
                if length >= 2 and nbrs >> r & 1 and v > second:
                    cyc = emask | 1 << eid[v][r]
                    found.setdefault(length + 1, []).append(cyc)
                    total += 1
                    if total > limit:
                        budgets.check("cycle count", total, limit)
                ext = nbrs & allowed & ~visited
                for w in _bits(ext):
                    stack.append((w, visited | 1 << w, emask | 1 << eid[v][w], length + 1))

    by_length = {l: tuple(sorted(cs)) for l, cs in sorted(found.items())}
    cat = CycleCatalog(g, by_length)
    if cache_dir:
        _store_cache(cat, cache_dir)
    return cat


def _bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _cache_path(g: Graph, cache_dir: str) -> str:
    digest = hashlib.sha256(json.dumps([g.n, g.edges]).encode()).hexdigest()[:24]
    return os.path.join(cache_dir, f"cycles-v{CACHE_VERSION}-{digest}.json")


def _load_cache(g: Graph, cache_dir: str) -> Optional[CycleCatalog]:
    path = _cache_path(g, cache_dir)
    if not os.path.exists(path):
        return None
    with open(path) as fh:
        blob = json.load(fh)
    if blob.get("version") != CACHE_VERSION or blob.get("edges") != [list(e) for e in g.edges]:
        return None
    by_length = {int(l): tuple(int(c, 16) for c in cs) for l, cs in blob["cycles"].items()}
    return CycleCatalog(g, dict(sorted(by_length.items())))


def _store_cache(cat: CycleCatalog, cache_dir: str) -> None:
    os.makedirs(cache_dir, exist_ok=True)
    blob = {
        "version": CACHE_VERSION,
        "edges": [list(e) for e in cat.graph.edges],
        "cycles": {str(l): [format(c, "x") for c in cs] for l, cs in cat.by_length.items()},
    }
    path = _cache_path(cat.graph, cache_dir)
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(blob, fh)
    os.replace(tmp, path)
