"""Signings, their negative cycle vectors, and switching over GF(2).

A signing is stored as the bitmask of its negative edges.  Switching at a
vertex set X toggles the cut between X and its complement, so two signings
are switching equivalent exactly when their symmetric difference lies in the
cut space, i.e. meets every fundamental cycle of a spanning forest evenly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from ncv.config import DEFAULT_BUDGETS, Budgets
from ncv.cycles import CycleCatalog
from ncv.graph import Graph


class GraphMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Signing:
    graph: Graph
    negatives: int = 0

    def __post_init__(self):
        if self.negatives < 0 or self.negatives >> self.graph.m:
            raise ValueError("negative edge mask outside the graph's edge range")

    @classmethod
    def from_pairs(cls, g: Graph, pairs: Iterable[Sequence[int]]) -> "Signing":
        return cls(g, g.edges_mask(pairs))

    @classmethod
    def from_ids(cls, g: Graph, ids: Iterable[int]) -> "Signing":
        mask = 0
        for i in ids:
            if not 0 <= i < g.m:
                raise ValueError(f"edge id {i} out of range")
            mask |= 1 << i
        return cls(g, mask)

    def edge_ids(self) -> list[int]:
        return [i for i in range(self.graph.m) if self.negatives >> i & 1]

    def pairs(self) -> list[tuple[int, int]]:
        return self.graph.mask_edges(self.negatives)

    def __repr__(self):
        return f"Signing({self.graph.name or self.graph.n}, negatives={self.pairs()})"


@dataclass(frozen=True)
class NegCycleVector:
    """Negative cycle counts, one per length of the cycle spectrum."""

    lengths: tuple[int, ...]
    values: tuple[int, ...]

    @property
    def entries(self) -> dict[int, int]:
        return dict(zip(self.lengths, self.values))

    def __getitem__(self, length: int) -> int:
        return self.entries[length]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return len(self.values)

    def is_zero(self) -> bool:
        return not any(self.values)


@dataclass(frozen=True)
class Gf2Spaces:
    forest: int  # edge mask of the spanning forest
    cycle_basis: tuple[int, ...]  # one fundamental cycle per non-forest edge
    cotree: tuple[int, ...]  # the non-forest edge ids, ascending
    cut_space_dim: int


def _check_same(g1: Graph, g2: Graph) -> None:
    if g1 is not g2 and g1 != g2:
        raise GraphMismatch("objects refer to different graphs")


def ncv(cat: CycleCatalog, s: Signing) -> NegCycleVector:
    _check_same(cat.graph, s.graph)
    neg = s.negatives
    spec = cat.spectrum
    vals = []
    for l in spec:
        vals.append(sum((c & neg).bit_count() & 1 for c in cat.by_length[l]))
    return NegCycleVector(tuple(spec), tuple(vals))


def ncv_batch(cat: CycleCatalog, masks: Sequence[int]) -> np.ndarray:
    """Negative cycle vectors of many signings at once, as an int64 array."""
    inc, ind = cat.incidence()
    m = cat.graph.m
    if not len(masks) or not inc.shape[0]:
        return np.zeros((len(masks), ind.shape[1]), dtype=np.int64)
    bits = np.array([[mask >> i & 1 for i in range(m)] for mask in masks], dtype=np.int32)
    odd = (bits @ inc.T) & 1
    return odd.astype(np.int64) @ ind


def switch(s: Signing, x: Iterable[int]) -> Signing:
    return Signing(s.graph, s.negatives ^ s.graph.cut(x))


def negate(s: Signing) -> Signing:
    return Signing(s.graph, s.graph.full_mask ^ s.negatives)


@lru_cache(maxsize=256)
def gf2_spaces(g: Graph) -> Gf2Spaces:
    """Spanning forest chosen greedily by ascending edge id, with its fundamental cycles."""
    parent = list(range(g.n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    forest = 0
    tree_adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    cotree = []
    for i, (u, v) in enumerate(g.edges):
        ru, rv = find(u), find(v)
        if ru == rv:
            cotree.append(i)
        else:
            parent[ru] = rv
            forest |= 1 << i
            tree_adj[u].append((v, i))
            tree_adj[v].append((u, i))

    # path-to-root edge masks, so the tree path u..v is root_path[u] ^ root_path[v]
    root_path = [0] * g.n
    seen = [False] * g.n
    for r in range(g.n):
        if seen[r]:
            continue
        seen[r] = True
        stack = [r]
        while stack:
            u = stack.pop()
            for w, i in tree_adj[u]:
                if not seen[w]:
                    seen[w] = True
                    root_path[w] = root_path[u] | 1 << i
                    stack.append(w)
    basis = tuple((root_path[g.edges[i][0]] ^ root_path[g.edges[i][1]]) | 1 << i for i in cotree)
    return Gf2Spaces(forest, basis, tuple(cotree), g.n - g.component_count)


def in_cut_space(g: Graph, mask: int) -> bool:
    return all(not (mask & c).bit_count() & 1 for c in gf2_spaces(g).cycle_basis)


def canonical_mask(g: Graph, mask: int) -> int:
    """The switching-equivalent negative set that is positive on the spanning forest."""
    sp = gf2_spaces(g)
    out = 0
    for i, c in zip(sp.cotree, sp.cycle_basis):
        if (mask & c).bit_count() & 1:
            out |= 1 << i
    return out


def is_balanced(cat: CycleCatalog, s: Signing) -> bool:
    _check_same(cat.graph, s.graph)
    return ncv(cat, s).is_zero()


def switching_equivalent(s1: Signing, s2: Signing) -> bool:
    _check_same(s1.graph, s2.graph)
    return in_cut_space(s1.graph, s1.negatives ^ s2.negatives)


def permute_mask(mask: int, edge_perm: Sequence[int]) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= 1 << edge_perm[low.bit_length() - 1]
        mask ^= low
    return out


def _edge_perms(g: Graph, autos) -> Sequence[Sequence[int]]:
    edge_perms = getattr(autos, "edge_perms", None)
    if edge_perms is not None:
        return edge_perms
    return [g.edge_permutation(p) for p in autos]


def switching_isomorphic(s1: Signing, s2: Signing, autos) -> bool:
    """True iff some automorphism carries s1 to a switching of s2.

    ``autos`` is an AutomorphismGroup of the common graph or any iterable of
    vertex permutations.
    """
    _check_same(s1.graph, s2.graph)
    g = s1.graph
    target = canonical_mask(g, s2.negatives)
    return any(canonical_mask(g, permute_mask(s1.negatives, ep)) == target for ep in _edge_perms(g, autos))


def class_count_bits(g: Graph) -> int:
    return g.m - g.n + g.component_count


def class_representatives(g: Graph, budgets: Budgets = DEFAULT_BUDGETS) -> Iterator[Signing]:
    """One signing per switching class: forest edges positive, every cotree pattern."""
    for mask in representative_masks(g, budgets):
        yield Signing(g, mask)


def representative_masks(g: Graph, budgets: Budgets = DEFAULT_BUDGETS, start: int = 0, stop=None) -> Iterator[int]:
    bits = class_count_bits(g)
    budgets.check("cycle space dimension", bits, budgets.max_class_bits)
    cotree = gf2_spaces(g).cotree
    stop = 1 << bits if stop is None else min(stop, 1 << bits)
    for idx in range(start, stop):
        mask = 0
        j = 0
        while idx:
            if idx & 1:
                mask |= 1 << cotree[j]
            idx >>= 1
            j += 1
        yield mask


def collapse_orbits(g: Graph, masks: Iterable[int], autos) -> list[list[int]]:
    """Group switching-class representatives into switching-isomorphism classes.

    Returns the classes as lists of canonical masks, each list sorted and the
    classes ordered by their smallest member.
    """
    edge_perms = _edge_perms(g, autos)
    seen: set[int] = set()
    classes = []
    for mask in masks:
        c = canonical_mask(g, mask)
        if c in seen:
            continue
        orbit = {canonical_mask(g, permute_mask(c, ep)) for ep in edge_perms}
        seen |= orbit
        classes.append(sorted(orbit))
    classes.sort(key=lambda cls: cls[0])
    return classes
