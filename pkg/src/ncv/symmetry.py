from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import factorial
from typing import Iterator, Optional

from ncv.config import DEFAULT_BUDGETS, Budgets
from ncv.graph import Graph, GraphError
from ncv.signed import permute_mask

Perm = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class AutomorphismGroup:
    """The full list of automorphisms of ``graph`` as vertex permutations."""

    graph: Graph
    elements: tuple[Perm, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def edge_perms(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.graph.edge_permutation(p) for p in self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class Matching:
    graph: Graph = field(repr=False)
    edges: int

    def __post_init__(self):
        if self.edges >> self.graph.m:
            raise ValueError("matching mask outside the graph's edge range")
        used = 0
        for u, v in self.graph.mask_edges(self.edges):
            if used >> u & 1 or used >> v & 1:
                raise GraphError(f"edge ({u}, {v}) shares a vertex with another matching edge")
            used |= 1 << u | 1 << v

    @classmethod
    def from_pairs(cls, g: Graph, pairs) -> "Matching":
        return cls(g, g.edges_mask(pairs))

    @property
    def size(self) -> int:
        return self.edges.bit_count()

    @property
    def edge_ids(self) -> list[int]:
        return [i for i in range(self.graph.m) if self.edges >> i & 1]

    def pairs(self) -> list[tuple[int, int]]:
        return self.graph.mask_edges(self.edges)


def automorphisms(g: Graph, budgets: Budgets = DEFAULT_BUDGETS) -> AutomorphismGroup:
    """List Aut(g) by backtracking over vertices in BFS order.

    Candidates for each vertex must match its degree and the sorted degree
    sequence of its neighbourhood, and must reproduce adjacency to every
    vertex already placed.
    """
    n = g.n
    adj = g.adjacency
    deg = [g.degree(v) for v in range(n)]
    sig = [(deg[v], tuple(sorted(deg[u] for u in g.neighbors(v)))) for v in range(n)]

    order: list[int] = []
    placed = 0
    for s in range(n):
        if placed >> s & 1:
            continue
        queue = [s]
        placed |= 1 << s
        while queue:
            v = queue.pop(0)
            order.append(v)
            for u in g.neighbors(v):
                if not placed >> u & 1:
                    placed |= 1 << u
                    queue.append(u)

    candidates = [[w for w in range(n) if sig[w] == sig[v]] for v in range(n)]
    # for order[i], the earlier vertices it is adjacent to (by position)
    earlier = [[j for j in range(i) if adj[order[i]] >> order[j] & 1] for i in range(n)]
    earlier_count = [adj[order[i]] & sum(1 << order[j] for j in range(i)) for i in range(n)]

    image = [0] * n
    found: list[Perm] = []
    limit = budgets.max_automorphisms

    def extend(i: int, used: int, used_image_mask: int) -> None:
        if i == n:
            perm = [0] * n
            for k, v in enumerate(order):
                perm[v] = image[k]
            found.append(tuple(perm))
            if len(found) > limit:
                budgets.check("automorphism group order", len(found), limit)
            return
        v = order[i]
        need = earlier_count[i].bit_count()
        for w in candidates[v]:
            if used >> w & 1:
                continue
            # w must hit exactly the images of v's earlier neighbours
            aw = adj[w] & used_image_mask
            if aw.bit_count() != need:
                continue
            if all(aw >> image[j] & 1 for j in earlier[i]):
                image[i] = w
                extend(i + 1, used | 1 << w, used_image_mask | 1 << w)

    extend(0, 0, 0)
    found.sort()
    return AutomorphismGroup(g, tuple(found))


def _compose(a: Perm, b: Perm) -> Perm:
    # (a * b)(x) = a(b(x))
    return tuple(a[x] for x in b)


def closure(perms, degree: int) -> set[Perm]:
    """The group generated by ``perms`` (breadth-first multiplication)."""
    identity = tuple(range(degree))
    group = {identity}
    gens: list[Perm] = []
    for p in perms:
        if p in group:
            continue
        gens.append(p)
        frontier = list(group)
        while frontier:
            nxt = []
            for x in frontier:
                for gen in gens:
                    y = _compose(gen, x)
                    if y not in group:
                        group.add(y)
                        nxt.append(y)
            frontier = nxt
    return group


def induced_action(mat: Matching, grp: AutomorphismGroup) -> set[Perm]:
    """Permutations of the matching's edges induced by its setwise stabilizer."""
    ids = mat.edge_ids
    pos = {e: k for k, e in enumerate(ids)}
    out = set()
    for ep in grp.edge_perms:
        if permute_mask(mat.edges, ep) == mat.edges:
            out.add(tuple(pos[ep[e]] for e in ids))
    return out


def is_permutable(g: Graph, mat: Matching, grp: AutomorphismGroup) -> bool:
    if mat.graph != g or grp.graph != g:
        raise GraphError("matching, group and graph disagree")
    m = mat.size
    if m <= 1:
        return True
    return len(closure(induced_action(mat, grp), m)) == factorial(m)


def iter_matchings(g: Graph, m: int) -> Iterator[tuple[int, ...]]:
    """All m-matchings as ascending edge-id tuples, in lexicographic order."""
    edges = g.edges

    def rec(start: int, used: int, chosen: list[int]):
        if len(chosen) == m:
            yield tuple(chosen)
            return
        for i in range(start, len(edges) - (m - len(chosen)) + 1):
            u, v = edges[i]
            if used >> u & 1 or used >> v & 1:
                continue
            chosen.append(i)
            yield from rec(i + 1, used | 1 << u | 1 << v, chosen)
            chosen.pop()

    yield from rec(0, 0, [])


def find_permutable_matchings(g: Graph, m: int, grp: Optional[AutomorphismGroup] = None) -> list[Matching]:
    """One matching per Aut-orbit of permutable m-matchings.

    Matchings are visited in lexicographic order of their edge ids, so the
    first member seen from each orbit is its lexicographically least one.
    """
    if m < 1:
        raise ValueError("matching size must be >= 1")
    if grp is None:
        grp = automorphisms(g)
    seen: set[int] = set()
    reps = []
    for ids in iter_matchings(g, m):
        mask = sum(1 << i for i in ids)
        if mask in seen:
            continue
        seen |= {permute_mask(mask, ep) for ep in grp.edge_perms}
        mat = Matching(g, mask)
        if is_permutable(g, mat, grp):
            reps.append(mat)
    return reps


def max_permutable_size(g: Graph, grp: Optional[AutomorphismGroup] = None, limit: Optional[int] = None) -> int:
    """Largest m for which a permutable m-matching exists (searching upward until none)."""
    if grp is None:
        grp = automorphisms(g)
    best = 0
    top = g.n // 2 if limit is None else min(limit, g.n // 2)
    for m in range(1, top + 1):
        if not find_permutable_matchings(g, m, grp):
            break
        best = m
    return best
