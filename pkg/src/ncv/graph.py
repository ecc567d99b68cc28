"""Immutable simple graphs, the named families used throughout, and graph6 I/O.

Canonical vertex numberings (frozen; figure fixtures depend on them):

complete n
    vertices 0..n-1.
complete_bipartite p q
    side A = 0..p-1, side B = p..p+q-1.
cycle n
    edges i -- i+1 (mod n).
petersen
    outer 5-cycle 0..4 (i -- i+1 mod 5), inner pentagram 5..9
    (5+i -- 5+(i+2 mod 5)), spokes i -- i+5.
heawood
    Hamiltonian 14-cycle 0..13 plus chords i -- i+5 for even i (mod 14).
octahedron
    K_6 minus the perfect matching {0-3, 1-4, 2-5}.
prism p  (C_p x K_2)
    outer cycle 0..p-1, inner cycle p..2p-1, rungs i -- i+p.
matching_join_kk p  (K_p joined to K_p by a perfect matching)
    copies on 0..p-1 and p..2p-1, matching i -- i+p.  Equal to prism 3 for p = 3.
matching_join_kbar p  (a pendant edge at every vertex of K_p)
    K_p on 0..p-1, pendant i -- i+p.
join_kkbar p  (K_p joined to its complement)
    K_p on 0..p-1, independent set p..2p-1, every cross pair adjacent.
hypercube d
    vertices 0..2^d-1, u -- v when u XOR v is a power of two.

Edges are always stored sorted lexicographically as (u, v) with u < v; the
position in that list is the edge id.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from ncv.config import DEFAULT_BUDGETS, Budgets

Edge = tuple[int, int]


class GraphError(ValueError):
    pass


class Graph6Error(GraphError):
    pass


@dataclass(frozen=True, eq=False)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    adjacency: tuple[int, ...] = field(repr=False)
    component_count: int = field(repr=False)
    name: str = field(default="", compare=False)
    _edge_index: dict = field(default=None, repr=False, compare=False)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Sequence[int]],
        name: str = "",
        budgets: Budgets = DEFAULT_BUDGETS,
    ) -> "Graph":
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        budgets.check("vertex count", n, budgets.max_n)
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            e = (u, v) if u < v else (v, u)
            if e in norm:
                raise GraphError(f"parallel edge {e}")
            norm.add(e)
        ordered = tuple(sorted(norm))
        budgets.check("edge count", len(ordered), budgets.max_edges)
        adj = [0] * n
        for u, v in ordered:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        index = {e: i for i, e in enumerate(ordered)}
        return cls(n, ordered, tuple(adj), _count_components(n, adj), name, index)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.edges)) - 1

    def edge_id(self, u: int, v: int) -> int:
        key = (u, v) if u < v else (v, u)
        try:
            return self._edge_index[key]
        except KeyError:
            raise GraphError(f"({u}, {v}) is not an edge") from None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def neighbors(self, v: int) -> list[int]:
        a = self.adjacency[v]
        return [u for u in range(self.n) if a >> u & 1]

    def edges_mask(self, pairs: Iterable[Sequence[int]]) -> int:
        mask = 0
        for u, v in pairs:
            mask |= 1 << self.edge_id(u, v)
        return mask

    def mask_edges(self, mask: int) -> list[Edge]:
        return [e for i, e in enumerate(self.edges) if mask >> i & 1]

    def cut(self, vertices: Iterable[int]) -> int:
        """Edge mask of the cut between ``vertices`` and the rest."""
        xs = 0
        for v in vertices:
            xs |= 1 << v
        mask = 0
        for i, (u, v) in enumerate(self.edges):
            if (xs >> u & 1) != (xs >> v & 1):
                mask |= 1 << i
        return mask

    def edge_permutation(self, perm: Sequence[int]) -> tuple[int, ...]:
        """Edge ids permuted by the vertex map ``perm`` (which must be an automorphism)."""
        return tuple(self.edge_id(perm[u], perm[v]) for u, v in self.edges)

    def key(self) -> tuple:
        return (self.n, self.edges)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self is other or self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def _count_components(n: int, adj: Sequence[int]) -> int:
    seen = 0
    count = 0
    for s in range(n):
        if seen >> s & 1:
            continue
        count += 1
        frontier = 1 << s
        seen |= frontier
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= frontier
    return count


# -- named families --------------------------------------------------------


def _complete(n):
    return n, combinations(range(n), 2)


def _complete_bipartite(p, q):
    return p + q, [(a, p + b) for a in range(p) for b in range(q)]


def _cycle(n):
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    return n, [(i, (i + 1) % n) for i in range(n)]


def _petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return 10, outer + inner + spokes


def _heawood():
    ring = [(i, (i + 1) % 14) for i in range(14)]
    chords = [(i, (i + 5) % 14) for i in range(0, 14, 2)]
    return 14, ring + chords


def _octahedron():
    return 6, [(u, v) for u, v in combinations(range(6), 2) if v - u != 3]


def _prism(p):
    if p < 3:
        raise GraphError("prism needs p >= 3")
    outer = [(i, (i + 1) % p) for i in range(p)]
    inner = [(p + i, p + (i + 1) % p) for i in range(p)]
    return 2 * p, outer + inner + [(i, i + p) for i in range(p)]


def _matching_join_kk(p):
    left = list(combinations(range(p), 2))
    right = [(p + u, p + v) for u, v in left]
    return 2 * p, left + right + [(i, i + p) for i in range(p)]


def _matching_join_kbar(p):
    return 2 * p, list(combinations(range(p), 2)) + [(i, i + p) for i in range(p)]


def _join_kkbar(p):
    inside = list(combinations(range(p), 2))
    return 2 * p, inside + [(a, p + b) for a in range(p) for b in range(p)]


def _hypercube(d):
    n = 1 << d
    return n, [(u, u | 1 << b) for u in range(n) for b in range(d) if not u >> b & 1]


FAMILIES = {
    "complete": (_complete, 1),
    "complete_bipartite": (_complete_bipartite, 2),
    "cycle": (_cycle, 1),
    "petersen": (_petersen, 0),
    "heawood": (_heawood, 0),
    "octahedron": (_octahedron, 0),
    "prism": (_prism, 1),
    "matching_join_kk": (_matching_join_kk, 1),
    "matching_join_kbar": (_matching_join_kbar, 1),
    "join_kkbar": (_join_kkbar, 1),
    "hypercube": (_hypercube, 1),
}


def build_named(family: str, params: Sequence[int] = (), budgets: Budgets = DEFAULT_BUDGETS) -> Graph:
    try:
        ctor, arity = FAMILIES[family]
    except KeyError:
        raise GraphError(f"unknown graph family {family!r}") from None
    params = tuple(int(p) for p in params)
    if len(params) != arity:
        raise GraphError(f"{family} takes {arity} parameter(s), got {len(params)}")
    if any(p < 1 for p in params):
        raise GraphError("family parameters must be positive")
    if family == "hypercube":
        # 2^d vertices: check before building the edge list
        budgets.check("vertex count", 1 << params[0], budgets.max_n)
    n, edges = ctor(*params)
    budgets.check("vertex count", n, budgets.max_n)
    label = family if not params else f"{family} {' '.join(map(str, params))}"
    return Graph.from_edges(n, edges, name=label, budgets=budgets)


_SPEC_PATTERNS = [
    (re.compile(r"K(\d+),(\d+)"), "complete_bipartite"),
    (re.compile(r"K(\d+)"), "complete"),
    (re.compile(r"C(\d+)"), "cycle"),
    (re.compile(r"Q(\d+)"), "hypercube"),
    (re.compile(r"prism(\d+)"), "prism"),
    (re.compile(r"KMK(\d+)"), "matching_join_kk"),
    (re.compile(r"KMKbar(\d+)"), "matching_join_kbar"),
    (re.compile(r"KKbar(\d+)"), "join_kkbar"),
]


def parse_graph_spec(text: str, budgets: Budgets = DEFAULT_BUDGETS) -> Graph:
    """Parse the CLI mini-language.

    Accepted forms: ``K5``, ``K3,4``, ``C6``, ``Q3``, ``prism4``, ``KMK3``
    (K_p joined to K_p by a matching), ``KMKbar3`` (pendant edges on K_p),
    ``KKbar3`` (K_p joined to its complement), ``petersen``, ``heawood``,
    ``octahedron``, ``family:p,q`` for any family name, and ``g6:<graph6>``.
    """
    s = text.strip()
    if s.startswith("g6:"):
        return parse_graph6(s[3:], budgets=budgets)
    if ":" in s:
        family, _, rest = s.partition(":")
        try:
            params = [int(x) for x in rest.split(",") if x.strip()]
        except ValueError:
            raise GraphError(f"parameters of {family!r} must be integers, got {rest!r}") from None
        return build_named(family.strip(), params, budgets)
    if s.lower() in FAMILIES and FAMILIES[s.lower()][1] == 0:
        return build_named(s.lower(), (), budgets)
    for pattern, family in _SPEC_PATTERNS:
        match = pattern.fullmatch(s)
        if match:
            return build_named(family, [int(x) for x in match.groups()], budgets)
    raise GraphError(f"cannot parse graph spec {text!r}")


# -- graph6 ------------------------------------------------------------------


def _encode_n(n: int) -> list[int]:
    if n <= 62:
        return [n]
    if n <= 258047:
        return [63, (n >> 12) & 63, (n >> 6) & 63, n & 63]
    return [63, 63] + [(n >> s) & 63 for s in range(30, -1, -6)]


def encode_graph6(g: Graph) -> str:
    bits = []
    for v in range(1, g.n):
        a = g.adjacency[v]
        bits.extend(a >> u & 1 for u in range(v))
    bits.extend([0] * (-len(bits) % 6))
    groups = [
        sum(bit << (5 - j) for j, bit in enumerate(bits[i : i + 6]))
        for i in range(0, len(bits), 6)
    ]
    return "".join(chr(63 + x) for x in _encode_n(g.n) + groups)


def parse_graph6(text: str, budgets: Budgets = DEFAULT_BUDGETS) -> Graph:
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise Graph6Error("empty graph6 string")
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in data):
        raise Graph6Error("character outside the graph6 range")
    if data[0] < 63:
        n, body = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        body = data[4:]
    elif len(data) >= 8:
        n = 0
        for x in data[2:8]:
            n = n << 6 | x
        body = data[8:]
    else:
        raise Graph6Error("malformed graph6 header")
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"length mismatch: expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}")
    budgets.check("vertex count", n, budgets.max_n)
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            if body[k // 6] >> (5 - k % 6) & 1:
                edges.append((u, v))
            k += 1
    pad = len(body) * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    return Graph.from_edges(n, edges, name=f"g6:{s}", budgets=budgets)
