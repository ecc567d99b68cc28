"""Cycle-containment counts, inclusion-exclusion for negative cycles, and the
per-length polynomials generated by a permutable matching.

For a negative edge set N, an l-cycle is negative when it meets N in an odd
number of edges.  Writing g_l(Y) for the number of l-cycles containing Y,

    c_l^-(N) = sum over nonempty Y subset of N of (-2)^(|Y|-1) g_l(Y),

and with a permutable matching g_l(Y) depends only on |Y| = k, giving the
table G_l(k) and the polynomial p_l(s) = sum_k (-2)^(k-1) C(s, k) G_l(k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
from typing import Optional

from ncv.config import DEFAULT_BUDGETS, Budgets
from ncv.cycles import CycleCatalog
from ncv.signed import GraphMismatch, NegCycleVector, Signing
from ncv.symmetry import AutomorphismGroup, Matching, is_permutable


class NotPermutable(ValueError):
    pass


def _submasks(mask: int):
    """All submasks of ``mask``, including 0 and ``mask`` itself."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def g_count(cat: CycleCatalog, y: int, length: int) -> int:
    return sum(1 for c in cat.by_length.get(length, ()) if c & y == y)


def f_count(cat: CycleCatalog, negatives: int, x: int, length: int) -> int:
    """Number of l-cycles meeting ``negatives`` exactly in ``x``, by Moebius inversion over g."""
    if x & ~negatives:
        raise ValueError("x must be a subset of the negative edge set")
    total = 0
    rest = negatives & ~x
    for extra in _submasks(rest):
        sign = -1 if extra.bit_count() & 1 else 1
        total += sign * g_count(cat, x | extra, length)
    return total


def f_count_direct(cat: CycleCatalog, negatives: int, x: int, length: int) -> int:
    return sum(1 for c in cat.by_length.get(length, ()) if c & negatives == x)


def ncv_inclusion_exclusion(cat: CycleCatalog, s: Signing, budgets: Budgets = DEFAULT_BUDGETS) -> NegCycleVector:
    if cat.graph != s.graph:
        raise GraphMismatch("catalog and signing are on different graphs")
    neg = s.negatives
    budgets.check("negative edge count", neg.bit_count(), budgets.max_subset)
    spec = cat.spectrum
    vals = []
    for l in spec:
        total = 0
        for y in _submasks(neg):
            if y:
                total += (-2) ** (y.bit_count() - 1) * g_count(cat, y, l)
        vals.append(total)
    return NegCycleVector(tuple(spec), tuple(vals))


@dataclass(frozen=True)
class MatchingAnalysis:
    """Counting data of one permutable matching against every cycle length.

    ``G[l]`` lists G_l(1..m).  ``d`` has an entry only for lengths whose cycles
    meet the matching; ``mu`` is total and is 0 exactly for the others.
    """

    matching: Matching
    spectrum: tuple[int, ...]
    cycle_counts: dict[int, int]
    G: dict[int, tuple[int, ...]]
    d: dict[int, int]
    mu: dict[int, int]
    alpha: dict[int, Fraction] = field(default_factory=dict)

    @property
    def m(self) -> int:
        return self.matching.size

    @property
    def delta_odd(self) -> set[int]:
        return {d for l, d in self.d.items() if l % 2}

    @property
    def delta_even(self) -> set[int]:
        return {d for l, d in self.d.items() if l % 2 == 0}

    def table(self) -> list[dict]:
        rows = []
        for l in self.spectrum:
            rows.append(
                {
                    "length": l,
                    "G": list(self.G[l]),
                    "d": self.d.get(l),
                    "mu": self.mu[l],
                    "alpha": str(self.alpha[l]) if l in self.alpha else None,
                }
            )
        return rows


def analyze_matching(
    cat: CycleCatalog,
    mat: Matching,
    grp: Optional[AutomorphismGroup] = None,
    verify_subsets: bool = True,
) -> MatchingAnalysis:
    """Build the G_l(k) table and derived degrees for a permutable matching.

    When ``grp`` is given, permutability is checked first; G_l(k) is read off one
    k-subset and, with ``verify_subsets``, confirmed on all the others.
    """
    g = cat.graph
    if mat.graph != g:
        raise GraphMismatch("matching and catalog are on different graphs")
    if grp is not None and not is_permutable(g, mat, grp):
        raise NotPermutable(f"matching {mat.pairs()} is not permutable")
    ids = mat.edge_ids
    m = len(ids)
    spec = tuple(cat.spectrum)
    G: dict[int, tuple[int, ...]] = {}
    d: dict[int, int] = {}
    mu: dict[int, int] = {}
    alpha: dict[int, Fraction] = {}
    for l in spec:
        row = []
        for k in range(1, m + 1):
            subsets = combinations(ids, k)
            first = sum(1 << i for i in next(subsets))
            value = g_count(cat, first, l)
            if verify_subsets:
                for sub in subsets:
                    other = g_count(cat, sum(1 << i for i in sub), l)
                    if other != value:
                        raise NotPermutable(
                            f"G_{l}({k}) depends on the subset ({value} vs {other}); matching is not permutable"
                        )
            row.append(value)
        G[l] = tuple(row)
        mu[l] = max((c & mat.edges).bit_count() for c in cat.by_length[l])
        positive = [k for k, v in enumerate(row, start=1) if v > 0]
        if positive:
            dl = positive[-1]
            d[l] = dl
            alpha[l] = Fraction((-2) ** (dl - 1) * row[dl - 1], factorial(dl))
    return MatchingAnalysis(mat, spec, cat.counts, G, d, mu, alpha)


def p_poly(analysis: MatchingAnalysis, length: int, s: int) -> int:
    """c_l^- of the signing whose negative edges are any s edges of the matching."""
    if not 0 <= s <= analysis.m:
        raise ValueError(f"s must lie in 0..{analysis.m}")
    if length not in analysis.G:
        raise ValueError(f"length {length} is not in the cycle spectrum")
    row = analysis.G[length]
    return sum((-2) ** (k - 1) * comb(s, k) * row[k - 1] for k in range(1, s + 1))


def submatching_mask(mat: Matching, s: int) -> int:
    """The first s matching edges by id, as a negative-edge mask."""
    return sum(1 << i for i in mat.edge_ids[:s])
