from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional, Sequence

from ncv.config import DEFAULT_BUDGETS, Budgets
from ncv.counting import MatchingAnalysis, p_poly, submatching_mask
from ncv.cycles import CycleCatalog
from ncv.signed import (
    GraphMismatch,
    Signing,
    class_count_bits,
    ncv,
    ncv_batch,
    representative_masks,
)
from ncv.symmetry import AutomorphismGroup, Matching, is_permutable


class HypothesisNotMet(ValueError):
    """The cycle-intersection hypothesis behind the nu bound fails for this matching."""


@dataclass(frozen=True)
class IntMatrix:
    entries: tuple[tuple[int, ...], ...]
    cols: int

    @classmethod
    def of(cls, rows: Iterable[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        entries = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        if any(len(r) != cols for r in entries):
            raise ValueError("ragged matrix")
        return cls(entries, cols)

    @property
    def rows(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


def exact_rank(matrix) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Pivots are chosen by largest magnitude in the column; every division by
    the previous pivot is exact.
    """
    a = [list(map(int, r)) for r in matrix]
    if not a:
        return 0
    nrows, ncols = len(a), len(a[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = max(range(r, nrows), key=lambda i: abs(a[i][c]))
        if a[piv][c] == 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, nrows):
            f = a[i][c]
            row = a[i]
            top = a[r]
            for j in range(c + 1, ncols):
                row[j] = (p * row[j] - f * top[j]) // prev
            row[c] = 0
        prev = p
        r += 1
    return r


class IncrementalBasis:
    """Integer row-echelon basis that absorbs rows one at a time."""

    def __init__(self, cols: int):
        self.cols = cols
        self.rows: list[tuple[int, list[int]]] = []  # (pivot column, row), sorted by pivot

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, vec: Sequence[int]) -> bool:
        v = [int(x) for x in vec]
        for p, b in self.rows:
            if v[p]:
                bp, vp = b[p], v[p]
                v = [bp * x - vp * y for x, y in zip(v, b)]
                g = 0
                for x in v:
                    g = gcd(g, x)
                if g > 1:
                    v = [x // g for x in v]
        for j, x in enumerate(v):
            if x:
                if x < 0:
                    v = [-y for y in v]
                self.rows.append((j, v))
                self.rows.sort(key=lambda t: t[0])
                return True
        return False

    def extend(self, vecs: Iterable[Sequence[int]], stop_at: Optional[int] = None) -> None:
        for v in vecs:
            self.add(v)
            if stop_at is not None and self.rank >= stop_at:
                return


@dataclass(frozen=True)
class NcvMatrix:
    """Negative cycle vectors of the submatching signings and their negations.

    Columns are odd lengths then even lengths.  Rows: all-positive, sigma_1..sigma_m,
    all-negative, -sigma_1..-sigma_m.
    """

    odd_lengths: tuple[int, ...]
    even_lengths: tuple[int, ...]
    full: IntMatrix
    U: IntMatrix
    R: IntMatrix
    c_odd: tuple[int, ...]
    matching_size: int

    @property
    def columns(self) -> tuple[int, ...]:
        return self.odd_lengths + self.even_lengths

    def natural_rows(self) -> list[tuple[int, ...]]:
        """Rows of ``full`` with columns put back in increasing length order."""
        order = sorted(range(len(self.columns)), key=lambda j: self.columns[j])
        return [tuple(r[j] for j in order) for r in self.full]

    def top_rows(self) -> list[tuple[int, ...]]:
        return self.natural_rows()[: self.matching_size + 1]

    def negated_rows(self) -> list[tuple[int, ...]]:
        return self.natural_rows()[self.matching_size + 1 :]


def build_ncv_matrix(cat: CycleCatalog, analysis: MatchingAnalysis, verify: bool = True) -> NcvMatrix:
    """Assemble the matrix from the matching polynomials and the negation parity rule.

    With ``verify``, every sigma_s row is checked against a direct count on an
    actual s-submatching signing.
    """
    if analysis.matching.graph != cat.graph:
        raise GraphMismatch("analysis and catalog are on different graphs")
    spec = cat.spectrum
    odd = tuple(l for l in spec if l % 2)
    even = tuple(l for l in spec if l % 2 == 0)
    cols = odd + even
    counts = cat.counts
    m = analysis.m

    sigma = [[p_poly(analysis, l, s) for l in cols] for s in range(1, m + 1)]
    if verify:
        for s, row in enumerate(sigma, start=1):
            direct = ncv(cat, Signing(cat.graph, submatching_mask(analysis.matching, s))).entries
            if row != [direct[l] for l in cols]:
                raise AssertionError(f"p_poly row for s={s} disagrees with direct count")

    def negated(row):
        return [counts[l] - x if l % 2 else x for l, x in zip(cols, row)]

    zero = [0] * len(cols)
    full = [zero] + sigma + [negated(zero)] + [negated(r) for r in sigma]
    k = len(odd)
    return NcvMatrix(
        odd_lengths=odd,
        even_lengths=even,
        full=IntMatrix.of(full, len(cols)),
        U=IntMatrix.of([r[:k] for r in sigma], k),
        R=IntMatrix.of([r[k:] for r in sigma], len(even)),
        c_odd=tuple(counts[l] for l in odd),
        matching_size=m,
    )


def block_rank(mat: NcvMatrix) -> tuple[int, int, int]:
    """(rank of full matrix, rank of U stacked on c_odd, rank of R); asserts the first is the sum."""
    full = exact_rank(mat.full)
    u_codd = exact_rank(list(mat.U) + [mat.c_odd]) if mat.odd_lengths else 0
    r = exact_rank(mat.R) if mat.even_lengths else 0
    if full != u_codd + r:
        raise AssertionError(f"block rank identity fails: {full} != {u_codd} + {r}")
    return full, u_codd, r


def lower_bound_main(analysis: MatchingAnalysis) -> int:
    odd = {analysis.mu[l] for l in analysis.spectrum if l % 2}
    even = {analysis.mu[l] for l in analysis.spectrum if l % 2 == 0 and analysis.mu[l] > 0}
    return len(odd) + len(even)


def mu_values(cat: CycleCatalog, mat: Matching) -> dict[int, int]:
    return {l: max((c & mat.edges).bit_count() for c in cat.by_length[l]) for l in cat.spectrum}


def nu_bound(
    cat: CycleCatalog,
    mat: Matching,
    grp: Optional[AutomorphismGroup] = None,
) -> int:
    """nu_odd(m) + nu_even(m), emitted only once its hypothesis is checked on the catalog.

    Every length l < 2m must have an l-cycle containing floor(l/2) matching edges.
    Among lengths l >= 2m, separately for each parity that occurs, at least one
    must have a cycle containing the whole matching.
    """
    if mat.graph != cat.graph:
        raise GraphMismatch("matching and catalog are on different graphs")
    if grp is not None and not is_permutable(cat.graph, mat, grp):
        raise HypothesisNotMet("matching is not permutable")
    m = mat.size
    mu = mu_values(cat, mat)
    total = 0
    for parity in (1, 0):
        lengths = [l for l in cat.spectrum if l % 2 == parity]
        short = [l for l in lengths if l < 2 * m]
        long = [l for l in lengths if l >= 2 * m]
        bad = [l for l in short if mu[l] != l // 2]
        if bad:
            raise HypothesisNotMet(f"no {bad[0]}-cycle meets the matching in {bad[0] // 2} edges")
        if long and not any(mu[l] == m for l in long):
            kind = "odd" if parity else "even"
            raise HypothesisNotMet(f"no {kind} cycle of length >= {2 * m} contains the whole matching")
        total += len(short) + (1 if long else 0)
    return total


def _rank_chunk(args) -> list[list[int]]:
    cat, budgets, start, stop, target = args
    basis = IncrementalBasis(len(cat.spectrum))
    batch = 2048
    masks = list(representative_masks(cat.graph, budgets, start, stop))
    for i in range(0, len(masks), batch):
        basis.extend(ncv_batch(cat, masks[i : i + batch]).tolist(), stop_at=target)
        if basis.rank >= target:
            break
    return [row for _, row in basis.rows]


def dim_exhaustive(
    cat: CycleCatalog,
    budgets: Budgets = DEFAULT_BUDGETS,
    workers: int = 1,
    early_exit: bool = True,
) -> int:
    """dim NCV(G): rank of the vectors of one signing per switching class.

    Stops as soon as the rank reaches |Spec| when ``early_exit`` is set.
    """
    spec = cat.spectrum
    if not spec:
        return 0
    bits = class_count_bits(cat.graph)
    budgets.check("cycle space dimension", bits, budgets.max_class_bits)
    total = 1 << bits
    target = len(spec) if early_exit else len(spec) + 1
    if workers <= 1 or total < 4096:
        chunks = [_rank_chunk((cat, budgets, 0, total, target))]
    else:
        step = -(-total // workers)
        jobs = [(cat, budgets, a, min(a + step, total), target) for a in range(0, total, step)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_rank_chunk, jobs))
    merged = IncrementalBasis(len(spec))
    for rows in chunks:
        merged.extend(rows)
    return merged.rank


def dim_all_signings(cat: CycleCatalog, max_edges: int = 16) -> int:
    """Rank over every one of the 2^|E| signings; only for tiny graphs."""
    m = cat.graph.m
    if m > max_edges:
        raise ValueError(f"2^{m} signings is too many for the all-signings check")
    if not cat.spectrum:
        return 0
    basis = IncrementalBasis(len(cat.spectrum))
    batch = 4096
    for a in range(0, 1 << m, batch):
        basis.extend(ncv_batch(cat, range(a, min(a + batch, 1 << m))).tolist())
    return basis.rank


def matrix_of_vectors(cat: CycleCatalog, masks: Iterable[int]) -> IntMatrix:
    return IntMatrix.of([list(ncv(cat, Signing(cat.graph, mk)).values) for mk in masks], len(cat.spectrum))
