import random
from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import catalog, graph, group
from ncv.config import BudgetExceeded, Budgets
from ncv.counting import (
    NotPermutable,
    _submasks,
    analyze_matching,
    f_count,
    f_count_direct,
    g_count,
    ncv_inclusion_exclusion,
    p_poly,
    submatching_mask,
)
from ncv.signed import Signing, ncv
from ncv.symmetry import Matching, find_permutable_matchings, max_permutable_size
from oracles import cycle_edge_sets_brute, negative_counts_brute


def test_g_count_examples():
    g, cat = graph("complete", 4), catalog("complete", 4)
    assert g_count(cat, g.edges_mask([(0, 1)]), 3) == 2
    assert g_count(cat, g.edges_mask([(0, 1), (2, 3)]), 4) == 2
    for l in cat.spectrum:
        assert g_count(cat, 0, l) == cat.count(l)


def test_f_count_examples():
    g, cat = graph("complete", 4), catalog("complete", 4)
    n = g.edges_mask([(0, 1), (2, 3)])
    assert f_count(cat, n, g.edges_mask([(0, 1)]), 4) == 0
    assert f_count(cat, n, n, 4) == 2
    assert f_count(cat, n, 0, 4) == 1
    with pytest.raises(ValueError):
        f_count(cat, n, g.edges_mask([(0, 2)]), 4)


@pytest.mark.parametrize("key", [("complete", 5), ("petersen",), ("prism", 4)])
def test_moebius_round_trip(key):
    g, cat = graph(*key), catalog(*key)
    rng = random.Random(4)
    for _ in range(15):
        neg = rng.getrandbits(g.m) & rng.getrandbits(g.m)
        for l in cat.spectrum:
            f = {x: f_count(cat, neg, x, l) for x in _submasks(neg)}
            assert all(f[x] == f_count_direct(cat, neg, x, l) for x in f)
            for y in f:
                assert g_count(cat, y, l) == sum(v for x, v in f.items() if x & y == y)


def test_submasks_enumerates_all():
    assert sorted(_submasks(0b1011)) == [0, 1, 2, 3, 8, 9, 10, 11]
    assert list(_submasks(0)) == [0]


def test_inclusion_exclusion_examples():
    g = graph("complete", 4)
    s = Signing.from_pairs(g, [(0, 1), (2, 3)])
    assert ncv_inclusion_exclusion(catalog("complete", 4), s).values == (4, 0)
    g5 = graph("complete", 5)
    s5 = Signing.from_pairs(g5, [(0, 1), (2, 3)])
    assert ncv_inclusion_exclusion(catalog("complete", 5), s5).values == (6, 8, 4)


IE_GRAPHS = [
    ("complete", 4),
    ("complete", 5),
    ("complete", 6),
    ("petersen",),
    ("prism", 3),
    ("hypercube", 3),
    ("complete_bipartite", 3, 3),
    ("octahedron",),
]


@pytest.mark.parametrize("key", IE_GRAPHS)
def test_inclusion_exclusion_equals_direct(key):
    g, cat = graph(*key), catalog(*key)
    rng = random.Random(hash(key) & 0xFFFF)
    for _ in range(200):
        s = Signing(g, rng.getrandbits(g.m))
        assert ncv_inclusion_exclusion(cat, s) == ncv(cat, s)


def test_inclusion_exclusion_against_brute_oracle():
    g, cat = graph("complete", 5), catalog("complete", 5)
    rng = random.Random(8)
    for _ in range(20):
        s = Signing(g, rng.getrandbits(g.m))
        assert ncv_inclusion_exclusion(cat, s).entries == negative_counts_brute(g.n, g.edges, s.pairs())


def test_inclusion_exclusion_budget():
    g = graph("complete", 6)
    with pytest.raises(BudgetExceeded):
        ncv_inclusion_exclusion(catalog("complete", 6), Signing(g, g.full_mask), Budgets(max_subset=10))


# -- matching analysis ---------------------------------------------------------


def test_petersen_mu_tables():
    g, cat, grp = graph("petersen"), catalog("petersen"), group("petersen")
    kind1, kind2 = find_permutable_matchings(g, 3, grp)
    a = analyze_matching(cat, kind1, grp)
    assert a.mu == {5: 2, 6: 3, 8: 2, 9: 3}
    b = analyze_matching(cat, kind2, grp)
    assert b.mu != a.mu


def test_heawood_mu_tables():
    g, cat, grp = graph("heawood"), catalog("heawood"), group("heawood")
    kinds = [analyze_matching(cat, k, grp) for k in find_permutable_matchings(g, 3, grp)]
    assert kinds[0].mu == {6: 3, 8: 2, 10: 3, 12: 3, 14: 3}
    for other in kinds[1:]:
        assert other.mu == {6: 2, 8: 2, 10: 3, 12: 3, 14: 3}


def test_k6_hamiltonian_count_through_perfect_matching():
    g = graph("complete", 6)
    pm = [(0, 1), (2, 3), (4, 5)]
    want = sum(1 for c in cycle_edge_sets_brute(6, g.edges) if len(c) == 6 and set(pm) <= c)
    a = analyze_matching(catalog("complete", 6), Matching.from_pairs(g, pm), group("complete", 6))
    assert a.G[6][2] == want == 8


def test_degree_and_alpha():
    g = graph("complete", 6)
    a = analyze_matching(catalog("complete", 6), Matching.from_pairs(g, [(0, 1), (2, 3), (4, 5)]))
    assert a.d == {3: 1, 4: 2, 5: 2, 6: 3}
    assert a.delta_odd == {1, 2} and a.delta_even == {2, 3}
    assert a.alpha[6] == Fraction(4 * 8, 6)
    assert [r["length"] for r in a.table()] == [3, 4, 5, 6]


def test_not_permutable_raises():
    from ncv.cycles import enumerate_cycles
    from ncv.graph import Graph
    from ncv.symmetry import automorphisms

    paw = Graph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
    mat = Matching.from_pairs(paw, [(0, 3), (1, 2)])
    with pytest.raises(NotPermutable):
        analyze_matching(enumerate_cycles(paw), mat, automorphisms(paw))


def test_subset_dependence_detected_without_group():
    # C_6 plus the chord 0-3: the chord lies on both 4-cycles, edge 1-2 on only one
    from ncv.cycles import enumerate_cycles
    from ncv.graph import Graph

    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
    with pytest.raises(NotPermutable):
        analyze_matching(enumerate_cycles(g), Matching.from_pairs(g, [(1, 2), (0, 3)]))


def test_p_poly_examples():
    g5 = graph("complete", 5)
    a5 = analyze_matching(catalog("complete", 5), Matching.from_pairs(g5, [(0, 1), (2, 3)]))
    assert p_poly(a5, 5, 2) == 4
    assert all(p_poly(a5, l, 0) == 0 for l in a5.spectrum)
    g6 = graph("complete", 6)
    a6 = analyze_matching(catalog("complete", 6), Matching.from_pairs(g6, [(0, 1), (2, 3), (4, 5)]))
    assert p_poly(a6, 3, 3) == 12
    assert p_poly(a6, 6, 3) == 32
    with pytest.raises(ValueError):
        p_poly(a6, 3, 4)
    with pytest.raises(ValueError):
        p_poly(a6, 7, 1)


POLY_GRAPHS = [
    ("complete", 4),
    ("complete", 5),
    ("complete", 6),
    ("complete", 7),
    ("complete_bipartite", 2, 3),
    ("complete_bipartite", 3, 3),
    ("complete_bipartite", 3, 4),
    ("complete_bipartite", 4, 4),
    ("petersen",),
    ("heawood",),
    ("prism", 3),
    ("prism", 4),
    ("hypercube", 3),
    ("octahedron",),
    ("matching_join_kk", 3),
    ("matching_join_kbar", 3),
    ("join_kkbar", 3),
]


def _permutable_analyses(key):
    g, cat, grp = graph(*key), catalog(*key), group(*key)
    m = max_permutable_size(g, grp)
    return [analyze_matching(cat, mat, grp) for mat in find_permutable_matchings(g, m, grp)]


@pytest.mark.parametrize("key", POLY_GRAPHS)
def test_p_poly_equals_direct_for_every_s(key):
    g, cat = graph(*key), catalog(*key)
    analyses = _permutable_analyses(key)
    assert analyses
    for a in analyses:
        for s in range(a.m + 1):
            # any s matching edges, not only the first s
            ids = random.Random(s).sample(a.matching.edge_ids, s)
            direct = ncv(cat, Signing.from_ids(g, ids)).entries
            assert all(p_poly(a, l, s) == direct[l] for l in cat.spectrum)
            assert ncv(cat, Signing(g, submatching_mask(a.matching, s))).entries == direct


@pytest.mark.parametrize("key", POLY_GRAPHS)
def test_finite_differences_give_degree(key):
    for a in _permutable_analyses(key):
        for l in a.spectrum:
            vals = [p_poly(a, l, s) for s in range(a.m + 1)]
            diffs = [vals]
            while len(diffs[-1]) > 1:
                prev = diffs[-1]
                diffs.append([b - c for c, b in zip(prev, prev[1:])])
            top = max((k for k in range(len(diffs)) if any(diffs[k])), default=None)
            assert top == a.d.get(l)
            if top is not None:
                assert diffs[top][0] == a.alpha[l] * factorial(top)


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 7), st.data())
def test_kn_submatching_counts_by_size_only(n, data):
    g, cat = graph("complete", n), catalog("complete", n)
    pm = [(2 * i, 2 * i + 1) for i in range(n // 2)]
    s = data.draw(st.integers(0, len(pm)))
    a_ids = data.draw(st.permutations(range(len(pm))))[:s]
    b_ids = data.draw(st.permutations(range(len(pm))))[:s]
    a = Signing.from_pairs(g, [pm[i] for i in a_ids])
    b = Signing.from_pairs(g, [pm[i] for i in b_ids])
    assert ncv(cat, a) == ncv(cat, b)
    assert ncv(cat, a).values[0] == s * (n - 2)
    assert ncv(cat, a).values[1] == s * (n - 2) * (n - 3) - 4 * comb(s, 2)
