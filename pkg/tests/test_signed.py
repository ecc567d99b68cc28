import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import catalog, graph, group
from ncv.config import BudgetExceeded, Budgets
from ncv.cycles import enumerate_cycles
from ncv.graph import Graph, parse_graph6
from ncv.report import read_corpus
from ncv.signed import (
    GraphMismatch,
    Signing,
    canonical_mask,
    class_representatives,
    collapse_orbits,
    gf2_spaces,
    in_cut_space,
    is_balanced,
    ncv,
    ncv_batch,
    negate,
    representative_masks,
    switch,
    switching_equivalent,
    switching_isomorphic,
)
from oracles import negative_counts_brute, switching_equivalent_brute

FIG1_LEFT = [(0, 1), (2, 4), (3, 4), (4, 5)]
FIG1_RIGHT = [(0, 1), (0, 4), (1, 4)]


def test_ncv_k4_single_edge():
    g = graph("complete", 4)
    assert ncv(catalog("complete", 4), Signing.from_ids(g, [0])).values == (2, 2)


def test_ncv_k6_figure_signing():
    g = graph("complete", 6)
    assert ncv(catalog("complete", 6), Signing.from_pairs(g, FIG1_LEFT)).values == (10, 18, 36, 36)


@pytest.mark.parametrize("family,params", [("complete", (5,)), ("petersen", ()), ("heawood", ())])
def test_ncv_all_positive_is_zero(family, params):
    assert ncv(catalog(family, *params), Signing(graph(family, *params))).is_zero()


def test_ncv_matches_brute_force_orderings():
    g = graph("complete", 5)
    cat = catalog("complete", 5)
    rng = random.Random(7)
    for _ in range(25):
        mask = rng.getrandbits(g.m)
        s = Signing(g, mask)
        assert ncv(cat, s).entries == negative_counts_brute(g.n, g.edges, s.pairs())


@pytest.mark.parametrize("family,params", [("complete", (6,)), ("petersen", ()), ("hypercube", (3,))])
def test_ncv_batch_agrees(family, params):
    g, cat = graph(family, *params), catalog(family, *params)
    rng = random.Random(3)
    masks = [rng.getrandbits(g.m) for _ in range(50)]
    batch = ncv_batch(cat, masks).tolist()
    assert batch == [list(ncv(cat, Signing(g, m)).values) for m in masks]


def test_graph_mismatch():
    with pytest.raises(GraphMismatch):
        ncv(catalog("complete", 4), Signing(graph("complete", 5)))
    with pytest.raises(GraphMismatch):
        switching_equivalent(Signing(graph("complete", 4)), Signing(graph("cycle", 4)))


def test_signing_mask_range():
    with pytest.raises(ValueError):
        Signing(graph("complete", 3), 1 << 3)


# -- switching -------------------------------------------------------------------


def test_switch_whole_vertex_set_is_identity():
    g = graph("petersen")
    s = Signing(g, 0b101100111)
    assert switch(s, range(g.n)) == s


def test_switch_triangle_vertex():
    g = graph("complete", 3)
    s = switch(Signing(g), [0])
    assert s.negatives.bit_count() == 2
    assert ncv(catalog("complete", 3), s).values == (0,)


def test_figure_pair_related_by_one_vertex_switch():
    g = graph("complete", 6)
    left = Signing.from_pairs(g, FIG1_LEFT)
    right = Signing.from_pairs(g, FIG1_RIGHT)
    assert switch(left, [4]) == right
    assert switching_equivalent(left, right)


def test_switch_is_involution():
    g = graph("complete", 6)
    rng = random.Random(11)
    for _ in range(50):
        s = Signing(g, rng.getrandbits(g.m))
        x = [v for v in range(g.n) if rng.random() < 0.5]
        assert switch(switch(s, x), x) == s


SWITCH_GRAPHS = [("complete", (5,)), ("complete", (6,)), ("petersen", ()), ("heawood", ()), ("prism", (4,))]


@pytest.mark.parametrize("family,params", SWITCH_GRAPHS)
@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_switching_preserves_ncv(family, params, data):
    g, cat = graph(family, *params), catalog(family, *params)
    mask = data.draw(st.integers(0, g.full_mask))
    xs = data.draw(st.sets(st.integers(0, g.n - 1)))
    s = Signing(g, mask)
    assert ncv(cat, switch(s, xs)) == ncv(cat, s)
    assert switching_equivalent(s, switch(s, xs))


def test_balance_examples():
    assert is_balanced(catalog("complete", 5), Signing(graph("complete", 5)))
    assert not is_balanced(catalog("complete", 3), Signing.from_ids(graph("complete", 3), [0]))
    g = graph("petersen")
    assert is_balanced(catalog("petersen"), switch(Signing(g), [0, 3, 7]))


def test_single_edges_of_k4_not_equivalent():
    g = graph("complete", 4)
    for i in range(g.m):
        for j in range(g.m):
            a, b = Signing.from_ids(g, [i]), Signing.from_ids(g, [j])
            want = switching_equivalent_brute(g.n, g.edges, a.pairs(), b.pairs())
            assert switching_equivalent(a, b) == want == (i == j)


def test_unbalanced_triangle_not_equivalent_to_positive():
    g = graph("complete", 3)
    assert not switching_equivalent(Signing.from_ids(g, [1]), Signing(g))


def test_switching_equivalence_matches_brute_force():
    g = graph("prism", 3)
    rng = random.Random(5)
    for _ in range(80):
        a, b = Signing(g, rng.getrandbits(g.m)), Signing(g, rng.getrandbits(g.m))
        if rng.random() < 0.5:
            b = switch(a, [v for v in range(g.n) if rng.random() < 0.5])
        assert switching_equivalent(a, b) == switching_equivalent_brute(g.n, g.edges, a.pairs(), b.pairs())


def _all_cuts(g):
    return {g.cut([v for v in range(g.n) if xs >> v & 1]) for xs in range(1 << g.n)}


def _corpus_graphs():
    from importlib import resources

    text = resources.files("ncv").joinpath("data/connected_upto6.g6").read_text()
    return [parse_graph6(s) for _, s in read_corpus(text)]


def test_balance_cut_space_and_zero_vector_agree_on_corpus():
    for g in _corpus_graphs():
        cat = enumerate_cycles(g)
        masks = list(range(1 << g.m))
        cuts = _all_cuts(g)
        if cat.spectrum:
            zero = {m for m, row in zip(masks, ncv_batch(cat, masks).tolist()) if not any(row)}
        else:
            zero = set(masks)
        in_space = {m for m in masks if in_cut_space(g, m)}
        assert zero == cuts == in_space, g.name


# -- GF(2) spaces ----------------------------------------------------------------


@pytest.mark.parametrize("family,params", [("petersen", ()), ("complete", (6,)), ("heawood", ())])
def test_fundamental_cycles(family, params):
    g, cat = graph(family, *params), catalog(family, *params)
    sp = gf2_spaces(g)
    all_cycles = set(cat)
    assert len(sp.cycle_basis) == g.m - g.n + g.component_count
    assert sp.cut_space_dim == g.n - g.component_count
    assert all(c in all_cycles for c in sp.cycle_basis)


def test_spaces_of_disconnected_graph():
    g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)])
    sp = gf2_spaces(g)
    assert g.component_count == 2
    assert len(sp.cycle_basis) == 2
    assert len(list(class_representatives(g))) == 4


# -- isomorphism and representatives ----------------------------------------------


def test_figure_pair_switching_isomorphic():
    g = graph("complete", 6)
    left, right = Signing.from_pairs(g, FIG1_LEFT), Signing.from_pairs(g, FIG1_RIGHT)
    assert switching_isomorphic(left, right, group("complete", 6))


def test_random_images_are_switching_isomorphic():
    g = graph("petersen")
    grp = group("petersen")
    rng = random.Random(9)
    for _ in range(40):
        s = Signing(g, rng.getrandbits(g.m))
        phi = rng.choice(grp.elements)
        xs = [v for v in range(g.n) if rng.random() < 0.5]
        moved = switch(s, xs)
        image = Signing.from_pairs(g, [(phi[u], phi[v]) for u, v in moved.pairs()])
        assert switching_isomorphic(s, image, grp)
        assert switching_isomorphic(image, s, grp.elements)


def test_k4_representatives_and_orbits():
    g = graph("complete", 4)
    reps = list(class_representatives(g))
    assert len(reps) == 8
    assert [r.negatives for r in reps] == sorted(r.negatives for r in reps)
    classes = collapse_orbits(g, [r.negatives for r in reps], group("complete", 4))
    assert len(classes) == 3
    cat = catalog("complete", 4)
    vectors = sorted(ncv(cat, Signing(g, c[0])).values for c in classes)
    assert vectors == [(0, 0), (2, 2), (4, 0)]


def test_k4_orbits_by_brute_force():
    # orbit count from scratch: all 64 signings, relation = exists permutation + switching
    from itertools import permutations

    g = graph("complete", 4)
    perms = list(permutations(range(4)))
    cuts = _all_cuts(g)

    def image(mask, p):
        return g.edges_mask([(p[u], p[v]) for u, v in g.mask_edges(mask)])

    remaining = set(range(1 << g.m))
    orbits = 0
    while remaining:
        m = remaining.pop()
        orbit = {image(m, p) ^ c for p in perms for c in cuts}
        remaining -= orbit
        orbits += 1
    assert orbits == 3


def test_tree_has_one_representative():
    tree = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)])
    assert [r.negatives for r in class_representatives(tree)] == [0]


def test_representatives_are_positive_on_forest():
    g = graph("complete", 5)
    forest = gf2_spaces(g).forest
    assert all(r.negatives & forest == 0 for r in class_representatives(g))


@pytest.mark.parametrize("family,params", [("complete", (5,)), ("petersen", ()), ("prism", (4,))])
def test_every_signing_matches_exactly_one_representative(family, params):
    g = graph(family, *params)
    reps = list(representative_masks(g))
    rng = random.Random(13)
    for _ in range(30):
        s = Signing(g, rng.getrandbits(g.m))
        hits = [r for r in reps if switching_equivalent(s, Signing(g, r))]
        assert hits == [canonical_mask(g, s.negatives)]


def test_representative_budget():
    with pytest.raises(BudgetExceeded):
        list(representative_masks(graph("complete", 8), Budgets(max_class_bits=10)))


# -- negation --------------------------------------------------------------------


def test_negate_petersen_all_negative():
    g = graph("petersen")
    s = negate(Signing(g))
    assert s.negatives == g.full_mask
    assert ncv(catalog("petersen"), s).values == (12, 0, 0, 20)


def test_negate_involution():
    g = graph("heawood")
    s = Signing(g, 0b1011001110001)
    assert negate(negate(s)) == s


def test_negate_k5_single_edge():
    g = graph("complete", 5)
    assert ncv(catalog("complete", 5), negate(Signing.from_ids(g, [0]))).values == (7, 6, 6)


@pytest.mark.parametrize("family,params", [("complete", (5,)), ("complete", (6,)), ("petersen", ())])
@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_negation_parity(family, params, data):
    g, cat = graph(family, *params), catalog(family, *params)
    s = Signing(g, data.draw(st.integers(0, g.full_mask)))
    plus, minus = ncv(cat, s).entries, ncv(cat, negate(s)).entries
    for l in cat.spectrum:
        want = cat.count(l) - plus[l] if l % 2 else plus[l]
        assert minus[l] == want
