import itertools
import math
import random

import networkx as nx
import numpy as np
import pytest

from algcomb.errors import GuardExceeded, PreconditionError, TheoremViolation
from algcomb.specgraph import (
    ConsistentColoring,
    Graph,
    SignedAdjacency,
    adjacency,
    canonical_form,
    chromatic_number,
    chromatic_polynomial,
    complement,
    complement_spectrum_check,
    complete,
    consistent_coloring,
    cycle,
    ekr_via_kneser,
    empty_graph,
    find_isomorphism,
    friendship_brute_scan,
    friendship_check,
    greedy_coloring_bound,
    hoffman_bound,
    hoffman_report,
    hypercube,
    incidence_identities_check,
    independence_brute,
    is_bipartite,
    is_consistent,
    k4_minus_edge,
    kneser,
    kneser_spectrum_formula,
    maxcut_brute,
    maxcut_report,
    maxcut_spectral_bound,
    path,
    petersen,
    poly_value,
    schwenk_obstruction_check,
    sensitivity_check,
    signed_hypercube,
    signed_maxdeg_bound,
    spectrum,
    spectrum_is_symmetric,
    star,
    windmill,
)
from oracles import count_colourings, literal_independence, literal_maxcut


def atlas_graphs(max_n=6):
    for g in nx.graph_atlas_g()[1:]:
        if g.number_of_nodes() <= max_n:
            yield Graph.of(g.number_of_nodes(), g.edges())


def test_adjacency_examples():
    assert adjacency(complete(3)) == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert adjacency(Graph.of(1, [])) == [[0]]
    assert adjacency(k4_minus_edge()) == [[0, 1, 1, 0], [1, 0, 1, 1], [1, 1, 0, 1], [0, 1, 1, 0]]
    multi = Graph.of(2, [(0, 1), (1, 0), (1, 1)])
    assert adjacency(multi) == [[0, 2], [2, 1]] and not multi.is_simple
    with pytest.raises(PreconditionError):
        Graph.of(2, [(0, 2)])


def test_graph_text_and_json():
    G = Graph.from_text("0 1\n# comment\n1 2\n")
    assert G == path(3) and Graph.from_json(G.to_json()) == G


def test_incidence_identities():
    for G in [complete(3), path(3), petersen(), cycle(5), star(4)]:
        assert incidence_identities_check(G)["ok"]
    assert incidence_identities_check(petersen())["regular_degree"] == 3


def test_petersen_and_kneser():
    P = petersen()
    assert (P.n, P.m, P.regular_degree()) == (10, 15, 3)
    phi = find_isomorphism(kneser(5, 2), P)
    assert phi is not None and sorted(phi) == list(range(10))
    assert sorted(kneser(4, 2).degrees()) == [1] * 6 and kneser(4, 2).m == 3
    assert canonical_form(kneser(6, 1)) == canonical_form(complete(6))
    assert find_isomorphism(cycle(6), Graph.of(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])) is None


def test_canonical_form_matches_networkx():
    graphs = list(atlas_graphs(5))
    rng = random.Random(2)
    for G in rng.sample(graphs, 25):
        for H in rng.sample(graphs, 5):
            same = canonical_form(G) == canonical_form(H)
            gx, hx = nx.Graph(list(G.edges)), nx.Graph(list(H.edges))
            gx.add_nodes_from(range(G.n))
            hx.add_nodes_from(range(H.n))
            assert same == nx.is_isomorphic(gx, hx)
            assert same == (find_isomorphism(G, H) is not None)
    with pytest.raises(GuardExceeded):
        canonical_form(petersen())


def test_spectra():
    assert spectrum(petersen()).matches([3] + [1] * 5 + [-2] * 4)
    for n in range(2, 7):
        assert spectrum(complete(n)).matches([n - 1] + [-1] * (n - 1))
    assert spectrum_is_symmetric(spectrum(cycle(6))) and is_bipartite(cycle(6))
    assert not spectrum_is_symmetric(spectrum(cycle(5))) and not is_bipartite(cycle(5))
    for G in atlas_graphs(6):
        assert is_bipartite(G) == spectrum_is_symmetric(spectrum(G))


def test_kneser_spectrum():
    assert kneser_spectrum_formula(5, 2) == [3] + [1] * 5 + [-2] * 4
    assert kneser_spectrum_formula(4, 2) == [1, 1, 1, -1, -1, -1]
    for m in range(2, 9):
        for r in range(1, m // 2 + 1):
            kneser_spectrum_formula(m, r)
    with pytest.raises(PreconditionError):
        kneser_spectrum_formula(5, 3)


def test_hoffman_and_independence():
    assert independence_brute(petersen()) == 4 and abs(hoffman_bound(petersen()) - 4) < 1e-9
    assert hoffman_bound(complete(5)) == pytest.approx(1) and independence_brute(complete(5)) == 1
    assert hoffman_bound(cycle(5)) == pytest.approx(5 * 1.6180339887 / 3.6180339887)
    assert independence_brute(cycle(5)) == 2
    with pytest.raises(PreconditionError):
        hoffman_bound(path(3))
    with pytest.raises(PreconditionError):
        hoffman_bound(empty_graph(3))
    for G in atlas_graphs(6):
        assert independence_brute(G) == literal_independence(G.n, G.edges)
        if G.regular_degree():
            assert hoffman_report(G)["ok"]
    for G in [hypercube(3), hypercube(4), kneser(6, 2), cycle(7)]:
        assert hoffman_report(G)["ok"]


def test_ekr():
    assert ekr_via_kneser(5, 2) == 4
    assert ekr_via_kneser(6, 3) == 10
    for r in range(1, 5):
        assert ekr_via_kneser(2 * r, r) == math.comb(2 * r - 1, r - 1)
    with pytest.raises(PreconditionError):
        ekr_via_kneser(5, 3)


def test_maxcut():
    assert maxcut_brute(petersen()) == 12
    r = maxcut_report(petersen())
    assert r["lower"] == 7.5 and r["upper"] == pytest.approx(12.5)
    assert maxcut_brute(complete(4)) == 4 and maxcut_spectral_bound(complete(4)) == pytest.approx(4)
    assert maxcut_brute(cycle(6)) == 6
    for G in atlas_graphs(6):
        assert maxcut_brute(G) == literal_maxcut(G.n, G.edges)
        maxcut_report(G)
    with pytest.raises(GuardExceeded):
        maxcut_brute(complete(25))


def test_schwenk():
    r = schwenk_obstruction_check()
    assert r["ok"] and r["min_dist_to_minus3"] == pytest.approx(1.0)
    assert r["eigenvalue1_dimension"] == 5 and r["dimension_count_excess"] == 1


def test_friendship():
    assert friendship_check(windmill(3)) and windmill(3).n == 7
    assert not friendship_check(cycle(4))
    r = friendship_brute_scan(6)
    assert r["all_windmills"] and r["by_n"]["3"]["friendship_graphs"] == 1
    assert r["by_n"]["5"]["friendship_graphs"] == 15  # labelled copies of windmill(2)
    assert sum(v["friendship_graphs"] for k, v in r["by_n"].items() if k in "246") == 0
    with pytest.raises(GuardExceeded):
        friendship_brute_scan(8)


def test_chromatic_polynomial_examples():
    assert chromatic_polynomial(complete(3)) == [0, 2, -3, 1]
    assert chromatic_polynomial(Graph.of(2, [(0, 1), (1, 1)])) == [0]
    P = chromatic_polynomial(petersen())
    assert poly_value(P, 3) == 120 == count_colourings(10, petersen().edges, 3)
    assert poly_value(P, 2) == 0 and chromatic_number(petersen()) == 3
    assert chromatic_polynomial(Graph.of(2, [(0, 1), (0, 1)])) == chromatic_polynomial(path(2))
    with pytest.raises(PreconditionError):
        chromatic_number(Graph.of(1, [(0, 0)]))
    with pytest.raises(GuardExceeded):
        chromatic_polynomial(complete(8))


def test_chromatic_polynomial_matches_enumeration():
    for G in atlas_graphs(6):
        P = chromatic_polynomial(G)
        for k in range(5):
            assert poly_value(P, k) == count_colourings(G.n, G.edges, k), (G, k)
    rng = random.Random(4)
    for _ in range(30):
        n = rng.randint(1, 6)
        edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(rng.randint(0, 8))]
        G = Graph.of(n, edges)
        for k in range(4):
            assert poly_value(chromatic_polynomial(G), k) == count_colourings(n, G.edges, k)


def test_greedy():
    assert greedy_coloring_bound(complete(4)) == 4
    assert greedy_coloring_bound(cycle(5)) <= 3
    assert greedy_coloring_bound(star(5)) == 2
    for G in atlas_graphs(6):
        assert chromatic_number(G) <= greedy_coloring_bound(G) <= G.max_degree() + 1


def test_consistent_coloring():
    c = consistent_coloring(2)
    assert c.num_colors == 3 and is_consistent(c)
    for t in range(1, 5):
        c = consistent_coloring(t)
        assert is_consistent(c) and c.num_colors == 2**t - 1
    assert is_consistent(ConsistentColoring(3, (0, 1, 2)))
    # pairs in order 01 02 03 12 13 23: 01 and 02 share vertex 0
    assert not is_consistent(ConsistentColoring(4, (0, 0, 1, 2, 2, 1)))
    # proper but not the matching pattern
    assert not is_consistent(ConsistentColoring(4, (0, 1, 2, 2, 3, 0)))
    with pytest.raises(GuardExceeded):
        consistent_coloring(6)


def test_sensitivity():
    B2 = np.array(signed_hypercube(2).matrix)
    assert (B2 @ B2 == 2 * np.eye(4)).all()
    r3 = sensitivity_check(3)
    assert r3["ok"] and r3["W_sets_scanned"] == 56 and r3["min_max_degree"] == 2
    r4 = sensitivity_check(4)
    assert r4["ok"] and r4["W_sets_scanned"] == 11440 and r4["min_max_degree"] == 2
    for n in range(1, 11):
        assert sensitivity_check(n, samples=2)["Bn_squared_is_nId"]
    with pytest.raises(GuardExceeded):
        sensitivity_check(11)


def test_signed_maxdeg():
    K3 = SignedAdjacency.of(adjacency(complete(3)))
    r = signed_maxdeg_bound(K3)
    assert r["lambda_max"] == pytest.approx(2) and r["max_degree"] == 2
    r = signed_maxdeg_bound(signed_hypercube(2))
    assert r["lambda_max"] == pytest.approx(math.sqrt(2)) and r["max_degree"] == 2
    r = signed_maxdeg_bound(SignedAdjacency.of([[0, -1], [-1, 0]]))
    assert r["lambda_max"] == pytest.approx(1) and r["max_degree"] == 1
    with pytest.raises(PreconditionError):
        SignedAdjacency.of([[0, 1], [-1, 0]])
    rng = random.Random(5)
    for _ in range(50):
        n = rng.randint(1, 7)
        M = [[0] * n for _ in range(n)]
        for i, j in itertools.combinations(range(n), 2):
            M[i][j] = M[j][i] = rng.choice((-1, 0, 1))
        assert signed_maxdeg_bound(SignedAdjacency.of(M))["ok"]


def test_complement_spectrum():
    r = complement_spectrum_check(petersen())
    assert r["ok"] and r["actual"] == [6] + [1] * 4 + [-2] * 5
    assert complement_spectrum_check(complete(5))["actual"] == [0] * 5
    assert complement_spectrum_check(cycle(5))["ok"]
    assert complement_spectrum_check(hypercube(3))["ok"]
    with pytest.raises(PreconditionError):
        complement_spectrum_check(path(3))
    assert set(complement(complement(petersen())).edges) == set(petersen().edges)
