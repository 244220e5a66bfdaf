import itertools
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_graph
from graphentropy.combinatorics import (
    all_odd_cuts_at_least,
    chromatic_number,
    clique_cover_by_max_cliques,
    clique_number,
    cut_size,
    independence_number,
    max_weight_independent_set,
    maximal_cliques,
    maximal_independent_sets,
    maximum_cliques,
    maximum_matching_bipartite,
)
from graphentropy.errors import SizeLimitExceeded
from graphentropy.graph import (
    Graph,
    bits,
    bridged_cubic_graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    line_graph,
    petersen_graph,
    star_graph,
)


def brute_maximal_independent(g):
    out = []
    for mask in range(1 << g.n):
        if not g.is_independent(mask):
            continue
        if all(not g.is_independent(mask | (1 << v)) for v in range(g.n) if not mask >> v & 1):
            out.append(mask)
    return sorted(out)


def test_maximal_independent_set_examples():
    assert sorted(map(bits, maximal_independent_sets(cycle_graph(5)))) == [
        [0, 2], [0, 3], [1, 3], [1, 4], [2, 4]
    ]
    assert sorted(maximal_independent_sets(complete_graph(4))) == [1, 2, 4, 8]
    assert maximal_independent_sets(empty_graph(3)) == [0b111]


def test_maximal_independent_sets_match_brute_force():
    rng = np.random.default_rng(11)
    for _ in range(40):
        g = random_graph(rng, int(rng.integers(1, 9)), rng.uniform(0.2, 0.8))
        assert sorted(maximal_independent_sets(g)) == brute_maximal_independent(g)


def test_max_weight_independent_set_examples():
    assert max_weight_independent_set(cycle_graph(5), [Fraction(1, 5)] * 5)[1] == Fraction(2, 5)
    mask, w = max_weight_independent_set(complete_graph(4), [0.1, 0.2, 0.3, 0.4])
    assert bits(mask) == [3] and w == pytest.approx(0.4)
    _, w = max_weight_independent_set(cycle_graph(5), [0.3, 0.2, 0.2, 0.1, 0.2])
    assert w == pytest.approx(0.5)


def test_max_weight_independent_set_matches_enumeration():
    rng = np.random.default_rng(12)
    for _ in range(60):
        n = int(rng.integers(1, 10))
        g = random_graph(rng, n, rng.uniform(0.1, 0.9))
        w = rng.random(n)
        mask, best = max_weight_independent_set(g, w)
        assert g.is_independent(mask)
        ref = max(sum(w[v] for v in bits(s)) for s in brute_maximal_independent(g))
        assert best == pytest.approx(ref, abs=1e-12)


def test_clique_examples():
    omega, cliques = maximum_cliques(cycle_graph(5))
    assert (omega, len(cliques)) == (2, 5)
    assert maximum_cliques(complete_graph(4)) == (4, [15])
    octa, _ = line_graph(complete_graph(4))
    omega, cliques = maximum_cliques(octa)
    assert (omega, len(cliques)) == (3, 8)
    for c in maximal_cliques(petersen_graph()):
        assert petersen_graph().is_clique(c)
    assert clique_number(empty_graph(4)) == 1


def test_bipartite_matching_examples():
    assert len(maximum_matching_bipartite(complete_bipartite(3, 3))) == 3
    assert len(maximum_matching_bipartite(star_graph(7))) == 1
    assert len(maximum_matching_bipartite(cycle_graph(6))) == 3


def test_bipartite_matching_size_matches_brute_force():
    rng = np.random.default_rng(13)
    for _ in range(30):
        a, b = int(rng.integers(1, 5)), int(rng.integers(1, 5))
        edges = [(u, a + v) for u in range(a) for v in range(b) if rng.random() < 0.5]
        g = Graph(a + b, edges)
        if not g.m or min(g.degrees) == 0:
            continue
        best = 0
        for r in range(1, min(a, b) + 1):
            for sub in itertools.combinations(g.edge_list, r):
                ends = [x for e in sub for x in e]
                if len(set(ends)) == len(ends):
                    best = r
        assert len(maximum_matching_bipartite(g)) == best


def test_clique_cover_examples():
    cover = clique_cover_by_max_cliques(cycle_graph(6))
    assert cover is not None and len(cover) == 3
    assert clique_cover_by_max_cliques(star_graph(3)) is None
    two, _ = disjoint_union([complete_graph(3), complete_graph(3)])
    assert sorted(map(sorted, clique_cover_by_max_cliques(two))) == [[0, 1, 2], [3, 4, 5]]


def test_odd_cut_examples():
    assert all_odd_cuts_at_least(petersen_graph(), 3) == (True, None)
    ok, witness = all_odd_cuts_at_least(bridged_cubic_graph(), 3)
    assert not ok and cut_size(bridged_cubic_graph(), witness) == 1
    assert all_odd_cuts_at_least(complete_graph(2), 1)[0]


def test_chromatic_number():
    assert chromatic_number(cycle_graph(5))[0] == 3
    assert chromatic_number(petersen_graph())[0] == 3
    assert chromatic_number(complete_graph(5))[0] == 5
    assert chromatic_number(empty_graph(4))[0] == 1
    k, colors = chromatic_number(cycle_graph(7))
    assert all(colors[u] != colors[v] for u, v in cycle_graph(7).edges)


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        maximal_independent_sets(empty_graph(40))
