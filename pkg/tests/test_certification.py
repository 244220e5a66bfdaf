import itertools
import math

import numpy as np
import pytest

from conftest import random_graph
from graphentropy import Distribution, graph_entropy
from graphentropy.certification import (
    UNDECIDED,
    applicable_routes,
    certify_symmetric,
    certify_symmetric_bipartite,
    certify_symmetric_bridgeless_cubic,
    certify_symmetric_line_of_kgraph,
    certify_symmetric_numeric,
    certify_symmetric_perfect,
    certify_symmetric_vertex_transitive,
    check_odd_cycle_witness,
    check_verdict,
    is_perfect,
)
from graphentropy.errors import (
    HasBridge,
    InvariantViolation,
    KBelowThree,
    NotCubic,
    NotKGraph,
    NotPerfect,
)
from graphentropy.graph import (
    bridged_cubic_graph,
    c4_c6,
    complement,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    disjoint_union,
    line_graph,
    path_graph,
    petersen_graph,
    star_graph,
    triangular_prism,
)


def brute_has_odd_hole_or_antihole(g):
    """Induced odd cycle of length >= 5 in g or in its complement, by subsets."""
    for h in (g, complement(g)):
        for size in range(5, g.n + 1, 2):
            for sub in itertools.combinations(range(g.n), size):
                s = set(sub)
                if all(sum(1 for w in h.adj[v] if w in s) == 2 for v in sub):
                    induced, _ = h.induced_subgraph(sub)
                    from graphentropy.graph import connected_components

                    if len(connected_components(induced)) == 1:
                        return True
    return False


def test_perfection_examples():
    ok, w = is_perfect(cycle_graph(5))
    assert not ok and w.kind == "hole" and sorted(w.cycle) == [0, 1, 2, 3, 4]
    assert is_perfect(cycle_graph(6)) == (True, None)
    ok, w = is_perfect(complement(cycle_graph(7)))
    assert not ok and w.kind == "antihole"
    check_odd_cycle_witness(complement(cycle_graph(7)), w)


def test_perfection_matches_subset_scan():
    rng = np.random.default_rng(51)
    for _ in range(120):
        g = random_graph(rng, int(rng.integers(1, 9)), rng.uniform(0.2, 0.8))
        ok, w = is_perfect(g)
        assert ok == (not brute_has_odd_hole_or_antihole(g))
        if w is not None:
            check_odd_cycle_witness(g, w)


def test_perfect_route_examples():
    v = certify_symmetric_perfect(complete_bipartite(3, 3))
    assert v.symmetric and v.route == "perfect"
    v = certify_symmetric_perfect(star_graph(3))
    assert v.verdict == "not-symmetric"
    w = v.counterexample
    assert sorted(w.independent_set) == [1, 2, 3] and w.omega == 2
    assert w.bound_bits == pytest.approx(0.811278, abs=1e-6) and w.bound_bits < 1
    two, _ = disjoint_union([complete_graph(3), complete_graph(3)])
    assert certify_symmetric_perfect(two).symmetric
    with pytest.raises(NotPerfect):
        certify_symmetric_perfect(cycle_graph(5))


def test_xbar_bound_is_an_upper_bound():
    g = star_graph(3)
    v = certify_symmetric_perfect(g)
    h = graph_entropy(g, Distribution.uniform(4)).value_bits
    assert h == pytest.approx(0.811278, abs=1e-6)
    assert v.counterexample.bound_bits >= h - 1e-9


def test_bipartite_route_examples():
    v = certify_symmetric_bipartite(cycle_graph(6))
    assert v.symmetric and len(v.certificate) == 3
    v = certify_symmetric_bipartite(star_graph(7))
    assert v.verdict == "not-symmetric"
    assert len(v.counterexample.independent_set) == 7
    assert certify_symmetric_bipartite(c4_c6()).symmetric


def test_line_graph_route_examples():
    for g1 in (complete_graph(4), petersen_graph()):
        v = certify_symmetric_line_of_kgraph(g1)
        assert v.symmetric and v.certificate.k == 3
        assert v.certificate.entropy_bits == pytest.approx(math.log2(3), abs=1e-9)
        check_verdict(g1, v)
    with pytest.raises(NotKGraph):
        certify_symmetric_line_of_kgraph(bridged_cubic_graph())
    with pytest.raises(KBelowThree):
        certify_symmetric_line_of_kgraph(cycle_graph(6))


def test_bridged_cubic_line_graph_entropy():
    lg, _ = line_graph(bridged_cubic_graph())
    res = graph_entropy(lg, Distribution.uniform(lg.n))
    assert res.value_bits == pytest.approx(1.75712, abs=1e-3)
    assert res.value_bits < math.log2(3.5)


def test_bridgeless_cubic_route():
    assert certify_symmetric_bridgeless_cubic(triangular_prism()).symmetric
    assert certify_symmetric_bridgeless_cubic(complete_graph(4)).symmetric
    with pytest.raises(HasBridge) as exc:
        certify_symmetric_bridgeless_cubic(bridged_cubic_graph())
    assert "(4, 5)" in str(exc.value)
    with pytest.raises(NotCubic):
        certify_symmetric_bridgeless_cubic(cycle_graph(5))


def test_vertex_transitive_and_numeric_routes():
    for g in (cycle_graph(5), petersen_graph()):
        v = certify_symmetric_vertex_transitive(g)
        assert v.symmetric
        check_verdict(g, v)
        assert certify_symmetric_numeric(g).symmetric
    assert certify_symmetric_vertex_transitive(path_graph(3)).verdict == UNDECIDED
    v = certify_symmetric_numeric(star_graph(3))
    assert v.verdict == "not-symmetric"
    assert v.certificate.entropy_bits == pytest.approx(0.811278, abs=1e-6)
    assert certify_symmetric_numeric(c4_c6()).symmetric


def test_auto_route_and_agreement():
    rng = np.random.default_rng(52)
    graphs = [cycle_graph(5), cycle_graph(7), star_graph(4), petersen_graph(), c4_c6()]
    graphs += [random_graph(rng, int(rng.integers(3, 8)), 0.5) for _ in range(15)]
    for g in graphs:
        if g.m == 0:
            continue
        numeric = certify_symmetric(g, route="numeric")
        for route in applicable_routes(g):
            v = certify_symmetric(g, route=route)
            check_verdict(g, v)
            assert v.symmetric == numeric.symmetric, (g, route)
        auto = certify_symmetric(g)
        if auto.verdict != UNDECIDED:
            assert auto.symmetric == numeric.symmetric


def test_auto_without_applicable_route_is_undecided():
    # line graph of the prism: not perfect, not bipartite, not vertex-transitive
    lg, _ = line_graph(triangular_prism())
    assert certify_symmetric(lg).verdict == UNDECIDED
    assert certify_symmetric(lg, numeric=True).symmetric


def test_check_verdict_rejects_tampering():
    v = certify_symmetric_bipartite(cycle_graph(6))
    from dataclasses import replace

    bad = replace(v, certificate=((0, 1), (1, 2), (3, 4)))
    with pytest.raises(InvariantViolation):
        check_verdict(cycle_graph(6), bad)
    with pytest.raises(ValueError):
        certify_symmetric(cycle_graph(6), route="magic")
