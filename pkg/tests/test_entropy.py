import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import brute_entropy_from_sets, random_distribution, random_graph
from graphentropy import Distribution
from graphentropy.combinatorics import maximal_independent_sets
from graphentropy.entropy import (
    KktCertificate,
    PolytopePoint,
    binary_entropy,
    entropy_upper_bound_from_point,
    graph_entropy,
    kkt_residual_line_graph,
    regular_kkt_certificate,
    shannon_entropy,
)
from graphentropy.errors import (
    DimensionMismatch,
    InfeasiblePoint,
    NonconvergenceAfterMaxIters,
)
from graphentropy.graph import (
    Graph,
    c4_c6,
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    petersen_graph,
    star_graph,
)

TOL = 1e-9


@pytest.mark.parametrize(
    "p, value",
    [((0.5, 0.5), 1.0), ((1, 0, 0), 0.0), ((0.4, 0.4, 0.2), 1.521928)],
)
def test_shannon_entropy(p, value):
    assert shannon_entropy(p) == pytest.approx(value, abs=1e-6)


@pytest.mark.parametrize("x, value", [(0.5, 1.0), (0, 0.0), (1, 0.0), (Fraction(1, 8), 0.543564)])
def test_binary_entropy(x, value):
    assert binary_entropy(x) == pytest.approx(value, abs=1e-6)


def test_graph_entropy_examples():
    assert graph_entropy(c4_c6(), Distribution.uniform(10)).value_bits == pytest.approx(1.0, abs=TOL)
    p = [Fraction(1, 8), Fraction(1, 4), Fraction(3, 8), Fraction(1, 4)]
    assert graph_entropy(cycle_graph(4), p).value_bits == pytest.approx(1.0, abs=TOL)
    c5 = graph_entropy(cycle_graph(5), Distribution.uniform(5))
    assert c5.value_bits == pytest.approx(math.log2(2.5), abs=TOL)
    assert graph_entropy(empty_graph(4), [0.1, 0.2, 0.3, 0.4]).value_bits == 0.0


def test_result_certifies_its_gap():
    res = graph_entropy(petersen_graph(), Distribution.uniform(10))
    assert 0 <= res.gap_bits <= TOL
    assert res.lower_bits <= res.value_bits
    res.minimizer.validate(petersen_graph())
    assert res.value_bits == pytest.approx(math.log2(2.5), abs=TOL)


def test_complete_graph_gives_shannon_entropy():
    rng = np.random.default_rng(31)
    for _ in range(10):
        n = int(rng.integers(1, 8))
        p = random_distribution(rng, n, zero_prob=0.2)
        assert graph_entropy(complete_graph(n), p).value_bits == pytest.approx(
            shannon_entropy(p), abs=TOL
        )


@pytest.mark.parametrize("method", ["corrective", "away", "plain"])
def test_methods_agree_on_small_graphs(method):
    rng = np.random.default_rng(32)
    tol = 1e-9 if method != "plain" else 1e-4
    for _ in range(6):
        g = random_graph(rng, int(rng.integers(2, 7)), 0.5)
        p = random_distribution(rng, g.n)
        ref = graph_entropy(g, p).value_bits
        got = graph_entropy(g, p, tol_bits=tol, method=method)
        assert got.gap_bits <= tol
        assert got.value_bits == pytest.approx(ref, abs=tol + 1e-9)


def test_solver_matches_grid_oracle_on_path():
    g = path_graph(3)  # maximal independent sets {0, 2} and {1}
    p = [0.5, 0.3, 0.2]
    sets = maximal_independent_sets(g)
    ref = brute_entropy_from_sets(sets, p, g.n)
    assert graph_entropy(g, p).value_bits == pytest.approx(ref, abs=1e-6)


def test_nonconvergence_is_reported():
    with pytest.raises(NonconvergenceAfterMaxIters):
        p = [0.3, 0.05, 0.2, 0.1, 0.15, 0.12, 0.08]
        graph_entropy(cycle_graph(7), p, tol_bits=1e-12, method="plain", max_iter=3)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        graph_entropy(cycle_graph(5), Distribution.uniform(5), tol_bits=0)
    with pytest.raises(ValueError):
        graph_entropy(cycle_graph(5), Distribution.uniform(5), method="newton")


def test_monotone_under_spanning_subgraphs():
    rng = np.random.default_rng(33)
    for _ in range(15):
        g = random_graph(rng, int(rng.integers(2, 8)), 0.6)
        f = Graph(g.n, [e for e in g.edges if rng.random() < 0.6])
        p = random_distribution(rng, g.n)
        assert graph_entropy(f, p).value_bits <= graph_entropy(g, p).value_bits + 2 * TOL


# -- upper bounds from feasible points -------------------------------------------


def test_upper_bound_at_minimizer_equals_value():
    g, p = cycle_graph(5), Distribution.uniform(5)
    res = graph_entropy(g, p)
    assert entropy_upper_bound_from_point(g, p, res.minimizer) == pytest.approx(res.value_bits, abs=1e-12)


def test_upper_bound_for_star_xbar_point():
    # 3/4 on the leaves and 1/4 on the center under the uniform distribution:
    # (3/4) log2(4/3) + (1/4) log2 4
    x = [Fraction(1, 4)] + [Fraction(3, 4)] * 3
    value = entropy_upper_bound_from_point(star_graph(3), Distribution.uniform(4), x)
    assert value == pytest.approx(0.75 * math.log2(4 / 3) + 0.5, abs=1e-12)
    assert value == pytest.approx(0.811278, abs=1e-6)


def test_upper_bound_on_empty_graph():
    assert entropy_upper_bound_from_point(empty_graph(3), Distribution.uniform(3), [1, 1, 1]) == 0.0


def test_upper_bound_rejects_infeasible_points():
    g = cycle_graph(4)
    with pytest.raises(InfeasiblePoint):
        entropy_upper_bound_from_point(g, Distribution.uniform(4), [1, 1, 0, 0])
    with pytest.raises(DimensionMismatch):
        entropy_upper_bound_from_point(g, Distribution.uniform(4), [0.5] * 3)
    # dense points on an imperfect graph cannot be certified by clique inequalities
    with pytest.raises(InfeasiblePoint):
        entropy_upper_bound_from_point(cycle_graph(5), Distribution.uniform(5), [0.4] * 5)
    bad = PolytopePoint.from_support(4, [(0b0011, 1.0)])
    with pytest.raises(InfeasiblePoint):
        entropy_upper_bound_from_point(g, Distribution.uniform(4), bad)


# -- KKT certificate on the matching polytope ------------------------------------


def test_kkt_certificate_k4():
    g1 = complete_graph(4)
    cert = regular_kkt_certificate(g1)
    assert cert.lam == (Fraction(3, 12),) * 4
    p = [Fraction(1, 6)] * 6
    assert kkt_residual_line_graph(g1, p, cert) == 0
    zero = KktCertificate(cert.x, (0,) * 4, {})
    assert kkt_residual_line_graph(g1, p, zero) == pytest.approx(0.5)


def test_kkt_certificate_petersen():
    g1 = petersen_graph()
    cert = regular_kkt_certificate(g1)
    assert cert.lam[0] == Fraction(1, 10)
    assert kkt_residual_line_graph(g1, [Fraction(1, 15)] * 15, cert) == 0


def test_kkt_residual_detects_infeasible_x():
    g1 = complete_graph(4)
    cert = KktCertificate((Fraction(1, 2),) * 6, (Fraction(1, 6),) * 4, {})
    assert kkt_residual_line_graph(g1, [Fraction(1, 6)] * 6, cert) >= 0.5


def test_kkt_dimension_checks():
    g1 = complete_graph(4)
    cert = regular_kkt_certificate(g1)
    with pytest.raises(DimensionMismatch):
        kkt_residual_line_graph(g1, [0.2] * 5, cert)
    with pytest.raises(DimensionMismatch):
        kkt_residual_line_graph(g1, [Fraction(1, 6)] * 6, KktCertificate(cert.x, cert.lam, {(0, 1): 1}))
