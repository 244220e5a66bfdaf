import math
from fractions import Fraction

import numpy as np
import pytest

from conftest import brute_min_entropy_coloring, random_distribution, random_graph
from graphentropy import Distribution
from graphentropy.chromatic import (
    chromatic_entropy_bounds,
    min_entropy_coloring,
    or_product_convergence,
)
from graphentropy.entropy import binary_entropy, shannon_entropy
from graphentropy.errors import SizeLimitExceeded
from graphentropy.graph import (
    complete_graph,
    cycle_graph,
    empty_graph,
    path_graph,
    star_graph,
)


def test_c5_uniform():
    coloring, h = min_entropy_coloring(cycle_graph(5), Distribution.uniform(5))
    assert h == pytest.approx(shannon_entropy([0.4, 0.4, 0.2]), abs=1e-12)
    assert sorted(map(len, coloring.cells)) == [1, 2, 2]


def test_c5_weighted_cells():
    # 1-based labels {1,3},{2,5},{4} are 0-based {0,2},{1,4},{3}
    coloring, h = min_entropy_coloring(cycle_graph(5), [0.3, 0.2, 0.2, 0.1, 0.2])
    assert h == pytest.approx(1.360964, abs=1e-6)
    assert set(coloring.cells) == {(0, 2), (1, 4), (3,)}


def test_star_examples():
    p = [Fraction(1, 2)] + [Fraction(1, 14)] * 7
    _, h = min_entropy_coloring(star_graph(7), p)
    assert h == pytest.approx(1.0, abs=1e-12)
    _, h = min_entropy_coloring(star_graph(7), Distribution.uniform(8))
    assert h == pytest.approx(binary_entropy(Fraction(1, 8)), abs=1e-12)


def test_matches_partition_enumeration():
    rng = np.random.default_rng(61)
    for _ in range(40):
        g = random_graph(rng, int(rng.integers(1, 8)), rng.uniform(0.2, 0.8))
        p = random_distribution(rng, g.n, zero_prob=0.15)
        coloring, h = min_entropy_coloring(g, p)
        ref, ncells, key = brute_min_entropy_coloring(g, p)
        assert h == pytest.approx(ref, abs=1e-12)
        assert (len(coloring.cells), coloring.cells) == (ncells, key)
        coloring.verify(g)


def test_ties_prefer_fewer_cells():
    # the zero-mass vertex can sit alone or join a cell; joining wins
    g = path_graph(3)
    coloring, h = min_entropy_coloring(g, [0.5, 0.5, 0.0])
    assert h == pytest.approx(1.0)
    assert coloring.cells == ((0, 2), (1,))


def test_entropy_chain_examples():
    chain = chromatic_entropy_bounds(cycle_graph(5), Distribution.uniform(5))
    assert chain.neg_log_alpha_bits == pytest.approx(math.log2(2.5))
    assert chain.entropy_bits == pytest.approx(math.log2(2.5), abs=1e-9)
    assert chain.chromatic_entropy_bits == pytest.approx(1.521928, abs=1e-6)
    assert chain.log_chi_bits == pytest.approx(math.log2(3))
    assert chain.uniform_lower_bits == pytest.approx(math.log2(2.5))

    p = [0.1, 0.2, 0.3, 0.4]
    chain = chromatic_entropy_bounds(complete_graph(4), p)
    h = shannon_entropy(p)
    assert chain.entropy_bits == pytest.approx(h, abs=1e-9)
    assert chain.chromatic_entropy_bits == pytest.approx(h, abs=1e-12)
    assert chain.log_chi_bits == 2.0

    chain = chromatic_entropy_bounds(empty_graph(3), Distribution.uniform(3))
    assert (chain.neg_log_alpha_bits, chain.chromatic_entropy_bits, chain.log_chi_bits) == (0.0, 0.0, 0.0)


def test_or_product_examples():
    assert or_product_convergence(complete_graph(2), Distribution.uniform(2), 2) == pytest.approx([1.0, 1.0])
    assert or_product_convergence(empty_graph(2), Distribution.uniform(2), 3) == [0.0, 0.0, 0.0]
    levels = or_product_convergence(path_graph(4), Distribution.uniform(4), 2)
    assert levels[1] <= levels[0] + 1e-12
    with pytest.raises(SizeLimitExceeded):
        or_product_convergence(cycle_graph(5), Distribution.uniform(5), 3)


def test_size_limit():
    with pytest.raises(SizeLimitExceeded):
        min_entropy_coloring(empty_graph(19), Distribution.uniform(19))
