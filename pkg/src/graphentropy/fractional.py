"""Exact fractional chromatic numbers.

``chi_f(G)`` is the optimum of the covering LP over independent sets.  We
solve its dual, ``max sum y_v`` subject to ``y(J) <= 1`` for every maximal
independent set ``J``, whose origin is feasible, with a dictionary simplex
in ``Fraction`` arithmetic and Bland's rule.  The optimal covering weights
are read off the final reduced costs of the slack variables and re-verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import (
    ODD_CUT_LIMIT,
    _check,
    all_odd_cuts_at_least,
    maximal_independent_sets,
    subset_tables,
)
from .errors import InvariantViolation
from .graph import Graph, bits, regular_degree

FRACTIONAL_LIMIT = 20


@dataclass(frozen=True)
class FractionalColoring:
    """Independent sets (bitmasks) with positive rational weights."""

    weights: tuple

    @property
    def total(self) -> Fraction:
        return sum((w for _, w in self.weights), Fraction(0))

    def coverage(self, n: int) -> list:
        cov = [Fraction(0)] * n
        for s, w in self.weights:
            for v in bits(s):
                cov[v] += w
        return cov

    def verify(self, g: Graph) -> None:
        for s, w in self.weights:
            if w < 0:
                raise InvariantViolation(f"negative weight on {bits(s)}")
            if not g.is_independent(s):
                raise InvariantViolation(f"{bits(s)} is not independent")
        low = [v for v, c in enumerate(self.coverage(g.n)) if c < 1]
        if low:
            raise InvariantViolation(f"vertices {low} covered with weight below 1")


@dataclass
class _Dictionary:
    """Simplex dictionary for ``max c.x`` s.t. ``A x <= b``, ``x >= 0``, ``b >= 0``."""

    A: list
    b: list
    c: list
    basic: list
    nonbasic: list
    z: Fraction = Fraction(0)

    @classmethod
    def canonical(cls, A, b, c):
        m, n = len(A), len(c)
        return cls(
            [list(map(Fraction, row)) for row in A],
            list(map(Fraction, b)),
            list(map(Fraction, c)),
            list(range(n, n + m)),
            list(range(n)),
        )

    def pivot(self, r, e):
        A, b, c = self.A, self.b, self.c
        row = A[r]
        piv = row[e]
        inv = 1 / piv
        for j in range(len(row)):
            row[j] = inv if j == e else row[j] * inv
        b[r] *= inv
        for i, other in enumerate(A):
            if i == r:
                continue
            f = other[e]
            if f == 0:
                continue
            for j in range(len(other)):
                other[j] = -f * inv if j == e else other[j] - f * row[j]
            b[i] -= f * b[r]
        ce = c[e]
        if ce != 0:
            for j in range(len(c)):
                c[j] = -ce * inv if j == e else c[j] - ce * row[j]
            self.z += ce * b[r]
        self.basic[r], self.nonbasic[e] = self.nonbasic[e], self.basic[r]

    def solve(self):
        while True:
            entering = [j for j, cj in enumerate(self.c) if cj > 0]
            if not entering:
                return
            e = min(entering, key=lambda j: self.nonbasic[j])
            best = None
            for i, row in enumerate(self.A):
                if row[e] > 0:
                    key = (self.b[i] / row[e], self.basic[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise InvariantViolation("LP unbounded")
            self.pivot(best[1], e)


def fractional_chromatic_number(g: Graph) -> tuple[Fraction, FractionalColoring]:
    """Exact ``chi_f(G)`` and an optimal fractional coloring."""
    _check("fractional_chromatic_number", g.n, FRACTIONAL_LIMIT)
    if g.n == 0:
        return Fraction(0), FractionalColoring(())
    sets = maximal_independent_sets(g)
    A = [[(s >> v) & 1 for v in range(g.n)] for s in sets]
    lp = _Dictionary.canonical(A, [1] * len(sets), [1] * g.n)
    lp.solve()
    n = g.n
    weights = []
    for j, label in enumerate(lp.nonbasic):
        if label >= n and lp.c[j] != 0:
            weights.append((sets[label - n], -lp.c[j]))
    coloring = FractionalColoring(tuple(sorted(weights)))
    coloring.verify(g)
    # dual feasible point of equal value certifies optimality
    y = [Fraction(0)] * n
    for i, label in enumerate(lp.basic):
        if label < n:
            y[label] = lp.b[i]
    if any(sum(y[v] for v in bits(s)) > 1 for s in sets) or sum(y) != lp.z:
        raise InvariantViolation("dual solution fails verification")
    if coloring.total != lp.z:
        raise InvariantViolation("primal and dual LP values differ")
    return lp.z, coloring


@dataclass(frozen=True)
class EdgeChromaticResult:
    value: Fraction
    witness: object  # "degree" or a sorted vertex tuple U

    def __iter__(self):
        return iter((self.value, self.witness))


def fractional_edge_chromatic_number(g1: Graph) -> EdgeChromaticResult:
    """``chi'_f`` by the max of the maximum degree and ``|E(U)| / floor(|U|/2)``.

    Every subset with ``|U| >= 3`` is scanned, both parities.  The witness is
    ``"degree"`` when the maximum degree attains the value, otherwise the
    smallest-bitmask subset attaining it.
    """
    _check("fractional_edge_chromatic_number", g1.n, ODD_CUT_LIMIT)
    if g1.m == 0:
        raise ValueError("graph has no edges")
    size, inside, _ = subset_tables(g1)
    best, best_masks = Fraction(0), []
    for s in range(3, g1.n + 1):
        sel = size == s
        top = int(inside[sel].max())
        ratio = Fraction(top, s // 2)
        if ratio > best:
            best, best_masks = ratio, []
        if ratio == best:
            idx = np.flatnonzero(sel & (inside == top))
            best_masks.append(int(idx[0]))
    delta = Fraction(g1.max_degree)
    if delta >= best:
        return EdgeChromaticResult(delta, "degree")
    return EdgeChromaticResult(best, tuple(bits(min(best_masks))))


@dataclass(frozen=True)
class KGraphResult:
    is_k_graph: bool
    k: int | None
    witness: object = None  # odd set with a small cut, or a reason string

    def __iter__(self):
        return iter((self.is_k_graph, self.k if self.is_k_graph else self.witness))


def is_k_graph(g1: Graph) -> KGraphResult:
    """Decide whether ``g1`` is k-regular with ``chi'_f = k``.

    Both characterizations are evaluated (the value of ``chi'_f`` and the
    odd-cut condition) and must agree.
    """
    k = regular_degree(g1)
    if k is None:
        return KGraphResult(False, None, "not regular")
    if k == 0:
        return KGraphResult(False, 0, "no edges")
    value, _ = fractional_edge_chromatic_number(g1)
    cuts_ok, cut_witness = all_odd_cuts_at_least(g1, k)
    if (value == k) != cuts_ok:
        raise InvariantViolation(
            f"edge-coloring value {value} and odd-cut test ({cuts_ok}) disagree"
        )
    if cuts_ok:
        return KGraphResult(True, k)
    return KGraphResult(False, k, cut_witness)
