"""Minimum-entropy colorings and the bounds around them.

``H_chi(G, P)`` is the least Shannon entropy of the cell masses over all
partitions of V(G) into independent sets.  It is sandwiched as

    -log2 alpha(G, P) <= H(G, P) <= H_chi(G, P) <= log2 chi(G),

and under the uniform distribution ``H_chi >= log2(n / alpha)``.  Normalized
chromatic entropies of OR powers decrease toward ``H(G, P)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .combinatorics import (
    chromatic_number,
    independence_number,
    weighted_independence_number,
)
from .distribution import Distribution, as_distribution, product_distribution
from .entropy import DEFAULT_TOL_BITS, graph_entropy, shannon_entropy
from .errors import InvariantViolation, SizeLimitExceeded
from .graph import Graph, bits, or_product, to_mask

COLORING_LIMIT = 18
OR_PRODUCT_LIMIT = 36
TIE_EPS = 1e-12


@dataclass(frozen=True)
class Coloring:
    """Partition of the vertices into independent cells (sorted vertex tuples)."""

    cells: tuple
    masses: tuple

    @property
    def entropy_bits(self) -> float:
        return shannon_entropy(self.masses)

    def color_of(self) -> list:
        out = [0] * sum(len(c) for c in self.cells)
        for i, cell in enumerate(self.cells):
            for v in cell:
                out[v] = i
        return out

    def verify(self, g: Graph) -> None:
        seen = sorted(v for c in self.cells for v in c)
        if seen != list(range(g.n)):
            raise InvariantViolation("cells do not partition the vertex set")
        for c in self.cells:
            if not c or not g.is_independent(to_mask(c)):
                raise InvariantViolation(f"cell {c} is empty or not independent")


def _canonical(cells):
    return tuple(sorted(tuple(sorted(c)) for c in cells))


def _entropy(masses):
    total = 0.0
    for m in masses:
        if m > 0:
            total -= m * math.log2(m)
    return total


def min_entropy_coloring(g: Graph, p, limit: int = COLORING_LIMIT) -> tuple[Coloring, float]:
    """Exact minimum-entropy coloring by branch and bound.

    Vertices are placed in order of nonincreasing probability, each into an
    existing compatible cell or one new cell.  At a node with cell masses
    ``m`` and unplaced mass ``R`` the final entropy is a concave function of
    how R gets distributed, so its minimum over all completions is at least
    the smallest entropy obtained by putting all of R into a single existing
    cell or a single new one.

    Among optimal colorings (within ``1e-12`` bits) the one with fewest
    cells wins, then the lexicographically smallest sorted cell list.

    Returns
    -------
    (Coloring, float)
        The coloring and its entropy in bits.
    """
    if g.n > limit:
        raise SizeLimitExceeded("min_entropy_coloring", g.n, limit)
    dist = as_distribution(p, g.n)
    pf = dist.as_array()
    if g.n == 0:
        return Coloring((), ()), 0.0
    order = sorted(range(g.n), key=lambda v: (-pf[v], v))
    rest = np.concatenate([np.cumsum(pf[order][::-1])[::-1], [0.0]])
    nbr = g.masks

    cell_masks: list = []
    cell_mass: list = []
    best = {"value": math.inf, "ncells": math.inf, "key": None}

    def lower_bound(remaining):
        base = _entropy(cell_mass)
        if remaining <= 0:
            return base
        lb = base + _entropy([remaining])
        for m in cell_mass:
            # moving mass R onto cell m changes the entropy by this much
            delta = _entropy([m + remaining]) - _entropy([m])
            lb = min(lb, base + delta)
        return lb

    def offer():
        value = _entropy(cell_mass)
        k = len(cell_masks)
        if value < best["value"] - TIE_EPS:
            better = True
        elif value <= best["value"] + TIE_EPS:
            if k != best["ncells"]:
                better = k < best["ncells"]
            else:
                better = _canonical([bits(c) for c in cell_masks]) < best["key"]
        else:
            better = False
        if better:
            best["value"] = value
            best["ncells"] = k
            best["key"] = _canonical([bits(c) for c in cell_masks])

    def rec(i):
        if i == g.n:
            offer()
            return
        lb = lower_bound(rest[i])
        if lb > best["value"] + TIE_EPS:
            return
        if lb >= best["value"] - TIE_EPS and len(cell_masks) > best["ncells"]:
            return
        v = order[i]
        bit = 1 << v
        # heavier cells first: they tend to give the low-entropy incumbent early
        choices = sorted(range(len(cell_masks)), key=lambda j: (-cell_mass[j], j))
        for j in choices:
            if cell_masks[j] & nbr[v]:
                continue
            cell_masks[j] |= bit
            cell_mass[j] += pf[v]
            rec(i + 1)
            cell_masks[j] &= ~bit
            cell_mass[j] -= pf[v]
        cell_masks.append(bit)
        cell_mass.append(pf[v])
        rec(i + 1)
        cell_masks.pop()
        cell_mass.pop()

    rec(0)
    cells = best["key"]
    masses = tuple(dist.mass(c) for c in cells)
    coloring = Coloring(cells, masses)
    coloring.verify(g)
    value = coloring.entropy_bits
    if abs(value - best["value"]) > 1e-12:
        raise InvariantViolation("recomputed coloring entropy disagrees with the search")
    return coloring, value


@dataclass(frozen=True)
class EntropyChain:
    """The four quantities of the sandwich, all in bits.

    ``entropy_bits`` is the solver's upper value with certified gap
    ``entropy_gap_bits``; ``uniform_lower_bits`` is ``log2(n / alpha)`` and is
    only filled in for the uniform distribution.
    """

    neg_log_alpha_bits: float
    entropy_bits: float
    entropy_gap_bits: float
    chromatic_entropy_bits: float
    log_chi_bits: float
    coloring: Coloring
    uniform_lower_bits: float | None = None


def _is_uniform(dist: Distribution) -> bool:
    n = len(dist.weights)
    return all(abs(float(w) - 1.0 / n) <= 1e-15 for w in dist.weights)


def chromatic_entropy_bounds(g: Graph, p, tol_bits: float = DEFAULT_TOL_BITS) -> EntropyChain:
    """Compute the sandwich and check every link; raise InvariantViolation on failure."""
    dist = as_distribution(p, g.n)
    alpha_p = weighted_independence_number(g, dist.weights)
    nla = -math.log2(float(alpha_p))
    ent = graph_entropy(g, dist, tol_bits=tol_bits)
    coloring, hchi = min_entropy_coloring(g, dist)
    chi, _ = chromatic_number(g)
    lchi = math.log2(chi) if chi else 0.0
    slack = 1e-12
    if nla > ent.value_bits + slack:
        raise InvariantViolation("-log alpha(G,P) exceeds H(G,P)")
    if ent.lower_bits > hchi + slack:
        raise InvariantViolation("H(G,P) exceeds H_chi(G,P)")
    if hchi > lchi + slack:
        raise InvariantViolation("H_chi(G,P) exceeds log chi(G)")
    uniform = None
    if g.n and _is_uniform(dist):
        uniform = math.log2(g.n / independence_number(g))
        if hchi < uniform - slack:
            raise InvariantViolation("H_chi(G,U) below log(n / alpha)")
    return EntropyChain(nla, ent.value_bits, ent.gap_bits, hchi, lchi, coloring, uniform)


def or_product_convergence(g: Graph, p, depth: int, tol_bits: float = DEFAULT_TOL_BITS) -> list:
    """``H_chi(G^i, P^(i)) / i`` for ``i = 1..depth`` (OR powers, product distributions).

    Checks that every level is at least ``H(G, P) - tol`` and that the
    levels do not increase.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    if g.n**depth > OR_PRODUCT_LIMIT:
        raise SizeLimitExceeded("or_product_convergence", g.n**depth, OR_PRODUCT_LIMIT)
    dist = as_distribution(p, g.n)
    ent = graph_entropy(g, dist, tol_bits=tol_bits)
    levels = []
    for i in range(1, depth + 1):
        power = or_product([g] * i)
        pi = product_distribution([dist] * i)
        _, h = min_entropy_coloring(power, pi, limit=OR_PRODUCT_LIMIT)
        levels.append(h / i)
    for i, x in enumerate(levels):
        if x < ent.lower_bits - tol_bits:
            raise InvariantViolation(f"level {i + 1} falls below H(G, P)")
        if i and x > levels[i - 1] + 1e-12:
            raise InvariantViolation(f"level {i + 1} exceeds level {i}")
    return levels
