"""Closed-form graph entropies: complete graphs, complete multipartite graphs,
disconnected graphs, and bipartite graphs (Koerner-Marton).

These serve as fast paths and as independent checks on the numerical solver.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .distribution import Distribution, as_distribution
from .entropy import (
    DEFAULT_TOL_BITS,
    binary_entropy,
    graph_entropy,
    objective_bits,
    shannon_entropy,
)
from .errors import (
    DomainError,
    IsolatedVertex,
    NotBipartite,
    NotCompleteMultipartite,
    PartitionNotFound,
    SizeLimitExceeded,
)
from .graph import Graph, bipartition, complement, connected_components

BIPARTITE_LIMIT = 20
PARTITION_SIDE_LIMIT = 8
PARTITION_MATCH_TOL = 1e-6


def complete_graph_entropy(p) -> float:
    return shannon_entropy(as_distribution(p).weights)


def multipartite_parts(g: Graph) -> list:
    """Parts of a complete multipartite graph, or raise NotCompleteMultipartite."""
    co = complement(g)
    parts = connected_components(co)
    for part in parts:
        k = len(part)
        if sum(len([w for w in co.adj[v] if w in part]) for v in part) != k * (k - 1):
            raise NotCompleteMultipartite("complement is not a disjoint union of cliques")
    return parts


def multipartite_entropy(g: Graph, p) -> float:
    dist = as_distribution(p, g.n)
    return shannon_entropy([dist.mass(part) for part in multipartite_parts(g)])


@dataclass(frozen=True)
class ComponentEntropy:
    vertices: tuple
    mass: object
    value_bits: float
    gap_bits: float


@dataclass(frozen=True)
class ComponentsEntropy:
    value_bits: float
    gap_bits: float
    parts: tuple


def components_entropy(g: Graph, p, tol_bits: float = DEFAULT_TOL_BITS) -> ComponentsEntropy:
    """Entropy as the mass-weighted sum over connected components."""
    dist = as_distribution(p, g.n)
    parts = []
    total = gap = 0.0
    for comp in connected_components(g):
        mass = dist.mass(comp)
        if mass <= 0:
            parts.append(ComponentEntropy(tuple(comp), mass, 0.0, 0.0))
            continue
        sub, _ = g.induced_subgraph(comp)
        res = graph_entropy(sub, dist.restrict(comp), tol_bits=tol_bits)
        parts.append(ComponentEntropy(tuple(comp), mass, res.value_bits, res.gap_bits))
        total += float(mass) * res.value_bits
        gap += float(mass) * res.gap_bits
    return ComponentsEntropy(total, gap, tuple(parts))


# -- bipartite graphs ---------------------------------------------------------------


@dataclass(frozen=True)
class BipartiteEntropyReport:
    """Outcome of the Koerner-Marton evaluation.

    ``blocks`` pairs ``(D_i, U_i)`` with ``D_i`` in A and ``U_i`` in B; in the
    condition case there is the single block ``(A, B)``.  ``contributions``
    holds ``P(D_i u U_i) * h(P(D_i) / P(D_i u U_i))`` per block.
    """

    case: str
    value_bits: float
    parts: tuple
    blocks: tuple
    contributions: tuple

    @property
    def condition_holds(self) -> bool:
        return self.case == "neighborhood-condition-holds"


def _validate_bipartite(g: Graph, parts):
    a, b = (tuple(sorted(x)) for x in parts)
    if sorted(a + b) != list(range(g.n)):
        raise NotBipartite("parts must partition the vertex set")
    side = {v: 0 for v in a} | {v: 1 for v in b}
    for u, v in g.edges:
        if side[u] == side[v]:
            raise NotBipartite(f"edge {(u, v)} inside one part")
    isolated = [v for v in range(g.n) if g.degrees[v] == 0]
    if isolated:
        raise IsolatedVertex(f"isolated vertices {isolated}")
    return a, b


def neighborhood_condition(g: Graph, parts, p):
    """Check ``P(D)/P(A) <= P(N(D))/P(B)`` for every nonempty D in A.

    Returns ``(True, None)`` or ``(False, D)`` with the first violating D.
    Exact for rational P; float P uses a ``1e-12`` slack.
    """
    a, b = parts
    dist = as_distribution(p, g.n)
    pa, pb = dist.mass(a), dist.mass(b)
    slack = 0 if dist.exact else 1e-12
    zero = Fraction(0) if dist.exact else 0.0
    k = len(a)
    nb = [0] * (1 << k)
    pd = [zero] * (1 << k)
    pn = {0: zero}
    for d in range(1, 1 << k):
        low = (d & -d).bit_length() - 1
        rest = d & (d - 1)
        nb[d] = nb[rest] | g.masks[a[low]]
        pd[d] = pd[rest] + dist[a[low]]
        if nb[d] not in pn:
            pn[nb[d]] = dist.mass(v for v in range(g.n) if (nb[d] >> v) & 1)
        if pd[d] * pb > pn[nb[d]] * pa + slack:
            return False, tuple(a[i] for i in range(k) if (d >> i) & 1)
    return True, None


def _block_point(g, a_side, blocks, dist):
    """Vector with ``t_i`` on ``D_i`` and ``1 - t_i`` on ``U_i``; t from block masses."""
    x = [0.0] * g.n
    contributions = []
    for d, u in blocks:
        md, mu = float(dist.mass(d)), float(dist.mass(u))
        t = md / (md + mu)
        for v in d:
            x[v] = t
        for v in u:
            x[v] = 1.0 - t
        contributions.append((md + mu) * binary_entropy(t))
    return x, contributions


def _check_blocks(g, parts, blocks, dist, target):
    a, b = parts
    if sorted(v for d, _ in blocks for v in d) != list(a):
        return None
    if sorted(v for _, u in blocks for v in u) != list(b):
        return None
    if any(dist.mass(d) + dist.mass(u) <= 0 for d, u in blocks):
        return None
    x, contributions = _block_point(g, a, blocks, dist)
    if any(x[u] + x[v] > 1 + 1e-12 for u, v in g.edges):
        return None
    value = sum(contributions)
    if abs(value - objective_bits(dist.weights, x)) > 1e-9:
        return None
    if abs(value - target) > PARTITION_MATCH_TOL:
        return None
    return value, contributions


def _attach_zero_mass(blocks, zero_a, zero_b, dist):
    # Zero-mass A vertices go where t is smallest, B vertices where t is largest;
    # both placements keep every edge constraint satisfied.
    ts = [float(dist.mass(d)) / float(dist.mass(d) + dist.mass(u)) for d, u in blocks]
    lo, hi = ts.index(min(ts)), ts.index(max(ts))
    out = [(list(d), list(u)) for d, u in blocks]
    out[lo][0].extend(zero_a)
    out[hi][1].extend(zero_b)
    return tuple((tuple(sorted(d)), tuple(sorted(u))) for d, u in out)


def _blocks_from_minimizer(parts, coords, dist, threshold):
    a, b = parts
    keyed = [(coords[v], 0, v) for v in a if dist[v] > 0]
    keyed += [(1.0 - coords[v], 1, v) for v in b if dist[v] > 0]
    keyed.sort()
    clusters, prev = [], None
    for t, side, v in keyed:
        if prev is None or t - prev > threshold:
            clusters.append(([], []))
        clusters[-1][side].append(v)
        prev = t
    blocks = tuple((tuple(sorted(d)), tuple(sorted(u))) for d, u in clusters)
    zero_a = [v for v in a if dist[v] == 0]
    zero_b = [v for v in b if dist[v] == 0]
    if blocks and (zero_a or zero_b):
        blocks = _attach_zero_mass(blocks, zero_a, zero_b, dist)
    return blocks


def _set_partitions(items):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]
        yield [[first]] + part


def _exhaustive_blocks(g, parts, dist, target, budget=200_000):
    a, b = parts
    tried = 0
    for pa in _set_partitions(list(a)):
        k = len(pa)
        for assign in itertools.product(range(k), repeat=len(b)):
            tried += 1
            if tried > budget:
                return None
            us = [[] for _ in range(k)]
            for v, i in zip(b, assign):
                us[i].append(v)
            blocks = tuple((tuple(sorted(d)), tuple(sorted(u))) for d, u in zip(pa, us))
            hit = _check_blocks(g, parts, blocks, dist, target)
            if hit is not None:
                return blocks, hit
    return None


def korner_marton_entropy(g: Graph, parts, p, tol_bits: float = DEFAULT_TOL_BITS):
    """Entropy of a bipartite graph without isolated vertices.

    If the neighborhood condition holds for side A the value is
    ``h(P(A))``.  Otherwise a block pairing ``(D_i, U_i)`` is reconstructed
    and accepted only if the point with ``t_i`` on ``D_i`` and ``1 - t_i`` on
    ``U_i`` is feasible and its value matches the numerical entropy within
    ``1e-6``.
    """
    if g.n > BIPARTITE_LIMIT:
        raise SizeLimitExceeded("korner_marton_entropy", g.n, BIPARTITE_LIMIT)
    a, b = _validate_bipartite(g, parts)
    dist = as_distribution(p, g.n)
    pa, pb = dist.mass(a), dist.mass(b)
    if not (pa > 0 and pb > 0):
        raise DomainError("both sides need positive probability")
    holds, _ = neighborhood_condition(g, (a, b), dist)
    if holds:
        value = binary_entropy(pa)
        return BipartiteEntropyReport(
            "neighborhood-condition-holds", value, (a, b), ((a, b),), (value,)
        )
    if len(a) > PARTITION_SIDE_LIMIT or len(b) > PARTITION_SIDE_LIMIT:
        raise SizeLimitExceeded(
            "korner_marton_entropy partition case", max(len(a), len(b)), PARTITION_SIDE_LIMIT
        )
    res = graph_entropy(g, dist, tol_bits=tol_bits)
    target = res.value_bits
    for threshold in (1e-7, 1e-6, 1e-5, 1e-4, 1e-3, 1e-2):
        blocks = _blocks_from_minimizer((a, b), res.minimizer.coords, dist, threshold)
        hit = _check_blocks(g, (a, b), blocks, dist, target)
        if hit is not None:
            return BipartiteEntropyReport("partition-case", hit[0], (a, b), blocks, tuple(hit[1]))
    found = _exhaustive_blocks(g, (a, b), dist, target)
    if found is None:
        raise PartitionNotFound("no block pairing reproduces the solver value")
    blocks, (value, contributions) = found
    return BipartiteEntropyReport("partition-case", value, (a, b), blocks, tuple(contributions))


def korner_marton_either_side(g: Graph, p, tol_bits: float = DEFAULT_TOL_BITS):
    """Try both orientations; prefer one where the neighborhood condition holds."""
    parts = bipartition(g)
    if parts is None:
        raise NotBipartite("graph is not bipartite")
    a, b = parts
    first = korner_marton_entropy(g, (a, b), p, tol_bits)
    if first.condition_holds:
        return first
    dist = as_distribution(p, g.n)
    if neighborhood_condition(g, (b, a), dist)[0]:
        return korner_marton_entropy(g, (b, a), p, tol_bits)
    return first
