"""Exact enumeration and optimization over independent sets, cliques,
matchings, clique covers and odd cuts.

Vertex sets are int bitmasks (bit ``i`` is vertex ``i``).  Whenever several
answers are optimal the one with the smallest bitmask value is returned.
Weights may be floats or ``Fraction``; with fractions every comparison is
exact.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import NotBipartite, SizeLimitExceeded
from .graph import Graph, bipartition, bits, connected_components

SET_ENUM_LIMIT = 24
ODD_CUT_LIMIT = 20
CHROMATIC_LIMIT = 20


def _check(what, n, limit):
    if n > limit:
        raise SizeLimitExceeded(what, n, limit)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _maximal_cliques_masks(nbr, full):
    """Bron-Kerbosch with Tomita pivoting on bitmask adjacency."""
    out = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        px = p | x
        pivot = max(bits(px), key=lambda u: _popcount(p & nbr[u]))
        for v in bits(p & ~nbr[pivot]):
            bit = 1 << v
            expand(r | bit, p & nbr[v], x & nbr[v])
            p &= ~bit
            x |= bit

    if full:
        expand(0, full, 0)
    else:
        out.append(0)
    return sorted(out)


def maximal_cliques(g: Graph) -> list:
    """All inclusion-maximal cliques as bitmasks, sorted by mask value."""
    _check("maximal_cliques", g.n, SET_ENUM_LIMIT)
    return _maximal_cliques_masks(g.masks, g.full_mask)


def maximal_independent_sets(g: Graph) -> list:
    """All inclusion-maximal independent sets as bitmasks, sorted by mask value."""
    _check("maximal_independent_sets", g.n, SET_ENUM_LIMIT)
    full = g.full_mask
    co = [full & ~g.masks[v] & ~(1 << v) for v in range(g.n)]
    sets = _maximal_cliques_masks(co, full)
    for s in sets:
        assert g.is_independent(s)
    return sets


def _clique_partition_bound(order, nbr, w, cand):
    # Each independent set meets each clique of a clique partition at most once.
    cliques = []
    total = 0
    for v in order:
        if not (cand >> v) & 1:
            continue
        for i, c in enumerate(cliques):
            if c & ~nbr[v] == 0:
                cliques[i] = c | (1 << v)
                break
        else:
            cliques.append(1 << v)
            total += w[v]
    return total


def max_weight_independent_set(g: Graph, w) -> tuple[int, object]:
    """Maximum-weight independent set by branch and bound.

    Parameters
    ----------
    g : Graph
    w : sequence of nonnegative numbers, one per vertex

    Returns
    -------
    (mask, weight)
        Among optimal sets the one with the smallest bitmask; zero-weight
        vertices are therefore never included.
    """
    if len(w) != g.n:
        raise ValueError("one weight per vertex required")
    exact = all(isinstance(x, (int, Fraction)) for x in w)
    w = [Fraction(x) for x in w] if exact else [float(x) for x in w]
    if any(x < 0 for x in w):
        raise ValueError("weights must be nonnegative")
    zero = w[0] * 0 if w else 0
    nbr = g.masks
    order = sorted(range(g.n), key=lambda v: (-w[v], v))
    eps = 0 if exact else 1e-12 * max(sum(w), 1.0)
    best = [zero, 0]

    def rec(cand, chosen, cw):
        if cw > best[0] or (cw == best[0] and chosen < best[1]):
            best[0], best[1] = cw, chosen
        if not cand:
            return
        ub = cw + _clique_partition_bound(order, nbr, w, cand)
        if ub < best[0] - eps or (ub <= best[0] + eps and chosen >= best[1]):
            return
        v = next(u for u in order if (cand >> u) & 1)
        bit = 1 << v
        rec(cand & ~nbr[v] & ~bit, chosen | bit, cw + w[v])
        rec(cand & ~bit, chosen, cw)

    start = 0
    for v in range(g.n):
        if w[v] > 0:
            start |= 1 << v
    rec(start, 0, zero)
    assert g.is_independent(best[1])
    return best[1], best[0]


def independence_number(g: Graph) -> int:
    _, a = max_weight_independent_set(g, [1] * g.n)
    return int(a)


def weighted_independence_number(g: Graph, p):
    """alpha(G, P): the largest probability mass of an independent set."""
    _, a = max_weight_independent_set(g, list(p))
    return a


def maximum_cliques(g: Graph) -> tuple[int, list]:
    """Clique number and every clique of that size (bitmasks, sorted)."""
    _check("maximum_cliques", g.n, SET_ENUM_LIMIT)
    if g.n == 0:
        return 0, [0]
    from .graph import complement

    mask, omega = max_weight_independent_set(complement(g), [1] * g.n)
    omega = int(omega)
    cliques = [c for c in maximal_cliques(g) if _popcount(c) == omega]
    assert mask in cliques
    for c in cliques:
        assert g.is_clique(c)
    return omega, cliques


def clique_number(g: Graph) -> int:
    return maximum_cliques(g)[0]


def maximum_matching_bipartite(g: Graph, parts=None) -> list:
    """Maximum-cardinality matching by augmenting paths (Kuhn).

    Returns the matched edges as sorted ``(u, v)`` pairs.
    """
    if parts is None:
        parts = bipartition(g)
        if parts is None:
            raise NotBipartite("graph is not bipartite")
    a, b = parts
    side = {v: 0 for v in a} | {v: 1 for v in b}
    for u, v in g.edges:
        if side[u] == side[v]:
            raise NotBipartite(f"edge {(u, v)} inside one part")
    match_b = {}

    def augment(u, seen):
        for v in g.adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_b or augment(match_b[v], seen):
                match_b[v] = u
                return True
        return False

    for u in a:
        augment(u, set())
    return sorted((min(u, v), max(u, v)) for v, u in match_b.items())


def hall_violator(g: Graph, parts, matching):
    """A set D on one side with ``|N(D)| < |D|``, derived from a maximum matching.

    Returns ``(D, N(D))`` as sorted tuples, or None if the matching is perfect.
    The side is A when some A-vertex is unmatched, otherwise B.
    """
    matched = {}
    for u, v in matching:
        matched[u] = v
        matched[v] = u
    for side in parts:
        free = [v for v in side if v not in matched]
        if not free:
            continue
        # alternating BFS from the free vertices of this side
        reach_side, reach_other = set(free), set()
        frontier = list(free)
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.adj[u]:
                    if w not in reach_other:
                        reach_other.add(w)
                        mate = matched.get(w)
                        if mate is not None and mate not in reach_side:
                            reach_side.add(mate)
                            nxt.append(mate)
            frontier = nxt
        d, nd = tuple(sorted(reach_side)), tuple(sorted(reach_other))
        assert len(nd) < len(d)
        return d, nd
    return None


def clique_cover_by_max_cliques(g: Graph):
    """Partition of V into maximum cliques (sorted vertex tuples), or None."""
    _check("clique_cover_by_max_cliques", g.n, SET_ENUM_LIMIT)
    if g.n == 0:
        return []
    omega, cliques = maximum_cliques(g)
    if g.n % omega:
        return None
    by_vertex = [[c for c in cliques if (c >> v) & 1] for v in range(g.n)]
    chosen = []

    def solve(covered):
        if covered == g.full_mask:
            return True
        v = (~covered & (covered + 1)).bit_length() - 1
        for c in by_vertex[v]:
            if c & covered == 0:
                chosen.append(c)
                if solve(covered | c):
                    return True
                chosen.pop()
        return False

    if not solve(0):
        return None
    cover = sorted(tuple(bits(c)) for c in chosen)
    assert sum(len(c) for c in cover) == g.n
    return cover


def subset_tables(g: Graph):
    """For every mask ``0..2^n-1``: (size, edges inside, edges leaving).

    Returned as numpy int arrays indexed by mask.
    """
    masks = np.arange(1 << g.n, dtype=np.int64)
    size = np.bitwise_count(masks).astype(np.int64)
    inside = np.zeros_like(masks)
    for u, v in g.edges:
        inside += (masks >> u) & (masks >> v) & 1
    degsum = np.zeros_like(masks)
    for v in range(g.n):
        if g.degrees[v]:
            degsum += g.degrees[v] * ((masks >> v) & 1)
    return size, inside, degsum - 2 * inside


def all_odd_cuts_at_least(g: Graph, k: int):
    """Check ``|delta(U)| >= k`` for every odd-size vertex subset U.

    Returns ``(True, None)`` or ``(False, U)`` where U (sorted tuple) has the
    smallest cut among violators, ties going to the smallest bitmask.
    """
    _check("all_odd_cuts_at_least", g.n, ODD_CUT_LIMIT)
    size, _, cut = subset_tables(g)
    bad = np.flatnonzero((size % 2 == 1) & (cut < k))
    if bad.size == 0:
        return True, None
    best = bad[np.lexsort((bad, cut[bad]))[0]]
    return False, tuple(bits(int(best)))


def cut_size(g: Graph, u_set) -> int:
    s = set(u_set)
    return sum(1 for a, b in g.edges if (a in s) != (b in s))


def chromatic_number(g: Graph) -> tuple[int, list]:
    """Exact chromatic number and a proper coloring (color index per vertex)."""
    _check("chromatic_number", g.n, CHROMATIC_LIMIT)
    if g.n == 0:
        return 0, []
    if g.m == 0:
        return 1, [0] * g.n
    lower = 2
    # greedy clique for a starting lower bound
    for comp in connected_components(g):
        clique = []
        for v in sorted(comp, key=lambda x: -g.degrees[x]):
            if all(g.has_edge(v, c) for c in clique):
                clique.append(v)
        lower = max(lower, len(clique))
    for k in range(lower, g.n + 1):
        col = _color_with(g, k)
        if col is not None:
            return k, col
    raise AssertionError("unreachable")


def _color_with(g: Graph, k: int):
    color = [-1] * g.n

    def pick():
        best, key = -1, None
        for v in range(g.n):
            if color[v] < 0:
                used = {color[w] for w in g.adj[v] if color[w] >= 0}
                cand = (len(used), g.degrees[v])
                if key is None or cand > key:
                    best, key = v, cand
        return best

    def rec(done, top):
        if done == g.n:
            return True
        v = pick()
        used = {color[w] for w in g.adj[v]}
        # colors above the highest used so far are interchangeable
        for c in range(min(k, top + 2)):
            if c not in used:
                color[v] = c
                if rec(done + 1, max(top, c)):
                    return True
                color[v] = -1
        return False

    return list(color) if rec(0, -1) else None
