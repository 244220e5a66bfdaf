"""Simple undirected graphs on dense vertex labels ``0..n-1``.

Graphs are immutable.  Every construction returns a new :class:`Graph`;
constructions that relabel vertices also return a :class:`VertexMap` so that
certificates can be traced back to the inputs.
"""

from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    EmptyEdgeSet,
    GraphEntropyError,
    NotBipartite,
    SizeLimitExceeded,
    UnknownVertex,
    VertexSetMismatch,
)

VERTEX_TRANSITIVE_LIMIT = 16


def _norm_edge(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph.

    Parameters
    ----------
    n : int
        Number of vertices; labels are ``0..n-1``.
    edges : iterable of pairs
        Unordered pairs ``(u, v)`` with ``u != v``.  Duplicates (in either
        orientation) are merged.
    names : sequence of str, optional
        Display names.  Metadata only; never used for indexing.
    """

    n: int
    edges: frozenset = field(default_factory=frozenset)
    names: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        clean = set()
        for e in self.edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge {(u, v)} out of range for n={self.n}")
            clean.add(_norm_edge(u, v))
        object.__setattr__(self, "edges", frozenset(clean))
        if self.names is not None:
            names = tuple(str(s) for s in self.names)
            if len(names) != self.n:
                raise ValueError("names must have one entry per vertex")
            object.__setattr__(self, "names", names)

    # -- basic queries ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def edge_list(self) -> tuple:
        """Edges sorted lexicographically; the canonical edge order."""
        return tuple(sorted(self.edges))

    @cached_property
    def adj(self) -> tuple:
        nbrs = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    @cached_property
    def masks(self) -> tuple:
        """Neighborhood of each vertex as an int bitmask."""
        out = [0] * self.n
        for u, v in self.edges:
            out[u] |= 1 << v
            out[v] |= 1 << u
        return tuple(out)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def degrees(self) -> tuple:
        return tuple(len(a) for a in self.adj)

    @property
    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (self.masks[u] >> v) & 1 == 1

    def vertices(self) -> range:
        return range(self.n)

    def name(self, v: int) -> str:
        return self.names[v] if self.names is not None else str(v)

    def is_independent(self, mask: int) -> bool:
        rest = mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            if self.masks[v] & mask:
                return False
            rest &= rest - 1
        return True

    def is_clique(self, mask: int) -> bool:
        rest = mask
        while rest:
            v = (rest & -rest).bit_length() - 1
            if (mask & ~(1 << v)) & ~self.masks[v]:
                return False
            rest &= rest - 1
        return True

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", "VertexMap"]:
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n:
                raise UnknownVertex(f"vertex {v} not in graph")
        pos = {v: i for i, v in enumerate(keep)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        names = tuple(self.name(v) for v in keep) if self.names is not None else None
        return Graph(len(keep), frozenset(edges), names), VertexMap(
            {v: pos[v] for v in keep}, len(keep)
        )

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class VertexMap:
    """Injective map from labels of a source object into ``0..size-1``."""

    mapping: dict
    size: int

    def __post_init__(self):
        image = list(self.mapping.values())
        if len(set(image)) != len(image):
            raise ValueError("vertex map is not injective")
        if any(not 0 <= x < self.size for x in image):
            raise ValueError("vertex map image out of range")

    def __getitem__(self, key):
        return self.mapping[key]

    def __contains__(self, key):
        return key in self.mapping

    def inverse(self) -> dict:
        return {v: k for k, v in self.mapping.items()}


def bits(mask: int) -> list:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


# -- standard graphs ----------------------------------------------------------


def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph(n, frozenset(itertools.combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(n, frozenset((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, frozenset((i, i + 1) for i in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at vertex 0."""
    return Graph(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))


def complete_multipartite(*sizes: int) -> Graph:
    offsets = list(itertools.accumulate(sizes, initial=0))
    part = [i for i, s in enumerate(sizes) for _ in range(s)]
    n = offsets[-1]
    edges = [(u, v) for u, v in itertools.combinations(range(n), 2) if part[u] != part[v]]
    return Graph(n, frozenset(edges))


def complete_bipartite(a: int, b: int) -> Graph:
    return complete_multipartite(a, b)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, frozenset(outer + spokes + inner))


def _one_based(n, pairs, prefix="v"):
    return Graph(
        n,
        frozenset((u - 1, v - 1) for u, v in pairs),
        tuple(f"{prefix}{i}" for i in range(1, n + 1)),
    )


def triangular_prism() -> Graph:
    """Bridgeless cubic graph on 6 vertices: triangles v1v2v3, v4v5v6 plus a matching."""
    pairs = [(1, 2), (2, 3), (3, 1), (1, 4), (4, 6), (6, 5), (5, 4), (5, 2), (6, 3)]
    return _one_based(6, pairs)


def bridged_cubic_graph() -> Graph:
    """Cubic graph on 10 vertices whose only bridge is v5-v6."""
    pairs = [
        (1, 2), (1, 3), (1, 4), (2, 3), (3, 4), (2, 5), (4, 5), (5, 6),
        (6, 7), (6, 8), (7, 9), (8, 9), (7, 10), (8, 10), (9, 10),
    ]
    return _one_based(10, pairs)


def c4_c6() -> Graph:
    """Disjoint union of C4 (v1..v4) and C6 (v5..v10)."""
    g, _ = disjoint_union([cycle_graph(4), cycle_graph(6)])
    return Graph(g.n, g.edges, tuple(f"v{i}" for i in range(1, 11)))


_BUILTIN_PATTERNS = [
    (re.compile(r"k_?(\d+)"), lambda m: complete_graph(int(m[1]))),
    (re.compile(r"c_?(\d+)"), lambda m: cycle_graph(int(m[1]))),
    (re.compile(r"p_?(\d+)"), lambda m: path_graph(int(m[1]))),
    (re.compile(r"empty_?(\d+)"), lambda m: empty_graph(int(m[1]))),
    (re.compile(r"star_?(\d+)"), lambda m: star_graph(int(m[1]))),
    (re.compile(r"k_?(\d+)_(\d+)"), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"k_?(\d+(?:_\d+){2,})"),
     lambda m: complete_multipartite(*map(int, m[1].split("_")))),
    (re.compile(r"petersen"), lambda m: petersen_graph()),
    (re.compile(r"fig2|prism"), lambda m: triangular_prism()),
    (re.compile(r"fig3|bridged_cubic"), lambda m: bridged_cubic_graph()),
    (re.compile(r"c4c6"), lambda m: c4_c6()),
]

BUILTIN_NAMES = (
    "k_<n>", "c_<n>", "p_<n>", "empty_<n>", "star_<n>", "k_<a>_<b>", "k_<a>_<b>_<c>...",
    "petersen", "fig2", "fig3", "c4c6",
)


def builtin(name: str) -> Graph:
    """Look up a named graph such as ``"petersen"``, ``"c_5"`` or ``"k_3_3"``."""
    key = name.strip().lower()
    for pat, make in _BUILTIN_PATTERNS:
        m = pat.fullmatch(key)
        if m:
            return make(m)
    raise KeyError(f"unknown built-in graph {name!r}")


# -- constructions --------------------------------------------------------------


def complement(g: Graph) -> Graph:
    edges = [(u, v) for u, v in itertools.combinations(range(g.n), 2) if not g.has_edge(u, v)]
    return Graph(g.n, frozenset(edges), g.names)


def union_same_vertices(f: Graph, g: Graph) -> Graph:
    """Graph on the common vertex set whose edge set is ``E(f) | E(g)``."""
    if f.n != g.n or (f.names is not None and g.names is not None and f.names != g.names):
        raise VertexSetMismatch("graphs must share the same vertex set")
    return Graph(f.n, f.edges | g.edges, f.names if f.names is not None else g.names)


def disjoint_union(parts: Sequence[Graph]) -> tuple[Graph, list]:
    """Place ``parts`` side by side.

    Returns the union and, for every vertex of the result, the index of the
    part it came from.  Part ``i`` occupies a contiguous label range.
    """
    if not parts:
        raise ValueError("disjoint_union needs at least one graph")
    edges, component = [], []
    offset = 0
    for idx, p in enumerate(parts):
        edges.extend((u + offset, v + offset) for u, v in p.edges)
        component.extend([idx] * p.n)
        offset += p.n
    return Graph(offset, frozenset(edges)), component


def line_graph(g: Graph) -> tuple[Graph, VertexMap]:
    """Line graph; vertex ``i`` of the result is ``g.edge_list[i]``."""
    if g.m == 0:
        raise EmptyEdgeSet("line graph of an edgeless graph is empty")
    el = g.edge_list
    index = {e: i for i, e in enumerate(el)}
    by_vertex = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(el):
        by_vertex[u].append(i)
        by_vertex[v].append(i)
    edges = set()
    for inc in by_vertex:
        edges.update(itertools.combinations(inc, 2))
    names = tuple(f"{g.name(u)}-{g.name(v)}" for u, v in el)
    return Graph(len(el), frozenset(edges), names), VertexMap(index, len(el))


def or_product(factors: Sequence[Graph]) -> Graph:
    """OR (co-normal) product.

    Vertices are tuples in ``itertools.product`` order.  Two distinct tuples
    are adjacent when some coordinate where they differ is an edge of the
    corresponding factor.
    """
    if not factors:
        raise ValueError("or_product needs at least one factor")
    tuples = list(itertools.product(*(range(f.n) for f in factors)))
    edges = []
    for i, j in itertools.combinations(range(len(tuples)), 2):
        s, t = tuples[i], tuples[j]
        if any(a != b and f.has_edge(a, b) for f, a, b in zip(factors, s, t)):
            edges.append((i, j))
    names = tuple("(" + ",".join(f.name(a) for f, a in zip(factors, t)) + ")" for t in tuples)
    return Graph(len(tuples), frozenset(edges), names)


def substitute(g: Graph, v: int, f: Graph) -> tuple[Graph, VertexMap, VertexMap]:
    """Replace vertex ``v`` of ``g`` by a copy of ``f``.

    The vertices of ``g`` other than ``v`` keep their relative order and come
    first; the copy of ``f`` is appended.  Returns the new graph and the maps
    from ``g``-labels (without ``v``) and from ``f``-labels into it.
    """
    if not 0 <= v < g.n:
        raise UnknownVertex(f"vertex {v} not in graph")
    g_map = {}
    for x in range(g.n):
        if x != v:
            g_map[x] = len(g_map)
    base = g.n - 1
    f_map = {x: base + x for x in range(f.n)}
    edges = [(g_map[a], g_map[b]) for a, b in g.edges if v not in (a, b)]
    edges += [(f_map[a], f_map[b]) for a, b in f.edges]
    for w in g.adj[v]:
        edges += [(g_map[w], f_map[x]) for x in range(f.n)]
    n = base + f.n
    names = None
    if g.names is not None or f.names is not None:
        names = tuple(g.name(x) for x in range(g.n) if x != v) + tuple(
            f.name(x) for x in range(f.n)
        )
    return Graph(n, frozenset(edges), names), VertexMap(g_map, n), VertexMap(f_map, n)


# -- structure ---------------------------------------------------------------------


def connected_components(g: Graph) -> list:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp, queue = [s], deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    return comps


def bipartition(g: Graph):
    """Return parts ``(A, B)`` or None.  The smallest vertex of each component lies in A."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    a = tuple(v for v in range(g.n) if color[v] == 0)
    b = tuple(v for v in range(g.n) if color[v] == 1)
    return a, b


def bridges(g: Graph) -> list:
    """Bridges in canonical edge order (iterative low-link DFS)."""
    disc = [-1] * g.n
    low = [0] * g.n
    out = []
    t = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(g.adj[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, u, iter(g.adj[w])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                low[parent] = min(low[parent], low[u])
                if low[u] > disc[parent]:
                    out.append(_norm_edge(parent, u))
    return sorted(out)


def regular_degree(g: Graph):
    """Common degree if ``g`` is regular, else None."""
    degs = set(g.degrees)
    return degs.pop() if len(degs) == 1 else (0 if g.n == 0 else None)


@dataclass(frozen=True)
class StructureReport:
    is_bipartite: bool
    parts: tuple | None
    components: tuple
    bridges: tuple
    regular_degree: int | None

    def is_k_regular(self, k: int) -> bool:
        return self.regular_degree == k


def structure_queries(g: Graph) -> StructureReport:
    parts = bipartition(g)
    return StructureReport(
        is_bipartite=parts is not None,
        parts=parts,
        components=tuple(tuple(c) for c in connected_components(g)),
        bridges=tuple(bridges(g)),
        regular_degree=regular_degree(g),
    )


def neighborhood(g: Graph, d: Iterable[int], parts=None) -> tuple:
    """Neighbors in B of a subset D of side A of a bipartite graph."""
    if parts is None:
        parts = bipartition(g)
        if parts is None:
            raise NotBipartite("neighborhood query requires a bipartite graph")
    a, _ = parts
    d = set(d)
    if not d <= set(a):
        raise ValueError("D must be a subset of side A")
    out = set()
    for v in d:
        out.update(g.adj[v])
    return tuple(sorted(out))


# -- automorphisms -----------------------------------------------------------------


def _extend_automorphism(g: Graph, order, mapping, used, pos):
    if pos == len(order):
        return True
    v = order[pos]
    for t in range(g.n):
        if used[t] or g.degrees[t] != g.degrees[v]:
            continue
        ok = True
        for w, tw in mapping.items():
            if g.has_edge(v, w) != g.has_edge(t, tw):
                ok = False
                break
        if not ok:
            continue
        mapping[v] = t
        used[t] = True
        if _extend_automorphism(g, order, mapping, used, pos + 1):
            return True
        del mapping[v]
        used[t] = False
    return False


def find_automorphism(g: Graph, source: int, target: int):
    """An automorphism sending ``source`` to ``target`` as a list, or None."""
    if g.degrees[source] != g.degrees[target]:
        return None
    # BFS order keeps every newly placed vertex adjacent to a placed one when possible.
    order, seen = [], {source}
    queue = deque([source])
    while len(order) < g.n:
        if not queue:
            s = next(x for x in range(g.n) if x not in seen)
            seen.add(s)
            queue.append(s)
        u = queue.popleft()
        order.append(u)
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    mapping = {source: target}
    used = [False] * g.n
    used[target] = True
    if _extend_automorphism(g, order, mapping, used, 1):
        return [mapping[v] for v in range(g.n)]
    return None


def transitivity_generators(g: Graph):
    """Automorphisms whose group moves vertex 0 onto every vertex, or None.

    The returned permutations (lists) certify vertex transitivity: the orbit
    of 0 under the group they generate is all of V.
    """
    if g.n > VERTEX_TRANSITIVE_LIMIT:
        raise SizeLimitExceeded("is_vertex_transitive", g.n, VERTEX_TRANSITIVE_LIMIT)
    gens = []
    if g.n <= 1:
        return gens
    orbit = {0}
    for t in range(1, g.n):
        if t in orbit:
            continue
        perm = find_automorphism(g, 0, t)
        if perm is None:
            return None
        gens.append(perm)
        orbit = orbit_of(0, gens)
    return gens


def orbit_of(v: int, perms) -> set:
    orbit, frontier = {v}, [v]
    while frontier:
        x = frontier.pop()
        for perm in perms:
            y = perm[x]
            if y not in orbit:
                orbit.add(y)
                frontier.append(y)
    return orbit


def is_vertex_transitive(g: Graph) -> bool:
    """True iff the automorphism group has a single orbit on vertices."""
    return transitivity_generators(g) is not None


def are_isomorphic(g: Graph, h: Graph) -> bool:
    """Brute-force isomorphism test for small graphs (test helper)."""
    if g.n != h.n or g.m != h.m or sorted(g.degrees) != sorted(h.degrees):
        return False
    for perm in itertools.permutations(range(g.n)):
        if all(h.has_edge(perm[u], perm[v]) for u, v in g.edges):
            return True
    return False


# -- edge-list text format -----------------------------------------------------------


class EdgeListError(GraphEntropyError, ValueError):
    def __init__(self, message, line=None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def parse_edge_list(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-based).

    Blank lines and ``#`` comments are ignored.
    """
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body.split()))
    if not rows:
        raise EdgeListError("empty edge list")
    lineno, head = rows[0]
    if len(head) != 2:
        raise EdgeListError("header must be 'n m'", lineno)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise EdgeListError("header must contain two integers", lineno) from None
    if n < 0 or m < 0:
        raise EdgeListError("n and m must be nonnegative", lineno)
    if len(rows) - 1 != m:
        raise EdgeListError(f"expected {m} edge lines, found {len(rows) - 1}", lineno)
    edges = set()
    for lineno, tok in rows[1:]:
        if len(tok) != 2:
            raise EdgeListError("edge line must be 'u v'", lineno)
        try:
            u, v = int(tok[0]), int(tok[1])
        except ValueError:
            raise EdgeListError("edge endpoints must be integers", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise EdgeListError(f"endpoint out of range 0..{n - 1}", lineno)
        if u == v:
            raise EdgeListError("self-loops are not allowed", lineno)
        e = _norm_edge(u, v)
        if e in edges:
            raise EdgeListError("duplicate edge", lineno)
        edges.add(e)
    return Graph(n, frozenset(edges))


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edge_list]
    return "\n".join(lines) + "\n"
