"""Deciding whether the uniform distribution maximizes graph entropy.

A graph is *symmetric* when ``max_P H(G, P)`` is attained at the uniform
distribution; since that maximum equals ``log2 chi_f(G)``, the numeric route
simply compares ``H(G, U)`` with the exact fractional chromatic number.  The
structural routes avoid the solver:

* perfect graphs are symmetric iff the vertices split into disjoint maximum
  cliques; otherwise a large independent set S gives an explicit point of the
  packing polytope whose objective falls below ``log2 omega``;
* bipartite graphs without isolated vertices are symmetric iff they have a
  perfect matching;
* vertex-transitive graphs are always symmetric;
* the line graph of a k-regular graph with fractional edge-chromatic number k
  (``k >= 3``) is symmetric, certified by explicit KKT multipliers.

Every verdict carries a certificate that :func:`check_verdict` re-validates
from scratch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .combinatorics import (
    clique_cover_by_max_cliques,
    hall_violator,
    max_weight_independent_set,
    maximal_cliques,
    maximum_cliques,
    maximum_matching_bipartite,
)
from .entropy import (
    DEFAULT_TOL_BITS,
    KktCertificate,
    graph_entropy,
    kkt_residual_line_graph,
    objective_bits,
    regular_kkt_certificate,
)
from .distribution import Distribution
from .errors import (
    HasBridge,
    IsolatedVertex,
    InvariantViolation,
    KBelowThree,
    NotBipartite,
    NotCubic,
    NotKGraph,
    NotPerfect,
    SizeLimitExceeded,
)
from .fractional import fractional_chromatic_number, is_k_graph
from .graph import (
    Graph,
    bipartition,
    bits,
    bridges,
    complement,
    line_graph,
    orbit_of,
    regular_degree,
    to_mask,
    transitivity_generators,
)

PERFECT_LIMIT = 14
KKT_TOL = 1e-12

SYMMETRIC = "symmetric"
NOT_SYMMETRIC = "not-symmetric"
UNDECIDED = "undecided-by-theorems"

ROUTES = ("perfect", "bipartite", "vertex-transitive", "kgraph", "numeric")


# -- perfection ---------------------------------------------------------------------


@dataclass(frozen=True)
class OddCycleWitness:
    """Induced odd cycle of length >= 5 in G ("hole") or in its complement ("antihole")."""

    kind: str
    cycle: tuple


def _induced_odd_cycle(nbr, n):
    """Vertices of an induced odd cycle of length >= 5, in cyclic order, or None.

    Paths grow from their smallest vertex ``s`` through larger vertices only,
    so every induced cycle is found from its minimum.
    """
    for s in range(n):
        above = ((1 << n) - 1) & ~((1 << (s + 1)) - 1)

        def grow(path, interior):
            last = path[-1]
            for w in bits(nbr[last] & above & ~interior):
                if w in path:
                    continue
                if (nbr[s] >> w) & 1:
                    if len(path) >= 2 and len(path) % 2 == 0 and len(path) + 1 >= 5:
                        return path + [w]
                    continue
                # w extends the induced path; last becomes interior
                found = grow(path + [w], interior | nbr[last] | (1 << last))
                if found:
                    return found
            return None

        for v1 in bits(nbr[s] & above):
            found = grow([s, v1], 0)
            if found:
                return tuple(found)
    return None


def is_perfect(g: Graph):
    """Perfection test by scanning for odd holes and odd antiholes.

    Returns ``(True, None)`` or ``(False, OddCycleWitness)``.
    """
    if g.n > PERFECT_LIMIT:
        raise SizeLimitExceeded("is_perfect", g.n, PERFECT_LIMIT)
    hole = _induced_odd_cycle(g.masks, g.n)
    if hole:
        return False, OddCycleWitness("hole", hole)
    co = complement(g)
    anti = _induced_odd_cycle(co.masks, co.n)
    if anti:
        return False, OddCycleWitness("antihole", anti)
    return True, None


def check_odd_cycle_witness(g: Graph, w: OddCycleWitness) -> None:
    h = g if w.kind == "hole" else complement(g)
    c = list(w.cycle)
    k = len(c)
    if k < 5 or k % 2 == 0 or len(set(c)) != k:
        raise InvariantViolation(f"{c} is not an odd cycle of length >= 5")
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j == i + 1 or (i == 0 and j == k - 1)
            if h.has_edge(c[i], c[j]) != consecutive:
                raise InvariantViolation(f"{c} is not an induced cycle")


# -- verdicts -----------------------------------------------------------------------


@dataclass(frozen=True)
class XBarWitness:
    """Independent set S with ``|S| > n / omega`` and the point built from it.

    ``x`` puts ``t = |S|/n`` on S and ``(1 - t)/(omega - 1)`` elsewhere;
    ``bound_bits`` is the objective at ``x`` under the uniform distribution,
    an upper bound on ``H(G, U)`` that lies strictly below ``log2 omega``.
    """

    independent_set: tuple
    omega: int
    x: tuple
    bound_bits: float

    @property
    def log2_omega(self) -> float:
        return math.log2(self.omega)


@dataclass(frozen=True)
class NumericCertificate:
    entropy_bits: float
    gap_bits: float
    chi_f: Fraction
    tol_bits: float

    @property
    def log2_chi_f(self) -> float:
        return math.log2(self.chi_f)

    @property
    def difference_bits(self) -> float:
        return self.log2_chi_f - self.entropy_bits


@dataclass(frozen=True)
class LineGraphCertificate:
    """KKT data for the uniform distribution on the line graph of a k-graph."""

    k: int
    kkt: KktCertificate
    residual: float
    entropy_bits: float
    gap_bits: float


@dataclass(frozen=True)
class SymmetryVerdict:
    """Outcome of a symmetry test.

    ``certificate`` depends on the route: a clique cover (tuple of vertex
    tuples), a perfect matching (edge tuple), automorphism generators, a
    :class:`LineGraphCertificate`, or a :class:`NumericCertificate`.
    ``counterexample`` is an :class:`XBarWitness` for negative perfect and
    bipartite verdicts.
    """

    verdict: str
    route: str | None
    certificate: object = None
    counterexample: object = None
    details: dict = field(default_factory=dict, compare=False)

    @property
    def symmetric(self):
        if self.verdict == UNDECIDED:
            return None
        return self.verdict == SYMMETRIC


def _xbar_witness(g: Graph, s_mask: int, omega: int) -> XBarWitness:
    n = g.n
    t = Fraction(bin(s_mask).count("1"), n)
    if not t > Fraction(1, omega):
        raise InvariantViolation("independent set is not larger than n / omega")
    rest = (1 - t) / (omega - 1)
    x = tuple(t if (s_mask >> v) & 1 else rest for v in range(n))
    # membership in the packing polytope through the clique inequalities
    for c in maximal_cliques(g):
        if sum(x[v] for v in bits(c)) > 1:
            raise InvariantViolation(f"clique inequality fails on {bits(c)}")
    bound = objective_bits([Fraction(1, n)] * n, x)
    if not bound < math.log2(omega):
        raise InvariantViolation(f"bound {bound} is not below log2 omega")
    return XBarWitness(tuple(bits(s_mask)), omega, x, bound)


def certify_symmetric_perfect(g: Graph) -> SymmetryVerdict:
    """Perfect graphs: symmetric iff covered by disjoint maximum cliques."""
    perfect, witness = is_perfect(g)
    if not perfect:
        raise NotPerfect(f"graph contains an odd {witness.kind} {witness.cycle}", witness)
    cover = clique_cover_by_max_cliques(g)
    if cover is not None:
        return SymmetryVerdict(SYMMETRIC, "perfect", tuple(cover))
    omega, _ = maximum_cliques(g)
    s_mask, _ = max_weight_independent_set(g, [1] * g.n)
    return SymmetryVerdict(NOT_SYMMETRIC, "perfect", None, _xbar_witness(g, s_mask, omega))


def _bipartite_parts(g: Graph, parts):
    if parts is None:
        parts = bipartition(g)
        if parts is None:
            raise NotBipartite("graph is not bipartite")
    a, b = (tuple(sorted(x)) for x in parts)
    isolated = [v for v in range(g.n) if g.degrees[v] == 0]
    if isolated:
        raise IsolatedVertex(f"isolated vertices {isolated}")
    return a, b


def certify_symmetric_bipartite(g: Graph, parts=None) -> SymmetryVerdict:
    """Bipartite graphs without isolated vertices: symmetric iff a perfect matching exists.

    Without one, the alternating-path set D of a maximum matching gives the
    independent set ``S = D + (other side - N(D))`` of size ``n - nu > n/2``.
    """
    a, b = _bipartite_parts(g, parts)
    matching = maximum_matching_bipartite(g, (a, b))
    if 2 * len(matching) == g.n:
        return SymmetryVerdict(SYMMETRIC, "bipartite", tuple(matching))
    d, nd = hall_violator(g, (a, b), matching)
    other = b if d[0] in a else a
    s = set(d) | (set(other) - set(nd))
    witness = _xbar_witness(g, to_mask(s), 2)
    return SymmetryVerdict(
        NOT_SYMMETRIC, "bipartite", None, witness, {"hall_set": d, "neighbors": nd}
    )


def certify_symmetric_vertex_transitive(g: Graph) -> SymmetryVerdict:
    """Symmetric with automorphism generators as certificate; undecided otherwise."""
    gens = transitivity_generators(g)
    if gens is None:
        return SymmetryVerdict(UNDECIDED, None, details={"vertex_transitive": False})
    return SymmetryVerdict(SYMMETRIC, "vertex-transitive", tuple(tuple(p) for p in gens))


def certify_symmetric_line_of_kgraph(g1: Graph, tol_bits: float = DEFAULT_TOL_BITS) -> SymmetryVerdict:
    """Verdict on the line graph of ``g1`` when ``g1`` is a k-graph with ``k >= 3``.

    The certificate is ``x = 1/k``, ``lambda_v = k/(2m)``, ``gamma = 0``,
    whose KKT residual must be at most ``1e-12``; the solver must also
    reproduce ``H(L(g1), U) = log2 k``.
    """
    res = is_k_graph(g1)
    if not res.is_k_graph:
        raise NotKGraph(f"not a k-graph: {res.witness}", res.witness)
    k = res.k
    if k < 3:
        raise KBelowThree(f"k = {k} < 3")
    cert = regular_kkt_certificate(g1)
    p = [Fraction(1, g1.m)] * g1.m
    residual = kkt_residual_line_graph(g1, p, cert)
    if residual > KKT_TOL:
        raise InvariantViolation(f"KKT residual {residual} above {KKT_TOL}")
    lg, _ = line_graph(g1)
    ent = graph_entropy(lg, Distribution.uniform(lg.n), tol_bits=tol_bits)
    if abs(ent.value_bits - math.log2(k)) > ent.gap_bits + tol_bits:
        raise InvariantViolation(
            f"H(L(G), U) = {ent.value_bits} differs from log2 {k} beyond tolerance"
        )
    return SymmetryVerdict(
        SYMMETRIC,
        "kgraph",
        LineGraphCertificate(k, cert, residual, ent.value_bits, ent.gap_bits),
    )


def certify_symmetric_bridgeless_cubic(g1: Graph, tol_bits: float = DEFAULT_TOL_BITS) -> SymmetryVerdict:
    """Line graph of a bridgeless cubic graph; delegates to the k-graph route.

    Bridgeless and cubic forces every odd cut to have size at least 3, so the
    k-graph test must succeed; a failure is an invariant violation.
    """
    if regular_degree(g1) != 3 or g1.n == 0:
        raise NotCubic("graph is not 3-regular")
    br = bridges(g1)
    if br:
        raise HasBridge(f"bridge {br[0]}", br[0])
    try:
        verdict = certify_symmetric_line_of_kgraph(g1, tol_bits)
    except NotKGraph as exc:
        raise InvariantViolation(f"bridgeless cubic graph failed the odd-cut test: {exc}")
    return SymmetryVerdict(
        verdict.verdict, verdict.route, verdict.certificate, details={"via": "bridgeless-cubic"}
    )


def certify_symmetric_numeric(g: Graph, tol_bits: float = DEFAULT_TOL_BITS) -> SymmetryVerdict:
    """Compare ``H(G, U)`` against ``log2 chi_f(G)`` (exact LP).

    Symmetric iff they agree within ``tol_bits`` plus the solver's gap.
    """
    chi_f, _ = fractional_chromatic_number(g)
    ent = graph_entropy(g, Distribution.uniform(g.n), tol_bits=tol_bits)
    cert = NumericCertificate(ent.value_bits, ent.gap_bits, chi_f, tol_bits)
    sym = abs(cert.difference_bits) <= tol_bits + ent.gap_bits
    return SymmetryVerdict(SYMMETRIC if sym else NOT_SYMMETRIC, "numeric", cert)


def applicable_routes(g: Graph) -> list:
    """Structural routes whose hypotheses hold for ``g`` itself (not its line graph)."""
    out = []
    if g.n <= PERFECT_LIMIT and is_perfect(g)[0]:
        out.append("perfect")
    if g.n and bipartition(g) is not None and min(g.degrees) > 0:
        out.append("bipartite")
    if g.n <= 16 and transitivity_generators(g) is not None:
        out.append("vertex-transitive")
    return out


def certify_symmetric(
    g: Graph, route: str = "auto", numeric: bool = False, tol_bits: float = DEFAULT_TOL_BITS
) -> SymmetryVerdict:
    """Symmetry verdict for ``g`` by the requested route.

    ``route="kgraph"`` reads ``g`` as the root graph and speaks about its line
    graph.  With ``route="auto"`` the structural routes are tried in the order
    bipartite, perfect, vertex-transitive; if none applies the numeric route
    runs only when ``numeric`` is set, otherwise the verdict is undecided.
    """
    if route == "perfect":
        return certify_symmetric_perfect(g)
    if route == "bipartite":
        return certify_symmetric_bipartite(g)
    if route == "vertex-transitive":
        return certify_symmetric_vertex_transitive(g)
    if route == "kgraph":
        return certify_symmetric_line_of_kgraph(g, tol_bits)
    if route == "numeric":
        return certify_symmetric_numeric(g, tol_bits)
    if route != "auto":
        raise ValueError(f"unknown route {route!r}")
    routes = applicable_routes(g)
    if "bipartite" in routes:
        return certify_symmetric_bipartite(g)
    if "perfect" in routes:
        return certify_symmetric_perfect(g)
    if "vertex-transitive" in routes:
        return certify_symmetric_vertex_transitive(g)
    if numeric:
        return certify_symmetric_numeric(g, tol_bits)
    return SymmetryVerdict(UNDECIDED, None)


# -- independent checks -------------------------------------------------------------


def check_clique_cover(g: Graph, cover) -> None:
    """Raise unless ``cover`` partitions V into cliques of size omega(G)."""
    omega, _ = maximum_cliques(g)
    seen = []
    for part in cover:
        if len(part) != omega or not g.is_clique(to_mask(part)):
            raise InvariantViolation(f"{part} is not a maximum clique")
        seen.extend(part)
    if sorted(seen) != list(range(g.n)):
        raise InvariantViolation("cover does not partition the vertex set")


def check_perfect_matching(g: Graph, matching) -> None:
    used = []
    for u, v in matching:
        if not g.has_edge(u, v):
            raise InvariantViolation(f"{(u, v)} is not an edge")
        used += [u, v]
    if sorted(used) != list(range(g.n)):
        raise InvariantViolation("matching is not perfect")


def check_automorphisms(g: Graph, perms) -> None:
    for perm in perms:
        if sorted(perm) != list(range(g.n)):
            raise InvariantViolation("not a permutation")
        for u, v in g.edges:
            if not g.has_edge(perm[u], perm[v]):
                raise InvariantViolation(f"{perm} does not preserve edge {(u, v)}")
    if g.n and len(orbit_of(0, perms)) != g.n:
        raise InvariantViolation("generators do not act transitively")


def check_xbar_witness(g: Graph, w: XBarWitness) -> None:
    s = to_mask(w.independent_set)
    if not g.is_independent(s):
        raise InvariantViolation("witness set is not independent")
    if clique_number_of(g) != w.omega:
        raise InvariantViolation("omega does not match the graph")
    again = _xbar_witness(g, s, w.omega)
    if again.x != tuple(w.x) or abs(again.bound_bits - w.bound_bits) > 1e-9:
        raise InvariantViolation("witness point or bound does not reproduce")


def clique_number_of(g: Graph) -> int:
    return maximum_cliques(g)[0]


def check_verdict(g: Graph, verdict: SymmetryVerdict) -> None:
    """Re-validate a verdict's certificate; ``g`` is the root for the k-graph route."""
    if verdict.verdict == UNDECIDED:
        return
    if verdict.route == "perfect":
        if not is_perfect(g)[0]:
            raise InvariantViolation("perfect route on a graph that is not perfect")
        if verdict.symmetric:
            check_clique_cover(g, verdict.certificate)
        else:
            if clique_cover_by_max_cliques(g) is not None:
                raise InvariantViolation("negative verdict although a cover exists")
            check_xbar_witness(g, verdict.counterexample)
    elif verdict.route == "bipartite":
        if verdict.symmetric:
            check_perfect_matching(g, verdict.certificate)
        else:
            check_xbar_witness(g, verdict.counterexample)
            if 2 * len(maximum_matching_bipartite(g)) == g.n:
                raise InvariantViolation("negative verdict although a perfect matching exists")
    elif verdict.route == "vertex-transitive":
        check_automorphisms(g, verdict.certificate)
    elif verdict.route == "kgraph":
        cert = verdict.certificate
        p = [Fraction(1, g.m)] * g.m
        if kkt_residual_line_graph(g, p, cert.kkt) > KKT_TOL:
            raise InvariantViolation("KKT residual above tolerance")
        if any(x != Fraction(1, cert.k) for x in cert.kkt.x):
            raise InvariantViolation("KKT point is not 1/k on every edge")
    elif verdict.route == "numeric":
        cert = verdict.certificate
        chi_f, _ = fractional_chromatic_number(g)
        if chi_f != cert.chi_f:
            raise InvariantViolation("fractional chromatic number does not reproduce")
        sym = abs(cert.difference_bits) <= cert.tol_bits + cert.gap_bits
        if sym != verdict.symmetric:
            raise InvariantViolation("numeric verdict inconsistent with its numbers")
    else:
        raise InvariantViolation(f"unknown route {verdict.route!r}")
