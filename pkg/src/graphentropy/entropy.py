"""Graph entropy over the vertex packing polytope.

``H(G, P)`` is the minimum of ``sum_i p_i log2(1/a_i)`` over points ``a`` of
the vertex packing polytope, the convex hull of independent-set indicators.
:func:`graph_entropy` minimizes it with Frank-Wolfe, using the exact
maximum-weight independent set as the linear minimization oracle.  The
oracle value also yields the Frank-Wolfe duality gap, which bounds the
distance to the optimum and is reported with every result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .combinatorics import max_weight_independent_set, maximal_cliques, maximal_independent_sets
from .distribution import Distribution, as_distribution
from .errors import (
    DimensionMismatch,
    DomainError,
    InfeasiblePoint,
    NonconvergenceAfterMaxIters,
)
from .graph import Graph, bits

LN2 = math.log(2.0)
DEFAULT_TOL_BITS = 1e-9
DEFAULT_MAX_ITERS = 10**6


def shannon_entropy(p) -> float:
    """Shannon entropy in bits, with ``0 log(1/0) = 0``."""
    total = 0.0
    for x in p:
        x = float(x)
        if x > 0:
            total -= x * math.log2(x)
    return total


def binary_entropy(x) -> float:
    if not 0 <= x <= 1:
        raise DomainError(f"binary entropy needs 0 <= x <= 1, got {x}")
    return shannon_entropy((x, 1 - x))


def objective_bits(p, a) -> float:
    """``sum_i p_i log2(1/a_i)`` over ``p_i > 0``; infinite if some such ``a_i <= 0``."""
    total = 0.0
    for pi, ai in zip(p, a):
        if pi > 0:
            if ai <= 0:
                return math.inf
            total -= float(pi) * math.log2(float(ai))
    return total


@dataclass(frozen=True)
class PolytopePoint:
    """Point of VP(G) stored as a convex combination of independent sets.

    ``support`` holds ``(mask, coefficient)`` pairs; ``coords`` is the dense
    vector ``a_i = sum of coefficients of sets containing i``.
    """

    n: int
    support: tuple
    coords: np.ndarray = field(compare=False)

    @classmethod
    def from_support(cls, n, support):
        support = tuple((int(s), c) for s, c in support)
        coords = np.zeros(n)
        for s, c in support:
            for v in bits(s):
                coords[v] += float(c)
        return cls(n, support, coords)

    def validate(self, g: Graph, tol: float = 1e-12) -> None:
        if g.n != self.n:
            raise DimensionMismatch("point and graph differ in vertex count")
        total = 0.0
        dense = np.zeros(self.n)
        for s, c in self.support:
            if c < -tol:
                raise InfeasiblePoint(f"negative coefficient {c}")
            if not g.is_independent(s):
                raise InfeasiblePoint(f"support set {bits(s)} is not independent")
            total += float(c)
            for v in bits(s):
                dense[v] += float(c)
        if abs(total - 1.0) > tol:
            raise InfeasiblePoint(f"coefficients sum to {total}")
        if np.max(np.abs(dense - self.coords), initial=0.0) > tol:
            raise InfeasiblePoint("dense coordinates disagree with the support")


@dataclass(frozen=True)
class EntropyResult:
    value_bits: float
    gap_bits: float
    minimizer: PolytopePoint
    iterations: int
    gap_history: tuple = field(default=(), repr=False, compare=False)

    @property
    def lower_bits(self) -> float:
        return self.value_bits - self.gap_bits


def _line_search(p, a, d, gmax, guess=None):
    """argmin over [0, gmax] of -sum p log(a + t d), by bisection on the derivative.

    If ``guess`` is given and the derivative there is already negligible
    compared with the initial slope, it is accepted without bisection.
    """

    def slope(t):
        x = a + t * d
        if x.min() <= 0:
            return math.inf
        return -float((p * d / x).sum())

    s0 = slope(0.0)
    if s0 >= 0:
        return 0.0
    if guess is not None and guess < gmax and abs(slope(guess)) <= 1e-3 * abs(s0):
        return guess
    if slope(gmax) <= 0:
        return gmax
    lo, hi = 0.0, gmax
    width = 1e-12 * max(1.0, gmax)
    while hi - lo > width:
        mid = 0.5 * (lo + hi)
        if slope(mid) > 0:
            hi = mid
        else:
            lo = mid
    return lo


class _ActiveSet:
    """Convex weights on a list of independent sets, restricted to p > 0 rows."""

    def __init__(self, pos, masks, lam):
        self.pos = pos
        self.masks = list(masks)
        self.cols = [self._column(s) for s in self.masks]
        self.lam = np.asarray(lam, dtype=float)

    def _column(self, s):
        return np.array([(s >> int(v)) & 1 for v in self.pos], dtype=float)

    @property
    def matrix(self):
        return np.column_stack(self.cols)

    def point(self):
        return self.matrix @ self.lam

    def add(self, s):
        try:
            return self.masks.index(s)
        except ValueError:
            self.masks.append(s)
            self.cols.append(self._column(s))
            self.lam = np.append(self.lam, 0.0)
            return len(self.masks) - 1

    def prune(self, eps=0.0):
        keep = [i for i, x in enumerate(self.lam) if x > eps]
        self.masks = [self.masks[i] for i in keep]
        self.cols = [self.cols[i] for i in keep]
        self.lam = self.lam[keep]
        self.lam /= self.lam.sum()

    def reduce(self):
        """Drop sets until the columns with a row of ones are linearly independent.

        Moves along null-space directions of the coefficient map, so the
        point itself does not change.
        """
        while len(self.lam) > 1:
            aug = np.vstack([self.matrix, np.ones(len(self.lam))])
            _, sv, vt = np.linalg.svd(aug)
            rank = int(np.sum(sv > 1e-10 * sv[0]))
            if rank == len(self.lam):
                return
            z = vt[-1]
            if not np.any(z < 0):
                z = -z
            neg = z < 0
            ratio = np.where(neg, self.lam / np.where(neg, -z, 1.0), np.inf)
            j = int(np.argmin(ratio))
            new = np.maximum(self.lam + ratio[j] * z, 0.0)
            new[j] = 0.0
            self.lam = new
            self.prune()


def _newton_polish(pp, active: _ActiveSet, max_steps=100):
    """Minimize over the convex hull of the active sets (fully corrective step).

    Damped Newton in the coefficient space with the simplex constraint handled
    through the KKT system; a coefficient that reaches zero leaves the set.
    Once the Newton decrement is small the full step is taken without a line
    search, whose derivative test is dominated by rounding at that scale.
    """
    prev = math.inf
    stalled = 0
    for _ in range(max_steps):
        active.reduce()
        mat = active.matrix
        lam = active.lam
        k = len(lam)
        if k == 1:
            return
        a = mat @ lam
        grad = -(mat.T @ (pp / a))
        hess = (mat.T * (pp / a**2)) @ mat
        kkt = np.zeros((k + 1, k + 1))
        kkt[:k, :k] = hess
        kkt[:k, k] = 1.0
        kkt[k, :k] = 1.0
        rhs = np.concatenate([-grad, [0.0]])
        try:
            d = np.linalg.solve(kkt, rhs)[:k]
        except np.linalg.LinAlgError:
            d = np.linalg.lstsq(kkt, rhs, rcond=None)[0][:k]
        decrement = -float(grad @ d)
        if not decrement > 1e-24:
            return
        stalled = stalled + 1 if decrement > 0.25 * prev else 0
        if stalled >= 3:
            return
        prev = decrement
        neg = d < 0
        if not np.any(neg):
            return
        ratio = np.where(neg, lam / np.where(neg, -d, 1.0), np.inf)
        gmax = float(ratio.min())
        if decrement < 1e-8 and gmax > 1.0:
            t = 1.0
        else:
            t = _line_search(pp, a, mat @ d, gmax, guess=1.0)
        if t <= 0:
            return
        new = np.maximum(lam + t * d, 0.0)
        if t >= gmax * (1 - 1e-12):
            new[ratio <= gmax * (1 + 1e-12)] = 0.0
        active.lam = new
        active.prune()


def graph_entropy(
    g: Graph,
    p,
    tol_bits: float = DEFAULT_TOL_BITS,
    method: str = "corrective",
    max_iter: int = DEFAULT_MAX_ITERS,
) -> EntropyResult:
    """Graph entropy ``H(G, P)`` in bits.

    Parameters
    ----------
    g : Graph
    p : Distribution or sequence
        Probability distribution on the vertices.
    tol_bits : float
        Stop once the Frank-Wolfe gap is at most this; the true optimum then
        lies in ``[value_bits - gap_bits, value_bits]``.
    method : {"corrective", "away", "plain"}
        ``"plain"`` is textbook Frank-Wolfe with exact line search;
        ``"away"`` adds away steps; ``"corrective"`` re-optimizes over all
        sets found so far after every oracle call, which reaches tight
        tolerances in few oracle calls.
    max_iter : int
        Oracle-call budget.
    """
    if tol_bits <= 0:
        raise ValueError("tol_bits must be positive")
    if method not in ("corrective", "away", "plain"):
        raise ValueError(f"unknown method {method!r}")
    dist = as_distribution(p, g.n)
    pf = dist.as_array()
    pos = np.flatnonzero(pf > 0)
    pp = pf[pos]
    ptotal = float(pp.sum())

    start = maximal_independent_sets(g)
    active = _ActiveSet(pos, start, np.full(len(start), 1.0 / len(start)))
    if method == "corrective":
        _newton_polish(pp, active)

    history = []
    w = [0.0] * g.n
    gap = math.inf
    it = 0
    while True:
        a = active.point()
        for i, v in enumerate(pos):
            w[v] = float(pp[i] / a[i])
        s, top = max_weight_independent_set(g, w)
        gap = max(float(top) - ptotal, 0.0) / LN2
        history.append(gap)
        if gap <= tol_bits:
            break
        if it >= max_iter:
            raise NonconvergenceAfterMaxIters(
                f"Frank-Wolfe gap {gap:.3e} bits above tolerance after {it} iterations"
            )
        it += 1
        col = active._column(s)
        if method == "away":
            scores = active.matrix.T @ (pp / a)
            j = int(np.argmin(scores))
            fw_gain = float(top) - ptotal
            away_gain = ptotal - float(scores[j])
            if away_gain > fw_gain and active.lam[j] < 1.0:
                lj = active.lam[j]
                gmax = lj / (1.0 - lj)
                t = _line_search(pp, a, a - active.cols[j], gmax)
                active.lam = active.lam * (1 + t)
                active.lam[j] -= t
                if t >= gmax:
                    active.lam[j] = 0.0
                active.lam = np.maximum(active.lam, 0.0)
                active.prune()
                continue
        t = _line_search(pp, a, col - a, 1.0)
        idx = active.add(s)
        active.lam = active.lam * (1 - t)
        active.lam[idx] += t
        active.prune()
        if method == "corrective":
            _newton_polish(pp, active)

    support = tuple(zip(active.masks, (float(x) for x in active.lam)))
    point = PolytopePoint.from_support(g.n, support)
    value = objective_bits(pf, point.coords)
    return EntropyResult(value, gap, point, it, tuple(history))


def entropy_upper_bound_from_point(g: Graph, p, point) -> float:
    """Objective value at a feasible point of VP(G); an upper bound on H(G, P).

    ``point`` is either a :class:`PolytopePoint` (feasibility certified by
    its support) or a dense vector.  Dense vectors are accepted only for
    perfect graphs, where VP(G) is cut out by the clique inequalities.
    """
    dist = as_distribution(p, g.n)
    if isinstance(point, PolytopePoint):
        point.validate(g)
        return objective_bits(dist.weights, point.coords)
    x = list(point)
    if len(x) != g.n:
        raise DimensionMismatch("point has wrong length")
    exact = all(isinstance(v, (int, Fraction)) for v in x)
    slack = 0 if exact else 1e-12
    if any(v < -slack for v in x):
        raise InfeasiblePoint("negative coordinate")
    for c in maximal_cliques(g):
        if sum(x[v] for v in bits(c)) > 1 + slack:
            raise InfeasiblePoint(f"clique inequality violated on {bits(c)}")
    from .certification import is_perfect

    perfect, _ = is_perfect(g)
    if not perfect:
        raise InfeasiblePoint("clique inequalities certify membership only for perfect graphs")
    return objective_bits(dist.weights, x)


# -- KKT certificate for entropy over the matching polytope ------------------------


@dataclass(frozen=True)
class KktCertificate:
    """Primal point and multipliers for ``min -sum p_e log x_e`` over MP(G1).

    ``x`` is indexed like ``g1.edge_list``; ``lam`` by vertex; ``gamma`` maps
    odd vertex sets (tuples, size >= 3) to their multipliers.
    """

    x: tuple
    lam: tuple
    gamma: dict = field(default_factory=dict)

    def stationarity(self, g1: Graph, p) -> list:
        out = []
        for e, (u, v) in enumerate(g1.edge_list):
            val = -p[e] / self.x[e] + self.lam[u] + self.lam[v]
            for U, gam in self.gamma.items():
                if u in U and v in U:
                    val += gam
            out.append(val)
        return out


def regular_kkt_certificate(g1: Graph) -> KktCertificate:
    """``x = 1/k``, ``lambda_v = k/(2m)``, ``gamma = 0`` for a k-regular graph."""
    k = g1.max_degree
    x = tuple(Fraction(1, k) for _ in range(g1.m))
    lam = tuple(Fraction(k, 2 * g1.m) for _ in range(g1.n))
    return KktCertificate(x, lam, {})


def kkt_residual_line_graph(g1: Graph, p, cert: KktCertificate) -> float:
    """Largest violation of the KKT system for entropy over the matching polytope.

    Covers stationarity per edge, complementary slackness for the degree and
    odd-set constraints, sign of the multipliers, and primal feasibility of
    ``x`` (degree constraints and every odd-set constraint).
    """
    p = list(p.weights) if isinstance(p, Distribution) else list(p)
    if len(p) != g1.m or len(cert.x) != g1.m:
        raise DimensionMismatch("p and x need one entry per edge of G1")
    if len(cert.lam) != g1.n:
        raise DimensionMismatch("lambda needs one entry per vertex of G1")
    for U in cert.gamma:
        if len(U) < 3 or len(U) % 2 == 0 or any(not 0 <= v < g1.n for v in U):
            raise DimensionMismatch(f"gamma key {U} is not an odd vertex set of size >= 3")
    for e in range(g1.m):
        if p[e] > 0 and not cert.x[e] > 0:
            raise InfeasiblePoint(f"x is not positive on edge {g1.edge_list[e]} with p_e > 0")

    viol = [abs(float(r)) for r in cert.stationarity(g1, p)]
    load = [0] * g1.n
    for e, (u, v) in enumerate(g1.edge_list):
        load[u] += cert.x[e]
        load[v] += cert.x[e]
    for v in range(g1.n):
        viol.append(abs(float(cert.lam[v] * (load[v] - 1))))
        viol.append(max(0.0, float(load[v] - 1)))
        viol.append(max(0.0, -float(cert.lam[v])))
    for U, gam in cert.gamma.items():
        inside = sum(cert.x[e] for e, (u, v) in enumerate(g1.edge_list) if u in U and v in U)
        viol.append(abs(float(gam * (inside - len(U) // 2))))
        viol.append(max(0.0, -float(gam)))
    viol.extend(max(0.0, -float(xe)) for xe in cert.x)
    viol.append(_odd_set_excess(g1, [float(xe) for xe in cert.x]))
    return max(viol)


def _odd_set_excess(g1: Graph, x) -> float:
    from .combinatorics import ODD_CUT_LIMIT, _check

    _check("odd-set feasibility", g1.n, ODD_CUT_LIMIT)
    masks = np.arange(1 << g1.n, dtype=np.int64)
    size = np.bitwise_count(masks)
    inside = np.zeros(masks.shape, dtype=float)
    for xe, (u, v) in zip(x, g1.edge_list):
        inside += xe * ((masks >> u) & (masks >> v) & 1)
    odd = (size % 2 == 1) & (size >= 3)
    if not np.any(odd):
        return 0.0
    return max(0.0, float(np.max(inside[odd] - size[odd] // 2)))
