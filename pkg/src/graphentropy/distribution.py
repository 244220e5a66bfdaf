"""Probability vectors over vertices, exact (``Fraction``) or float."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

import numpy as np

from .errors import NegativeEntry, SumNotOne, UnknownVertex

FLOAT_SUM_TOL = 1e-12


def _is_exact(x) -> bool:
    return isinstance(x, Rational)


@dataclass(frozen=True)
class Distribution:
    """Nonnegative weights summing to one.

    All-rational input stays exact (weights become ``Fraction``); anything
    else is stored as float and must sum to one within ``1e-12``.
    """

    weights: tuple

    def __post_init__(self):
        w = tuple(self.weights)
        exact = all(_is_exact(x) for x in w)
        w = tuple(Fraction(x) for x in w) if exact else tuple(float(x) for x in w)
        for i, x in enumerate(w):
            if x < 0:
                raise NegativeEntry(f"weight {i} is negative: {x}")
        total = sum(w)
        if exact and total != 1:
            raise SumNotOne(f"weights sum to {total}, not 1")
        if not exact and abs(total - 1.0) > FLOAT_SUM_TOL:
            raise SumNotOne(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "weights", w)

    @classmethod
    def uniform(cls, n: int) -> "Distribution":
        return cls(tuple(Fraction(1, n) for _ in range(n)))

    @classmethod
    def point_mass(cls, n: int, v: int) -> "Distribution":
        return cls(tuple(Fraction(int(i == v)) for i in range(n)))

    @property
    def exact(self) -> bool:
        return bool(self.weights) and isinstance(self.weights[0], Fraction)

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __iter__(self):
        return iter(self.weights)

    def mass(self, vertices: Iterable[int]):
        zero = Fraction(0) if self.exact else 0.0
        return sum((self.weights[v] for v in vertices), zero)

    def as_array(self) -> np.ndarray:
        return np.array([float(x) for x in self.weights], dtype=float)

    def support(self) -> list:
        return [i for i, x in enumerate(self.weights) if x > 0]

    def restrict(self, vertices: Sequence[int]) -> "Distribution":
        """Conditional distribution on ``vertices`` (which must carry positive mass)."""
        total = self.mass(vertices)
        if total <= 0:
            raise ValueError("cannot condition on a zero-mass vertex set")
        w = [self.weights[v] / total for v in vertices]
        if not self.exact:
            s = sum(w)
            w = [x / s for x in w]
        return Distribution(tuple(w))

    def __repr__(self):
        return f"Distribution({[str(x) for x in self.weights]})"


def as_distribution(p, n: int | None = None) -> Distribution:
    """Coerce a sequence (or a Distribution) into a Distribution of length ``n``."""
    d = p if isinstance(p, Distribution) else Distribution(tuple(p))
    if n is not None and len(d) != n:
        raise ValueError(f"distribution has {len(d)} entries, graph has {n} vertices")
    return d


def product_distribution(factors: Sequence[Distribution]) -> Distribution:
    """Independent product on tuples, in ``itertools.product`` order."""
    import itertools

    out = []
    for combo in itertools.product(*(d.weights for d in factors)):
        x = combo[0]
        for y in combo[1:]:
            x = x * y
        out.append(x)
    d = Distribution(tuple(out)) if all(f.exact for f in factors) else None
    if d is None:
        s = sum(out)
        d = Distribution(tuple(x / s for x in out))
    return d


def distribution_substitute(p: Distribution, v: int, q: Distribution) -> Distribution:
    """Distribution on ``G_{v<-F}`` matching :func:`graph.substitute` labelling.

    Vertices of ``G`` other than ``v`` keep ``P(x)``; the appended copy of
    ``F`` gets ``P(v) * Q(x)``.
    """
    if not 0 <= v < len(p):
        raise UnknownVertex(f"vertex {v} not in distribution support range")
    w = [x for i, x in enumerate(p.weights) if i != v]
    w += [p.weights[v] * y for y in q.weights]
    if p.exact and q.exact:
        return Distribution(tuple(w))
    s = float(sum(w))
    return Distribution(tuple(float(x) / s for x in w))
