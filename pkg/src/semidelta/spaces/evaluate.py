"""Cardinality homomorphisms out of the space algebra and structural profiles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import NotPIntegralError
from ..padic import (
    DEFAULT_PRECISION,
    PLocalRational,
    Prime,
    TruncatedPAdic,
    fermat_quotient,
)
from . import expr as E
from .rig import RigElement


@dataclass(frozen=True)
class Rational:
    """Rational (Baez-Dolan) cardinality: ``|B^k C_p| = p^((-1)^k)``."""

    def __str__(self):
        return "q"


@dataclass(frozen=True)
class Height:
    """Height-``n`` chromatic target: ``|B^k C_p| = p^binom(n-1, k)``.

    ``mode`` is ``"exact"`` (values in Z_(p), or Q when ``n == 0``) or
    ``"truncated"`` (values in Z_p modulo ``p**precision``).
    """

    n: int
    mode: str = "exact"
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("height must be non-negative")
        if self.mode not in ("exact", "truncated"):
            raise ValueError(f"unknown mode {self.mode!r}")

    def __str__(self):
        if self.mode == "truncated":
            return f"en(n={self.n}, truncated N={self.precision})"
        return f"en(n={self.n})"


EvalTarget = Rational | Height


def gbinom(a: int, k: int) -> int:
    """Binomial coefficient with arbitrary integer top, ``binom(-1, k) = (-1)^k``."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= a - i
    return num // math.factorial(k)


def em_exponent(k: int, target: EvalTarget) -> int:
    """Exponent e with ``|B^k C_p| = p^e`` at the target."""
    if isinstance(target, Rational):
        return (-1) ** k
    return gbinom(target.n - 1, k)


def lift(x, p, target: EvalTarget):
    """Embed a rational number into the target's scalar ring."""
    if isinstance(target, Rational) or target.n == 0:
        if isinstance(target, Height) and target.mode == "truncated":
            x = Fraction(x)
            if x.denominator % p:
                return TruncatedPAdic.from_rational(x, p, target.precision)
            raise NotPIntegralError(f"{x} has no image in truncated Z_{p}")
        return Fraction(x)
    if target.mode == "truncated":
        return TruncatedPAdic.from_rational(x, p, target.precision)
    return PLocalRational(Fraction(x), p)


def em_cardinality(k: int, p, target: EvalTarget):
    return lift(Fraction(p) ** em_exponent(k, target), p, target)


def cardinality(a: E.SpaceExpr, p, target: EvalTarget):
    """``|a|`` in the target ring.

    Sums go to sums, products to products and the wreath follows
    ``|A wr C_p| = |BC_p| |A| - dq(|A|)`` with ``dq`` the Fermat quotient.
    """
    p = Prime(p)
    cache: dict = {}

    def card(b):
        if b in cache:
            return cache[b]
        if isinstance(b, E.Point):
            v = lift(1, p, target)
        elif isinstance(b, E.Empty):
            v = lift(0, p, target)
        elif isinstance(b, E.EM):
            v = em_cardinality(b.k, p, target)
        elif isinstance(b, E.Disjoint):
            v = card(b.terms[0])
            for t in b.terms[1:]:
                v = v + card(t)
        elif isinstance(b, E.Product):
            v = card(b.factors[0])
            for f in b.factors[1:]:
                v = v * card(f)
        elif isinstance(b, E.Wreath):
            inner = card(b.arg)
            v = em_cardinality(1, p, target) * inner - fermat_quotient(inner, p)
        elif isinstance(b, (E.Loop, E.FreeLoop)):
            v = card(E.normalize(b, p))
        else:
            raise TypeError(f"not a space expression: {b!r}")
        cache[b] = v
        return v

    return card(a)


def dimension(a: E.SpaceExpr, p, target: EvalTarget):
    """``dim(a) = |L a| = |a| |Om a|``; defined on EM products only."""
    return cardinality(E.free_loop(a), p, target)


def evaluate_rig(x: RigElement, target: EvalTarget):
    p = x.prime
    total = lift(0, p, target)
    for m, c in x.items():
        total = total + c * cardinality(m, p, target)
    return total


@dataclass(frozen=True)
class SpaceProfile:
    """Structural invariants of a normal-form expression.

    ``connectivity`` is an integer >= -1, ``"inf"`` for contractible spaces
    or ``"empty"``; ``level`` is the least m with the space m-truncated
    (-2 for a point, -1 for the empty space); ``nonzero_pi`` lists degrees
    with a provably nontrivial homotopy group, where degree 0 means more
    than one component.
    """

    connectivity: int | str
    level: int
    component_count: int
    nonzero_pi: frozenset = field(default_factory=frozenset)

    @property
    def connected(self):
        return self.connectivity == "inf" or (isinstance(self.connectivity, int) and self.connectivity >= 0)

    def to_json(self):
        return {
            "connectivity": self.connectivity,
            "level": self.level,
            "component_count": self.component_count,
            "nonzero_pi": sorted(self.nonzero_pi),
        }


def _min_conn(a, b):
    if a == "inf":
        return b
    if b == "inf":
        return a
    return min(a, b)


def profile(a: E.SpaceExpr, p) -> SpaceProfile:
    p = Prime(p)
    if isinstance(a, E.Point):
        return SpaceProfile("inf", -2, 1, frozenset())
    if isinstance(a, E.Empty):
        return SpaceProfile("empty", -1, 0, frozenset())
    if isinstance(a, E.EM):
        if a.k == 0:
            return SpaceProfile(-1, 0, p, frozenset({0}))
        return SpaceProfile(a.k - 1, a.k, 1, frozenset({a.k}))
    if isinstance(a, E.Product):
        parts = [profile(f, p) for f in a.factors]
        conn = "inf"
        for q in parts:
            conn = _min_conn(conn, q.connectivity)
        count = math.prod(q.component_count for q in parts)
        pis = frozenset().union(*(q.nonzero_pi for q in parts))
        return SpaceProfile(conn, max(q.level for q in parts), count, pis)
    if isinstance(a, E.Disjoint):
        parts = [profile(t, p) for t in a.terms]
        pis = frozenset({0}).union(*(q.nonzero_pi for q in parts))
        level = max(0, *(q.level for q in parts))
        return SpaceProfile(-1, level, sum(q.component_count for q in parts), pis)
    if isinstance(a, E.Wreath):
        inner = profile(a.arg, p)
        c = inner.component_count
        # components of (A^p)_{hC_p} are C_p-orbits on pi_0(A)^p
        count = c + (c**p - c) // p
        pis = {1} | (set(inner.nonzero_pi) - {0})
        if count > 1:
            pis.add(0)
        conn = 0 if count == 1 else -1
        return SpaceProfile(conn, max(inner.level, 1), count, frozenset(pis))
    return profile(E.normalize(a, p), p)
