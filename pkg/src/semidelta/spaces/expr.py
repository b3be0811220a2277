"""Symbolic pi-finite p-spaces generated by Eilenberg-MacLane spaces of C_p.

Expressions are immutable and hashable.  Use the smart constructors
(:func:`disjoint`, :func:`product`, :func:`loop`, :func:`free_loop`,
:func:`wreath`) or :func:`normalize`; they always return normal forms:

* sums and products are flattened and sorted by :func:`sort_key`,
  ``Point`` is dropped from products, ``Empty`` from sums, and an
  ``Empty`` factor kills a product;
* ``Loop`` never survives: ``Om(B k) = B(k-1)``, ``Om(B0) = pt`` and
  loops distribute over products;
* ``FreeLoop(A)`` becomes ``A * Om(A)``;
* ``W(pt) = B1``, ``W(empty) = empty`` and a wreath of a sum (after
  expanding products over sums) splits into the wreaths of the summands
  plus one product for every free C_p-orbit of non-constant words.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement, product as cartesian

from ..errors import NotALoopSpaceError, SizeGuardError

# Caps the number of orbit products a wreath of a sum may expand into.
MAX_WREATH_TERMS = 10_000


class SpaceExpr:
    __slots__ = ()
    tag = None

    def __str__(self):
        return to_text(self)

    def __mul__(self, other):
        return product(self, other)

    def __add__(self, other):
        return disjoint(self, other)


@dataclass(frozen=True, repr=False)
class Point(SpaceExpr):
    tag = "Point"

    def __repr__(self):
        return "Point()"


@dataclass(frozen=True, repr=False)
class Empty(SpaceExpr):
    tag = "Empty"

    def __repr__(self):
        return "Empty()"


@dataclass(frozen=True)
class EM(SpaceExpr):
    """B^k C_p for the session prime."""

    k: int
    tag = "EM"

    def __post_init__(self):
        if self.k < 0:
            raise ValueError("EM level must be non-negative")


@dataclass(frozen=True)
class Disjoint(SpaceExpr):
    terms: tuple
    tag = "Disjoint"


@dataclass(frozen=True)
class Product(SpaceExpr):
    factors: tuple
    tag = "Product"


@dataclass(frozen=True)
class Loop(SpaceExpr):
    arg: SpaceExpr
    tag = "Loop"


@dataclass(frozen=True)
class FreeLoop(SpaceExpr):
    arg: SpaceExpr
    tag = "FreeLoop"


@dataclass(frozen=True)
class Wreath(SpaceExpr):
    """The homotopy quotient of ``arg**p`` by the cyclic shift."""

    arg: SpaceExpr
    tag = "Wreath"


POINT = Point()
EMPTY = Empty()

_TAG_RANK = {"Empty": 0, "Point": 1, "Wreath": 2, "EM": 3, "Product": 4, "Disjoint": 5,
             "Loop": 6, "FreeLoop": 7}


def sort_key(a: SpaceExpr):
    """Canonical term order: (constructor, parameters, children)."""
    rank = _TAG_RANK[a.tag]
    if isinstance(a, EM):
        return (rank, (a.k,), ())
    if isinstance(a, Disjoint):
        return (rank, (), tuple(sort_key(t) for t in a.terms))
    if isinstance(a, Product):
        return (rank, (), tuple(sort_key(t) for t in a.factors))
    if isinstance(a, (Loop, FreeLoop, Wreath)):
        return (rank, (), (sort_key(a.arg),))
    return (rank, (), ())


def disjoint(*terms) -> SpaceExpr:
    flat = []
    for t in terms:
        if isinstance(t, Disjoint):
            flat.extend(t.terms)
        elif not isinstance(t, Empty):
            flat.append(t)
    if not flat:
        return EMPTY
    if len(flat) == 1:
        return flat[0]
    return Disjoint(tuple(sorted(flat, key=sort_key)))


def product(*factors) -> SpaceExpr:
    flat = []
    for f in factors:
        if isinstance(f, Empty):
            return EMPTY
        if isinstance(f, Product):
            flat.extend(f.factors)
        elif not isinstance(f, Point):
            flat.append(f)
    if not flat:
        return POINT
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(sorted(flat, key=sort_key)))


def power(a: SpaceExpr, n: int) -> SpaceExpr:
    return product(*([a] * n))


def is_loop_space(a: SpaceExpr) -> bool:
    """True on the fragment where loops are computed: products of EM spaces."""
    if isinstance(a, (Point, EM)):
        return True
    if isinstance(a, Product):
        return all(isinstance(f, EM) for f in a.factors)
    return False


def loop(a: SpaceExpr) -> SpaceExpr:
    if isinstance(a, Point):
        return POINT
    if isinstance(a, EM):
        return POINT if a.k == 0 else EM(a.k - 1)
    if isinstance(a, Product) and is_loop_space(a):
        return product(*(loop(f) for f in a.factors))
    if isinstance(a, Disjoint):
        raise NotALoopSpaceError(f"loop space of a disconnected expression: {to_text(a)}")
    if isinstance(a, Empty):
        raise NotALoopSpaceError("loop space of the empty space has no basepoint")
    raise NotALoopSpaceError(f"no loop-space formula for {to_text(a)}")


def free_loop(a: SpaceExpr) -> SpaceExpr:
    if not is_loop_space(a):
        raise NotALoopSpaceError(f"free loops are only computed on EM products, not {to_text(a)}")
    return product(a, loop(a))


def _orbit_products(terms, p):
    """One product per free C_p-orbit of non-constant words in ``terms``."""
    r = len(terms)
    count = math.comb(r + p - 1, p) - r
    if count > MAX_WREATH_TERMS:
        raise SizeGuardError(f"wreath of a {r}-term sum expands into {count} products")
    out = []
    for word in combinations_with_replacement(range(r), p):
        if word[0] == word[-1]:
            continue  # constant word
        mult = math.factorial(p)
        for i in set(word):
            mult //= math.factorial(word.count(i))
        out.extend([product(*(terms[i] for i in word))] * (mult // p))
    return out


def distribute(a: SpaceExpr) -> SpaceExpr:
    """Expand products over sums, so the result is a sum of monomials."""
    if isinstance(a, Disjoint):
        return disjoint(*(distribute(t) for t in a.terms))
    if isinstance(a, Product) and any(isinstance(f, Disjoint) for f in a.factors):
        choices = [f.terms if isinstance(f, Disjoint) else (f,) for f in a.factors]
        return disjoint(*(product(*c) for c in cartesian(*choices)))
    return a


def wreath(a: SpaceExpr, p: int) -> SpaceExpr:
    a = distribute(a)
    if isinstance(a, Empty):
        return EMPTY
    if isinstance(a, Point):
        return EM(1)
    if isinstance(a, Disjoint):
        parts = [wreath(t, p) for t in a.terms]
        return disjoint(*parts, *_orbit_products(a.terms, p))
    return Wreath(a)


def normalize(a: SpaceExpr, p: int) -> SpaceExpr:
    """Rewrite an arbitrary expression tree into normal form."""
    if isinstance(a, (Point, Empty, EM)):
        return a
    if isinstance(a, Disjoint):
        return disjoint(*(normalize(t, p) for t in a.terms))
    if isinstance(a, Product):
        return product(*(normalize(f, p) for f in a.factors))
    if isinstance(a, Loop):
        return loop(normalize(a.arg, p))
    if isinstance(a, FreeLoop):
        return free_loop(normalize(a.arg, p))
    if isinstance(a, Wreath):
        return wreath(normalize(a.arg, p), p)
    raise TypeError(f"not a space expression: {a!r}")


def _group_powers(items):
    out = []
    for item in items:
        if out and out[-1][0] == item:
            out[-1][1] += 1
        else:
            out.append([item, 1])
    return out


def to_text(a: SpaceExpr) -> str:
    """Render in the input grammar; ``parse(to_text(a)) == a`` on normal forms."""
    if isinstance(a, Point):
        return "pt"
    if isinstance(a, Empty):
        return "empty"
    if isinstance(a, EM):
        return f"B{a.k}"
    if isinstance(a, Wreath):
        return f"W({to_text(a.arg)})"
    if isinstance(a, Loop):
        return f"Om({to_text(a.arg)})"
    if isinstance(a, FreeLoop):
        return f"L({to_text(a.arg)})"
    if isinstance(a, Product):
        parts = []
        for f, n in _group_powers(a.factors):
            s = to_text(f)
            if isinstance(f, (Disjoint, Product)):
                s = f"({s})"
            parts.append(s if n == 1 else f"{s}^{n}")
        return " * ".join(parts)
    if isinstance(a, Disjoint):
        return " + ".join(to_text(t) for t in a.terms)
    raise TypeError(f"not a space expression: {a!r}")
