"""The free rig on space cardinalities.

An element is a finite integer combination of monomials, where a monomial
is a normal-form space built by products from EM generators and wreath
atoms (``Point`` is the unit monomial).  Sums and products of spaces map
to sums and products of elements, so ``|A + B| = |A| + |B|`` and
``|A * B| = |A| |B|`` hold by construction.
"""

from __future__ import annotations

import math
from typing import Mapping

from ..padic import Prime, fermat_quotient
from . import expr as E
from .parse import ast_to_space, parse_ast


def _is_monomial(m):
    if isinstance(m, (E.Point, E.EM, E.Wreath)):
        return True
    return isinstance(m, E.Product) and all(isinstance(f, (E.EM, E.Wreath)) for f in m.factors)


class RigElement:
    """Immutable integer combination of space monomials for a fixed prime."""

    __slots__ = ("prime", "_terms", "_hash")

    def __init__(self, terms: Mapping[E.SpaceExpr, int] | None = None, prime=2):
        self.prime = Prime(prime)
        clean = {}
        for m, c in (terms or {}).items():
            if not _is_monomial(m):
                raise ValueError(f"{m!r} is not a rig monomial")
            if c:
                clean[m] = clean.get(m, 0) + c
        self._terms = {m: clean[m] for m in sorted(clean, key=E.sort_key) if clean[m]}
        self._hash = None

    @classmethod
    def from_int(cls, n, prime):
        return cls({E.POINT: n}, prime)

    @classmethod
    def monomial(cls, m, prime, coeff=1):
        return cls({m: coeff}, prime)

    @classmethod
    def from_space(cls, a: E.SpaceExpr, prime) -> "RigElement":
        """The cardinality class ``|a|``."""
        if isinstance(a, E.Empty):
            return cls({}, prime)
        if isinstance(a, (E.Point, E.EM, E.Wreath)):
            return cls({a: 1}, prime)
        if isinstance(a, E.Disjoint):
            out = cls({}, prime)
            for t in a.terms:
                out = out + cls.from_space(t, prime)
            return out
        if isinstance(a, E.Product):
            out = cls.from_int(1, prime)
            for f in a.factors:
                out = out * cls.from_space(f, prime)
            return out
        raise ValueError(f"{a!r} is not in normal form")

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def _check(self, other):
        if isinstance(other, int):
            return RigElement.from_int(other, self.prime)
        if not isinstance(other, RigElement):
            return NotImplemented
        if other.prime != self.prime:
            raise ValueError("rig elements over different primes")
        return other

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.prime, tuple(self._terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return RigElement(out, self.prime)

    __radd__ = __add__

    def __neg__(self):
        return RigElement({m: -c for m, c in self._terms.items()}, self.prime)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return RigElement({m: c * other for m, c in self._terms.items()}, self.prime)
        other = self._check(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = E.product(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return RigElement(out, self.prime)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        out = RigElement.from_int(1, self.prime)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __repr__(self):
        return f"RigElement({to_text(self)!r}, prime={int(self.prime)})"

    def __str__(self):
        return to_text(self)

    def to_json(self):
        return [[E.to_text(m), c] for m, c in self._terms.items()]


def rig_add(x: RigElement, y: RigElement) -> RigElement:
    return x + y


def rig_mul(x: RigElement, y: RigElement) -> RigElement:
    return x * y


def _monomial_delta(m, p):
    # |BC_p x A| - |A wr C_p|
    return RigElement.from_space(E.product(E.EM(1), m), p) - RigElement.from_space(E.wreath(m, p), p)


def _correction(x, y, p):
    out = RigElement({}, p)
    for i in range(1, p):
        out = out - (math.comb(p, i) // p) * (x**i * y ** (p - i))
    return out


def rig_delta(x: RigElement) -> RigElement:
    """The additive p-derivation of the free rig.

    Monomials follow ``d|A| = |BC_p x A| - |A wr C_p|``, integer multiples
    ``d(t m) = t d(m) + dq(t) m^p`` (``dq`` the integer Fermat quotient) and
    sums are folded with the additivity correction polynomial.
    """
    p = x.prime
    total = RigElement({}, p)
    acc = RigElement({}, p)
    for m, c in x.items():
        y = RigElement.monomial(m, p, c)
        m_el = RigElement.monomial(m, p)
        d_y = c * _monomial_delta(m, p) + fermat_quotient(c, p) * m_el**p
        if acc:
            total = total + d_y + _correction(acc, y, p)
        else:
            total = d_y
        acc = acc + y
    return total


def to_text(x: RigElement) -> str:
    if not x:
        return "0"
    parts = []
    for m, c in x.items():
        mono = E.to_text(m)
        if isinstance(m, E.Point):
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _ast_to_rig(node, p):
    op, pos = node[0], node[1]
    if op == "nat":
        return RigElement.from_int(node[2], p)
    if op == "+":
        return _ast_to_rig(node[2], p) + _ast_to_rig(node[3], p)
    if op == "-":
        return _ast_to_rig(node[2], p) - _ast_to_rig(node[3], p)
    if op == "*":
        return _ast_to_rig(node[2], p) * _ast_to_rig(node[3], p)
    if op == "^":
        return _ast_to_rig(node[2], p) ** node[3]
    return RigElement.from_space(ast_to_space(node, p), p)


def parse_rig(text: str, p) -> RigElement:
    """Parse a rig expression such as ``"2*B1 - W(B0)"``."""
    return _ast_to_rig(parse_ast(text), Prime(p))
