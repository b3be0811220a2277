"""Exact scalar rings for a fixed prime: rationals, p-local rationals and
p-adic integers truncated to a fixed number of digits.

Rationals are plain :class:`fractions.Fraction` (integers are accepted
wherever a rational is).  The two p-adic flavours are small immutable
value types that refuse to mix with each other or with other primes.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import MixedRingError, NotPIntegralError, PrecisionExhaustedError

DEFAULT_PRECISION = 64


class Prime(int):
    """An ``int`` that is known to be prime."""

    def __new__(cls, p):
        if isinstance(p, Prime):
            return p
        p = operator.index(p)
        if p < 2 or any(p % d == 0 for d in range(2, math.isqrt(p) + 1)):
            raise ValueError(f"{p} is not a prime")
        return super().__new__(cls, p)

    def __repr__(self):
        return f"Prime({int(self)})"

    def __str__(self):
        return str(int(self))


@dataclass(frozen=True)
class Valuation:
    """Exponent of p in a scalar.

    ``kind`` is ``"finite"`` (``k`` is the exponent, possibly negative),
    ``"infinite"`` (exact zero) or ``"at_least"`` (a truncated zero: all
    ``k`` retained digits vanish).
    """

    kind: str
    k: int | None = None

    @classmethod
    def finite(cls, k):
        return cls("finite", k)

    @classmethod
    def infinite(cls):
        return cls("infinite")

    @classmethod
    def at_least(cls, n):
        return cls("at_least", n)

    @property
    def is_finite(self):
        return self.kind == "finite"

    def __int__(self):
        if not self.is_finite:
            raise ValueError(f"valuation {self} is not finite")
        return self.k

    def __add__(self, other):
        if self.kind == "infinite" or other.kind == "infinite":
            return Valuation.infinite()
        total = self.k + other.k
        if self.is_finite and other.is_finite:
            return Valuation.finite(total)
        return Valuation.at_least(total)

    def __str__(self):
        if self.kind == "finite":
            return str(self.k)
        if self.kind == "infinite":
            return "inf"
        return f">={self.k}"

    def to_json(self):
        return self.k if self.is_finite else str(self)


def _int_valuation(n: int, p: int) -> int:
    # n != 0
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True)
class PLocalRational:
    """An element of the localization of Z at p (denominator prime to p)."""

    value: Fraction
    prime: Prime

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))
        object.__setattr__(self, "prime", Prime(self.prime))
        if self.value.denominator % self.prime == 0:
            raise NotPIntegralError(f"{self.value} is not {self.prime}-local")

    def _coerce(self, other):
        if isinstance(other, PLocalRational):
            if other.prime != self.prime:
                raise MixedRingError(f"Z_({self.prime}) and Z_({other.prime}) do not mix")
            return other.value
        if isinstance(other, int):
            return Fraction(other)
        raise MixedRingError(f"cannot combine Z_({self.prime}) with {type(other).__name__}")

    def _wrap(self, v):
        return PLocalRational(v, self.prime)

    def __add__(self, other):
        return self._wrap(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self._wrap(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self._wrap(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-self.value)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers: use try_invert")
        return self._wrap(self.value**n)

    def __str__(self):
        return format_scalar(self.value)


@dataclass(frozen=True)
class TruncatedPAdic:
    """A p-adic integer known modulo ``p**precision``."""

    residue: int
    prime: Prime
    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        object.__setattr__(self, "prime", Prime(self.prime))
        if self.precision < 1:
            raise PrecisionExhaustedError("truncated p-adic needs at least one digit")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @classmethod
    def from_rational(cls, x, p, precision=DEFAULT_PRECISION):
        x = Fraction(x)
        p = Prime(p)
        if x.denominator % p == 0:
            raise NotPIntegralError(f"{x} is not a {p}-adic integer")
        mod = p**precision
        return cls(x.numerator * pow(x.denominator, -1, mod), p, precision)

    @property
    def modulus(self):
        return self.prime**self.precision

    def reduce(self, precision):
        if precision > self.precision:
            raise ValueError("cannot raise precision")
        return TruncatedPAdic(self.residue, self.prime, precision)

    def _coerce(self, other):
        if isinstance(other, TruncatedPAdic):
            if other.prime != self.prime:
                raise MixedRingError(f"Z_{self.prime} and Z_{other.prime} do not mix")
            return other.residue, min(self.precision, other.precision)
        if isinstance(other, int):
            return other, self.precision
        raise MixedRingError(f"cannot combine Z_{self.prime} with {type(other).__name__}")

    def __add__(self, other):
        r, n = self._coerce(other)
        return TruncatedPAdic(self.residue + r, self.prime, n)

    __radd__ = __add__

    def __sub__(self, other):
        r, n = self._coerce(other)
        return TruncatedPAdic(self.residue - r, self.prime, n)

    def __rsub__(self, other):
        r, n = self._coerce(other)
        return TruncatedPAdic(r - self.residue, self.prime, n)

    def __mul__(self, other):
        r, n = self._coerce(other)
        return TruncatedPAdic(self.residue * r, self.prime, n)

    __rmul__ = __mul__

    def __neg__(self):
        return TruncatedPAdic(-self.residue, self.prime, self.precision)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative powers: use try_invert")
        return TruncatedPAdic(pow(self.residue, n, self.modulus), self.prime, self.precision)

    def __str__(self):
        return f"{self.residue} mod {self.prime}^{self.precision}"


Scalar = Union[int, Fraction, PLocalRational, TruncatedPAdic]


def _prime_of(x, p):
    own = getattr(x, "prime", None)
    if own is not None:
        if p is not None and Prime(p) != own:
            raise MixedRingError(f"scalar over p={own} used with p={p}")
        return own
    if p is None:
        raise ValueError("a prime is required for rational scalars")
    return Prime(p)


def valuation(x: Scalar, p=None) -> Valuation:
    """p-adic valuation of ``x``; the prime may be omitted for p-adic scalars."""
    p = _prime_of(x, p)
    if isinstance(x, TruncatedPAdic):
        if x.residue == 0:
            return Valuation.at_least(x.precision)
        return Valuation.finite(_int_valuation(x.residue, p))
    if isinstance(x, PLocalRational):
        x = x.value
    x = Fraction(x)
    if x == 0:
        return Valuation.infinite()
    return Valuation.finite(_int_valuation(x.numerator, p) - _int_valuation(x.denominator, p))


def fermat_quotient(x: Scalar, p=None) -> Scalar:
    """``(x - x**p) / p``, computed exactly.

    Truncated inputs lose one digit: the result is known only modulo
    ``p**(precision - 1)``.
    """
    p = _prime_of(x, p)
    if isinstance(x, TruncatedPAdic):
        if x.precision - 1 < 1:
            raise PrecisionExhaustedError(f"fermat quotient of {x} has no digits left")
        r = (x.residue - pow(x.residue, p, x.modulus)) % x.modulus
        q, rem = divmod(r, p)
        assert rem == 0, "x = x^p mod p fails; residue arithmetic is broken"
        return TruncatedPAdic(q, p, x.precision - 1)
    if isinstance(x, PLocalRational):
        return PLocalRational((x.value - x.value**p) / p, p)
    if isinstance(x, int):
        q, rem = divmod(x - x**p, p)
        assert rem == 0
        return q
    x = Fraction(x)
    return (x - x**p) / p


def additivity_correction(x, y, p):
    """The integer polynomial ``(x^p + y^p - (x+y)^p) / p`` without dividing.

    Works for any commutative ring elements that support ``+``, ``*``,
    ``**`` and multiplication by Python ints.
    """
    total = None
    for i in range(1, p):
        term = (math.comb(p, i) // p) * (x**i * y ** (p - i))
        total = term if total is None else total + term
    if total is None:
        raise ValueError("p must be at least 2")
    return -total


def try_invert(x: Scalar, p=None):
    """Exact inverse of ``x`` in its ring, or ``None`` if ``x`` is not a unit."""
    if isinstance(x, TruncatedPAdic):
        if x.residue % x.prime == 0:
            return None
        return TruncatedPAdic(pow(x.residue, -1, x.modulus), x.prime, x.precision)
    if isinstance(x, PLocalRational):
        if x.value.numerator % x.prime == 0:
            return None
        return PLocalRational(1 / x.value, x.prime)
    x = Fraction(x)
    if x == 0:
        return None
    return 1 / x


def is_unit(x: Scalar) -> bool:
    return try_invert(x) is not None


def to_truncated(x: Scalar, p=None, precision=DEFAULT_PRECISION) -> TruncatedPAdic:
    """Project a p-integral rational (or p-local rational) into truncated Z_p."""
    p = _prime_of(x, p)
    if isinstance(x, TruncatedPAdic):
        return x.reduce(precision) if precision < x.precision else x
    if isinstance(x, PLocalRational):
        x = x.value
    return TruncatedPAdic.from_rational(x, p, precision)


def same_value(a: Scalar, b: Scalar) -> bool:
    """Equality that compares truncated values at their common precision."""
    if isinstance(a, TruncatedPAdic) and isinstance(b, TruncatedPAdic):
        if a.prime != b.prime:
            return False
        n = min(a.precision, b.precision)
        return a.reduce(n) == b.reduce(n)
    return a == b


def format_scalar(x: Scalar) -> str:
    if isinstance(x, TruncatedPAdic):
        return str(x)
    if isinstance(x, PLocalRational):
        x = x.value
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
