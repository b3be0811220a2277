"""Semi-delta-rings: commutative rings carrying an additive p-derivation.

A :class:`DeltaRing` bundles ring operations with ``delta``.  Concrete
instances cover Q, Z_(p), truncated Z_p (all with the Fermat quotient),
the free rig of spaces, and finite rings given by tables.  The law checker
is sample based on infinite carriers; :func:`search_torsion_derivations`
is exhaustive on finite ones.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import SearchSpaceTooLargeError, UsageError
from .padic import (
    DEFAULT_PRECISION,
    PLocalRational,
    Prime,
    TruncatedPAdic,
    additivity_correction,
    fermat_quotient,
    same_value,
)
from .spaces import expr as E
from .spaces.rig import RigElement, rig_delta

BRUTE_FORCE_LIMIT = 10**8


class DeltaRing:
    """Ring operations plus an additive p-derivation.

    Subclasses provide ``zero``, ``one``, ``from_int``, ``delta`` and
    ``random_element``; arithmetic defaults to the element's operators.
    """

    name = "ring"

    def __init__(self, p):
        self.p = Prime(p)

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        raise NotImplementedError

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def mul(self, x, y):
        return x * y

    def pow(self, x, n):
        return x**n

    def delta(self, x):
        raise NotImplementedError

    def equal(self, x, y):
        return x == y

    def correction(self, x, y):
        return additivity_correction(x, y, self.p)

    def random_element(self, rng: random.Random):
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}(p={int(self.p)})"


def _random_rational(rng, p, allow_p_denominator=True):
    kind = rng.random()
    if kind < 0.3:
        return Fraction(rng.randint(-6, 6))
    if kind < 0.5:
        return Fraction(rng.choice([-1, 1]) * p ** rng.randint(0, 6))
    num = rng.randint(-10**6, 10**6)
    while True:
        den = rng.randint(1, 10**4)
        if allow_p_denominator or den % p:
            break
    if allow_p_denominator and rng.random() < 0.3:
        den *= p ** rng.randint(1, 3)
    return Fraction(num, den)


class RationalDelta(DeltaRing):
    name = "Q"

    def from_int(self, n):
        return Fraction(n)

    def delta(self, x):
        return fermat_quotient(x, self.p)

    def random_element(self, rng):
        return _random_rational(rng, self.p)


class PLocalDelta(DeltaRing):
    name = "Z_(p)"

    def from_int(self, n):
        return PLocalRational(Fraction(n), self.p)

    def delta(self, x):
        return fermat_quotient(x, self.p)

    def random_element(self, rng):
        return PLocalRational(_random_rational(rng, self.p, allow_p_denominator=False), self.p)


class TruncatedDelta(DeltaRing):
    """Truncated Z_p; comparisons are made at the common precision."""

    name = "Z_p"

    def __init__(self, p, precision=DEFAULT_PRECISION):
        super().__init__(p)
        self.precision = precision

    def from_int(self, n):
        return TruncatedPAdic(n, self.p, self.precision)

    def delta(self, x):
        return fermat_quotient(x, self.p)

    def equal(self, x, y):
        return same_value(x, y)

    def random_element(self, rng):
        mod = self.p**self.precision
        kind = rng.random()
        if kind < 0.3:
            r = rng.randint(-6, 6)
        elif kind < 0.5:
            r = rng.choice([-1, 1]) * self.p ** rng.randint(0, 20)
        else:
            r = rng.randrange(mod)
        return TruncatedPAdic(r, self.p, self.precision)


class FreeRigDelta(DeltaRing):
    """The free rig of space cardinalities with the wreath derivation."""

    name = "free rig"

    def __init__(self, p, max_level=2, max_terms=3):
        super().__init__(p)
        self.max_level = max_level
        self.max_terms = max_terms

    def from_int(self, n):
        return RigElement.from_int(n, self.p)

    def delta(self, x):
        return rig_delta(x)

    def random_monomial(self, rng):
        gens = [E.EM(k) for k in range(self.max_level + 1)]
        gens.append(E.wreath(E.EM(rng.randint(0, self.max_level)), self.p))
        n = rng.choice([0, 1, 1, 1, 2])
        return E.product(*(rng.choice(gens) for _ in range(n)))

    def random_element(self, rng):
        terms: dict = {}
        for _ in range(rng.randint(0, self.max_terms)):
            m = self.random_monomial(rng)
            terms[m] = terms.get(m, 0) + rng.choice([-2, -1, 1, 1, 2, 3])
        return RigElement(terms, self.p)


def frobenius_lift(ring: DeltaRing, x):
    """``psi(x) = x^p + p delta(x)``: additive and congruent to Frobenius mod p."""
    return ring.add(ring.pow(x, ring.p), ring.mul(ring.from_int(ring.p), ring.delta(x)))


@dataclass
class LawReport:
    ring: str
    prime: int
    counts: dict = field(default_factory=dict)
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def record(self, law, passed, description=""):
        self.counts[law] = self.counts.get(law, 0) + 1
        if not passed:
            self.failures.append({"law": law, "description": description})

    def to_json(self):
        return {
            "ring": self.ring,
            "prime": self.prime,
            "counts": dict(sorted(self.counts.items())),
            "failures": self.failures,
        }


def default_multipliers(p):
    return [-3, -2, -1, 0, 1, 2, 3, 5, p, p**2, p**3, -p, 7 * p]


def check_delta_laws(ring: DeltaRing, samples, multipliers=None, delta=None) -> LawReport:
    """Check additivity on each pair, normalization, and the module rule.

    The module rule is ``delta(t x) = t delta(x) + dq(t) x^p`` for integer
    ``t``, with ``dq`` the integer Fermat quotient.  ``delta`` overrides the
    ring's derivation, which is how negative controls are run.
    """
    d = delta or ring.delta
    p = ring.p
    report = LawReport(ring=ring.name, prime=int(p))
    for label, val in (("0", ring.zero), ("1", ring.one)):
        report.record("normalization", ring.equal(d(val), ring.zero), f"delta({label}) != 0")
    ts = default_multipliers(p) if multipliers is None else list(multipliers)
    for i, (x, y) in enumerate(samples):
        lhs = d(ring.add(x, y))
        rhs = ring.add(ring.add(d(x), d(y)), ring.correction(x, y))
        report.record("additivity", ring.equal(lhs, rhs), f"pair {i}: x={x}, y={y}")
        t = ts[i % len(ts)]
        lhs = d(ring.mul(ring.from_int(t), x))
        rhs = ring.add(ring.mul(ring.from_int(t), d(x)),
                       ring.mul(ring.from_int(fermat_quotient(t, p)), ring.pow(x, p)))
        report.record("module", ring.equal(lhs, rhs), f"t={t}, x={x}")
    return report


def sample_pairs(ring: DeltaRing, count, seed):
    rng = random.Random(seed)
    return [(ring.random_element(rng), ring.random_element(rng)) for _ in range(count)]


@dataclass(frozen=True)
class FiniteRingTable:
    """A finite commutative unital ring given by addition/multiplication tables.

    Elements are the indices ``0..size-1``; ``labels`` are for display.
    All ring axioms are verified exhaustively at construction.
    """

    add: tuple
    mul: tuple
    labels: tuple = ()

    def __post_init__(self):
        n = len(self.add)
        object.__setattr__(self, "add", tuple(tuple(r) for r in self.add))
        object.__setattr__(self, "mul", tuple(tuple(r) for r in self.mul))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(n)))
        if n == 0 or len(self.mul) != n or any(len(r) != n for r in self.add + self.mul):
            raise UsageError("ring tables must be square and of equal size")
        A, M, R = self.add, self.mul, range(n)
        if any(not 0 <= v < n for row in A + M for v in row):
            raise UsageError("table entry out of range")
        for x, y in itertools.product(R, R):
            if A[x][y] != A[y][x] or M[x][y] != M[y][x]:
                raise UsageError("ring is not commutative")
        zeros = [z for z in R if all(A[z][x] == x for x in R)]
        ones = [u for u in R if all(M[u][x] == x for x in R)]
        if not zeros or not ones:
            raise UsageError("missing additive or multiplicative identity")
        zero, one = zeros[0], ones[0]
        neg = []
        for x in R:
            inv = [y for y in R if A[x][y] == zero]
            if not inv:
                raise UsageError(f"element {x} has no additive inverse")
            neg.append(inv[0])
        for x, y, z in itertools.product(R, R, R):
            if A[A[x][y]][z] != A[x][A[y][z]] or M[M[x][y]][z] != M[x][M[y][z]]:
                raise UsageError("tables are not associative")
            if M[x][A[y][z]] != A[M[x][y]][M[x][z]]:
                raise UsageError("multiplication does not distribute")
        object.__setattr__(self, "_zero", zero)
        object.__setattr__(self, "_one", one)
        object.__setattr__(self, "_neg", tuple(neg))

    @classmethod
    def integers_mod(cls, n):
        return cls(
            [[(x + y) % n for y in range(n)] for x in range(n)],
            [[(x * y) % n for y in range(n)] for x in range(n)],
            tuple(str(i) for i in range(n)),
        )

    @property
    def size(self):
        return len(self.add)

    @property
    def zero(self):
        return self._zero

    @property
    def one(self):
        return self._one

    def neg(self, x):
        return self._neg[x]

    def from_int(self, t):
        out, base = self.zero, self.one
        if t < 0:
            base, t = self.neg(base), -t
        while t:
            if t & 1:
                out = self.add[out][base]
            base = self.add[base][base]
            t >>= 1
        return out

    def power(self, x, n):
        out = self.one
        for _ in range(n):
            out = self.mul[out][x]
        return out

    def correction(self, x, y, p):
        """The additivity correction polynomial evaluated in the table ring."""
        total = self.zero
        for i in range(1, p):
            mono = self.mul[self.power(x, i)][self.power(y, p - i)]
            coeff = self.from_int(math.comb(p, i) // p)
            total = self.add[total][self.mul[coeff][mono]]
        return self.neg(total)


class TableDelta(DeltaRing):
    """A finite table ring with an explicit delta mapping (a tuple of indices)."""

    name = "table"

    def __init__(self, table: FiniteRingTable, p, mapping):
        super().__init__(p)
        self.table = table
        self.mapping = tuple(mapping)

    def from_int(self, n):
        return self.table.from_int(n)

    def add(self, x, y):
        return self.table.add[x][y]

    def neg(self, x):
        return self.table.neg(x)

    def mul(self, x, y):
        return self.table.mul[x][y]

    def pow(self, x, n):
        return self.table.power(x, n)

    def correction(self, x, y):
        return self.table.correction(x, y, self.p)

    def delta(self, x):
        return self.mapping[x]

    def random_element(self, rng):
        return rng.randrange(self.table.size)


def search_torsion_derivations(table: FiniteRingTable, p, method="backtrack"):
    """Every additive p-derivation on a finite ring, found by complete search.

    ``method="brute"`` enumerates all ``size**size`` functions and refuses
    beyond ``BRUTE_FORCE_LIMIT``.  ``method="backtrack"`` explores the same
    space but abandons a partial assignment as soon as some law among the
    assigned elements fails, which makes rings such as ``Z/9`` tractable.
    """
    p = Prime(p)
    n = table.size
    corr = [[table.correction(x, y, p) for y in range(n)] for x in range(n)]
    A = table.add
    if method == "brute":
        if n**n > BRUTE_FORCE_LIMIT:
            raise SearchSpaceTooLargeError(f"{n}^{n} candidate functions exceed {BRUTE_FORCE_LIMIT}")
        found = []
        for d in itertools.product(range(n), repeat=n):
            if d[table.zero] != table.zero or d[table.one] != table.zero:
                continue
            if all(d[A[x][y]] == A[A[d[x]][d[y]]][corr[x][y]] for x in range(n) for y in range(n)):
                found.append(d)
        return found
    if method != "backtrack":
        raise ValueError(f"unknown method {method!r}")
    if n > 64:
        raise SearchSpaceTooLargeError(f"rings with {n} > 64 elements are not searched")

    order = [table.zero] + [x for x in range(n) if x != table.zero]
    d: list = [None] * n
    found = []

    def consistent(e):
        for x in range(n):
            if d[x] is None:
                continue
            for a, b in ((e, x), (x, e)):
                s = A[a][b]
                if d[s] is not None and d[s] != A[A[d[a]][d[b]]][corr[a][b]]:
                    return False
            # e appearing as the sum x + y
            y = A[e][table.neg(x)]
            if d[y] is not None and d[e] != A[A[d[x]][d[y]]][corr[x][y]]:
                return False
        return True

    def extend(i):
        if i == n:
            found.append(tuple(d))
            return
        e = order[i]
        forced = table.zero if e in (table.zero, table.one) else None
        for v in ([forced] if forced is not None else range(n)):
            d[e] = v
            if consistent(e):
                extend(i + 1)
            d[e] = None

    extend(0)
    return sorted(found)


class TorsionQuotient:
    """The torsion-free quotient of the free rig modulo declared relations.

    Each relation ``(t, g)`` with ``t != 0`` declares ``t * |g| = 0`` for a
    monomial ``g``.  A monomial is torsion when it is divisible by a declared
    ``g`` or has a wreath factor ``W(A)`` with ``|A|`` torsion (the torsion
    ideal is closed under delta).  The quotient drops torsion monomials and
    the induced derivation is ``project(rig_delta(x))``.
    """

    def __init__(self, relations=(), prime=2):
        self.prime = Prime(prime)
        rels = []
        for t, g in relations:
            if t == 0:
                raise UsageError("a torsion relation needs a non-zero multiplier")
            g = g if isinstance(g, E.SpaceExpr) else E.EM(g)
            rels.append((t, g))
        self.relations = tuple(rels)

    @staticmethod
    def _factors(m):
        if isinstance(m, E.Point):
            return []
        if isinstance(m, E.Product):
            return list(m.factors)
        return [m]

    def _divides(self, g, m):
        need = self._factors(g)
        have = self._factors(m)
        for f in need:
            if f in have:
                have.remove(f)
            else:
                return False
        return True

    def is_torsion_monomial(self, m) -> bool:
        if any(self._divides(g, m) for _, g in self.relations):
            return True
        for f in self._factors(m):
            if isinstance(f, E.Wreath) and not self.project(RigElement.from_space(f.arg, self.prime)):
                return True
        return False

    def project(self, x: RigElement) -> RigElement:
        return RigElement({m: c for m, c in x.items() if not self.is_torsion_monomial(m)}, x.prime)

    def is_torsion(self, x: RigElement) -> bool:
        return not self.project(x)

    def delta(self, x: RigElement) -> RigElement:
        return self.project(rig_delta(x))


def torsion_free_quotient(x: RigElement, relations=()) -> RigElement:
    return TorsionQuotient(relations, x.prime).project(x)


def standard_rings(p, precision=DEFAULT_PRECISION):
    return [RationalDelta(p), PLocalDelta(p), TruncatedDelta(p, precision), FreeRigDelta(p)]
