"""Spans of finite groupoids and their rational matrices.

A span ``A <- E -> B`` is sent to the matrix with rows indexed by the
isomorphism classes of ``B`` and columns by those of ``A``::

    M[b][a] = sum over classes [e] with left(e) ~ a, right(e) ~ b
              of |Aut_A(a)| / |Aut_E(e)|

so that ``pt <- E -> pt`` is the groupoid cardinality of ``E`` and
composition by homotopy pullback becomes matrix multiplication.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import groupoids as G
from .errors import GroupoidError, ShapeError


@dataclass(frozen=True)
class SpanMatrix:
    """Exact rational matrix; ``cols`` keeps the width when there are no rows."""

    entries: tuple
    cols: int | None = None

    def __post_init__(self):
        rows = tuple(tuple(Fraction(v) for v in r) for r in self.entries)
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ShapeError("ragged matrix")
        cols = widths.pop() if widths else (self.cols or 0)
        if self.cols is not None and cols != self.cols:
            raise ShapeError(f"rows have width {cols}, expected {self.cols}")
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "cols", cols)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(tuple((Fraction(0),) * cols for _ in range(rows)), cols)

    @classmethod
    def identity(cls, n):
        return cls(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)), n)

    @classmethod
    def diag(cls, values):
        n = len(values)
        return cls(tuple(tuple(Fraction(values[i]) if i == j else Fraction(0) for j in range(n))
                         for i in range(n)), n)

    @property
    def shape(self):
        return (len(self.entries), self.cols)

    def __matmul__(self, other: "SpanMatrix") -> "SpanMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [[r[j] for r in other.entries] for j in range(m)]
        return SpanMatrix(tuple(
            tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
            for row in self.entries
        ), m)

    def __add__(self, other):
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return SpanMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                                for r, s in zip(self.entries, other.entries)), self.cols)

    def scale(self, c):
        return SpanMatrix(tuple(tuple(c * a for a in r) for r in self.entries), self.cols)

    def kron(self, other):
        return SpanMatrix(tuple(
            tuple(a * b for a in r1 for b in r2) for r1 in self.entries for r2 in other.entries
        ), self.cols * other.cols)

    def block_diag(self, other):
        m1 = self.cols
        m2 = other.cols
        z = Fraction(0)
        top = tuple(r + (z,) * m2 for r in self.entries)
        bottom = tuple((z,) * m1 + r for r in other.entries)
        return SpanMatrix(top + bottom, m1 + m2)

    def __str__(self):
        from .padic import format_scalar

        return "[" + "; ".join(" ".join(format_scalar(v) for v in r) for r in self.entries) + "]"

    def to_json(self):
        from .padic import format_scalar

        return [[format_scalar(v) for v in r] for r in self.entries]


@dataclass
class GroupoidSpan:
    """``A <- apex -> B``."""

    apex: G.FinGroupoid
    left: G.GroupoidMap
    right: G.GroupoidMap

    def __post_init__(self):
        if self.left.source is not self.apex or self.right.source is not self.apex:
            raise GroupoidError("span legs must start at the apex")

    @property
    def source(self):
        return self.left.target

    @property
    def target(self):
        return self.right.target


def identity_span(A):
    return GroupoidSpan(A, G.identity_map(A), G.identity_map(A))


def compose(s2: GroupoidSpan, s1: GroupoidSpan) -> GroupoidSpan:
    """``s2 o s1`` by homotopy pullback of ``s1.right`` and ``s2.left``."""
    if s1.target is not s2.source:
        raise GroupoidError("span feet do not match")
    P, p1, p2 = G.homotopy_pullback(s1.right, s2.left)
    return GroupoidSpan(P, p1.then(s1.left), p2.then(s2.right))


def skeletal(s: GroupoidSpan) -> GroupoidSpan:
    """An equivalent span whose apex has one object per isomorphism class."""
    sub, inc = G.full_subgroupoid(s.apex, s.apex.iso_classes().representatives)
    return GroupoidSpan(sub, inc.then(s.left), inc.then(s.right))


def to_matrix(s: GroupoidSpan) -> SpanMatrix:
    isoA = s.source.iso_classes()
    isoB = s.target.iso_classes()
    isoE = s.apex.iso_classes()
    rows = [[Fraction(0)] * len(isoA) for _ in range(len(isoB))]
    for e, aut_e in zip(isoE.representatives, isoE.aut_order):
        a = isoA.class_of[s.left.obj_map[e]]
        b = isoB.class_of[s.right.obj_map[e]]
        rows[b][a] += Fraction(isoA.aut_order[a], aut_e)
    return SpanMatrix(tuple(tuple(r) for r in rows), len(isoA))


def tensor(s: GroupoidSpan, t: GroupoidSpan) -> GroupoidSpan:
    apex = G.product(s.apex, t.apex)
    left = G.product_map(s.left, t.left, apex, G.product(s.source, t.source))
    right = G.product_map(s.right, t.right, apex, G.product(s.target, t.target))
    return GroupoidSpan(apex, left, right)


def pull_span(q: G.GroupoidMap) -> GroupoidSpan:
    """``B <- A -> A``: restriction along ``q: A -> B``."""
    return GroupoidSpan(q.source, q, G.identity_map(q.source))


def push_span(q: G.GroupoidMap) -> GroupoidSpan:
    """``A <- A -> B``: integration along ``q``."""
    return GroupoidSpan(q.source, G.identity_map(q.source), q)


def integrate(q: G.GroupoidMap, f: SpanMatrix) -> SpanMatrix:
    """Decategorified integral of an endomorphism ``f`` over the classes of ``q.source``."""
    n = len(q.source.iso_classes())
    if f.shape != (n, n):
        raise ShapeError(f"integrand must be {n}x{n}, got {f.shape[0]}x{f.shape[1]}")
    return to_matrix(push_span(q)) @ f @ to_matrix(pull_span(q))


def pullback_diag(q: G.GroupoidMap, h) -> SpanMatrix:
    """Restrict a function on the classes of ``q.target`` to a diagonal over ``q.source``."""
    isoA, isoB = q.source.iso_classes(), q.target.iso_classes()
    return SpanMatrix.diag([h[isoB.class_of[q.obj_map[a]]] for a in isoA.representatives])


def fiber_matrix(q: G.GroupoidMap) -> SpanMatrix:
    """``|q|``: the diagonal of homotopy-fiber cardinalities over the classes of the target."""
    return integrate(q, SpanMatrix.identity(len(q.source.iso_classes())))


def self_dual_dimension(A: G.FinGroupoid) -> Fraction:
    """Trace of the identity via coevaluation, swap and evaluation spans.

    Both ``A`` and the intermediate apex are replaced by skeleta first. This
    changes nothing up to equivalence and keeps the pullbacks small.
    """
    if len(A.iso_classes()) < A.n_objects:
        A = G.skeleton(A)
    pt = G.point()
    AA = G.product(A, A)
    diag = G.diagonal(A, AA)
    coev = GroupoidSpan(A, G.to_point(A, pt), diag)
    sw = GroupoidSpan(AA, G.identity_map(AA), G.swap(A, A, AA, AA))
    ev = GroupoidSpan(A, diag, G.to_point(A, pt))
    m = to_matrix(compose(ev, skeletal(compose(sw, coev))))
    return m.entries[0][0]


# law suites ------------------------------------------------------------------


@dataclass
class LawResult:
    law: str
    instances: int = 0
    failures: list = field(default_factory=list)

    def to_json(self):
        return {"law": self.law, "instances": self.instances, "failures": self.failures}


def _random_matrix(rng, n, m):
    return SpanMatrix(tuple(tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(m))
                            for _ in range(n)), m)


def random_span(rng, A, B, **kw):
    E = G.random_groupoid(rng, **kw)
    return GroupoidSpan(E, G.random_functor(rng, E, A), G.random_functor(rng, E, B))


def check_calculus(seed=0, count=100, **kw) -> list[LawResult]:
    """Seeded random instances of the integration calculus, checked exactly.

    Instance ``i`` draws from ``random.Random(seed * 1_000_003 + i)``; that
    integer is reported as the reproducer seed on failure.
    """
    laws = {name: LawResult(name) for name in (
        "functoriality", "unit", "fubini", "homogeneity", "distributivity", "additivity",
        "monoidality")}

    def record(name, ok, inst_seed, description):
        res = laws[name]
        res.instances += 1
        if not ok:
            res.failures.append({"seed": inst_seed, "description": description})

    for i in range(count):
        inst_seed = seed * 1_000_003 + i
        rng = random.Random(inst_seed)
        A, B, C = (G.random_groupoid(rng, **kw) for _ in range(3))
        s1, s2 = random_span(rng, A, B, **kw), random_span(rng, B, C, **kw)
        lhs = to_matrix(compose(s2, s1))
        rhs = to_matrix(s2) @ to_matrix(s1)
        record("functoriality", lhs == rhs, inst_seed, f"matrix(S2 o S1) = {lhs}, product = {rhs}")

        record("unit", to_matrix(identity_span(A)) == SpanMatrix.identity(len(A.iso_classes())),
               inst_seed, "identity span is not the identity matrix")

        q, r = G.random_functor(rng, A, B), G.random_functor(rng, B, C)
        nA = len(A.iso_classes())
        f = _random_matrix(rng, nA, nA)
        lhs = integrate(q.then(r), f)
        rhs = integrate(r, integrate(q, f))
        record("fubini", lhs == rhs, inst_seed, f"integral over r o q = {lhs}, iterated = {rhs}")

        h = [Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(len(B.iso_classes()))]
        lhs = integrate(q, f @ pullback_diag(q, h))
        rhs = integrate(q, f) @ SpanMatrix.diag(h)
        record("homogeneity", lhs == rhs, inst_seed, f"{lhs} != {rhs}")

        E1, E2 = G.random_groupoid(rng, **kw), G.random_groupoid(rng, **kw)
        q1, q2 = G.random_functor(rng, E1, B), G.random_functor(rng, E2, B)
        P, p1, _ = G.homotopy_pullback(q1, q2)
        lhs = fiber_matrix(p1.then(q1))
        rhs = fiber_matrix(q2) @ fiber_matrix(q1)
        record("distributivity", lhs == rhs, inst_seed, f"|q2 x_B q1| = {lhs}, |q2||q1| = {rhs}")

        U = G.disjoint_union(E1, E2)
        qu = G.copair([q1, q2], U)
        f1 = _random_matrix(rng, len(E1.iso_classes()), len(E1.iso_classes()))
        f2 = _random_matrix(rng, len(E2.iso_classes()), len(E2.iso_classes()))
        lhs = integrate(qu, f1.block_diag(f2))
        rhs = integrate(q1, f1) + integrate(q2, f2)
        record("additivity", lhs == rhs, inst_seed, f"{lhs} != {rhs}")

        if i % 4 == 0:
            t = random_span(rng, B, A, max_objects=3, max_components=2)
            lhs = to_matrix(tensor(s1, t))
            rhs = to_matrix(s1).kron(to_matrix(t))
            record("monoidality", lhs == rhs, inst_seed, f"{lhs} != {rhs}")
    return list(laws.values())


def check_dimensions(seed=0, count=30, **kw) -> LawResult:
    """``self_dual_dimension(A) = |A^{S^1}| = #components``, and per component
    ``|A_c| |Om A_c| = 1``."""
    kw = {"max_objects": 3, "max_components": 3, "max_group_order": 4, **kw}
    res = LawResult("dimension")
    for i in range(count):
        inst_seed = seed * 1_000_003 + i
        rng = random.Random(inst_seed)
        A = G.random_groupoid(rng, **kw)
        iso = A.iso_classes()
        dim = self_dual_dimension(A)
        loops = G.groupoid_cardinality(G.free_loop_groupoid(A))
        per_comp = all(
            Fraction(1, aut) * G.groupoid_cardinality(G.loop_groupoid(A, rep)) == 1
            for rep, aut in zip(iso.representatives, iso.aut_order)
        )
        res.instances += 1
        if not (dim == loops == len(iso) and per_comp):
            res.failures.append({
                "seed": inst_seed,
                "description": f"dim={dim}, |LA|={loops}, components={len(iso)}, per-component={per_comp}",
            })
    return res
