"""Finite groupoids with explicit structure maps.

Objects and morphisms are numbered ``0..n-1``; the ``objects`` and
``morphisms`` tuples hold hashable labels used for display and export.
Composition is ``compose(g, f) = g o f`` (``f`` first).  Groupoids built
from user data are validated exhaustively; the constructions in this
module (products, pullbacks, wreaths, ...) are correct by construction
and skip the cubic associativity sweep unless ``check=True`` is passed.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import GroupoidError, SizeGuardError
from .groups import cyclic, small_groups, validate_group
from .padic import fermat_quotient

MAX_WREATH_OBJECTS = 10**6
MAX_WREATH_MORPHISMS = 5 * 10**6


@dataclass(frozen=True)
class IsoClassTable:
    """Isomorphism classes ordered by their smallest object."""

    classes: tuple
    class_of: tuple
    aut_order: tuple

    @property
    def representatives(self):
        return tuple(c[0] for c in self.classes)

    def __len__(self):
        return len(self.classes)


class FinGroupoid:
    def __init__(self, objects, morphisms, source, target, identity, inverse, compose, check=True):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.source = tuple(source)
        self.target = tuple(target)
        self.identity = tuple(identity)
        self.inverse = tuple(inverse)
        if isinstance(compose, dict):
            table = dict(compose)
            self._compose = lambda g, f: table[(g, f)]
        else:
            self._compose = compose
        self._out = None
        self._hom = None
        self._iso = None
        if check:
            self.validate()

    # structure -----------------------------------------------------------

    @property
    def n_objects(self):
        return len(self.objects)

    @property
    def n_morphisms(self):
        return len(self.morphisms)

    def compose(self, g, f):
        if self.source[g] != self.target[f]:
            raise GroupoidError(f"morphisms {g} and {f} are not composable")
        return self._compose(g, f)

    def out(self, x):
        if self._out is None:
            out = [[] for _ in self.objects]
            for m, s in enumerate(self.source):
                out[s].append(m)
            self._out = out
        return self._out[x]

    def hom(self, x, y):
        if self._hom is None:
            hom: dict = {}
            for m, (s, t) in enumerate(zip(self.source, self.target)):
                hom.setdefault((s, t), []).append(m)
            self._hom = hom
        return self._hom.get((x, y), [])

    def aut(self, x):
        return self.hom(x, x)

    def validate(self):
        """Exhaustively check the groupoid axioms; raise GroupoidError on failure."""
        n, M = self.n_objects, self.n_morphisms
        if not (len(self.source) == len(self.target) == len(self.inverse) == M):
            raise GroupoidError("structure maps have inconsistent lengths")
        if len(self.identity) != n:
            raise GroupoidError("need exactly one identity per object")
        for m in range(M):
            if not (0 <= self.source[m] < n and 0 <= self.target[m] < n):
                raise GroupoidError(f"morphism {m} has an out-of-range endpoint")
        for x, e in enumerate(self.identity):
            if self.source[e] != x or self.target[e] != x:
                raise GroupoidError(f"identity of {x} is not an endomorphism of {x}")
        for f in range(M):
            s, t = self.source[f], self.target[f]
            if self._compose(f, self.identity[s]) != f or self._compose(self.identity[t], f) != f:
                raise GroupoidError(f"identities are not neutral for {f}")
            i = self.inverse[f]
            if self.source[i] != t or self.target[i] != s:
                raise GroupoidError(f"inverse of {f} has the wrong endpoints")
            if self._compose(i, f) != self.identity[s] or self._compose(f, i) != self.identity[t]:
                raise GroupoidError(f"morphism {f} is not inverted by {i}")
        for f in range(M):
            for g in self.out(self.target[f]):
                gf = self._compose(g, f)
                if self.source[gf] != self.source[f] or self.target[gf] != self.target[g]:
                    raise GroupoidError(f"composite of {g} and {f} has the wrong endpoints")
                for h in self.out(self.target[g]):
                    if self._compose(h, gf) != self._compose(self._compose(h, g), f):
                        raise GroupoidError(f"composition is not associative at ({h}, {g}, {f})")
        return self

    def iso_classes(self) -> IsoClassTable:
        if self._iso is None:
            parent = list(range(self.n_objects))

            def find(x):
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return x

            for s, t in zip(self.source, self.target):
                rs, rt = find(s), find(t)
                if rs != rt:
                    parent[max(rs, rt)] = min(rs, rt)
            groups: dict = {}
            for x in range(self.n_objects):
                groups.setdefault(find(x), []).append(x)
            classes = tuple(tuple(v) for _, v in sorted(groups.items()))
            class_of = [0] * self.n_objects
            for i, c in enumerate(classes):
                for x in c:
                    class_of[x] = i
            aut = tuple(len(self.aut(c[0])) for c in classes)
            self._iso = IsoClassTable(classes, tuple(class_of), aut)
        return self._iso

    def __repr__(self):
        return f"FinGroupoid({self.n_objects} objects, {self.n_morphisms} morphisms)"

    # export ----------------------------------------------------------------

    def to_json(self):
        return {
            "objects": [str(o) for o in self.objects],
            "morphisms": [
                {"id": m, "label": str(lab), "source": s, "target": t}
                for m, (lab, s, t) in enumerate(zip(self.morphisms, self.source, self.target))
            ],
            "identities": list(self.identity),
            "inverses": list(self.inverse),
            "composition": [
                [g, f, self._compose(g, f)]
                for f in range(self.n_morphisms)
                for g in self.out(self.target[f])
            ],
        }

    @classmethod
    def from_json(cls, data):
        try:
            mors = data["morphisms"]
            return cls(
                data["objects"],
                [m.get("label", m["id"]) for m in mors],
                [m["source"] for m in mors],
                [m["target"] for m in mors],
                data["identities"],
                data["inverses"],
                {(g, f): h for g, f, h in data["composition"]},
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise GroupoidError(f"malformed groupoid JSON: {exc}") from None


class GroupoidMap:
    """A functor between finite groupoids, given on objects and morphisms."""

    def __init__(self, source: FinGroupoid, target: FinGroupoid, obj_map, mor_map, check=True):
        self.source = source
        self.target = target
        self.obj_map = tuple(obj_map)
        self.mor_map = tuple(mor_map)
        if check:
            self.validate()

    def validate(self):
        A, B = self.source, self.target
        if len(self.obj_map) != A.n_objects or len(self.mor_map) != A.n_morphisms:
            raise GroupoidError("functor tables do not match the source groupoid")
        for m in range(A.n_morphisms):
            fm = self.mor_map[m]
            if B.source[fm] != self.obj_map[A.source[m]] or B.target[fm] != self.obj_map[A.target[m]]:
                raise GroupoidError(f"functor does not preserve endpoints of morphism {m}")
        for x in range(A.n_objects):
            if self.mor_map[A.identity[x]] != B.identity[self.obj_map[x]]:
                raise GroupoidError(f"functor does not preserve the identity of {x}")
        for f in range(A.n_morphisms):
            for g in A.out(A.target[f]):
                if self.mor_map[A.compose(g, f)] != B.compose(self.mor_map[g], self.mor_map[f]):
                    raise GroupoidError(f"functor does not preserve the composite of {g} and {f}")
        return self

    def then(self, other: "GroupoidMap") -> "GroupoidMap":
        """``other o self``."""
        return GroupoidMap(
            self.source,
            other.target,
            [other.obj_map[x] for x in self.obj_map],
            [other.mor_map[m] for m in self.mor_map],
            check=False,
        )

    def __repr__(self):
        return f"GroupoidMap({self.source!r} -> {self.target!r})"


# constructions -------------------------------------------------------------


def _labelled(objects, morphisms, source, target, compose, identity, inverse, check=False):
    """Build a groupoid from labelled morphisms and label-level structure rules."""
    objects = list(objects)
    morphisms = list(morphisms)
    oidx = {o: i for i, o in enumerate(objects)}
    midx = {m: i for i, m in enumerate(morphisms)}
    return FinGroupoid(
        objects,
        morphisms,
        [oidx[source(m)] for m in morphisms],
        [oidx[target(m)] for m in morphisms],
        [midx[identity(o)] for o in objects],
        [midx[inverse(m)] for m in morphisms],
        lambda g, f: midx[compose(morphisms[g], morphisms[f])],
        check=check,
    )


def empty_groupoid():
    return FinGroupoid([], [], [], [], [], [], {}, check=False)


def discrete(n):
    """The set ``range(n)`` as a groupoid with identities only."""
    return FinGroupoid(range(n), [("id", i) for i in range(n)], range(n), range(n), range(n),
                       range(n), lambda g, f: f, check=False)


def point():
    return discrete(1)


def from_group(table, check=True) -> FinGroupoid:
    """The one-object groupoid BG of a group table."""
    if check:
        table, e = validate_group(table)
    else:
        table = tuple(tuple(r) for r in table)
        e = next(x for x in range(len(table)) if table[x][x] == x)
    n = len(table)
    inverse = [next(y for y in range(n) if table[x][y] == e) for x in range(n)]
    return FinGroupoid(["*"], range(n), [0] * n, [0] * n, [e], inverse,
                       lambda g, f: table[g][f], check=False)


def connected_groupoid(table, k):
    """A k-object connected groupoid equivalent to BG (codiscrete(k) x BG)."""
    table, e = validate_group(table)
    n = len(table)
    inv = [next(y for y in range(n) if table[x][y] == e) for x in range(n)]
    mors = [(i, j, g) for i in range(k) for j in range(k) for g in range(n)]
    return _labelled(
        range(k),
        mors,
        source=lambda m: m[0],
        target=lambda m: m[1],
        compose=lambda b, a: (a[0], b[1], table[b[2]][a[2]]),
        identity=lambda i: (i, i, e),
        inverse=lambda m: (m[1], m[0], inv[m[2]]),
    )


def product(A: FinGroupoid, B: FinGroupoid) -> FinGroupoid:
    nB, MB = B.n_objects, B.n_morphisms
    return FinGroupoid(
        [(a, b) for a in A.objects for b in B.objects],
        [(f, g) for f in A.morphisms for g in B.morphisms],
        [A.source[f] * nB + B.source[g] for f in range(A.n_morphisms) for g in range(MB)],
        [A.target[f] * nB + B.target[g] for f in range(A.n_morphisms) for g in range(MB)],
        [A.identity[x] * MB + B.identity[y] for x in range(A.n_objects) for y in range(nB)],
        [A.inverse[f] * MB + B.inverse[g] for f in range(A.n_morphisms) for g in range(MB)],
        lambda u, v: A._compose(u // MB, v // MB) * MB + B._compose(u % MB, v % MB),
        check=False,
    )


def disjoint_union(*parts: FinGroupoid) -> FinGroupoid:
    objects, morphisms, src, tgt, ident, inv = [], [], [], [], [], []
    owner, obj_off, mor_off = [], [], []
    for k, G in enumerate(parts):
        o, m = len(objects), len(morphisms)
        obj_off.append(o)
        mor_off.append(m)
        objects += [(k, x) for x in G.objects]
        morphisms += [(k, f) for f in G.morphisms]
        src += [s + o for s in G.source]
        tgt += [t + o for t in G.target]
        ident += [e + m for e in G.identity]
        inv += [i + m for i in G.inverse]
        owner += [k] * G.n_morphisms

    def compose(g, f):
        k = owner[f]
        off = mor_off[k]
        return parts[k]._compose(g - off, f - off) + off

    return FinGroupoid(objects, morphisms, src, tgt, ident, inv, compose, check=False)


def inclusions(parts, union):
    """The canonical functors ``parts[k] -> disjoint_union(*parts)``."""
    maps, o, m = [], 0, 0
    for G in parts:
        maps.append(GroupoidMap(G, union, [x + o for x in range(G.n_objects)],
                                [f + m for f in range(G.n_morphisms)], check=False))
        o += G.n_objects
        m += G.n_morphisms
    return maps


def copair(maps, union) -> GroupoidMap:
    """``[f_1, ..., f_k]: disjoint_union(...) -> B`` from maps with a common target."""
    target = maps[0].target
    return GroupoidMap(union, target, [x for f in maps for x in f.obj_map],
                       [m for f in maps for m in f.mor_map], check=False)


def full_subgroupoid(A: FinGroupoid, objs) -> tuple[FinGroupoid, GroupoidMap]:
    """Full subgroupoid on ``objs`` together with its inclusion into ``A``."""
    objs = list(objs)
    keep = set(objs)
    oidx = {x: i for i, x in enumerate(objs)}
    mors = [m for m in range(A.n_morphisms) if A.source[m] in keep and A.target[m] in keep]
    midx = {m: i for i, m in enumerate(mors)}
    sub = FinGroupoid(
        [A.objects[x] for x in objs],
        [A.morphisms[m] for m in mors],
        [oidx[A.source[m]] for m in mors],
        [oidx[A.target[m]] for m in mors],
        [midx[A.identity[x]] for x in objs],
        [midx[A.inverse[m]] for m in mors],
        lambda g, f: midx[A._compose(mors[g], mors[f])],
        check=False,
    )
    return sub, GroupoidMap(sub, A, objs, mors, check=False)


def skeleton(A: FinGroupoid) -> FinGroupoid:
    return full_subgroupoid(A, A.iso_classes().representatives)[0]


def identity_map(A: FinGroupoid) -> GroupoidMap:
    return GroupoidMap(A, A, range(A.n_objects), range(A.n_morphisms), check=False)


def to_point(A: FinGroupoid, pt: FinGroupoid | None = None) -> GroupoidMap:
    pt = pt or point()
    return GroupoidMap(A, pt, [0] * A.n_objects, [0] * A.n_morphisms, check=False)


def object_inclusion(A: FinGroupoid, x, pt: FinGroupoid | None = None) -> GroupoidMap:
    """The functor ``pt -> A`` picking out the object ``x``."""
    pt = pt or point()
    return GroupoidMap(pt, A, [x], [A.identity[x]], check=False)


def diagonal(A: FinGroupoid, AA: FinGroupoid | None = None) -> GroupoidMap:
    AA = AA or product(A, A)
    n, M = A.n_objects, A.n_morphisms
    return GroupoidMap(A, AA, [x * n + x for x in range(n)], [f * M + f for f in range(M)], check=False)


def swap(A: FinGroupoid, B: FinGroupoid, AB=None, BA=None) -> GroupoidMap:
    AB = AB or product(A, B)
    BA = BA or product(B, A)
    nA, nB, MA, MB = A.n_objects, B.n_objects, A.n_morphisms, B.n_morphisms
    return GroupoidMap(
        AB, BA,
        [(u % nB) * nA + u // nB for u in range(AB.n_objects)],
        [(u % MB) * MA + u // MB for u in range(AB.n_morphisms)],
        check=False,
    )


def product_map(f: GroupoidMap, g: GroupoidMap, source=None, target=None) -> GroupoidMap:
    source = source or product(f.source, g.source)
    target = target or product(f.target, g.target)
    nB, MB = g.source.n_objects, g.source.n_morphisms
    nD, MD = g.target.n_objects, g.target.n_morphisms
    return GroupoidMap(
        source, target,
        [f.obj_map[u // nB] * nD + g.obj_map[u % nB] for u in range(source.n_objects)],
        [f.mor_map[u // MB] * MD + g.mor_map[u % MB] for u in range(source.n_morphisms)],
        check=False,
    )


def homotopy_pullback(f: GroupoidMap, g: GroupoidMap):
    """The iso-comma groupoid of ``f: A -> C`` and ``g: B -> C``.

    Objects are triples ``(a, b, phi)`` with ``phi: f(a) -> g(b)`` in C; a
    morphism ``(alpha, beta)`` must satisfy ``phi' o f(alpha) = g(beta) o phi``.
    Returns ``(P, p_A, p_B)``.
    """
    A, B, C = f.source, g.source, f.target
    if g.target is not C and g.target.objects != C.objects:
        raise GroupoidError("pullback legs need a common codomain")
    objects = []
    for a in range(A.n_objects):
        for b in range(B.n_objects):
            for phi in C.hom(f.obj_map[a], g.obj_map[b]):
                objects.append((a, b, phi))
    oidx = {o: i for i, o in enumerate(objects)}
    if not objects:
        P = empty_groupoid()
        return P, GroupoidMap(P, A, [], [], check=False), GroupoidMap(P, B, [], [], check=False)

    morphisms, src, tgt = [], [], []
    first_out = []
    for i, (a, b, phi) in enumerate(objects):
        first_out.append(len(morphisms))
        for alpha in A.out(a):
            fa_inv = C.inverse[f.mor_map[alpha]]
            for beta in B.out(b):
                phi2 = C._compose(C._compose(g.mor_map[beta], phi), fa_inv)
                morphisms.append((alpha, beta, i))
                src.append(i)
                tgt.append(oidx[(A.target[alpha], B.target[beta], phi2)])
    midx = {m: k for k, m in enumerate(morphisms)}
    identity = [midx[(A.identity[a], B.identity[b], i)] for i, (a, b, _) in enumerate(objects)]
    inverse = [midx[(A.inverse[al], B.inverse[be], tgt[k])] for k, (al, be, _) in enumerate(morphisms)]

    def compose(u, v):
        al2, be2, _ = morphisms[u]
        al1, be1, o = morphisms[v]
        return midx[(A._compose(al2, al1), B._compose(be2, be1), o)]

    P = FinGroupoid(objects, morphisms, src, tgt, identity, inverse, compose, check=False)
    pa = GroupoidMap(P, A, [o[0] for o in objects], [m[0] for m in morphisms], check=False)
    pb = GroupoidMap(P, B, [o[1] for o in objects], [m[1] for m in morphisms], check=False)
    return P, pa, pb


def loop_groupoid(A: FinGroupoid, x) -> FinGroupoid:
    """Based loops at ``x``: the pullback of ``pt -> A <- pt``."""
    pt = point()
    return homotopy_pullback(object_inclusion(A, x, pt), object_inclusion(A, x, pt))[0]


def free_loop_groupoid(A: FinGroupoid) -> FinGroupoid:
    """Objects ``(x, alpha in Aut(x))``; morphisms ``h`` with ``h alpha = beta h``."""
    objects = [(x, al) for x in range(A.n_objects) for al in A.aut(x)]
    oidx = {o: i for i, o in enumerate(objects)}
    morphisms, src, tgt = [], [], []
    for i, (x, al) in enumerate(objects):
        for h in A.out(x):
            beta = A._compose(A._compose(h, al), A.inverse[h])
            morphisms.append((h, i))
            src.append(i)
            tgt.append(oidx[(A.target[h], beta)])
    midx = {m: k for k, m in enumerate(morphisms)}
    identity = [midx[(A.identity[x], i)] for i, (x, _) in enumerate(objects)]
    inverse = [midx[(A.inverse[h], tgt[k])] for k, (h, _) in enumerate(morphisms)]

    def compose(u, v):
        return midx[(A._compose(morphisms[u][0], morphisms[v][0]), morphisms[v][1])]

    return FinGroupoid(objects, morphisms, src, tgt, identity, inverse, compose, check=False)


def wreath_groupoid(A: FinGroupoid, p: int) -> FinGroupoid:
    """Action groupoid of the cyclic shift on ``A**p``.

    A morphism ``(s, (f_0, ..., f_{p-1}))`` goes from ``x`` to ``y`` with
    ``f_i: x[i - s] -> y[i]``.
    """
    n, M = A.n_objects, A.n_morphisms
    if n**p > MAX_WREATH_OBJECTS:
        raise SizeGuardError(f"{n}^{p} objects exceed the wreath guard {MAX_WREATH_OBJECTS}")
    if p * M**p > MAX_WREATH_MORPHISMS:
        raise SizeGuardError(f"{p}*{M}^{p} morphisms exceed the wreath guard {MAX_WREATH_MORPHISMS}")
    objects = list(itertools.product(range(n), repeat=p))
    oidx = {o: i for i, o in enumerate(objects)}
    morphisms, src, tgt = [], [], []
    for i, x in enumerate(objects):
        for s in range(p):
            for fs in itertools.product(*(A.out(x[(j - s) % p]) for j in range(p))):
                morphisms.append((s, fs))
                src.append(i)
                tgt.append(oidx[tuple(A.target[f] for f in fs)])
    midx = {m: k for k, m in enumerate(morphisms)}
    identity = [midx[(0, tuple(A.identity[a] for a in x))] for x in objects]

    def _inv(m):
        s, fs = m
        return ((-s) % p, tuple(A.inverse[fs[(j + s) % p]] for j in range(p)))

    inverse = [midx[_inv(m)] for m in morphisms]

    def compose(u, v):
        t, gs = morphisms[u]
        s, fs = morphisms[v]
        return midx[((s + t) % p, tuple(A._compose(gs[j], fs[(j - t) % p]) for j in range(p)))]

    return FinGroupoid(objects, morphisms, src, tgt, identity, inverse, compose, check=False)


def groupoid_cardinality(A: FinGroupoid) -> Fraction:
    """Sum of ``1/|Aut|`` over isomorphism classes."""
    return sum((Fraction(1, k) for k in A.iso_classes().aut_order), Fraction(0))


def component_count(A: FinGroupoid) -> int:
    return len(A.iso_classes())


# homomorphisms and random instances -----------------------------------------


def aut_homomorphisms(A: FinGroupoid, a, B: FinGroupoid, b):
    """All group homomorphisms ``Aut_A(a) -> Aut_B(b)`` as dicts."""
    G = A.aut(a)
    e = A.identity[a]
    gens, closure = [], {e}
    for g in G:
        if g in closure:
            continue
        gens.append(g)
        frontier = list(closure)
        while frontier:
            nxt = []
            for x in frontier:
                for h in gens:
                    y = A._compose(h, x)
                    if y not in closure:
                        closure.add(y)
                        nxt.append(y)
            frontier = nxt
    homs = []
    for images in itertools.product(B.aut(b), repeat=len(gens)):
        phi = {e: B.identity[b]}
        frontier = [e]
        ok = True
        while frontier and ok:
            nxt = []
            for x in frontier:
                for h, img in zip(gens, images):
                    y = A._compose(h, x)
                    im = B._compose(img, phi[x])
                    if y in phi:
                        if phi[y] != im:
                            ok = False
                            break
                    else:
                        phi[y] = im
                        nxt.append(y)
                if not ok:
                    break
            frontier = nxt
        if ok:
            homs.append(phi)
    return homs


def random_groupoid(rng: random.Random, max_objects=5, max_group_order=4, max_components=3,
                    max_objects_per_component=2) -> FinGroupoid:
    """A disjoint union of connected groupoids ``codiscrete(k) x BG``."""
    catalog = small_groups(max_group_order)
    parts, total = [], 0
    for _ in range(rng.randint(1, max_components)):
        k = rng.randint(1, max_objects_per_component)
        if total + k > max_objects:
            break
        total += k
        parts.append(connected_groupoid(rng.choice(catalog)[1], k))
    return disjoint_union(*parts) if len(parts) > 1 else parts[0]


def random_functor(rng: random.Random, A: FinGroupoid, B: FinGroupoid) -> GroupoidMap:
    """A random functor, built per component from a base hom and chosen twists.

    For a component with base object ``a0`` and chosen paths ``u_i: a0 -> i``,
    a morphism ``m: i -> j`` is sent to ``v_j phi(u_j^-1 m u_i) v_i^-1``.
    """
    if A.n_objects and not B.n_objects:
        raise GroupoidError("no functor from a non-empty groupoid to the empty one")
    isoA, isoB = A.iso_classes(), B.iso_classes()
    obj_map = [0] * A.n_objects
    mor_map = [0] * A.n_morphisms
    u, v = {}, {}
    for cls in isoA.classes:
        a0 = cls[0]
        bcls = isoB.classes[rng.randrange(len(isoB))]
        b0 = bcls[0]
        phi = rng.choice(aut_homomorphisms(A, a0, B, b0))
        for i in cls:
            u[i] = A.hom(a0, i)[0]
            obj_map[i] = rng.choice(bcls)
            v[i] = rng.choice(B.hom(b0, obj_map[i]))
        for i in cls:
            for m in A.out(i):
                j = A.target[m]
                core = A._compose(A._compose(A.inverse[u[j]], m), u[i])
                img = B._compose(B._compose(v[j], phi[core]), B.inverse[v[i]])
                mor_map[m] = img
    return GroupoidMap(A, B, obj_map, mor_map, check=False)


@dataclass
class WreathCheck:
    label: str
    prime: int
    lhs: Fraction
    rhs: Fraction

    @property
    def ok(self):
        return self.lhs == self.rhs


def verify_wreath_delta(A: FinGroupoid, p, label="") -> WreathCheck:
    """Compare ``|BC_p x A| - |A wr C_p|`` with the Fermat quotient of ``|A|``.

    Both sides are exact groupoid cardinalities; only the right side uses
    the closed formula ``(x - x^p)/p``.
    """
    bcp = from_group(cyclic(p), check=False)
    lhs = groupoid_cardinality(product(bcp, A)) - groupoid_cardinality(wreath_groupoid(A, p))
    rhs = fermat_quotient(groupoid_cardinality(A), p)
    return WreathCheck(label, int(p), lhs, Fraction(rhs))
