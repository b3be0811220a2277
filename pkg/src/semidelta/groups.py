"""Small finite groups as multiplication tables.

A table ``t`` is a list of rows with ``t[a][b]`` the index of ``a*b``.
:func:`small_groups` lists one representative of every isomorphism class
of order at most 9.
"""

from __future__ import annotations

import itertools
import json

from .errors import NotAGroupError


def validate_group(table):
    """Return ``(table, identity)`` or raise :class:`NotAGroupError`."""
    try:
        table = tuple(tuple(int(v) for v in row) for row in table)
    except (TypeError, ValueError) as exc:
        raise NotAGroupError(f"group table must be a list of integer rows: {exc}") from None
    n = len(table)
    if n == 0 or any(len(row) != n for row in table):
        raise NotAGroupError("group table must be a non-empty square array")
    R = range(n)
    if any(not 0 <= v < n for row in table for v in row):
        raise NotAGroupError("group table entry out of range")
    ids = [e for e in R if all(table[e][x] == x and table[x][e] == x for x in R)]
    if not ids:
        raise NotAGroupError("no identity element")
    e = ids[0]
    for x in R:
        if not any(table[x][y] == e for y in R):
            raise NotAGroupError(f"element {x} has no inverse")
    for x, y, z in itertools.product(R, R, R):
        if table[table[x][y]][z] != table[x][table[y][z]]:
            raise NotAGroupError(f"not associative at ({x}, {y}, {z})")
    return table, e


def group_from_json(text):
    return validate_group(json.loads(text))[0]


def cyclic(n):
    return tuple(tuple((a + b) % n for b in range(n)) for a in range(n))


def direct_product(g, h):
    m = len(h)
    size = len(g) * m
    return tuple(
        tuple(g[a // m][b // m] * m + h[a % m][b % m] for b in range(size)) for a in range(size)
    )


def _from_elements(elements, mul):
    index = {x: i for i, x in enumerate(elements)}
    return tuple(tuple(index[mul(a, b)] for b in elements) for a in elements)


def dihedral(n):
    """Symmetries of the n-gon: pairs (r, s) meaning rotation^r reflection^s."""
    elements = [(r, s) for s in (0, 1) for r in range(n)]

    def mul(a, b):
        r1, s1 = a
        r2, s2 = b
        return ((r1 + (-r2 if s1 else r2)) % n, s1 ^ s2)

    return _from_elements(elements, mul)


def symmetric(n):
    elements = list(itertools.permutations(range(n)))
    return _from_elements(elements, lambda a, b: tuple(a[b[i]] for i in range(n)))


def quaternion():
    # unit quaternions {±1, ±i, ±j, ±k} as (sign, basis) with basis in 1,i,j,k
    basis_mul = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elements = [(s, b) for s in (1, -1) for b in range(4)]

    def mul(a, b):
        sign, basis = basis_mul[(a[1], b[1])]
        return (a[0] * b[0] * sign, basis)

    return _from_elements(elements, mul)


def small_groups(max_order=9):
    """``(name, table)`` for every group of order <= ``max_order`` (up to 9)."""
    c = cyclic
    catalog = [
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", direct_product(c(2), c(2))),
        ("C5", c(5)),
        ("C6", c(6)),
        ("S3", symmetric(3)),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C4xC2", direct_product(c(4), c(2))),
        ("C2xC2xC2", direct_product(direct_product(c(2), c(2)), c(2))),
        ("D4", dihedral(4)),
        ("Q8", quaternion()),
        ("C9", c(9)),
        ("C3xC3", direct_product(c(3), c(3))),
    ]
    if max_order > 9:
        raise ValueError("the catalog stops at order 9")
    return [(name, t) for name, t in catalog if len(t) <= max_order]
