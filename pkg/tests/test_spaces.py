import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import em_card, em_dim, fermat, rig_delta_via_frobenius
from semidelta.delta_ring import FreeRigDelta
from semidelta.errors import ExprSyntaxError, NotALoopSpaceError, NotPIntegralError
from semidelta.padic import PLocalRational, Valuation, is_unit, same_value, to_truncated, valuation
from semidelta.spaces import (
    EM,
    EMPTY,
    POINT,
    Height,
    Product,
    Rational,
    RigElement,
    Wreath,
    cardinality,
    dimension,
    disjoint,
    evaluate_rig,
    free_loop,
    gbinom,
    loop,
    parse,
    parse_rig,
    power,
    product,
    profile,
    rig_add,
    rig_delta,
    rig_mul,
    to_text,
    wreath,
)

B0, B1, B2, B3 = EM(0), EM(1), EM(2), EM(3)
primes = st.sampled_from([2, 3, 5])


def spaces(p, max_leaves=6):
    """Normal-form expressions built through the smart constructors."""
    leaf = st.sampled_from([POINT, EMPTY, B0, B1, B2, B3])

    def extend(children):
        return st.one_of(
            st.lists(children, min_size=2, max_size=3).map(lambda xs: disjoint(*xs)),
            st.lists(children, min_size=2, max_size=3).map(lambda xs: product(*xs)),
            leaf.map(lambda a: wreath(a, p)),
        )

    return st.recursive(leaf, extend, max_leaves=max_leaves)


@st.composite
def prime_and_space(draw):
    p = draw(st.sampled_from([2, 3]))
    return p, draw(spaces(p))


@st.composite
def loop_space(draw):
    ks = draw(st.lists(st.integers(0, 5), min_size=0, max_size=3))
    return product(*(EM(k) for k in ks))


# normal forms --------------------------------------------------------------


def test_identities_are_absorbed():
    assert disjoint(EMPTY, B1) == B1
    assert product(POINT, B2) == B2
    assert product(EMPTY, B1, B2) == EMPTY
    assert product(B2, B1) == product(B1, B2)
    assert disjoint(B1, disjoint(B2, B3)) == disjoint(B3, B2, B1)
    assert power(B1, 0) == POINT


def test_loops():
    assert loop(B3) == B2
    assert loop(B0) == POINT
    assert loop(POINT) == POINT
    assert loop(product(B1, B2)) == product(B0, B1)
    assert free_loop(B1) == product(B0, B1)
    with pytest.raises(NotALoopSpaceError, match="disconnected"):
        loop(disjoint(B1, B1))
    with pytest.raises(NotALoopSpaceError):
        loop(wreath(B1, 2))


def test_wreath_rewrites():
    assert wreath(POINT, 3) == B1
    assert wreath(EMPTY, 2) == EMPTY
    assert wreath(B1, 2) == Wreath(B1)
    # two points: two constant orbits give BC_2 each, the free orbit one point
    assert wreath(disjoint(POINT, POINT), 2) == disjoint(B1, B1, POINT)


def test_parse_examples():
    assert parse("B1", 2) == B1
    assert parse("W(B1) * B2", 3) == Product((Wreath(B1), B2))
    assert parse(" L( B2 ) ", 2) == product(B1, B2)
    assert parse("Om(B3)^2 + 2", 2) == disjoint(power(B2, 2), POINT, POINT)
    assert parse("empty * B1 + pt", 5) == POINT


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("B1 +", "position"),
        ("W(B1", "position"),
        ("B", "position"),
        ("B1 - B2", "position"),
        ("B1 $ B2", "position 3"),
    ],
)
def test_parse_errors_carry_a_position(text, fragment):
    with pytest.raises(ExprSyntaxError, match=fragment) as info:
        parse(text, 2)
    assert isinstance(info.value.position, int)


def test_loop_of_disconnected_expression_is_rejected():
    with pytest.raises(NotALoopSpaceError, match="disconnected"):
        parse("Om(B1 + B1)", 2)


@settings(max_examples=200)
@given(prime_and_space())
def test_print_parse_round_trip(ps):
    p, a = ps
    assert parse(to_text(a), p) == a


# cardinalities ---------------------------------------------------------------


def test_cardinality_examples():
    for p in (2, 3, 5):
        assert cardinality(B1, p, Height(2)) == PLocalRational(p, p)
        assert cardinality(B1, p, Height(1)) == PLocalRational(1, p)
        assert cardinality(B2, p, Rational()) == p
    assert cardinality(wreath(B0, 2), 2, Rational()) == 2
    assert cardinality(POINT, 3, Height(4)) == PLocalRational(1, 3)
    assert cardinality(EMPTY, 3, Rational()) == 0


def test_gbinom():
    assert [gbinom(-1, k) for k in range(5)] == [1, -1, 1, -1, 1]
    assert all(gbinom(n, k) == comb(n, k) for n in range(7) for k in range(7))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_em_table_matches_closed_form(p):
    for n in range(7):
        for k in range(7):
            c = cardinality(EM(k), p, Height(n))
            d = dimension(EM(k), p, Height(n))
            c = c.value if isinstance(c, PLocalRational) else c
            d = d.value if isinstance(d, PLocalRational) else d
            assert c == em_card(k, n, p)
            assert d == em_dim(k, n, p)
            if n >= 1:
                assert d == p ** comb(n, k)


@pytest.mark.parametrize("p", [2, 3])
def test_invertibility_threshold(p):
    for n in range(1, 7):
        for k in range(7):
            c = cardinality(EM(k), p, Height(n))
            assert valuation(c) == Valuation.finite(comb(n - 1, k))
            assert is_unit(c) == (k >= n)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_fibration_cross_check(p):
    # A^p -> A wr C_p -> BC_p for connected A
    for ks in [(1,), (2,), (1, 2), (3,), (1, 1, 2)]:
        a = product(*(EM(k) for k in ks))
        lhs = cardinality(wreath(a, p), p, Rational())
        assert lhs == cardinality(a, p, Rational()) ** p / p


def test_dimension_examples():
    assert dimension(B1, 2, Height(2)) == PLocalRational(4, 2)
    assert dimension(B3, 5, Height(0)) == 1
    assert dimension(POINT, 2, Height(3)) == PLocalRational(1, 2)
    assert dimension(B1, 3, Height(1)) == PLocalRational(3, 3)
    with pytest.raises(NotALoopSpaceError):
        dimension(disjoint(B1, POINT), 2, Rational())


def test_truncated_height_zero_needs_p_integral_values():
    assert cardinality(B0, 2, Height(0, "truncated", 10)).residue == 2
    with pytest.raises(NotPIntegralError):
        cardinality(B1, 2, Height(0, "truncated", 10))


@settings(max_examples=150)
@given(prime_and_space(), st.integers(1, 4))
def test_truncated_agrees_with_exact(ps, n):
    p, a = ps
    exact = cardinality(a, p, Height(n))
    trunc = cardinality(a, p, Height(n, "truncated", 40))
    assert same_value(trunc, to_truncated(exact, p, 40))


@settings(max_examples=150)
@given(prime_and_space(), prime_and_space())
def test_cardinality_is_additive_and_multiplicative(x, y):
    p, a = x
    b = y[1]
    for target in (Rational(), Height(2)):
        ca, cb = cardinality(a, p, target), cardinality(b, p, target)
        assert cardinality(disjoint(a, b), p, target) == ca + cb
        assert cardinality(product(a, b), p, target) == ca * cb


@settings(max_examples=100)
@given(loop_space(), primes, st.integers(0, 5))
def test_pascal_through_dimension(a, p, n):
    d = dimension(a, p, Height(n))
    assert d == cardinality(a, p, Height(n)) * cardinality(loop(a), p, Height(n))


# profiles ---------------------------------------------------------------------


def test_profile_examples():
    prof = profile(B2, 2)
    assert (prof.connectivity, prof.level, prof.component_count, prof.nonzero_pi) == (1, 2, 1, {2})
    prof = profile(product(B1, B3), 3)
    assert (prof.connectivity, prof.level, prof.nonzero_pi) == (0, 3, {1, 3})
    prof = profile(wreath(B2, 2), 2)
    assert prof.level == 2 and {1, 2} <= prof.nonzero_pi and prof.connected
    assert profile(B0, 3).component_count == 3
    assert profile(wreath(disjoint(POINT, POINT), 2), 2).component_count == 3


# free rig --------------------------------------------------------------------


def rig_elements(p):
    ring = FreeRigDelta(p)
    return st.integers(0, 2**32).map(lambda s: ring.random_element(random.Random(s)))


@st.composite
def prime_and_rig(draw, count=1):
    p = draw(primes)
    return (p, *(draw(rig_elements(p)) for _ in range(count)))


def test_rig_arithmetic_examples():
    x = RigElement.monomial(B1, 2)
    assert rig_add(x, x) == RigElement.monomial(B1, 2, 2)
    assert rig_mul(x, RigElement.monomial(B2, 2)) == RigElement.monomial(product(B1, B2), 2)
    assert not (x - x)
    assert (x - x) == 0


def test_rig_delta_examples():
    assert rig_delta(RigElement.from_int(1, 2)) == 0
    assert str(rig_delta(parse_rig("B1", 2))) == "-W(B1) + B1^2"
    d = rig_delta(parse_rig("2*B0", 2))
    expected = rig_delta(parse_rig("B0", 2)) * 2 - RigElement.monomial(power(B0, 2), 2)
    assert d == expected
    assert str(d) == "-2*W(B0) - B0^2 + 2*B0 * B1"
    assert rig_delta(RigElement.from_int(2, 3)) == -2


def test_evaluate_rig_examples():
    x = parse_rig("B1", 2)
    assert evaluate_rig(rig_delta(x), Height(2)) == PLocalRational(-1, 2)
    assert evaluate_rig(x * x, Rational()) == Fraction(1, 4)
    assert evaluate_rig(RigElement({}, 3), Height(1)) == PLocalRational(0, 3)


@settings(max_examples=120)
@given(prime_and_rig(3))
def test_rig_is_a_commutative_ring(args):
    p, x, y, z = args
    assert x + y == y + x and x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * RigElement.from_int(1, p) == x and x + RigElement({}, p) == x


@settings(max_examples=120)
@given(prime_and_rig(2))
def test_evaluation_is_a_ring_map(args):
    p, x, y = args
    for target in (Rational(), Height(1), Height(3)):
        assert evaluate_rig(x + y, target) == evaluate_rig(x, target) + evaluate_rig(y, target)
        assert evaluate_rig(x * y, target) == evaluate_rig(x, target) * evaluate_rig(y, target)


@settings(max_examples=120)
@given(prime_and_rig())
def test_rig_delta_matches_frobenius_oracle(args):
    p, x = args
    assert rig_delta(x) == rig_delta_via_frobenius(x, p)


@settings(max_examples=100)
@given(prime_and_rig())
def test_evaluation_commutes_with_delta(args):
    p, x = args
    for target in (Rational(), Height(0), Height(2)):
        lhs = evaluate_rig(rig_delta(x), target)
        rhs = fermat(evaluate_rig(x, target).value if isinstance(evaluate_rig(x, target), PLocalRational)
                     else evaluate_rig(x, target), p)
        lhs = lhs.value if isinstance(lhs, PLocalRational) else lhs
        assert lhs == rhs


@settings(max_examples=100)
@given(prime_and_space())
def test_delta_of_a_space(ps):
    p, a = ps
    lhs = rig_delta(RigElement.from_space(a, p))
    rhs = RigElement.from_space(product(B1, a), p) - RigElement.from_space(wreath(a, p), p)
    assert lhs == rhs


def test_parse_rig_accepts_subtraction():
    x = parse_rig("W(B1) - 2*B1^2 + 3", 2)
    assert evaluate_rig(x, Rational()) == Fraction(1, 8) - Fraction(2, 4) + 3
