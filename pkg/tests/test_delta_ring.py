import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semidelta import delta_ring as D
from semidelta.errors import SearchSpaceTooLargeError, UsageError
from semidelta.padic import TruncatedPAdic, fermat_quotient, same_value
from semidelta.spaces import EM, RigElement, parse_rig, product, rig_delta


@pytest.mark.parametrize("p", [2, 3, 5])
def test_standard_rings_satisfy_the_laws(p):
    for ring in D.standard_rings(p, 40):
        report = D.check_delta_laws(ring, D.sample_pairs(ring, 60, seed=p))
        assert report.ok, report.failures[:3]
        assert report.counts == {"normalization": 2, "additivity": 60, "module": 60}


def test_wrong_derivation_is_caught():
    ring = D.RationalDelta(3)
    # forgetting the division by p breaks both laws
    report = D.check_delta_laws(ring, D.sample_pairs(ring, 40, 0), delta=lambda x: x - x**3)
    assert not report.ok
    assert {f["law"] for f in report.failures} >= {"additivity", "module"}
    report = D.check_delta_laws(ring, D.sample_pairs(ring, 5, 0), delta=lambda x: x + 1)
    assert any(f["law"] == "normalization" for f in report.failures)


def test_report_json_shape():
    ring = D.PLocalDelta(2)
    data = D.check_delta_laws(ring, D.sample_pairs(ring, 3, 1)).to_json()
    assert set(data) == {"ring", "prime", "counts", "failures"}
    assert data["ring"] == "Z_(p)"


@pytest.mark.parametrize("p", [2, 3, 5])
def test_frobenius_lift_is_additive_and_lifts_frobenius(p):
    for ring in (D.RationalDelta(p), D.TruncatedDelta(p, 30)):
        rng = random.Random(p)
        for _ in range(50):
            x, y = ring.random_element(rng), ring.random_element(rng)
            lhs = D.frobenius_lift(ring, ring.add(x, y))
            assert ring.equal(lhs, ring.add(D.frobenius_lift(ring, x), D.frobenius_lift(ring, y)))
    for x in range(-50, 50):
        psi = D.frobenius_lift(D.RationalDelta(p), Fraction(x))
        assert psi == x and (psi - x**p) % p == 0


def test_free_rig_frobenius_lift_is_additive():
    ring = D.FreeRigDelta(2)
    rng = random.Random(9)
    for _ in range(30):
        x, y = ring.random_element(rng), ring.random_element(rng)
        assert D.frobenius_lift(ring, x + y) == D.frobenius_lift(ring, x) + D.frobenius_lift(ring, y)


# finite rings -----------------------------------------------------------------


def test_ring_table_validation():
    z4 = D.FiniteRingTable.integers_mod(4)
    assert z4.size == 4 and z4.one == 1 and z4.neg(1) == 3
    bad_mul = [list(row) for row in z4.mul]
    bad_mul[2][3] = 1
    with pytest.raises(UsageError):
        D.FiniteRingTable(z4.add, tuple(map(tuple, bad_mul)))


@pytest.mark.parametrize("n, p", [(4, 2), (8, 2), (9, 3), (2, 2), (3, 3), (27, 3), (25, 5), (16, 2)])
def test_no_derivation_when_one_is_torsion(n, p):
    assert D.search_torsion_derivations(D.FiniteRingTable.integers_mod(n), p) == []


def test_zero_ring_has_the_zero_derivation():
    assert D.search_torsion_derivations(D.FiniteRingTable.integers_mod(1), 2) == [(0,)]


@pytest.mark.parametrize("n, p", [(n, p) for n in range(2, 10) for p in (2, 3, 5) if n % p])
def test_unique_derivation_when_p_is_invertible(n, p):
    # psi is additive with psi(1) = 1, so psi = id and delta = (x - x^p)/p
    pinv = pow(p, -1, n)
    expected = tuple(((x - pow(x, p)) * pinv) % n for x in range(n))
    assert D.search_torsion_derivations(D.FiniteRingTable.integers_mod(n), p) == [expected]


@pytest.mark.parametrize("n, p", [(4, 2), (4, 3), (5, 2), (6, 2), (6, 5)])
def test_backtracking_agrees_with_brute_force(n, p):
    table = D.FiniteRingTable.integers_mod(n)
    assert D.search_torsion_derivations(table, p, "brute") == D.search_torsion_derivations(table, p)


def test_search_guards():
    with pytest.raises(SearchSpaceTooLargeError):
        D.search_torsion_derivations(D.FiniteRingTable.integers_mod(9), 3, "brute")
    with pytest.raises(SearchSpaceTooLargeError):
        D.search_torsion_derivations(D.FiniteRingTable.integers_mod(81), 3)


def test_found_derivations_pass_the_law_checker():
    table = D.FiniteRingTable.integers_mod(6)
    (mapping,) = D.search_torsion_derivations(table, 5)
    ring = D.TableDelta(table, 5, mapping)
    report = D.check_delta_laws(ring, [(x, y) for x in range(6) for y in range(6)])
    assert report.ok


# torsion quotient -------------------------------------------------------------


def test_quotient_without_relations_is_the_identity():
    x = parse_rig("W(B1) + 2*B2 - 3", 2)
    assert D.torsion_free_quotient(x) == x


def test_declared_torsion_vanishes():
    g = EM(1)
    q = D.TorsionQuotient([(2, g)], 2)
    assert q.project(RigElement.monomial(g, 2)) == 0
    assert q.project(RigElement.monomial(g, 2, 2)) == 0
    assert q.project(RigElement.monomial(EM(2), 2)) == RigElement.monomial(EM(2), 2)
    assert q.is_torsion(RigElement.monomial(product(g, EM(2)), 2))


@settings(max_examples=60)
@given(st.integers(0, 2**32), st.sampled_from([2, 3]))
def test_torsion_is_closed_under_delta(seed, p):
    ring = D.FreeRigDelta(p)
    rng = random.Random(seed)
    g = rng.choice([EM(1), EM(2), product(EM(1), EM(2))])
    q = D.TorsionQuotient([(p, g)], p)
    x = ring.random_element(rng) * RigElement.monomial(g, p)
    assert q.is_torsion(x)
    assert q.is_torsion(rig_delta(x))


@settings(max_examples=60)
@given(st.integers(0, 2**32))
def test_quotient_derivation_is_well_defined(seed):
    # delta(x + t) and delta(x) agree in the quotient when t is torsion
    p = 2
    ring = D.FreeRigDelta(p)
    rng = random.Random(seed)
    q = D.TorsionQuotient([(2, EM(1))], p)
    x = ring.random_element(rng)
    t = ring.random_element(rng) * RigElement.monomial(EM(1), p)
    assert q.delta(x + t) == q.delta(x)


def test_truncated_ring_delta_matches_fermat_quotient():
    ring = D.TruncatedDelta(3, 12)
    x = TruncatedPAdic(6, 3, 12)
    assert same_value(ring.delta(x), fermat_quotient(x))
    assert ring.delta(x).precision == 11
