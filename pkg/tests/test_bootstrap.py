import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import descent_values, ord_p
from semidelta import bootstrap as B
from semidelta.errors import SizeGuardError, UsageError
from semidelta.spaces import EM, wreath

# frozen from oracles.descent_values
FROZEN = {
    (2, 2, 1): [2, 5],
    (2, 3, 1): [4, 22, 319],
    (3, 3, 1): [9, 321, 11028169],
    (2, 4, 2): [8, 92, 4922, 12149957],
    (3, 4, 1): [27, 7281, 128662650507, 709963835093445047997444067304801],
}


@pytest.mark.parametrize("key, values", sorted(FROZEN.items()))
def test_frozen_descent_values(key, values):
    trace = B.descend(*key)
    assert [s.to_json()["value"] for s in trace.steps] == values
    assert [int(s.valuation) for s in trace.steps] == [ord_p(v, key[0]) for v in values]
    assert trace.verdict.kind == B.AMENABLE


def test_first_example_trace():
    trace = B.descend(2, 2, 1)
    data = trace.to_json()
    assert data["steps"] == [
        {"space": "B1", "value": 2, "valuation": 1},
        {"space": "W(B1)", "value": 5, "valuation": 0},
    ]
    assert data["verdict"] == {"kind": "amenable-witness", "space": "W(B1)"}
    assert data["predicted_length"] == data["observed_length"] == 1
    assert set(data) == {"prime", "height", "target", "mode", "steps", "verdict",
                         "predicted_length", "observed_length"}


def test_witness_is_the_last_space():
    trace = B.descend(2, 3, 1)
    assert trace.verdict.space == wreath(wreath(EM(1), 2), 2)
    assert trace.steps[-1].space == trace.verdict.space


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("n, m", [(1, 1), (2, 2), (3, 3), (2, 5)])
def test_already_invertible(p, n, m):
    trace = B.descend(p, n, m)
    assert trace.verdict.kind == B.INVERTIBLE and trace.steps == []


def test_predict_length():
    assert B.predict_length(2, 1) == 1
    assert B.predict_length(4, 2) == 3
    assert B.predict_length(1, 1) == 0
    with pytest.raises(UsageError):
        B.predict_length(0, 1)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3]), st.integers(1, 5), st.integers(1, 4))
def test_descent_matches_oracle_and_drops_by_one(p, n, m):
    trace = B.descend(p, n, m)
    if trace.verdict.kind == B.INVERTIBLE:
        assert B.predict_length(n, m) == 0
        return
    assert [s.to_json()["value"] for s in trace.steps] == descent_values(p, n, m)
    vals = [int(s.valuation) for s in trace.steps]
    assert vals == list(range(vals[0], -1, -1))
    assert trace.observed_length == B.predict_length(n, m)
    for prev, step in zip(trace.steps, trace.steps[1:]):
        assert step.space == wreath(prev.space, p)


def test_truncated_mode_matches_exact_valuations():
    for key in FROZEN:
        exact = B.descend(*key)
        trunc = B.descend(*key, mode="truncated", precision=16)
        assert [s.valuation for s in trunc.steps] == [s.valuation for s in exact.steps]
        for e, t in zip(exact.steps, trunc.steps):
            assert t.value.residue == e.value.value.numerator % t.value.modulus


def test_truncated_mode_runs_out_of_precision():
    trace = B.descend(2, 3, 1, mode="truncated", precision=2)
    assert trace.verdict.kind == B.FAILED and trace.verdict.reason == "precision-exhausted"
    assert not trace.ok


def test_digit_guard():
    with pytest.raises(SizeGuardError):
        B.descend(3, 6, 2, max_digits=200)


def test_bad_arguments():
    with pytest.raises(UsageError):
        B.descend(2, 0, 1)
    with pytest.raises(UsageError):
        B.descend(2, 2, 1, mode="fast")


def test_sweep_examples():
    report = B.sweep([2, 3], 4, 3)
    assert report.ok and len(report.cells) == 24
    for c in report.cells:
        assert c.observed == c.predicted
    assert all(c.verdict == B.INVERTIBLE for c in B.sweep([2], 1, 5).cells)
    assert "all cells pass" in report.to_text()


def test_sweep_records_guard_failures_and_continues():
    report = B.sweep([3], 6, 2, max_digits=200)
    bad = [c for c in report.cells if not c.ok]
    assert bad and all(c.observed is None for c in bad)
    assert len(report.cells) == 12
