"""Seeded law suites shared by the command line and the test-suite.

Every suite returns a list of ``{"law", "instances", "failures"}`` records;
a failure carries the seed that reproduces it.
"""

from __future__ import annotations

import random

from . import delta_ring as D
from . import groupoids as G
from . import spans as S
from .groups import small_groups
from .padic import DEFAULT_PRECISION, Prime, fermat_quotient, same_value
from .spaces.evaluate import Height, Rational, evaluate_rig
from .spaces.rig import rig_delta


def _law(name, instances=0, failures=None):
    return {"law": name, "instances": instances, "failures": failures or []}


def compatibility_targets(precision=DEFAULT_PRECISION):
    """Evaluation targets on which ``evaluate(delta x) = dq(evaluate x)`` is checked."""
    targets = [Rational()]
    targets += [Height(n) for n in range(4)]
    targets += [Height(n, mode="truncated", precision=precision) for n in range(1, 4)]
    return targets


def check_compatibility(p, count=300, seed=0, precision=DEFAULT_PRECISION):
    p = Prime(p)
    ring = D.FreeRigDelta(p)
    rng = random.Random(seed)
    samples = [(seed, ring.random_element(rng)) for _ in range(count)]
    out = []
    for target in compatibility_targets(precision):
        law = _law(f"evaluate-commutes-with-delta[{target}]")
        for s, x in samples:
            lhs = evaluate_rig(rig_delta(x), target)
            rhs = fermat_quotient(evaluate_rig(x, target), p)
            law["instances"] += 1
            if not same_value(lhs, rhs):
                law["failures"].append({"seed": s, "description": f"x = {x}: {lhs} != {rhs}"})
        out.append(law)
    return out


def delta_suite(p, seed=0, count=500, precision=DEFAULT_PRECISION, compat_count=300):
    p = Prime(p)
    out = []
    for ring in D.standard_rings(p, precision):
        report = D.check_delta_laws(ring, D.sample_pairs(ring, count, seed))
        for law, n in sorted(report.counts.items()):
            fails = [{"seed": seed, "description": f["description"]}
                     for f in report.failures if f["law"] == law]
            out.append(_law(f"{law}[{ring.name}]", n, fails))
    for k in (k for k in (2, 3) if p ** k <= 64):
        table = D.FiniteRingTable.integers_mod(p ** k)
        found = D.search_torsion_derivations(table, p)
        fails = [{"seed": seed, "description": f"derivation found on Z/{p ** k}: {d}"} for d in found]
        out.append(_law(f"no-derivation-on-torsion[Z/{p ** k}]", 1, fails))
    out += check_compatibility(p, compat_count, seed, precision)
    return out


def span_suite(seed=0, count=100, dim_count=30):
    out = [r.to_json() for r in S.check_calculus(seed, count)]
    out.append(S.check_dimensions(seed, dim_count).to_json())
    return out


def groupoid_suite(p, max_order=None, max_points=5):
    """Wreath identity on every small group and on discrete sets."""
    p = Prime(p)
    if max_order is None:
        max_order = {2: 8, 3: 9}.get(int(p), 4)
    law = _law("wreath-delta-identity")
    cases = [(name, G.from_group(t, check=False)) for name, t in small_groups(max_order)]
    cases += [(f"{n} points", G.discrete(n)) for n in range(max_points + 1)]
    for name, A in cases:
        check = G.verify_wreath_delta(A, p, name)
        law["instances"] += 1
        if not check.ok:
            law["failures"].append({"seed": 0, "description": f"{name}: {check.lhs} != {check.rhs}"})
    return [law]


SUITES = ("delta", "span", "groupoid")


def run_suite(name, p, seed=0, precision=DEFAULT_PRECISION):
    if name == "delta":
        return delta_suite(p, seed, precision=precision)
    if name == "span":
        return span_suite(seed)
    if name == "groupoid":
        return groupoid_suite(p)
    if name == "all":
        return [law for s in SUITES for law in run_suite(s, p, seed, precision)]
    raise ValueError(f"unknown suite {name!r}")
