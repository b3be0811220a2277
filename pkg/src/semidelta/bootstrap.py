"""Valuation descent by iterated wreath products.

Start from ``A_0 = B^m C_p`` at height ``n``, whose cardinality has
valuation ``binom(n-1, m)``.  Each wreath ``A -> A wr C_p`` lowers the
valuation by exactly one (the Fermat quotient of a non-unit has valuation
one less), so after ``binom(n-1, m)`` steps the cardinality is a unit and
the last space is a witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

from .errors import PrecisionExhaustedError, SizeGuardError, UsageError
from .padic import DEFAULT_PRECISION, PLocalRational, Prime, Valuation, format_scalar, valuation
from .spaces import expr as E
from .spaces.evaluate import Height, cardinality, profile

# stays below the interpreter's default limit on int -> str conversion
MAX_DIGITS = 4_000

AMENABLE = "amenable-witness"
INVERTIBLE = "already-invertible"
FAILED = "failed"


@dataclass(frozen=True)
class DescentStep:
    space: E.SpaceExpr
    value: object
    valuation: Valuation

    def to_json(self):
        v = self.value
        if isinstance(v, PLocalRational) and v.value.denominator == 1:
            value = v.value.numerator
        else:
            value = format_scalar(v)
        return {"space": E.to_text(self.space), "value": value, "valuation": self.valuation.to_json()}


@dataclass(frozen=True)
class Verdict:
    kind: str
    space: E.SpaceExpr | None = None
    reason: str | None = None

    def to_json(self):
        out = {"kind": self.kind}
        if self.space is not None:
            out["space"] = E.to_text(self.space)
        if self.reason is not None:
            out["reason"] = self.reason
        return out

    def __str__(self):
        if self.kind == AMENABLE:
            return f"{AMENABLE}({E.to_text(self.space)})"
        if self.kind == FAILED:
            return f"{FAILED}({self.reason})"
        return self.kind


@dataclass
class BootstrapTrace:
    prime: int
    height: int
    target: int
    mode: str
    precision: int | None
    steps: list = field(default_factory=list)
    verdict: Verdict = Verdict(FAILED, reason="not-run")

    @property
    def predicted_length(self):
        return predict_length(self.height, self.target)

    @property
    def observed_length(self):
        return max(len(self.steps) - 1, 0)

    @property
    def ok(self):
        return self.verdict.kind != FAILED and self.observed_length == self.predicted_length

    def mode_label(self):
        return "exact" if self.mode == "exact" else f"truncated({self.precision})"

    def to_json(self):
        return {
            "prime": self.prime,
            "height": self.height,
            "target": self.target,
            "mode": self.mode_label(),
            "steps": [s.to_json() for s in self.steps],
            "verdict": self.verdict.to_json(),
            "predicted_length": self.predicted_length,
            "observed_length": self.observed_length,
        }


def predict_length(n: int, m: int) -> int:
    if n < 1 or m < 0:
        raise UsageError("predict_length needs n >= 1 and m >= 0")
    return comb(n - 1, m)


def _is_h_good(space, p, m) -> bool:
    prof = profile(space, p)
    return prof.connected and m in prof.nonzero_pi and prof.level == max(m, 1)


def _digits(value) -> int:
    if isinstance(value, PLocalRational):
        v = value.value
        return int(max(v.numerator.bit_length(), v.denominator.bit_length()) * 0.30103) + 1
    return 0


def descend(p, n: int, m: int, mode: str = "exact", precision: int = DEFAULT_PRECISION,
            max_digits: int = MAX_DIGITS) -> BootstrapTrace:
    """Run the descent and return its trace.

    Arithmetic failures end in a ``failed`` verdict. A value that would
    outgrow ``max_digits`` raises :class:`SizeGuardError`.
    """
    p = Prime(p)
    if n < 1 or m < 1:
        raise UsageError("descend needs height n >= 1 and target m >= 1")
    if mode not in ("exact", "truncated"):
        raise UsageError(f"unknown mode {mode!r}")
    target = Height(n, mode=mode, precision=precision)
    trace = BootstrapTrace(int(p), n, m, mode, None if mode == "exact" else precision)

    space = E.EM(m)
    try:
        value = cardinality(space, p, target)
    except PrecisionExhaustedError:
        trace.verdict = Verdict(FAILED, reason="precision-exhausted")
        return trace
    v = valuation(value, p)
    if v.is_finite and int(v) == 0:
        trace.verdict = Verdict(INVERTIBLE)
        return trace

    while True:
        if not v.is_finite:
            trace.verdict = Verdict(FAILED, reason="precision-exhausted")
            return trace
        if not _is_h_good(space, p, m):
            trace.verdict = Verdict(FAILED, reason=f"not-h-good: {E.to_text(space)}")
            return trace
        trace.steps.append(DescentStep(space, value, v))
        if int(v) == 0:
            trace.verdict = Verdict(AMENABLE, space=space)
            return trace
        if _digits(value) * p > max_digits:
            raise SizeGuardError(
                f"next value would exceed {max_digits} digits (p={p}, n={n}, m={m}, "
                f"step {len(trace.steps)})"
            )
        space = E.wreath(space, p)
        try:
            value = cardinality(space, p, target)
        except PrecisionExhaustedError:
            trace.verdict = Verdict(FAILED, reason="precision-exhausted")
            return trace
        new_v = valuation(value, p)
        if new_v.is_finite and int(new_v) != int(v) - 1:
            trace.steps.append(DescentStep(space, value, new_v))
            trace.verdict = Verdict(FAILED, reason="valuation-did-not-drop")
            return trace
        v = new_v


@dataclass
class SweepCell:
    prime: int
    height: int
    target: int
    predicted: int
    observed: int | None
    verdict: str
    ok: bool
    note: str = ""

    def to_json(self):
        return {
            "prime": self.prime, "height": self.height, "target": self.target,
            "predicted_length": self.predicted, "observed_length": self.observed,
            "verdict": self.verdict, "ok": self.ok, "note": self.note,
        }


@dataclass
class SweepReport:
    mode: str
    cells: list

    @property
    def ok(self):
        return all(c.ok for c in self.cells)

    def to_json(self):
        return {"mode": self.mode, "ok": self.ok, "cells": [c.to_json() for c in self.cells]}

    def to_text(self):
        lines = []
        for p in sorted({c.prime for c in self.cells}):
            cells = [c for c in self.cells if c.prime == p]
            ms = sorted({c.target for c in cells})
            lines.append(f"p={p}  " + "  ".join(f"m={m:<4d}" for m in ms))
            for n in sorted({c.height for c in cells}):
                row = {c.target: c for c in cells if c.height == n}
                marks = []
                for m in ms:
                    c = row[m]
                    marks.append(f"{'ok' if c.ok else 'FAIL'}:{c.observed if c.observed is not None else '-'}".ljust(6))
                lines.append(f"n={n}  " + "  ".join(marks))
        lines.append("all cells pass" if self.ok else "some cells FAILED")
        return "\n".join(lines)


def sweep(p_list, n_max: int, m_max: int, mode: str = "exact", precision: int = DEFAULT_PRECISION,
          compare: bool = True, max_digits: int = MAX_DIGITS) -> SweepReport:
    """Descend on every ``(p, n, m)`` with ``1 <= n <= n_max``, ``1 <= m <= m_max``.

    With ``compare`` the truncated run at ``precision`` must report the same
    valuations as the exact run, whenever the precision leaves room for the
    whole descent.
    """
    cells = []
    for p in p_list:
        for n in range(1, n_max + 1):
            for m in range(1, m_max + 1):
                cells.append(_sweep_cell(p, n, m, mode, precision, compare, max_digits))
    return SweepReport("exact+truncated" if compare and mode == "exact" else mode, cells)


def _sweep_cell(p, n, m, mode, precision, compare, max_digits):
    predicted = predict_length(n, m)
    try:
        trace = descend(p, n, m, mode, precision, max_digits)
    except SizeGuardError as exc:
        return SweepCell(int(p), n, m, predicted, None, FAILED, False, str(exc))
    ok = trace.ok
    note = "" if ok else f"observed {trace.observed_length}, verdict {trace.verdict}"
    if ok and compare and mode == "exact" and precision > 2 * predicted:
        other = descend(p, n, m, "truncated", precision, max_digits)
        vals = [s.valuation for s in trace.steps]
        if [s.valuation for s in other.steps] != vals or other.verdict.kind != trace.verdict.kind:
            ok = False
            note = f"truncated({precision}) disagrees: {other.verdict}"
    return SweepCell(int(p), n, m, predicted, trace.observed_length, trace.verdict.kind, ok, note)
