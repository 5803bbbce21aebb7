"""Static checking and execution of parsed programs, plus report rendering."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

from ..deutsch import BASIS_NAMES
from ..errors import NotUnit
from ..numerics import DEFAULT_TOL, Matrix, unit_deviation
from ..postulates import (
    MeasurementRecord,
    ProbVector,
    State,
    basis_state,
    evolve,
    make_rng,
    measure,
    probabilities,
    sample_with,
    state_new,
)
from .program import Apply, BasisInit, Diagnostic, Kind, Measure, Program

__all__ = ["check", "execute", "Report", "TraceEntry", "initial_state"]

JSON_DIGITS = 12
TEXT_DIGITS = 6


def _gate_problem(name: str, matrix: Matrix, dim: int, tol: float, span) -> Optional[Diagnostic]:
    if matrix.shape != (dim, dim):
        return Diagnostic(
            Kind.SHAPE_MISMATCH,
            f"gate {name} is {matrix.rows}x{matrix.cols} but dim is {dim}",
            span,
        )
    dev = unit_deviation(matrix)
    if not dev < tol:
        return Diagnostic(
            Kind.NOT_UNIT,
            f"gate {name} is not unit: max deviation {dev:.3e} >= tol {tol:g}",
            span,
        )
    return None


def check(p: Program, tol: float = DEFAULT_TOL) -> list[Diagnostic]:
    """Postulates 1 and 2 as static rules; empty list means safe to execute."""
    diags = []
    if isinstance(p.initial, BasisInit):
        if not 1 <= p.initial.index <= p.dim:
            diags.append(
                Diagnostic(Kind.DIM_MISMATCH, f"basis index {p.initial.index} outside 1..{p.dim}", p.initial.span)
            )
    else:
        col = p.initial.column
        if col.shape != (p.dim, 1):
            diags.append(
                Diagnostic(
                    Kind.DIM_MISMATCH,
                    f"state has {col.rows} components but dim is {p.dim}",
                    p.initial.span,
                )
            )
        else:
            dev = unit_deviation(col)
            if not dev < tol:
                diags.append(
                    Diagnostic(
                        Kind.NOT_UNIT,
                        f"initial state is not unit: deviation {dev:.3e} >= tol {tol:g}",
                        p.initial.span,
                    )
                )
    for g in p.gates:
        problem = _gate_problem(g.name, g.matrix, p.dim, tol, g.span)
        if problem is not None:
            diags.append(problem)
    checked = {g.name for g in p.gates}
    for step in p.applies:
        if step.gate in checked:
            continue
        checked.add(step.gate)
        matrix = p.resolve(step.gate)
        if matrix is None:
            diags.append(Diagnostic(Kind.UNKNOWN_GATE, f"gate {step.gate!r} is not defined", step.span))
            continue
        problem = _gate_problem(step.gate, matrix, p.dim, tol, step.span)
        if problem is not None:
            diags.append(problem)
    return diags


def initial_state(p: Program, tol: float = DEFAULT_TOL) -> State:
    if isinstance(p.initial, BasisInit):
        return basis_state(p.dim, p.initial.index)
    return state_new(p.initial.column, tol)


@dataclass(frozen=True)
class TraceEntry:
    label: str
    line: int
    state: State


@dataclass(frozen=True)
class Report:
    program: Program
    seed: int
    shots: Optional[int]
    probabilities: ProbVector
    histogram: Optional[dict[int, int]] = None
    record: Optional[MeasurementRecord] = None
    trace: Optional[tuple[TraceEntry, ...]] = None
    duration_ms: float = field(default=0.0, compare=False)

    @property
    def labels(self) -> Optional[tuple[str, ...]]:
        if self.program.dim == 4 and self.program.uses_oracle():
            return BASIS_NAMES
        return None

    def outcome_label(self, i: int) -> str:
        names = self.labels
        return f"{i} ({names[i - 1]})" if names else str(i)

    def to_json_obj(self, timing: bool = True) -> dict:
        obj = {
            "program": {
                "path": self.program.source,
                "dim": self.program.dim,
                "initial": self.program.initial.to_text(),
                "steps": [s.to_text() for s in self.program.steps],
            },
            "seed": self.seed,
            "shots": self.shots,
            "probabilities": [_num(x) for x in self.probabilities.probs],
            "histogram": (
                {str(k): v for k, v in self.histogram.items()} if self.histogram is not None else None
            ),
            "measurement": (
                {
                    "outcome": self.record.outcome,
                    "collapsed": _column_json(self.record.collapsed),
                }
                if self.record is not None
                else None
            ),
            "labels": list(self.labels) if self.labels else None,
        }
        if self.trace is not None:
            obj["trace"] = [
                {"step": t.label, "line": t.line, "state": _column_json(t.state)} for t in self.trace
            ]
        obj["duration_ms"] = round(self.duration_ms, 3) if timing else None
        return obj

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_json_obj(timing), indent=2) + "\n"

    def to_text(self, timing: bool = True) -> str:
        out = []
        src = self.program.source or "<program>"
        out.append(f"program: {src} (dim {self.program.dim})")
        out.append(f"seed: {self.seed}")
        if self.trace is not None:
            out.append("trace:")
            for t in self.trace:
                amps = " ".join(_ctext(z) for z in t.state.amplitudes())
                out.append(f"  line {t.line:>3}  {t.label:<14} [ {amps} ]")
        out.append("probabilities:")
        for i, p in enumerate(self.probabilities.probs, start=1):
            out.append(f"  {self.outcome_label(i)}: {p:.{TEXT_DIGITS}g}")
        if self.histogram is not None:
            out.append(f"histogram ({self.shots} shots):")
            for k, v in self.histogram.items():
                out.append(f"  {self.outcome_label(k)}: {v}")
        elif self.record is not None:
            out.append(f"outcome: {self.outcome_label(self.record.outcome)}")
        if timing:
            out.append(f"duration: {self.duration_ms:.3f} ms")
        return "\n".join(out) + "\n"


def _num(x: float) -> float:
    return float(f"{x:.{JSON_DIGITS}g}")


def _column_json(s: State) -> list[list[float]]:
    return [[_num(a), _num(b)] for a, b in s.amplitudes()]


def _ctext(z) -> str:
    return f"({z[0]:.{TEXT_DIGITS}g},{z[1]:.{TEXT_DIGITS}g})"


def execute(
    p: Program,
    seed: int,
    shots: Optional[int] = None,
    trace: bool = False,
    tol: float = DEFAULT_TOL,
) -> Report:
    """Run the steps of ``p`` in order.

    ``shots`` overrides the count on the ``measure`` directive and is ignored
    for programs that do not measure.  A ``measure`` without a count takes a
    single measurement.  All randomness comes from ``make_rng(seed)``.
    """
    t0 = time.perf_counter()
    rng = make_rng(seed)
    state = initial_state(p, tol)
    entries = [TraceEntry(p.initial.to_text(), p.initial.span.line, state)] if trace else None
    histogram = None
    record = None
    used_shots = None
    for step in p.steps:
        if isinstance(step, Apply):
            matrix = p.resolve(step.gate)
            state = evolve(state, matrix, tol)
            if entries is not None:
                entries.append(TraceEntry(step.to_text(), step.span.line, state))
        elif isinstance(step, Measure):
            used_shots = shots if shots is not None else step.shots
            if used_shots is None:
                record = measure(state, rng)
            else:
                if used_shots < 1:
                    raise ValueError(f"shots must be >= 1, got {used_shots}")
                histogram = sample_with(state, used_shots, rng)
    probs = probabilities(state)
    if abs(probs.total - 1.0) > 1e-8:
        raise NotUnit(f"final probabilities sum to {probs.total!r}", abs(probs.total - 1.0))
    return Report(
        program=p,
        seed=seed,
        shots=used_shots,
        probabilities=probs,
        histogram=histogram,
        record=record,
        trace=tuple(entries) if entries is not None else None,
        duration_ms=(time.perf_counter() - t0) * 1000.0,
    )
