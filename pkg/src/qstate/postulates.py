"""States, unitary evolution and measurement with collapse.

A :class:`State` is only ever built from a column that already passes the
unit check; nothing is renormalised behind the caller's back.  Randomness
comes from an explicit source with a ``random()`` method returning floats
in ``[0, 1)``.  :func:`make_rng` returns the documented default, Python's
Mersenne Twister (:class:`random.Random`) seeded with an integer.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from collections import Counter
from dataclasses import dataclass
from itertools import accumulate
from typing import Protocol

from .errors import IndexOutOfRange, NotAColumn, NotUnit, ShapeMismatch
from .numerics import (
    DEFAULT_TOL,
    ONE,
    ZERO,
    Matrix,
    c_norm,
    mat_mul,
    unit_deviation,
)

__all__ = [
    "PROB_SUM_TOL",
    "RandomSource",
    "State",
    "ProbVector",
    "MeasurementRecord",
    "make_rng",
    "state_new",
    "basis_state",
    "evolve",
    "probabilities",
    "measure",
    "sample",
]

PROB_SUM_TOL = 1e-8


class RandomSource(Protocol):
    def random(self) -> float: ...


def make_rng(seed: int) -> random.Random:
    return random.Random(seed)


@dataclass(frozen=True)
class State:
    """A unit ``n x 1`` column.

    Build one with :func:`state_new` or :func:`basis_state`; the bare
    constructor does not validate.
    """

    column: Matrix

    @property
    def dim(self) -> int:
        return self.column.rows

    def amplitude(self, i: int) -> tuple[float, float]:
        return self.column.at(i, 1)

    def amplitudes(self) -> tuple:
        return self.column.components


@dataclass(frozen=True)
class ProbVector:
    probs: tuple[float, ...]

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, i: int) -> float:
        return self.probs[i]

    def p(self, outcome: int) -> float:
        """Probability of the 1-based ``outcome``."""
        if not 1 <= outcome <= len(self.probs):
            raise IndexOutOfRange(f"outcome {outcome} outside 1..{len(self.probs)}")
        return self.probs[outcome - 1]

    @property
    def total(self) -> float:
        return sum(self.probs)


@dataclass(frozen=True)
class MeasurementRecord:
    outcome: int
    collapsed: State


def _check_tol(tol: float) -> None:
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")


def state_new(column: Matrix, tol: float = DEFAULT_TOL) -> State:
    _check_tol(tol)
    if column.cols != 1:
        raise NotAColumn(f"a state must be n x 1, got {column.rows}x{column.cols}")
    dev = unit_deviation(column)
    if not dev < tol:
        raise NotUnit(f"state is not unit: deviation {dev:.3e} >= tol {tol:g}", dev)
    return State(column)


def basis_state(n: int, i: int) -> State:
    if not isinstance(n, int) or n < 1:
        raise ShapeMismatch(f"dimension must be a positive integer, got {n!r}")
    if not 1 <= i <= n:
        raise IndexOutOfRange(f"basis index {i} outside 1..{n}")
    comps = tuple(ONE if k == i else ZERO for k in range(1, n + 1))
    return State(Matrix._trusted(n, 1, comps))


def evolve(s: State, U: Matrix, tol: float = DEFAULT_TOL) -> State:
    _check_tol(tol)
    n = s.dim
    if U.shape != (n, n):
        raise ShapeMismatch(
            f"evolution must be {n}x{n} for a dimension-{n} state, got {U.rows}x{U.cols}"
        )
    dev = unit_deviation(U)
    if not dev < tol:
        raise NotUnit(f"evolution is not unit: deviation {dev:.3e} >= tol {tol:g}", dev)
    return state_new(mat_mul(U, s.column), tol)


def probabilities(s: State) -> ProbVector:
    probs = []
    for z in s.column.components:
        p = c_norm(z) ** 2
        probs.append(0.0 if p < 0.0 else 1.0 if p > 1.0 else p)
    return ProbVector(tuple(probs))


def _cumulative(pv: ProbVector) -> list[float]:
    total = pv.total
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise NotUnit(f"probabilities sum to {total!r}, not 1", abs(total - 1.0))
    cdf = [c / total for c in accumulate(pv.probs)]
    # pin every boundary from the last possible outcome onwards to exactly 1:
    # draws in [0, 1) then always land, and never on a zero-probability tail
    last = max(k for k, p in enumerate(pv.probs) if p > 0.0)
    for k in range(last, len(cdf)):
        cdf[k] = 1.0
    return cdf


def _pick(cdf: list[float], u: float) -> int:
    # smallest i with cdf[i-1] > u; bisect_right skips zero-probability outcomes
    return bisect_right(cdf, u) + 1


def measure(s: State, rng: RandomSource) -> MeasurementRecord:
    cdf = _cumulative(probabilities(s))
    outcome = _pick(cdf, rng.random())
    return MeasurementRecord(outcome, basis_state(s.dim, outcome))


def sample(s: State, shots: int, seed: int) -> dict[int, int]:
    """Measure ``shots`` fresh copies of ``s`` using ``make_rng(seed)``.

    Returns a histogram keyed by 1-based outcome; outcomes never seen are
    absent.
    """
    if not isinstance(shots, int) or shots < 1:
        raise ValueError(f"shots must be a positive integer, got {shots!r}")
    rng = make_rng(seed)
    return sample_with(s, shots, rng)


def sample_with(s: State, shots: int, rng: RandomSource) -> dict[int, int]:
    cdf = _cumulative(probabilities(s))
    draw = rng.random
    counts = Counter(_pick(cdf, draw()) for _ in range(shots))
    return dict(sorted(counts.items()))
