"""The one-query algorithm for ``Xor(F(False), F(True))``.

The two-value system is written by hand as a 4-dimensional state with basis
order ``False,False`` / ``False,True`` / ``True,False`` / ``True,True``
(indices 1 to 4).  The black box ``F`` is described by two indicator bits,
each 1 exactly when ``F`` returns ``True`` on that input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UnexpectedOutcome
from .numerics import DEFAULT_TOL, Complex, Matrix
from .postulates import (
    RandomSource,
    State,
    basis_state,
    evolve,
    measure,
    probabilities,
)

__all__ = [
    "BASIS_NAMES",
    "ALL_ORACLES",
    "OracleSpec",
    "DeutschReport",
    "oracle_matrix",
    "hadamard4",
    "run_deutsch",
    "classify",
    "classical_oracle_xor",
]

BASIS_NAMES = ("False,False", "False,True", "True,False", "True,True")


@dataclass(frozen=True)
class OracleSpec:
    f_false: int
    f_true: int

    def __post_init__(self) -> None:
        for name in ("f_false", "f_true"):
            bit = getattr(self, name)
            if isinstance(bit, bool) or bit not in (0, 1):
                raise ValueError(f"{name} must be 0 or 1, got {bit!r}")

    @classmethod
    def parse(cls, text: str) -> OracleSpec:
        """Read ``"FF,FT"`` such as ``"0,1"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 2 or any(p not in ("0", "1") for p in parts):
            raise ValueError(f"oracle must look like '0,1', got {text!r}")
        return cls(int(parts[0]), int(parts[1]))

    def __str__(self) -> str:
        return f"{self.f_false},{self.f_true}"


ALL_ORACLES = tuple(OracleSpec(a, b) for a in (0, 1) for b in (0, 1))


@dataclass(frozen=True)
class DeutschReport:
    oracle: OracleSpec
    intermediate_states: tuple[tuple[str, State], ...]
    outcome: int
    xor_value: bool
    outcome_probability: float

    @property
    def outcome_name(self) -> str:
        return BASIS_NAMES[self.outcome - 1]

    def state(self, name: str) -> State:
        for label, s in self.intermediate_states:
            if label == name:
                return s
        raise KeyError(name)


# Matrices are immutable, so the four oracles (and their cached unit checks) are shared.
_ORACLE_CACHE: dict[OracleSpec, Matrix] = {}


def oracle_matrix(spec: OracleSpec) -> Matrix:
    """The block-diagonal 4x4 evolution encoding ``F``.

    Each 2x2 block is the identity when its bit is 0 and the swap when it is
    1, so ``x, y`` goes to ``x, y xor F(x)``.
    """
    cached = _ORACLE_CACHE.get(spec)
    if cached is not None:
        return cached
    a, b = spec.f_false, spec.f_true
    z = (0, 0)
    U = Matrix.from_rows(
        [
            [(1 - a, 0), (a, 0), z, z],
            [(a, 0), (1 - a, 0), z, z],
            [z, z, (1 - b, 0), (b, 0)],
            [z, z, (b, 0), (1 - b, 0)],
        ]
    )
    _ORACLE_CACHE[spec] = U
    return U


_HALF = Complex(0.5, 0.0)
_MHALF = Complex(-0.5, 0.0)
_H4 = Matrix.from_rows(
    [
        [_HALF, _HALF, _HALF, _HALF],
        [_HALF, _MHALF, _HALF, _MHALF],
        [_HALF, _HALF, _MHALF, _MHALF],
        [_HALF, _MHALF, _MHALF, _HALF],
    ]
)


def hadamard4() -> Matrix:
    return _H4


def classify(outcome: int) -> bool:
    if outcome == 2:
        return False
    if outcome == 4:
        return True
    raise UnexpectedOutcome(
        f"outcome {outcome} has probability zero for this algorithm; the run is corrupt"
    )


def classical_oracle_xor(spec: OracleSpec) -> bool:
    return spec.f_false != spec.f_true


def run_deutsch(spec: OracleSpec, rng: RandomSource, tol: float = DEFAULT_TOL) -> DeutschReport:
    """Prepare ``False,True``; apply H, the oracle once, H; measure."""
    H = hadamard4()
    U = oracle_matrix(spec)
    v = basis_state(4, 2)
    hv = evolve(v, H, tol)
    uhv = evolve(hv, U, tol)
    huhv = evolve(uhv, H, tol)
    record = measure(huhv, rng)
    return DeutschReport(
        oracle=spec,
        intermediate_states=(("V", v), ("HV", hv), ("UHV", uhv), ("HUHV", huhv)),
        outcome=record.outcome,
        xor_value=classify(record.outcome),
        outcome_probability=probabilities(huhv).p(record.outcome),
    )
