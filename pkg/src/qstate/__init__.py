"""Quantum state-vector simulation from first principles.

``numerics`` holds complex numbers and matrices, ``postulates`` the state,
evolution and measurement rules, ``deutsch`` the one-query Xor algorithm and
``qcl`` the circuit language behind the ``qstate`` command.
"""

from .deutsch import OracleSpec, classify, hadamard4, oracle_matrix, run_deutsch
from .errors import (
    IndexOutOfRange,
    NotAColumn,
    NotUnit,
    QuantumError,
    ShapeMismatch,
    UnexpectedOutcome,
)
from .numerics import Complex, Matrix, dagger, identity, is_unit, mat_add, mat_mul, transpose
from .postulates import State, basis_state, evolve, measure, probabilities, sample, state_new

__version__ = "0.1.0"

__all__ = [
    "Complex",
    "IndexOutOfRange",
    "Matrix",
    "NotAColumn",
    "NotUnit",
    "OracleSpec",
    "QuantumError",
    "ShapeMismatch",
    "State",
    "UnexpectedOutcome",
    "basis_state",
    "classify",
    "dagger",
    "evolve",
    "hadamard4",
    "identity",
    "is_unit",
    "mat_add",
    "mat_mul",
    "measure",
    "oracle_matrix",
    "probabilities",
    "run_deutsch",
    "sample",
    "state_new",
    "transpose",
]
