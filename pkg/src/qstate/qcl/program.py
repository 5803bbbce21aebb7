"""Program representation and canonical pretty-printing.

Source spans are carried for diagnostics but excluded from equality, so a
program printed with :func:`format_program` and parsed again compares equal
to the original.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

from ..deutsch import OracleSpec, hadamard4, oracle_matrix
from ..numerics import Matrix, format_complex, identity

BUILTIN_NAMES = ("H", "I", "U")

_ORACLE_RE = re.compile(r"U\(\s*([01])\s*,\s*([01])\s*\)\Z")
_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class Kind(str, Enum):
    PARSE_ERROR = "ParseError"
    DIM_MISMATCH = "DimMismatch"
    UNKNOWN_GATE = "UnknownGate"
    MISPLACED_DIRECTIVE = "MisplacedDirective"
    NOT_UNIT = "NotUnit"
    SHAPE_MISMATCH = "ShapeMismatch"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Span:
    line: int  # 1-based
    column: int  # 1-based
    end_column: Optional[int] = None

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


@dataclass(frozen=True)
class Diagnostic:
    kind: Kind
    message: str
    span: Span

    def __str__(self) -> str:
        return f"{self.span}: {self.kind}: {self.message}"

    def render(self, source: Optional[str] = None) -> str:
        prefix = f"{source}:" if source else ""
        return f"{prefix}{self}"

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "message": self.message,
            "line": self.span.line,
            "column": self.span.column,
        }


class ProgramError(Exception):
    """Raised by the parser when the text has one or more diagnostics."""

    def __init__(self, diagnostics: list[Diagnostic]) -> None:
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(str(first) if first else "invalid program")

    @property
    def line(self) -> int:
        return self.diagnostics[0].span.line

    @property
    def column(self) -> int:
        return self.diagnostics[0].span.column


_NOSPAN = Span(0, 0)


@dataclass(frozen=True)
class BasisInit:
    index: int
    span: Span = field(default=_NOSPAN, compare=False)

    def to_text(self) -> str:
        return f"state basis {self.index}"


@dataclass(frozen=True)
class ColumnInit:
    column: Matrix
    span: Span = field(default=_NOSPAN, compare=False)

    def to_text(self) -> str:
        body = " ".join(format_complex(z) for z in self.column.components)
        return f"state [ {body} ]"


@dataclass(frozen=True)
class GateDecl:
    name: str
    path: str
    matrix: Optional[Matrix]
    span: Span = field(default=_NOSPAN, compare=False)

    def to_text(self) -> str:
        return f"gate {self.name} file {self.path}"


@dataclass(frozen=True)
class Apply:
    gate: str
    span: Span = field(default=_NOSPAN, compare=False)

    def to_text(self) -> str:
        return f"apply {self.gate}"


@dataclass(frozen=True)
class Measure:
    shots: Optional[int] = None
    span: Span = field(default=_NOSPAN, compare=False)

    def to_text(self) -> str:
        return "measure" if self.shots is None else f"measure shots={self.shots}"


Step = Union[Apply, Measure]


@dataclass(frozen=True)
class Program:
    dim: int
    initial: Union[BasisInit, ColumnInit]
    gates: tuple[GateDecl, ...] = ()
    steps: tuple[Step, ...] = ()
    source: Optional[str] = field(default=None, compare=False)

    @property
    def measure(self) -> Optional[Measure]:
        if self.steps and isinstance(self.steps[-1], Measure):
            return self.steps[-1]
        return None

    @property
    def applies(self) -> list[Apply]:
        return [s for s in self.steps if isinstance(s, Apply)]

    def gate_table(self) -> dict[str, GateDecl]:
        return {g.name: g for g in self.gates}

    def uses_oracle(self) -> bool:
        return any(parse_oracle_name(a.gate) is not None for a in self.applies)

    def resolve(self, name: str) -> Optional[Matrix]:
        """Matrix for a gate name, or ``None`` when it cannot be resolved."""
        if name == "H":
            return hadamard4()
        if name == "I":
            return identity(self.dim)
        spec = parse_oracle_name(name)
        if spec is not None:
            return oracle_matrix(spec)
        decl = self.gate_table().get(name)
        return decl.matrix if decl is not None else None


def parse_oracle_name(name: str) -> Optional[OracleSpec]:
    m = _ORACLE_RE.match(name)
    if m is None:
        return None
    return OracleSpec(int(m.group(1)), int(m.group(2)))


def canonical_gate_name(name: str) -> str:
    spec = parse_oracle_name(name)
    return f"U({spec.f_false},{spec.f_true})" if spec is not None else name


def is_identifier(name: str) -> bool:
    return _NAME_RE.match(name) is not None


def format_program(p: Program) -> str:
    lines = [f"dim {p.dim}", p.initial.to_text()]
    lines += [g.to_text() for g in p.gates]
    lines += [s.to_text() for s in p.steps]
    return "\n".join(lines) + "\n"
