"""Circuit description language: parse, check and execute circuit files."""

from .parser import parse, parse_file
from .program import (
    Apply,
    BasisInit,
    ColumnInit,
    Diagnostic,
    GateDecl,
    Kind,
    Measure,
    Program,
    ProgramError,
    Span,
    format_program,
)
from .runner import Report, TraceEntry, check, execute

__all__ = [
    "Apply",
    "BasisInit",
    "ColumnInit",
    "Diagnostic",
    "GateDecl",
    "Kind",
    "Measure",
    "Program",
    "ProgramError",
    "Report",
    "Span",
    "TraceEntry",
    "check",
    "execute",
    "format_program",
    "parse",
    "parse_file",
]
