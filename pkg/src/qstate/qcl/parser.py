"""Line-oriented parser for circuit files.

Grammar, one directive per line, ``#`` to end of line is a comment::

    dim <n>
    state basis <i>          |  state [ (a,b) (a,b) ... ]
    gate <name> file <path>
    apply <name>             # H, I, U(f_false,f_true) or a declared gate
    measure [shots=<k>]

``dim`` comes first and ``state`` second.  Gates must be declared before
they are applied and ``measure``, if present, is the last directive.
"""

from __future__ import annotations

import os
import re
from pathlib import Path
from typing import Optional, Union

from .. import numerics
from ..errors import MatrixFormatError, QuantumError
from ..numerics import Matrix, load_matrix, parse_complex_literals, strip_comment
from .program import (
    BUILTIN_NAMES,
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
    canonical_gate_name,
    is_identifier,
    parse_oracle_name,
)

__all__ = ["parse", "parse_file"]

_TOKEN = re.compile(r"\S+")
_INT = re.compile(r"[0-9]+\Z")


class _Parser:
    def __init__(self, text: str, base_dir: Optional[Path], source: Optional[str]):
        self.text = text
        self.base_dir = base_dir
        self.source = source
        self.diags: list[Diagnostic] = []
        self.dim: Optional[int] = None
        self.dim_seen = False
        self.initial: Union[BasisInit, ColumnInit, None] = None
        self.state_seen = False
        self.gates: list[GateDecl] = []
        self.steps: list = []
        self.measure_line: Optional[int] = None

    def error(self, kind: Kind, message: str, line: int, column: int, end: Optional[int] = None):
        self.diags.append(Diagnostic(kind, message, Span(line, column, end)))

    def run(self) -> Program:
        last_line = 0
        for line_no, raw in enumerate(self.text.splitlines(), start=1):
            last_line = line_no
            body = strip_comment(raw)
            tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(body)]
            if not tokens:
                continue
            self.directive(line_no, body, tokens)
        end = max(last_line, 1)
        if not self.dim_seen:
            self.error(Kind.PARSE_ERROR, "missing 'dim' directive", end, 1)
        elif not self.state_seen:
            self.error(Kind.PARSE_ERROR, "missing 'state' directive", end, 1)
        if self.diags:
            raise ProgramError(self.diags)
        return Program(
            dim=self.dim,
            initial=self.initial,
            gates=tuple(self.gates),
            steps=tuple(self.steps),
            source=self.source,
        )

    def directive(self, line: int, body: str, tokens: list[tuple[str, int]]) -> None:
        word, col = tokens[0]
        handler = getattr(self, f"do_{word}", None)
        if handler is None:
            self.error(Kind.PARSE_ERROR, f"unknown directive {word!r}", line, col, col + len(word))
            return
        if self.measure_line is not None:
            self.error(
                Kind.MISPLACED_DIRECTIVE,
                f"'{word}' after 'measure' (line {self.measure_line}); measure must be last",
                line,
                col,
            )
            return
        if word != "dim" and not self.dim_seen:
            self.error(Kind.MISPLACED_DIRECTIVE, f"'{word}' before 'dim'; dim must come first", line, col)
            return
        if word not in ("dim", "state") and not self.state_seen:
            self.error(
                Kind.MISPLACED_DIRECTIVE,
                f"'{word}' before 'state'; state must come second",
                line,
                col,
            )
            return
        handler(line, body, tokens)

    def do_dim(self, line, body, tokens):
        col = tokens[0][1]
        if self.dim_seen:
            self.error(Kind.MISPLACED_DIRECTIVE, "duplicate 'dim' directive", line, col)
            return
        self.dim_seen = True
        if len(tokens) != 2:
            self.error(Kind.PARSE_ERROR, "expected 'dim <n>'", line, col)
            return
        arg, acol = tokens[1]
        if not _INT.match(arg) or int(arg) < 1:
            self.error(Kind.PARSE_ERROR, f"dim must be an integer >= 1, got {arg!r}", line, acol)
            return
        n = int(arg)
        if n > numerics.MAX_DIMENSION:
            self.error(Kind.PARSE_ERROR, f"dim {n} exceeds the limit {numerics.MAX_DIMENSION}", line, acol)
            return
        self.dim = n

    def do_state(self, line, body, tokens):
        col = tokens[0][1]
        if self.state_seen:
            self.error(Kind.MISPLACED_DIRECTIVE, "duplicate 'state' directive", line, col)
            return
        self.state_seen = True
        if len(tokens) < 2:
            self.error(Kind.PARSE_ERROR, "expected 'state basis <i>' or 'state [ ... ]'", line, col)
            return
        arg, acol = tokens[1]
        if arg == "basis":
            if len(tokens) != 3:
                self.error(Kind.PARSE_ERROR, "expected 'state basis <i>'", line, acol)
                return
            idx, icol = tokens[2]
            if not _INT.match(idx):
                self.error(Kind.PARSE_ERROR, f"basis index must be an integer, got {idx!r}", line, icol)
                return
            i = int(idx)
            if self.dim is not None and not 1 <= i <= self.dim:
                self.error(Kind.DIM_MISMATCH, f"basis index {i} outside 1..{self.dim}", line, icol)
                return
            self.initial = BasisInit(i, Span(line, col))
            return
        if not arg.startswith("["):
            self.error(Kind.PARSE_ERROR, f"expected 'basis' or '[', found {arg!r}", line, acol)
            return
        start = acol  # 1-based column of '['
        close = body.find("]", start)
        if close < 0:
            self.error(Kind.PARSE_ERROR, "unterminated column: missing ']'", line, start)
            return
        trailing = body[close + 1 :].strip()
        if trailing:
            self.error(
                Kind.PARSE_ERROR,
                f"unexpected text after ']': {trailing.split()[0]!r}",
                line,
                body.index(trailing, close + 1) + 1,
            )
            return
        try:
            entries = parse_complex_literals(body[start:close], line, offset=start)
        except MatrixFormatError as exc:
            self.error(Kind.PARSE_ERROR, exc.reason, line, exc.column)
            return
        if not entries:
            self.error(Kind.PARSE_ERROR, "empty state column", line, start)
            return
        if self.dim is not None and len(entries) != self.dim:
            self.error(
                Kind.DIM_MISMATCH,
                f"state has {len(entries)} components but dim is {self.dim}",
                line,
                start,
            )
            return
        self.initial = ColumnInit(Matrix.column([z for z, _ in entries]), Span(line, col))

    def do_gate(self, line, body, tokens):
        col = tokens[0][1]
        if len(tokens) < 4 or tokens[2][0] != "file":
            self.error(Kind.PARSE_ERROR, "expected 'gate <name> file <path>'", line, col)
            return
        name, ncol = tokens[1]
        if not is_identifier(name):
            self.error(Kind.PARSE_ERROR, f"invalid gate name {name!r}", line, ncol)
            return
        if name in BUILTIN_NAMES:
            self.error(Kind.PARSE_ERROR, f"gate name {name!r} is reserved for a built-in", line, ncol)
            return
        if any(g.name == name for g in self.gates):
            self.error(Kind.PARSE_ERROR, f"gate {name!r} declared twice", line, ncol)
            return
        pcol = tokens[3][1]
        path = body[pcol - 1 :].strip()
        matrix = self.load(path, line, pcol)
        if matrix is None:
            return
        self.gates.append(GateDecl(name, path, matrix, Span(line, col)))

    def load(self, path: str, line: int, col: int) -> Optional[Matrix]:
        target = Path(path)
        if not target.is_absolute() and self.base_dir is not None:
            target = self.base_dir / target
        try:
            return load_matrix(target)
        except OSError as exc:
            self.error(Kind.PARSE_ERROR, f"cannot read matrix file {path!r}: {exc.strerror}", line, col)
        except MatrixFormatError as exc:
            self.error(
                Kind.PARSE_ERROR,
                f"matrix file {path!r}, line {exc.line} col {exc.column}: {exc.reason}",
                line,
                col,
            )
        except QuantumError as exc:
            self.error(Kind.PARSE_ERROR, f"matrix file {path!r}: {exc}", line, col)
        return None

    def do_apply(self, line, body, tokens):
        col = tokens[0][1]
        if len(tokens) < 2:
            self.error(Kind.PARSE_ERROR, "expected 'apply <gate>'", line, col)
            return
        gcol = tokens[1][1]
        raw = body[gcol - 1 :].strip()
        spec = parse_oracle_name(raw)
        if spec is not None or raw == "H":
            if self.dim is not None and self.dim != 4:
                self.error(
                    Kind.DIM_MISMATCH,
                    f"built-in gate {raw} is 4x4 but dim is {self.dim}",
                    line,
                    gcol,
                )
                return
        elif raw.startswith("U("):
            self.error(Kind.PARSE_ERROR, f"oracle gate must be U(<0|1>,<0|1>), got {raw!r}", line, gcol)
            return
        elif raw != "I":
            if not is_identifier(raw):
                self.error(Kind.PARSE_ERROR, f"invalid gate name {raw!r}", line, gcol)
                return
            if not any(g.name == raw for g in self.gates):
                self.error(Kind.UNKNOWN_GATE, f"gate {raw!r} is not built-in or declared", line, gcol)
                return
        self.steps.append(Apply(canonical_gate_name(raw), Span(line, col)))

    def do_measure(self, line, body, tokens):
        col = tokens[0][1]
        shots = None
        if len(tokens) > 2:
            self.error(Kind.PARSE_ERROR, "expected 'measure [shots=<k>]'", line, tokens[2][1])
            return
        if len(tokens) == 2:
            arg, acol = tokens[1]
            key, eq, value = arg.partition("=")
            if key != "shots" or not eq:
                self.error(Kind.PARSE_ERROR, f"expected 'shots=<k>', got {arg!r}", line, acol)
                return
            if not _INT.match(value) or int(value) < 1:
                self.error(Kind.PARSE_ERROR, f"shots must be an integer >= 1, got {value!r}", line, acol)
                return
            shots = int(value)
        self.measure_line = line
        self.steps.append(Measure(shots, Span(line, col)))


def parse(
    text: str,
    base_dir: Union[str, os.PathLike, None] = None,
    source: Optional[str] = None,
) -> Program:
    """Parse circuit text into a :class:`Program`.

    Gate matrix files are read relative to ``base_dir`` (the current
    directory when omitted).  Raises :class:`ProgramError` carrying every
    diagnostic found.
    """
    return _Parser(text, Path(base_dir) if base_dir is not None else None, source).run()


def parse_file(path: Union[str, os.PathLike]) -> Program:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    return parse(text, base_dir=path.parent, source=str(path))
