"""Complex numbers and complex matrices built from pairs of floats.

Nothing here delegates to :class:`complex`, :mod:`cmath` or an array
library: a complex number is a pair ``(re, im)`` and every operation is
spelled out on the two real parts.  Matrices are immutable, row-major and
addressed with 1-based ``(i, j)`` indices in the public API.
"""

from __future__ import annotations

import math
import os
import re
from collections.abc import Iterable, Sequence
from typing import Union

from .errors import IndexOutOfRange, MatrixFormatError, NonFinite, ShapeMismatch

__all__ = [
    "DEFAULT_TOL",
    "MAX_DIMENSION",
    "Complex",
    "Matrix",
    "c_add",
    "c_mul",
    "c_conj",
    "c_norm",
    "transpose",
    "dagger",
    "mat_add",
    "mat_mul",
    "identity",
    "zeros",
    "unit_deviation",
    "is_unit",
    "max_abs_diff",
    "parse_complex_literals",
    "parse_matrix",
    "format_complex",
    "format_matrix",
    "load_matrix",
]

DEFAULT_TOL = 1e-9

# Soft cap on rows/cols; override with QSTATE_MAX_DIM or by assigning the attribute.
MAX_DIMENSION = int(os.environ.get("QSTATE_MAX_DIM", "4096"))

_isfinite = math.isfinite


class Complex(tuple):
    """An immutable pair of finite floats ``(re, im)``.

    >>> Complex(1, 2) * Complex(3, 4)
    Complex(-5.0, 10.0)
    """

    __slots__ = ()

    def __new__(cls, re: float = 0.0, im: float = 0.0) -> Complex:
        re = float(re)
        im = float(im)
        if not (_isfinite(re) and _isfinite(im)):
            raise NonFinite(f"complex components must be finite, got ({re!r},{im!r})")
        return tuple.__new__(cls, (re, im))

    @property
    def re(self) -> float:
        return self[0]

    @property
    def im(self) -> float:
        return self[1]

    def __repr__(self) -> str:
        return f"Complex({self[0]!r}, {self[1]!r})"

    def __str__(self) -> str:
        return format_complex(self)

    # Operator sugar over the named functions; tuple concatenation is not wanted.
    def __add__(self, other):  # type: ignore[override]
        if not isinstance(other, Complex):
            return NotImplemented
        return c_add(self, other)

    def __mul__(self, other):  # type: ignore[override]
        if not isinstance(other, Complex):
            return NotImplemented
        return c_mul(self, other)

    __rmul__ = None  # type: ignore[assignment]

    def conj(self) -> Complex:
        return c_conj(self)

    def __abs__(self) -> float:
        return c_norm(self)


ZERO = Complex(0.0, 0.0)
ONE = Complex(1.0, 0.0)

Scalar = Union[Complex, tuple, int, float]


def as_complex(value: Scalar) -> Complex:
    """Coerce ``Complex``, an ``(a, b)`` pair, or a real number to :class:`Complex`."""
    if isinstance(value, Complex):
        return value
    if isinstance(value, tuple):
        if len(value) != 2:
            raise TypeError(f"a complex pair needs two components, got {len(value)}")
        return Complex(value[0], value[1])
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return Complex(value, 0.0)
    raise TypeError(f"cannot interpret {value!r} as a complex number")


def c_add(z1: Complex, z2: Complex) -> Complex:
    a1, b1 = z1
    a2, b2 = z2
    return Complex(a1 + a2, b1 + b2)


def c_mul(z1: Complex, z2: Complex) -> Complex:
    a1, b1 = z1
    a2, b2 = z2
    return Complex(a1 * a2 - b1 * b2, a1 * b2 + a2 * b1)


def c_conj(z: Complex) -> Complex:
    return Complex(z[0], -z[1])


def c_norm(z: Complex) -> float:
    """``sqrt(a^2 + b^2)``, evaluated without intermediate under/overflow."""
    return math.hypot(z[0], z[1])


def _check_dim(n: int, what: str) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ShapeMismatch(f"{what} must be a positive integer, got {n!r}")
    if n > MAX_DIMENSION:
        raise ShapeMismatch(f"{what}={n} exceeds the dimension limit {MAX_DIMENSION}")


class Matrix:
    """An immutable ``rows x cols`` table of :class:`Complex`.

    Components are stored row-major in ``components``; use :meth:`at` with
    1-based indices to read one.
    """

    __slots__ = ("rows", "cols", "components", "_unit_dev")

    def __init__(self, rows: int, cols: int, components: Iterable[Scalar]) -> None:
        _check_dim(rows, "rows")
        _check_dim(cols, "cols")
        comps = tuple(as_complex(z) for z in components)
        if len(comps) != rows * cols:
            raise ShapeMismatch(
                f"a {rows}x{cols} matrix needs {rows * cols} components, got {len(comps)}"
            )
        _set = object.__setattr__
        _set(self, "rows", rows)
        _set(self, "cols", cols)
        _set(self, "components", comps)
        _set(self, "_unit_dev", None)

    @classmethod
    def _trusted(cls, rows: int, cols: int, comps: tuple) -> Matrix:
        # Internal constructor for tuples of Complex already known to fit the shape.
        m = object.__new__(cls)
        _set = object.__setattr__
        _set(m, "rows", rows)
        _set(m, "cols", cols)
        _set(m, "components", comps)
        _set(m, "_unit_dev", None)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> Matrix:
        rows = [list(r) for r in rows]
        if not rows:
            raise ShapeMismatch("a matrix needs at least one row")
        width = len(rows[0])
        for k, r in enumerate(rows, start=1):
            if len(r) != width:
                raise ShapeMismatch(f"row {k} has {len(r)} entries, expected {width}")
        return cls(len(rows), width, [z for r in rows for z in r])

    @classmethod
    def column(cls, entries: Sequence[Scalar]) -> Matrix:
        entries = list(entries)
        return cls(len(entries), 1, entries)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def at(self, i: int, j: int) -> Complex:
        """Component in row ``i``, column ``j`` (both 1-based)."""
        if not (1 <= i <= self.rows and 1 <= j <= self.cols):
            raise IndexOutOfRange(
                f"component ({i},{j}) outside a {self.rows}x{self.cols} matrix"
            )
        return self.components[(i - 1) * self.cols + (j - 1)]

    def row_lists(self) -> list[list[Complex]]:
        c = self.cols
        return [list(self.components[r * c : (r + 1) * c]) for r in range(self.rows)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.components))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}, {self.cols}, {list(self.components)!r})"

    def __str__(self) -> str:
        return format_matrix(self, header=False).rstrip("\n")

    def __add__(self, other: Matrix) -> Matrix:
        return mat_add(self, other)

    def __matmul__(self, other: Matrix) -> Matrix:
        return mat_mul(self, other)

    @property
    def T(self) -> Matrix:
        return transpose(self)

    @property
    def H(self) -> Matrix:
        return dagger(self)


def transpose(A: Matrix) -> Matrix:
    m, n = A.rows, A.cols
    src = A.components
    return Matrix._trusted(n, m, tuple(src[j * n + i] for i in range(n) for j in range(m)))


def dagger(A: Matrix) -> Matrix:
    m, n = A.rows, A.cols
    src = A.components
    return Matrix._trusted(
        n, m, tuple(c_conj(src[j * n + i]) for i in range(n) for j in range(m))
    )


def mat_add(A: Matrix, B: Matrix) -> Matrix:
    if A.shape != B.shape:
        raise ShapeMismatch(f"cannot add {A.rows}x{A.cols} and {B.rows}x{B.cols}")
    return Matrix._trusted(
        A.rows, A.cols, tuple(c_add(x, y) for x, y in zip(A.components, B.components))
    )


def mat_mul(A: Matrix, B: Matrix) -> Matrix:
    """Product ``AB``; each component is summed over ``k = 1..n`` in order.

    The arithmetic is :func:`c_mul` then :func:`c_add` on the float pairs,
    inlined so the kernel stays affordable in pure Python.  Results are
    bit-identical to calling the named functions.
    """
    m, n = A.rows, A.cols
    if n != B.rows:
        raise ShapeMismatch(
            f"cannot multiply {m}x{n} by {B.rows}x{B.cols}: inner dimensions differ"
        )
    r = B.cols
    a = A.components
    b = B.components
    out = []
    append = out.append
    for i in range(m):
        arow = a[i * n : (i + 1) * n]
        for q in range(r):
            sre = 0.0
            sim = 0.0
            k = q
            for a1, b1 in arow:
                a2, b2 = b[k]
                sre = sre + (a1 * a2 - b1 * b2)
                sim = sim + (a1 * b2 + a2 * b1)
                k += r
            if not (_isfinite(sre) and _isfinite(sim)):
                raise NonFinite("matrix product overflowed")
            append(tuple.__new__(Complex, (sre, sim)))
    return Matrix._trusted(m, r, tuple(out))


def identity(n: int) -> Matrix:
    _check_dim(n, "n")
    return Matrix._trusted(
        n, n, tuple(ONE if i == j else ZERO for i in range(n) for j in range(n))
    )


def zeros(rows: int, cols: int) -> Matrix:
    return Matrix(rows, cols, [ZERO] * (rows * cols))


def max_abs_diff(A: Matrix, B: Matrix) -> float:
    """Largest ``|re|`` or ``|im|`` difference between same-shaped matrices."""
    if A.shape != B.shape:
        raise ShapeMismatch(f"cannot compare {A.rows}x{A.cols} with {B.rows}x{B.cols}")
    worst = 0.0
    for (a1, b1), (a2, b2) in zip(A.components, B.components):
        d = max(abs(a1 - a2), abs(b1 - b2))
        if d > worst:
            worst = d
    return worst


def unit_deviation(M: Matrix) -> float:
    """How far ``dagger(M) @ M`` is from ``identity(M.cols)``, per component.

    Cached on the matrix; matrices are immutable so the value never changes.
    """
    dev = M._unit_dev
    if dev is None:
        if M.cols == 1:
            # the single entry of dagger(M) @ M, same float operations in the same order
            sre = 0.0
            sim = 0.0
            for a, b in M.components:
                sre = sre + (a * a - (-b) * b)
                sim = sim + (a * b + a * (-b))
            dev = max(abs(sre - 1.0), abs(sim))
        else:
            dev = max_abs_diff(mat_mul(dagger(M), M), identity(M.cols))
        object.__setattr__(M, "_unit_dev", dev)
    return dev


def is_unit(M: Matrix, tol: float = DEFAULT_TOL) -> bool:
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    return unit_deviation(M) < tol


# ---------------------------------------------------------------------------
# text format

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_LITERAL = re.compile(rf"\(\s*({_NUM})\s*,\s*({_NUM})\s*\)")


def strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def parse_complex_literals(
    text: str, line: int = 1, offset: int = 0
) -> list[tuple[Complex, int]]:
    """Scan whitespace-separated ``(a,b)`` literals.

    Returns ``(value, column)`` pairs with 1-based columns; ``offset`` is
    added to every column so callers can scan a slice of a longer line.
    Anything other than whitespace between literals is a
    :class:`MatrixFormatError`.
    """
    found = []
    pos = 0
    size = len(text)
    while pos < size:
        if text[pos].isspace():
            pos += 1
            continue
        m = _LITERAL.match(text, pos)
        if m is None:
            bad = text[pos:].split(None, 1)[0]
            raise MatrixFormatError(
                f"expected a complex literal (a,b), found {bad!r}", line, offset + pos + 1
            )
        try:
            value = Complex(float(m.group(1)), float(m.group(2)))
        except NonFinite as exc:
            raise MatrixFormatError(str(exc), line, offset + pos + 1) from None
        found.append((value, offset + pos + 1))
        pos = m.end()
        if pos < size and not text[pos].isspace():
            raise MatrixFormatError(
                "complex literals must be separated by whitespace", line, offset + pos + 1
            )
    return found


def parse_matrix(text: str) -> Matrix:
    """Read the ``m n`` header plus ``m`` rows of ``n`` literals."""
    header = None
    rows: list[list[Complex]] = []
    last_line = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        last_line = line_no
        body = strip_comment(raw)
        if not body.strip():
            continue
        if header is None:
            parts = body.split()
            if len(parts) != 2 or not all(p.isdigit() for p in parts):
                raise MatrixFormatError(
                    "header must be two positive integers 'm n'", line_no, 1
                )
            m, n = int(parts[0]), int(parts[1])
            if m < 1 or n < 1:
                raise MatrixFormatError("matrix dimensions must be at least 1", line_no, 1)
            if m > MAX_DIMENSION or n > MAX_DIMENSION:
                raise MatrixFormatError(
                    f"matrix dimensions exceed the limit {MAX_DIMENSION}", line_no, 1
                )
            header = (m, n)
            continue
        m, n = header
        if len(rows) == m:
            raise MatrixFormatError(f"more than the declared {m} rows", line_no, 1)
        entries = parse_complex_literals(body, line_no)
        if len(entries) != n:
            raise MatrixFormatError(
                f"row {len(rows) + 1} has {len(entries)} entries, expected {n}", line_no, 1
            )
        rows.append([z for z, _ in entries])
    if header is None:
        raise MatrixFormatError("missing 'm n' header", max(last_line, 1), 1)
    if len(rows) != header[0]:
        raise MatrixFormatError(
            f"expected {header[0]} rows, found {len(rows)}", max(last_line, 1), 1
        )
    return Matrix.from_rows(rows)


def format_complex(z: Complex) -> str:
    return f"({z[0]!r},{z[1]!r})"


def format_matrix(M: Matrix, header: bool = True) -> str:
    lines = [f"{M.rows} {M.cols}"] if header else []
    for row in M.row_lists():
        lines.append(" ".join(format_complex(z) for z in row))
    return "\n".join(lines) + "\n"


def load_matrix(path: str | os.PathLike) -> Matrix:
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())
