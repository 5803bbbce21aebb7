import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qstate.errors import IndexOutOfRange, MatrixFormatError, NonFinite, ShapeMismatch
from qstate.numerics import (
    Complex,
    Matrix,
    c_add,
    c_conj,
    c_mul,
    c_norm,
    dagger,
    format_matrix,
    identity,
    is_unit,
    mat_add,
    mat_mul,
    max_abs_diff,
    parse_matrix,
    transpose,
    unit_deviation,
    zeros,
)

from _helpers import py_dagger, py_matmul, py_max_diff, rand_matrix, rand_unit_column, to_py

finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)
complexes = st.builds(Complex, finite, finite)


# --- complex numbers --------------------------------------------------------

@pytest.mark.parametrize("z", [Complex(2.5, -1), Complex(0, 7), Complex(-3, 0)])
def test_additive_identity(z):
    assert c_add(Complex(0, 0), z) == z


def test_add_by_hand():
    assert c_add(Complex(1, 2), Complex(3, -4)) == Complex(4, -2)


def test_mul_by_hand():
    assert c_mul(Complex(1, 2), Complex(3, 4)) == Complex(-5, 10)


@pytest.mark.parametrize("z", [Complex(2.5, -1), Complex(0, 7), Complex(-3, 0)])
def test_mul_by_one_and_zero(z):
    assert c_mul(Complex(1, 0), z) == z
    assert c_mul(Complex(0, 0), z) == Complex(0, 0)


def test_conj():
    assert c_conj(Complex(3, 4)) == Complex(3, -4)
    assert c_conj(Complex(-2, 0)) == Complex(-2, 0)


def test_norm():
    assert c_norm(Complex(1, 0)) == 1.0
    assert c_norm(Complex(3, 4)) == 5.0
    r = c_norm(Complex(1 / math.sqrt(2), 0))
    assert r == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert r * r == pytest.approx(0.5, abs=1e-15)


def test_operators_match_functions():
    z1, z2 = Complex(1, 2), Complex(3, 4)
    assert z1 + z2 == c_add(z1, z2)
    assert z1 * z2 == c_mul(z1, z2)
    assert z1.conj() == c_conj(z1)
    assert abs(Complex(3, 4)) == 5.0
    assert (z1.re, z1.im) == (1.0, 2.0)


def test_complex_rejects_non_finite():
    with pytest.raises(NonFinite):
        Complex(float("nan"), 0)
    with pytest.raises(NonFinite):
        Complex(0, float("inf"))
    with pytest.raises(NonFinite):
        c_mul(Complex(1e200, 0), Complex(1e200, 0))


@settings(max_examples=300)
@given(complexes, complexes)
def test_mul_commutes_bit_exact(z1, z2):
    assert c_mul(z1, z2) == c_mul(z2, z1)


@given(complexes, complexes)
def test_conj_distributes(z1, z2):
    lhs = c_conj(c_add(z1, z2))
    rhs = c_add(c_conj(z1), c_conj(z2))
    assert max(abs(lhs.re - rhs.re), abs(lhs.im - rhs.im)) <= 1e-12
    lhs = c_conj(c_mul(z1, z2))
    rhs = c_mul(c_conj(z1), c_conj(z2))
    assert max(abs(lhs.re - rhs.re), abs(lhs.im - rhs.im)) <= 1e-12


@given(complexes)
def test_conj_involution(z):
    assert c_conj(c_conj(z)) == z


@given(complexes, complexes)
def test_norm_multiplicative(z1, z2):
    lhs = c_norm(c_mul(z1, z2))
    rhs = c_norm(z1) * c_norm(z2)
    assert lhs == pytest.approx(rhs, rel=1e-9, abs=1e-300)


def test_complex_properties_on_1000_random_pairs():
    rng = random.Random(20261014)
    for _ in range(1000):
        z1 = Complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
        z2 = Complex(rng.uniform(-10, 10), rng.uniform(-10, 10))
        assert c_mul(z1, z2) == c_mul(z2, z1)
        ref = complex(*z1) * complex(*z2)
        got = c_mul(z1, z2)
        assert abs(got.re - ref.real) <= 1e-12 and abs(got.im - ref.imag) <= 1e-12


# --- matrices ---------------------------------------------------------------

def test_component_access_is_one_based():
    M = Matrix.from_rows([[(1, 0), (2, 0)], [(3, 0), (4, 0)]])
    assert M.at(1, 1) == Complex(1, 0)
    assert M.at(2, 1) == Complex(3, 0)
    for bad in [(0, 1), (1, 0), (3, 1), (1, 3)]:
        with pytest.raises(IndexOutOfRange):
            M.at(*bad)


def test_matrix_shape_validation():
    with pytest.raises(ShapeMismatch):
        Matrix(2, 2, [(0, 0)] * 3)
    with pytest.raises(ShapeMismatch):
        Matrix(0, 1, [])
    with pytest.raises(ShapeMismatch):
        Matrix.from_rows([[(1, 0)], [(1, 0), (2, 0)]])


def test_matrix_dimension_limit(monkeypatch):
    import qstate.numerics as num

    monkeypatch.setattr(num, "MAX_DIMENSION", 3)
    with pytest.raises(ShapeMismatch):
        num.zeros(4, 1)


def test_matrix_is_immutable():
    M = identity(2)
    with pytest.raises(AttributeError):
        M.rows = 3


def test_transpose_row_to_column():
    row = Matrix.from_rows([[(1, 1), (2, -1)]])
    col = transpose(row)
    assert col.shape == (2, 1)
    assert col.at(1, 1) == Complex(1, 1) and col.at(2, 1) == Complex(2, -1)


def test_transpose_and_dagger_involutions():
    A = rand_matrix(random.Random(1), 3, 5)
    assert transpose(transpose(A)) == A
    assert dagger(dagger(A)) == A
    assert transpose(identity(4)) == identity(4)
    assert dagger(identity(4)) == identity(4)


def test_dagger_examples():
    real = Matrix.from_rows([[(1, 0), (2, 0), (3, 0)], [(4, 0), (5, 0), (6, 0)]])
    assert dagger(real) == transpose(real)
    assert dagger(Matrix(1, 1, [(0, 1)])) == Matrix(1, 1, [(0, -1)])


def test_dagger_components():
    A = rand_matrix(random.Random(2), 2, 3)
    D = dagger(A)
    assert D.shape == (3, 2)
    for i in range(1, 4):
        for j in range(1, 3):
            assert D.at(i, j) == c_conj(A.at(j, i))


def test_mat_add():
    A = rand_matrix(random.Random(3), 2, 2)
    B = rand_matrix(random.Random(4), 2, 2)
    assert mat_add(A, zeros(2, 2)) == A
    S = mat_add(A, B)
    for i in (1, 2):
        for j in (1, 2):
            assert S.at(i, j) == c_add(A.at(i, j), B.at(i, j))
    with pytest.raises(ShapeMismatch):
        mat_add(A, zeros(2, 1))


def test_mat_mul_2x2_formula():
    rng = random.Random(5)
    A = rand_matrix(rng, 2, 2)
    B = rand_matrix(rng, 2, 2)
    P = mat_mul(A, B)
    for i in (1, 2):
        for q in (1, 2):
            expect = c_add(c_mul(A.at(i, 1), B.at(1, q)), c_mul(A.at(i, 2), B.at(2, q)))
            assert P.at(i, q) == expect


def test_mat_mul_matches_reference():
    rng = random.Random(6)
    for _ in range(50):
        m, n, r = rng.randint(1, 6), rng.randint(1, 6), rng.randint(1, 6)
        A, B = rand_matrix(rng, m, n), rand_matrix(rng, n, r)
        assert py_max_diff(to_py(mat_mul(A, B)), py_matmul(to_py(A), to_py(B))) <= 1e-9


def test_mat_mul_shapes():
    assert mat_mul(zeros(2, 2), zeros(2, 1)).shape == (2, 1)
    with pytest.raises(ShapeMismatch):
        mat_mul(zeros(2, 3), zeros(2, 3))


def test_identity():
    assert identity(1) == Matrix(1, 1, [(1, 0)])
    assert identity(2) == Matrix.from_rows([[(1, 0), (0, 0)], [(0, 0), (1, 0)]])


@settings(max_examples=100)
@given(st.integers(1, 8), st.integers(1, 8), st.randoms(use_true_random=False))
def test_right_identity(m, n, rnd):
    A = rand_matrix(random.Random(rnd.random()), m, n)
    assert max_abs_diff(mat_mul(A, identity(n)), A) <= 1e-12


@settings(max_examples=100)
@given(st.integers(1, 8), st.integers(1, 8), st.integers(1, 8), st.randoms(use_true_random=False))
def test_dagger_of_product(m, n, r, rnd):
    rng = random.Random(rnd.random())
    A, B = rand_matrix(rng, m, n), rand_matrix(rng, n, r)
    assert max_abs_diff(dagger(mat_mul(A, B)), mat_mul(dagger(B), dagger(A))) <= 1e-9


@settings(max_examples=100)
@given(st.integers(1, 8), st.randoms(use_true_random=False))
def test_unit_column_probabilities_sum_to_one(n, rnd):
    V = rand_unit_column(random.Random(rnd.random()), n)
    assert is_unit(V, 1e-9)
    assert abs(sum(c_norm(z) ** 2 for z in V.components) - 1.0) <= 1e-8


# --- unit check ---------------------------------------------------------------

def test_is_unit_examples():
    assert is_unit(identity(5))
    assert not is_unit(zeros(3, 3))
    s = 1 / math.sqrt(2)
    assert is_unit(Matrix.column([(s, 0), (0, s)]))
    # rectangular: two orthonormal columns in C^3
    assert is_unit(Matrix.from_rows([[(1, 0), (0, 0)], [(0, 0), (0, 1)], [(0, 0), (0, 0)]]))


def test_is_unit_matches_reference_deviation():
    A = rand_matrix(random.Random(7), 3, 3, bound=1.0)
    ref = py_max_diff(py_matmul(py_dagger(to_py(A)), to_py(A)), to_py(identity(3)))
    assert unit_deviation(A) == pytest.approx(ref, abs=1e-12)


def test_is_unit_requires_positive_tol():
    with pytest.raises(ValueError):
        is_unit(identity(2), 0.0)


def test_is_unit_is_strict_in_tolerance():
    M = Matrix.column([(1.0, 0), (0.1, 0)])  # deviation 0.01 up to rounding
    dev = unit_deviation(M)
    assert not is_unit(M, dev)
    assert is_unit(M, dev * 1.0001)


# --- text format -------------------------------------------------------------

def test_parse_matrix_format():
    text = """# a comment
2 2   # header

(0.5,0) (-0.5,1e-3)
(1.5E+2,-0) (.25,3.)
"""
    M = parse_matrix(text)
    assert M.shape == (2, 2)
    assert M.at(1, 2) == Complex(-0.5, 1e-3)
    assert M.at(2, 1) == Complex(150.0, 0.0)
    assert M.at(2, 2) == Complex(0.25, 3.0)


def test_matrix_round_trip():
    A = rand_matrix(random.Random(8), 3, 4)
    assert parse_matrix(format_matrix(A)) == A


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("2\n(1,0)\n", 1),
        ("1 2\n(1,0)\n", 2),
        ("1 1\n(1,0)\n(1,0)\n", 3),
        ("2 1\n(1,0)\n", 2),
        ("1 1\n1+2i\n", 2),
        ("1 2\n(1,0)(2,0)\n", 2),
        ("1 1\n(nan,0)\n", 2),
        ("0 1\n", 1),
    ],
)
def test_parse_matrix_errors(text, line):
    with pytest.raises(MatrixFormatError) as info:
        parse_matrix(text)
    assert info.value.line == line


def test_column_unit_check_matches_general_product():
    rng = random.Random(9)
    for _ in range(200):
        V = rand_matrix(rng, rng.randint(1, 8), 1, bound=1.0)
        general = max_abs_diff(mat_mul(dagger(V), V), identity(1))
        assert unit_deviation(V) == general
