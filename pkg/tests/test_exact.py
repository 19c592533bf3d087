from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hsdirac.clifford import generator, CliffordKind
from hsdirac.exact import (
    I, ONE, ZERO, ExactMatrix, ExactScalar, InconsistentSystemError, SingularGramError,
    fraction_from_str, fraction_to_str, gram_adjoint, inverse, nullity, nullspace, rank, solve,
)
from hsdirac.su2 import gram_matrix

from conftest import from_sympy_scalar, matrices, scalars, to_sympy


# --- scalars ---

def test_scalar_reduces_and_keeps_denominator_positive():
    z = ExactScalar(Fraction(2, -4), Fraction(6, 3))
    assert z.re == Fraction(-1, 2) and z.re.denominator == 2
    assert z.im == 2


def test_floats_are_refused():
    with pytest.raises(TypeError):
        ExactScalar(0.5)
    with pytest.raises(TypeError):
        ONE + 0.25


def test_i_squared():
    assert I * I == -ONE
    assert (ExactScalar(1, 2) / ExactScalar(3, -1)) == ExactScalar(Fraction(1, 10), Fraction(7, 10))


@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if b:
        assert (a / b) * b == a


@given(scalars())
def test_conjugation_and_modulus(a):
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()) == ExactScalar(a.abs2())
    assert a.abs2() >= 0


def test_serialization_strings():
    assert fraction_to_str(Fraction(3)) == "3"
    assert fraction_to_str(Fraction(-3, 4)) == "-3/4"
    assert fraction_from_str("-3/4") == Fraction(-3, 4)
    z = ExactScalar(Fraction(1, 2), -2)
    assert z.to_json() == {"re": "1/2", "im": "-2"}
    assert ExactScalar.from_json(z.to_json()) == z


# --- matrices ---

def test_nullspace_examples():
    assert nullspace(ExactMatrix.identity(2)) == []
    assert len(nullspace(ExactMatrix.zeros(2, 2))) == 2
    A = ExactMatrix.from_rows([[1, I], [-I, 1]])
    (v,) = nullspace(A)
    # proportional to (i, -1)
    w = ExactMatrix.column([I, -ONE])
    ratio = v[0, 0] / w[0, 0]
    assert v == w.scale(ratio)
    assert (A @ w).is_zero()


@given(matrices())
def test_rank_nullity(A):
    ns = nullspace(A)
    assert rank(A) + len(ns) == A.cols
    for v in ns:
        assert (A @ v).is_zero()
    if ns:
        assert rank(ExactMatrix.hstack_all(ns)) == len(ns)


@given(matrices(max_rows=4, max_cols=4))
def test_rank_matches_sympy(A):
    assert rank(A) == to_sympy(A).rank()


@given(st.integers(1, 4).flatmap(lambda n: matrices(rows=n, cols=n)))
def test_det_matches_sympy(A):
    assert A.det() == from_sympy_scalar(to_sympy(A).det().expand())


def test_nullspace_is_deterministic():
    A = ExactMatrix.from_rows([[1, 2, 3, 0], [2, 4, 6, 0], [0, 0, 1, 1]])
    assert nullspace(A) == nullspace(ExactMatrix.from_rows(A.to_lists()))


@given(matrices(max_rows=3, max_cols=3), matrices(max_rows=3, max_cols=3))
def test_conj_transpose_of_product(A, B):
    B = ExactMatrix.from_rows([[B[i % B.rows, j % B.cols] for j in range(3)] for i in range(A.cols)])
    assert (A @ B).H == B.H @ A.H


def test_solve_and_inconsistency():
    A = ExactMatrix.from_rows([[1, 1], [1, -1], [2, 0]])
    X = solve(A, ExactMatrix.column([3, 1, 4]))
    assert X == ExactMatrix.column([2, 1])
    with pytest.raises(InconsistentSystemError):
        solve(A, ExactMatrix.column([3, 1, 5]))


def test_inverse_roundtrip():
    A = ExactMatrix.from_rows([[2, I], [1, 3]])
    assert A @ inverse(A) == ExactMatrix.identity(2)


def test_immutability():
    A = ExactMatrix.identity(2)
    with pytest.raises(AttributeError):
        A.rows = 3
    B = A + A
    assert A == ExactMatrix.identity(2) and B[0, 0] == 2


def test_matrix_json_roundtrip():
    A = ExactMatrix.from_rows([[1, Fraction(1, 3)], [I, 0]])
    assert ExactMatrix.from_json(A.to_json()) == A


# --- gram adjoint ---

def test_gram_adjoint_examples():
    A = ExactMatrix.from_rows([[1, I], [2, 3]])
    Id = ExactMatrix.identity(2)
    assert gram_adjoint(A, Id, Id) == A.H
    assert gram_adjoint(ExactMatrix.diag([2]), ExactMatrix.diag([3]), ExactMatrix.diag([3])) == ExactMatrix.diag([2])
    rho = generator(CliffordKind.ZERO, 1, 0)
    assert gram_adjoint(rho, gram_matrix(1), gram_matrix(1)) == rho.scale(-1)


@given(matrices(rows=3, cols=2))
def test_gram_adjoint_is_involution(A):
    Gs = ExactMatrix.from_rows([[2, I], [-I, 3]])
    Gd = ExactMatrix.diag([1, 5, Fraction(1, 2)])
    assert gram_adjoint(gram_adjoint(A, Gs, Gd), Gd, Gs) == A


def test_singular_gram_rejected():
    with pytest.raises(SingularGramError):
        gram_adjoint(ExactMatrix.identity(2), ExactMatrix.zeros(2, 2), ExactMatrix.identity(2))
