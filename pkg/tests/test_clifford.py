from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from hsdirac.clifford import (
    CliffordKind, cg_oracle_compare, clifford_map, expected_symbol_poly, generator, symbol_det,
    symbol_det_poly, torus_kernel_dims, verify_algebra, verify_group_equivariance,
)
from hsdirac.exact import I, ExactMatrix, ExactScalar, gram_adjoint, rank
from hsdirac.su2 import BASIS, E1, E2, E3, TEST_GROUP_ELEMENTS, LieVector, gram_matrix

from conftest import scalars, to_sympy, from_sympy_scalar

Z, P, M = CliffordKind.ZERO, CliffordKind.PLUS, CliffordKind.MINUS


def test_closed_form_examples():
    assert clifford_map(Z, 1, E1).matrix == ExactMatrix.diag([-I, I])
    X = E2 * Fraction(1, 2) + E3 * ExactScalar(0, Fraction(1, 2))
    out = clifford_map(P, 0, X).matrix @ ExactMatrix.column([1])
    assert out == ExactMatrix.column([-1, 0, 0])
    out = clifford_map(M, 2, E1 * Fraction(1, 2)).matrix @ ExactMatrix.column([0, 1, 0])
    assert out == ExactMatrix.column([I])


def test_degenerate_spins_are_zero_maps():
    assert clifford_map(M, 0, E2).matrix.shape == (0, 1)
    assert clifford_map(M, 1, E2).matrix.shape == (0, 2)
    assert clifford_map(Z, 0, E3).matrix.is_zero()


@given(st.integers(0, 6), st.sampled_from(list(CliffordKind)),
       scalars(), scalars(), st.sampled_from(BASIS), st.sampled_from(BASIS))
def test_linearity(m, kind, a, b, X, Y):
    lhs = clifford_map(kind, m, X * a + Y * b).matrix
    rhs = clifford_map(kind, m, X).matrix.scale(a) + clifford_map(kind, m, Y).matrix.scale(b)
    assert lhs == rhs


def test_algebra_small_spins():
    rep = verify_algebra(4)
    assert rep.passed, [e.to_dict() for e in rep.failures]
    ids = {e.check for e in rep.entries}
    assert {"adjoint.plus", "adjoint.minus", "adjoint.zero", "casimir", "clifford.plus"} <= ids


def test_spin_one_is_the_classical_clifford_relation():
    # rho(X) rho(Y) = 1/2 rho([X, Y]) - (X, Y) at m = 1
    for X in BASIS:
        for Y in BASIS:
            lhs = generator(Z, 1, BASIS.index(X)) @ generator(Z, 1, BASIS.index(Y))
            rhs = clifford_map(Z, 1, X.bracket(Y)).matrix.scale(Fraction(1, 2)) \
                - ExactMatrix.identity(2).scale(X.pairing(Y))
            assert lhs == rhs


@pytest.mark.parametrize("m", range(8))
def test_adjoint_pairs(m):
    for i in range(3):
        lhs = gram_adjoint(generator(P, m, i), gram_matrix(m), gram_matrix(m + 2))
        assert lhs == generator(M, m + 2, i).scale(-1)


@pytest.mark.parametrize("m", [0, 2, 3])
def test_group_equivariance(m):
    for g in TEST_GROUP_ELEMENTS:
        assert verify_group_equivariance(m, g).passed


def test_cg_constants_at_m5():
    rep = cg_oracle_compare(5)
    assert rep.passed
    got = {e.check: e.values["constant_squared"] for e in rep.entries}
    assert got == {"cg_proportional.zero": Fraction(35, 4),
                   "cg_proportional.plus": Fraction(21),
                   "cg_proportional.minus": Fraction(15)}


def test_cg_m0_minus_is_zero_map():
    (entry,) = [e for e in cg_oracle_compare(0).entries if e.check == "cg_proportional.minus"]
    assert entry.passed and entry.values["scalar"] is None


def test_symbol_det_examples():
    assert symbol_det(1, E1) == ExactScalar(1)
    assert symbol_det(2, LieVector(1, 2, 3)) == ExactScalar(0)
    assert symbol_det(3, LieVector(0, 3, 4)) == ExactScalar(625 * 9)


@pytest.mark.parametrize("m", [1, 2, 3])
def test_symbol_poly_against_sympy_determinant(m):
    x = sympy.symbols("x1:4")
    mats = [to_sympy(generator(Z, m, i)) for i in range(3)]
    det = sympy.Poly(sympy.expand((x[0] * mats[0] + x[1] * mats[1] + x[2] * mats[2]).det()), *x)
    ours = symbol_det_poly(m)
    want = {mon: from_sympy_scalar(c) for mon, c in det.terms() if c != 0}
    assert want == dict(ours.terms)
    assert ours == expected_symbol_poly(m)


def test_torus_examples():
    assert torus_kernel_dims(1).pair == (2, 2)
    assert torus_kernel_dims(2).pair == (None, 3)
    assert torus_kernel_dims(5).pair == (6, 6)
    for m in range(6):
        t = torus_kernel_dims(m)
        assert t.certificate.passed
        assert rank(generator(P, m, 0)) == m + 1
