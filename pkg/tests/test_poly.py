from hypothesis import given, strategies as st

from hsdirac.exact import ExactScalar
from hsdirac.poly import Poly, Poly4, Z_FIELDS, apply_derivation, coordinates, invariant_field, radius_squared

from conftest import scalars

x1, x2, x3, x4 = coordinates(4)


@st.composite
def polys(draw, max_terms=4, max_deg=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.integers(0, max_deg)) for _ in range(4))
        terms[exp] = draw(scalars(zero_weight=False))
    return Poly4(terms)


def test_no_zero_coefficients_stored():
    p = x1 + x2 - x1
    assert p.terms == {(0, 1, 0, 0): ExactScalar(1)}
    assert (x1 - x1).is_zero()


def test_z1_examples():
    assert invariant_field(0, Poly.constant(4)).is_zero()
    assert invariant_field(0, x4) == -x1
    assert invariant_field(0, radius_squared()).is_zero()


def test_every_z_is_tangent_to_the_sphere():
    for i in range(3):
        assert invariant_field(i, radius_squared()).is_zero()


@given(polys(), polys())
def test_derivation_linear_and_leibniz(p, q):
    for field in Z_FIELDS:
        assert apply_derivation(field, p + q) == apply_derivation(field, p) + apply_derivation(field, q)
        assert apply_derivation(field, p * q) == apply_derivation(field, p) * q + p * apply_derivation(field, q)


@given(polys())
def test_linear_fields_preserve_degree(p):
    p = Poly4({e: c for e, c in p.terms.items() if sum(e) == 2})
    for field in Z_FIELDS:
        out = apply_derivation(field, p)
        assert out.is_zero() or out.is_homogeneous() and out.degree() == 2


def test_fields_bracket_like_su2():
    # the three fields close under commutators: [Z_i, Z_j] = +-2 Z_k on any polynomial
    p = x1 * x2 + x3 * x4 * x4 + x1 * x1 * x3
    Z = [lambda q, f=f: apply_derivation(f, q) for f in Z_FIELDS]
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        comm = Z[i](Z[j](p)) - Z[j](Z[i](p))
        assert comm == Z[k](p) * 2 or comm == Z[k](p) * (-2)
