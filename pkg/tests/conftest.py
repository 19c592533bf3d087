from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from hsdirac.exact import ExactMatrix, ExactScalar

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@st.composite
def scalars(draw, zero_weight=True):
    # skew towards zero so random matrices are often rank deficient
    if zero_weight and draw(st.integers(0, 3)) == 0:
        return ExactScalar(0)
    return ExactScalar(draw(small_fractions), draw(small_fractions))


@st.composite
def matrices(draw, max_rows=5, max_cols=5, rows=None, cols=None):
    r = rows if rows is not None else draw(st.integers(1, max_rows))
    c = cols if cols is not None else draw(st.integers(1, max_cols))
    return ExactMatrix.from_rows([[draw(scalars()) for _ in range(c)] for _ in range(r)])


def to_sympy(A: ExactMatrix):
    import sympy

    def conv(z):
        return sympy.Rational(z.re.numerator, z.re.denominator) + sympy.I * sympy.Rational(
            z.im.numerator, z.im.denominator)

    return sympy.Matrix(A.rows, A.cols, lambda i, j: conv(A[i, j]))


def from_sympy_scalar(v) -> ExactScalar:
    import sympy

    re, im = sympy.re(v), sympy.im(v)
    return ExactScalar(Fraction(int(re.p), int(re.q)), Fraction(int(im.p), int(im.q)))
