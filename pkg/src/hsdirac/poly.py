"""Sparse multivariate polynomials with ExactScalar coefficients.

Only what the S^3 computations need: ring arithmetic, partial derivatives,
first-order operators with linear coefficients, and a division-free
determinant for small polynomial matrices.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .exact import ONE, ZERO, ExactScalar, as_scalar

__all__ = [
    "Poly",
    "Poly4",
    "coordinates",
    "apply_derivation",
    "Z_FIELDS",
    "invariant_field",
    "radius_squared",
    "poly_det",
]


class Poly:
    """Polynomial in ``nvars`` variables; terms map exponent tuples to coefficients."""

    __slots__ = ("nvars", "_terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or min(exp, default=0) < 0:
                raise ValueError(f"bad exponent {exp} for {nvars} variables")
            c = as_scalar(c)
            if c:
                clean[exp] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "_terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    def __reduce__(self):
        return (Poly, (self.nvars, self._terms))

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        p = object.__new__(cls)
        object.__setattr__(p, "nvars", nvars)
        object.__setattr__(p, "_terms", terms)
        return p

    @classmethod
    def constant(cls, nvars: int, c=1) -> "Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        exp = [0] * nvars
        exp[i] = 1
        return cls._raw(nvars, {tuple(exp): ONE})

    @property
    def terms(self) -> dict[tuple[int, ...], ExactScalar]:
        return dict(self._terms)

    def coefficient(self, exp: Sequence[int]) -> ExactScalar:
        return self._terms.get(tuple(exp), ZERO)

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True
        if len(degs) != 1:
            return False
        return degree is None or degs == {degree}

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("variable count mismatch")
            return other
        return Poly.constant(self.nvars, as_scalar(other))

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out[e] + c if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            c = as_scalar(other)
            if not c:
                return Poly._raw(self.nvars, {})
            return Poly._raw(self.nvars, {e: c * v for e, v in self._terms.items()})
        other = self._lift(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                p = c1 * c2
                out[e] = out[e] + p if e in out else p
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Poly.constant(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly._raw(self.nvars, out)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self._terms == other._terms
        try:
            return self == self._lift(other)
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return "Poly(0)"
        parts = []
        for e in sorted(self._terms, reverse=True):
            mon = "*".join(f"x{i + 1}^{k}" if k > 1 else f"x{i + 1}" for i, k in enumerate(e) if k)
            parts.append(f"({self._terms[e]})" + (f"*{mon}" if mon else ""))
        return "Poly(" + " + ".join(parts) + ")"


def Poly4(terms: Mapping[tuple[int, int, int, int], object] | None = None) -> Poly:
    """A polynomial in the four ambient coordinates x1..x4 of R^4."""
    return Poly(4, terms)


def coordinates(nvars: int = 4) -> tuple[Poly, ...]:
    return tuple(Poly.var(i, nvars) for i in range(nvars))


def radius_squared() -> Poly:
    x = coordinates(4)
    return sum((xi * xi for xi in x[1:]), x[0] * x[0])


def apply_derivation(coeffs: Sequence[Sequence[object]], p: Poly) -> Poly:
    """Apply ``sum_j (sum_k coeffs[j][k] x_k) d/dx_j`` to ``p``.

    ``coeffs[j][k]`` is the coefficient of ``x_k`` in the component of the
    vector field along ``x_j``; indices are 0-based.
    """
    n = p.nvars
    if len(coeffs) != n or any(len(r) != n for r in coeffs):
        raise ValueError(f"need a {n}x{n} coefficient array")
    out = Poly._raw(n, {})
    for j in range(n):
        lin = {}
        for k in range(n):
            c = as_scalar(coeffs[j][k])
            if c:
                e = [0] * n
                e[k] = 1
                lin[tuple(e)] = c
        if not lin:
            continue
        dp = p.diff(j)
        if dp.is_zero():
            continue
        out = out + Poly._raw(n, lin) * dp
    return out


def _field(terms: Iterable[tuple[int, int, int]]) -> tuple[tuple[int, ...], ...]:
    # entries: (sign, coefficient variable, derivative variable), 1-based
    m = [[0] * 4 for _ in range(4)]
    for sign, k, j in terms:
        m[j - 1][k - 1] = sign
    return tuple(tuple(r) for r in m)


# Right-invariant fields on S^3 = SU(2) attached to sigma_1, sigma_2, sigma_3.
Z_FIELDS = (
    _field([(-1, 1, 4), (1, 4, 1), (-1, 3, 2), (1, 2, 3)]),
    _field([(-1, 2, 4), (1, 3, 1), (1, 4, 2), (-1, 1, 3)]),
    _field([(-1, 3, 4), (-1, 2, 1), (1, 1, 2), (1, 4, 3)]),
)


def invariant_field(i: int, p: Poly) -> Poly:
    """Apply Z_{i+1} (``i`` in 0..2) to ``p``."""
    return apply_derivation(Z_FIELDS[i], p)


def poly_det(matrix: Sequence[Sequence[Poly]]) -> Poly:
    """Division-free determinant by row expansion over column subsets.

    Memoized on (row, used columns) and skipping zero entries, so banded
    matrices stay cheap.
    """
    n = len(matrix)
    if any(len(r) != n for r in matrix):
        raise ValueError("poly_det needs a square matrix")
    if n == 0:
        raise ValueError("empty matrix")
    nvars = matrix[0][0].nvars
    nz = [[(c, e) for c, e in enumerate(row) if not e.is_zero()] for row in matrix]

    @lru_cache(maxsize=None)
    def expand(r: int, used: int) -> Poly:
        if r == n:
            return Poly.constant(nvars)
        acc = Poly._raw(nvars, {})
        for c, e in nz[r]:
            bit = 1 << c
            if used & bit:
                continue
            sub = expand(r + 1, used | bit)
            if sub.is_zero():
                continue
            inversions = bin(used >> (c + 1)).count("1")
            term = e * sub
            acc = acc - term if inversions & 1 else acc + term
        return acc

    result = expand(0, 0)
    expand.cache_clear()
    return result
