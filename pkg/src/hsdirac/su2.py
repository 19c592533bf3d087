"""Spin-m/2 representations of SU(2) in the monomial basis z^0..z^m.

The basis z^k of V_m is orthogonal but not normalized: its Gram matrix is
``diag(k!(m-k)!)``.  Working in this basis keeps every matrix rational over
Q(i); all adjoints are taken with respect to that Gram matrix.

Conventions (fixed here, relied upon everywhere else):

* sigma_1 = [[i, 0], [0, -i]], sigma_2 = [[0, 1], [-1, 0]], sigma_3 = [[0, i], [i, 0]].
* ``(sigma_2 - i sigma_3)/2`` raises k: z^k -> (m-k) z^{k+1}.
* ``(sigma_2 + i sigma_3)/2`` lowers k: z^k -> -k z^{k-1}.
* Spaces with negative spin index are the zero space.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial
from typing import Sequence

from .exact import I, ONE, ZERO, ExactMatrix, ExactScalar, Fraction, as_scalar, inverse, nullspace

__all__ = [
    "dim",
    "LieVector",
    "E1",
    "E2",
    "E3",
    "BASIS",
    "PAULI",
    "GroupElement",
    "TEST_GROUP_ELEMENTS",
    "gram_matrix",
    "rep_infinitesimal",
    "rep_group",
    "casimir",
    "CGComponent",
    "cg_decompose",
    "raising",
    "lowering",
    "tensor_action",
]


def dim(m: int) -> int:
    """Dimension of V_m (zero for negative m)."""
    return m + 1 if m >= 0 else 0


PAULI = (
    ExactMatrix.from_rows([[I, 0], [0, -I]]),
    ExactMatrix.from_rows([[0, 1], [-1, 0]]),
    ExactMatrix.from_rows([[0, I], [I, 0]]),
)


@dataclass(frozen=True)
class LieVector:
    """Element c1 e1 + c2 e2 + c3 e3 of su(2) (x) C, with e_i identified with sigma_i."""

    c1: ExactScalar = ZERO
    c2: ExactScalar = ZERO
    c3: ExactScalar = ZERO

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    @property
    def coords(self) -> tuple[ExactScalar, ExactScalar, ExactScalar]:
        return (self.c1, self.c2, self.c3)

    def __add__(self, other: "LieVector") -> "LieVector":
        return LieVector(*(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "LieVector") -> "LieVector":
        return LieVector(*(a - b for a, b in zip(self.coords, other.coords)))

    def __mul__(self, c) -> "LieVector":
        c = as_scalar(c)
        return LieVector(*(c * a for a in self.coords))

    __rmul__ = __mul__

    def __neg__(self) -> "LieVector":
        return LieVector(*(-a for a in self.coords))

    def matrix(self) -> ExactMatrix:
        """The 2x2 matrix sum c_i sigma_i."""
        out = ExactMatrix.zeros(2, 2)
        for c, s in zip(self.coords, PAULI):
            if c:
                out = out + s.scale(c)
        return out

    @classmethod
    def from_matrix(cls, M: ExactMatrix) -> "LieVector":
        """Coordinates of a traceless 2x2 matrix in the sigma basis.

        Uses tr(sigma_j sigma_k) = -2 delta_jk; raises if M is not in the span.
        """
        coords = [-(M @ s).trace() / 2 for s in PAULI]
        v = cls(*coords)
        if v.matrix() != M:
            raise ValueError("matrix is not in the span of the Pauli basis")
        return v

    def bracket(self, other: "LieVector") -> "LieVector":
        """Lie bracket computed as the 2x2 matrix commutator."""
        A, B = self.matrix(), other.matrix()
        return LieVector.from_matrix(A @ B - B @ A)

    def pairing(self, other: "LieVector") -> ExactScalar:
        """Complex-bilinear extension of the Euclidean inner product."""
        return sum((a * b for a, b in zip(self.coords, other.coords)), ZERO)

    def __str__(self):
        return f"({self.c1}, {self.c2}, {self.c3})"


E1 = LieVector(1, 0, 0)
E2 = LieVector(0, 1, 0)
E3 = LieVector(0, 0, 1)
BASIS = (E1, E2, E3)


@dataclass(frozen=True)
class GroupElement:
    """Element [[a, b], [-conj(b), conj(a)]] of SU(2) with exact entries."""

    a: ExactScalar
    b: ExactScalar
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "a", as_scalar(self.a))
        object.__setattr__(self, "b", as_scalar(self.b))
        if self.a.abs2() + self.b.abs2() != 1:
            raise ValueError(f"|a|^2 + |b|^2 = {self.a.abs2() + self.b.abs2()}, not 1")

    @property
    def c(self) -> ExactScalar:
        return -self.b.conjugate()

    @property
    def d(self) -> ExactScalar:
        return self.a.conjugate()

    def matrix(self) -> ExactMatrix:
        return ExactMatrix.from_rows([[self.a, self.b], [self.c, self.d]])

    def inverse(self) -> "GroupElement":
        return GroupElement(self.a.conjugate(), -self.b, f"{self.name}^-1" if self.name else "")

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        M = self.matrix() @ other.matrix()
        return GroupElement(M[0, 0], M[0, 1])

    @classmethod
    def from_matrix(cls, M: ExactMatrix, name: str = "") -> "GroupElement":
        """Validate a 2x2 matrix as an SU(2) element."""
        if M.shape != (2, 2):
            raise ValueError("SU(2) elements are 2x2")
        a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
        if c != -b.conjugate() or d != a.conjugate():
            raise ValueError("matrix is not of the form [[a, b], [-conj b, conj a]]")
        return cls(a, b, name)

    def conjugate_lie(self, X: LieVector) -> LieVector:
        """g X g^-1 re-expressed in the e-basis."""
        g = self.matrix()
        return LieVector.from_matrix(g @ X.matrix() @ self.inverse().matrix())

    def __str__(self):
        return self.name or f"SU2(a={self.a}, b={self.b})"


TEST_GROUP_ELEMENTS = (
    GroupElement(1, 0, "identity"),
    GroupElement(I, 0, "diag(i,-i)"),
    GroupElement(0, 1, "[[0,1],[-1,0]]"),
    GroupElement(Fraction(3, 5), Fraction(4, 5), "(3/5,4/5)"),
    GroupElement(Fraction(3, 5), ExactScalar(0, Fraction(4, 5)), "(3/5,4i/5)"),
    GroupElement(ExactScalar(Fraction(1, 3), Fraction(2, 3)), Fraction(2, 3), "(1/3+2i/3,2/3)"),
)


@lru_cache(maxsize=None)
def gram_matrix(m: int) -> ExactMatrix:
    """diag(k!(m-k)!) for k = 0..m."""
    return ExactMatrix.diag(factorial(k) * factorial(m - k) for k in range(dim(m)))


@lru_cache(maxsize=None)
def raising(m: int) -> ExactMatrix:
    """Action of (sigma_2 - i sigma_3)/2 on V_m: z^k -> (m-k) z^{k+1}."""
    n = dim(m)
    return ExactMatrix.from_dict(n, n, {(k + 1, k): m - k for k in range(m)})


@lru_cache(maxsize=None)
def lowering(m: int) -> ExactMatrix:
    """Action of (sigma_2 + i sigma_3)/2 on V_m: z^k -> -k z^{k-1}."""
    n = dim(m)
    return ExactMatrix.from_dict(n, n, {(k - 1, k): -k for k in range(1, m + 1)})


@lru_cache(maxsize=None)
def _generator(m: int, i: int) -> ExactMatrix:
    """rho_m(sigma_{i+1})."""
    n = dim(m)
    if i == 0:
        return ExactMatrix.diag(ExactScalar(0, 2 * k - m) for k in range(n))
    L, R = lowering(m), raising(m)
    if i == 1:
        return L + R
    return (L - R).scale(-I)


def rep_infinitesimal(m: int, X: LieVector) -> ExactMatrix:
    """Matrix of rho_m(X) on V_m; rho_m(sigma_1/2) z^k = i(k - m/2) z^k."""
    n = dim(m)
    out = ExactMatrix.zeros(n, n)
    for i, c in enumerate(X.coords):
        if c:
            out = out + _generator(m, i).scale(c)
    return out


def _poly_mul(p: list, q: list) -> list:
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
    return out


def _poly_pow(p: list, k: int) -> list:
    out = [ONE]
    for _ in range(k):
        out = _poly_mul(out, p)
    return out


def rep_group_matrix(m: int, M: ExactMatrix) -> ExactMatrix:
    """Column k holds the z-coefficients of (b z + d)^{m-k} (a z + c)^k.

    Defined for any 2x2 matrix M = [[a, b], [c, d]]; polynomial in its entries.
    """
    a, b, c, d = M[0, 0], M[0, 1], M[1, 0], M[1, 1]
    n = dim(m)
    cols = []
    for k in range(n):
        coeffs = _poly_mul(_poly_pow([d, b], m - k), _poly_pow([c, a], k))
        cols.append(coeffs)
    return ExactMatrix.from_rows([[cols[k][j] for k in range(n)] for j in range(n)])


def rep_group(m: int, g: GroupElement) -> ExactMatrix:
    """Matrix of rho_m(g) on V_m in the z-basis."""
    return rep_group_matrix(m, g.matrix())


def casimir(m: int) -> ExactMatrix:
    """-sum_i rho_m(sigma_i)^2, which equals m(m+2) times the identity."""
    n = dim(m)
    out = ExactMatrix.zeros(n, n)
    for i in range(3):
        G = _generator(m, i)
        out = out - G @ G
    return out


def tensor_action(m: int, n: int, A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """A (x) 1 + 1 (x) B on V_m (x) V_n, basis index a * (n+1) + b."""
    return A.kron(ExactMatrix.identity(dim(n))) + ExactMatrix.identity(dim(m)).kron(B)


@dataclass(frozen=True)
class CGComponent:
    """Copy of V_j inside V_m (x) V_n.

    ``embedding`` columns are the images of z_j^0..z_j^j; ``projection`` is the
    Gram-orthogonal projection expressed in the z_j basis, so that
    ``projection @ embedding`` is the identity.
    """

    m: int
    n: int
    j: int
    embedding: ExactMatrix
    projection: ExactMatrix

    def scale_factor(self) -> Fraction:
        """t with embedding* G_T embedding = t * gram_matrix(j).

        The isometric embedding is ``embedding / sqrt(t)``.
        """
        G_T = gram_matrix(self.m).kron(gram_matrix(self.n))
        inner = self.embedding.conj_transpose() @ G_T @ self.embedding
        t = inner[0, 0] / gram_matrix(self.j)[0, 0]
        if inner != gram_matrix(self.j).scale(t) or not t.is_real():
            raise ArithmeticError("embedding is not a multiple of an isometry")
        return t.re


def _highest_weight_vector(m: int, n: int, j: int) -> ExactMatrix:
    s = (m + n + j) // 2
    N = dim(m) * dim(n)
    R = tensor_action(m, n, raising(m), raising(n))
    idx = [a * dim(n) + (s - a) for a in range(dim(m)) if 0 <= s - a <= n]
    kernel = nullspace(R.submatrix(range(N), idx))
    if len(kernel) != 1:
        raise ArithmeticError(f"highest weight space for j={j} has dimension {len(kernel)}")
    k = kernel[0]
    entries = {idx[t]: k[t, 0] for t in range(len(idx)) if k[t, 0]}
    lead = entries[min(entries)]
    return ExactMatrix.from_dict(N, 1, {(i, 0): v / lead for i, v in entries.items()})


@lru_cache(maxsize=None)
def cg_decompose(m: int, n: int) -> tuple[CGComponent, ...]:
    """Decompose V_m (x) V_n into V_{m+n}, V_{m+n-2}, ..., V_{|m-n|}.

    Highest weight vectors are normalized so their first nonzero coordinate
    (lexicographic tensor index) equals 1.
    """
    if m < 0 or n < 0:
        return ()
    N = dim(m) * dim(n)
    G_T = gram_matrix(m).kron(gram_matrix(n))
    L = tensor_action(m, n, lowering(m), lowering(n))
    comps = []
    for j in range(m + n, abs(m - n) - 1, -2):
        w = [None] * (j + 1)
        w[j] = _highest_weight_vector(m, n, j)
        for k in range(j, 0, -1):
            w[k - 1] = (L @ w[k]).scale(Fraction(-1, k))
        E = ExactMatrix.hstack_all(w, N)
        P = inverse(E.conj_transpose() @ G_T @ E) @ E.conj_transpose() @ G_T
        comps.append(CGComponent(m, n, j, E, P))
    return tuple(comps)
