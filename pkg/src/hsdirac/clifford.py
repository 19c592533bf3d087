"""Clifford homomorphisms rho_m^0, rho_m^+ and rho_m^- for R^3 = su(2).

rho_m^0(X): V_m -> V_m, rho_m^+(X): V_m -> V_{m+2}, rho_m^-(X): V_m -> V_{m-2}.
The matrices come from closed formulas on the generators e1/2 and
(e2 +- i e3)/2; the values on e1, e2, e3 are recovered by the change of
generators e1 = 2 (e1/2), e2 = A + B, e3 = -i (A - B) where
A = (e2 + i e3)/2 and B = (e2 - i e3)/2.  ``cg_oracle_compare`` checks these
formulas against an independent Clebsch-Gordan projection.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

from .exact import I, ZERO, ExactMatrix, ExactScalar, Fraction, rank
from .poly import Poly, poly_det
from .report import VerificationReport, timed
from .su2 import (
    BASIS,
    TEST_GROUP_ELEMENTS,
    GroupElement,
    LieVector,
    cg_decompose,
    dim,
    gram_matrix,
    rep_group,
)
from .exact import gram_adjoint

__all__ = [
    "CliffordKind",
    "CliffordMap",
    "clifford_map",
    "generator",
    "verify_algebra",
    "verify_group_equivariance",
    "cg_oracle_compare",
    "projection_map",
    "symbol_det",
    "symbol_det_poly",
    "expected_symbol_poly",
    "verify_symbol",
    "TorusKernels",
    "torus_kernel_dims",
]


class CliffordKind(str, enum.Enum):
    ZERO = "zero"
    PLUS = "plus"
    MINUS = "minus"

    @property
    def shift(self) -> int:
        return {"zero": 0, "plus": 2, "minus": -2}[self.value]

    def target(self, m: int) -> int:
        return m + self.shift


ZERO_K, PLUS_K, MINUS_K = CliffordKind.ZERO, CliffordKind.PLUS, CliffordKind.MINUS


@dataclass(frozen=True)
class CliffordMap:
    kind: CliffordKind
    m: int
    X: LieVector
    matrix: ExactMatrix

    @property
    def target(self) -> int:
        return self.kind.target(self.m)


def _half_generators(kind: CliffordKind, m: int) -> tuple[dict, dict, dict]:
    """Images on e1/2, (e2+ie3)/2, (e2-ie3)/2 as {(row, col): value} dicts."""
    h, a, b = {}, {}, {}
    for k in range(m + 1):
        if kind is ZERO_K:
            h[k, k] = ExactScalar(0, Fraction(2 * k - m, 2))
            if k >= 1:
                a[k - 1, k] = -k
            if k < m:
                b[k + 1, k] = m - k
        elif kind is PLUS_K:
            h[k + 1, k] = I
            a[k, k] = -1
            b[k + 2, k] = -1
        else:
            if 1 <= k <= m - 1:
                h[k - 1, k] = ExactScalar(0, k * (m - k))
            if k >= 2:
                a[k - 2, k] = k * (k - 1)
            if k <= m - 2:
                b[k, k] = (m - k) * (m - k - 1)
    return h, a, b


@lru_cache(maxsize=None)
def generator(kind: CliffordKind | str, m: int, i: int) -> ExactMatrix:
    """rho_m^kind(e_{i+1}) as a dim(target) x dim(m) matrix."""
    kind = CliffordKind(kind)
    rows, cols = dim(kind.target(m)), dim(m)
    if rows == 0 or cols == 0:
        return ExactMatrix.zeros(rows, cols)
    h, a, b = (ExactMatrix.from_dict(rows, cols, d) for d in _half_generators(kind, m))
    if i == 0:
        return h.scale(2)
    if i == 1:
        return a + b
    return (a - b).scale(-I)


def clifford_map(kind: CliffordKind | str, m: int, X: LieVector) -> CliffordMap:
    kind = CliffordKind(kind)
    rows, cols = dim(kind.target(m)), dim(m)
    out = ExactMatrix.zeros(rows, cols)
    for i, c in enumerate(X.coords):
        if c:
            out = out + generator(kind, m, i).scale(c)
    return CliffordMap(kind, m, X, out)


def _rho(kind, m, X) -> ExactMatrix:
    return clifford_map(kind, m, X).matrix


_LABELS = ("e1", "e2", "e3")


def _residual_witness(m, i, j, residual: ExactMatrix) -> dict:
    return {"m": m, "X": _LABELS[i], "Y": _LABELS[j], "residual": residual}


def _verify_spin(m: int) -> VerificationReport:
    rep = VerificationReport("verify-algebra")
    G = {s: gram_matrix(s) for s in (m - 2, m, m + 2) if s >= 0}
    r0 = {s: [generator(ZERO_K, s, i) for i in range(3)] for s in (m - 2, m, m + 2)}
    rp = {s: [generator(PLUS_K, s, i) for i in range(3)] for s in (m - 2, m)}
    rm = {s: [generator(MINUS_K, s, i) for i in range(3)] for s in (m, m + 2)}
    brackets = {(i, j): BASIS[i].bracket(BASIS[j]) for i in range(3) for j in range(3)}
    n = dim(m)

    def run(check_id, provenance, residual_fn, pairs=True):
        with timed() as t:
            bad = None
            idx = [(i, j) for i in range(3) for j in range(3)] if pairs else [(i, i) for i in range(3)]
            for i, j in idx:
                res = residual_fn(i, j)
                if not res.is_zero():
                    bad = _residual_witness(m, i, j, res)
                    break
        rep.add(check_id, bad is None, {"m": m}, values={"pairs": len(idx)}, provenance=provenance,
                witness=bad, wall_time=t[0])

    def gram_adj(A, src, dst):
        if A.rows == 0 or A.cols == 0:
            return ExactMatrix.zeros(A.cols, A.rows)
        return gram_adjoint(A, G[src], G[dst])

    run("adjoint.zero", "(rho0_m(X))* = -rho0_m(X)",
        lambda i, j: gram_adj(r0[m][i], m, m) + r0[m][i], pairs=False)
    run("adjoint.plus", "(rho+_m(X))* = -rho-_{m+2}(X)",
        lambda i, j: gram_adj(rp[m][i], m, m + 2) + rm[m + 2][i], pairs=False)
    run("adjoint.minus", "(rho-_m(X))* = -rho+_{m-2}(X)",
        lambda i, j: gram_adj(rm[m][i], m, m - 2) + rp[m - 2][i], pairs=False)

    def br(kind, s, i, j):
        return _rho(kind, s, brackets[i, j])

    run("equivariance.zero", "rho0([X,Y]) = [rho0(X), rho0(Y)]",
        lambda i, j: br(ZERO_K, m, i, j) - (r0[m][i] @ r0[m][j] - r0[m][j] @ r0[m][i]))
    run("equivariance.plus", "rho+([X,Y]) = rho0_{m+2}(X) rho+(Y) - rho+(Y) rho0(X)",
        lambda i, j: br(PLUS_K, m, i, j) - (r0[m + 2][i] @ rp[m][j] - rp[m][j] @ r0[m][i]))
    run("equivariance.minus", "rho-([X,Y]) = rho0_{m-2}(X) rho-(Y) - rho-(Y) rho0(X)",
        lambda i, j: br(MINUS_K, m, i, j) - (r0[m - 2][i] @ rm[m][j] - rm[m][j] @ r0[m][i]))

    Id = ExactMatrix.identity(n)
    half = Fraction(1, 2)
    run("clifford.plus", "rho0_{m+2}(X) rho+(Y) - rho+(X) rho0(Y) = (m+2)/2 rho+([X,Y])",
        lambda i, j: r0[m + 2][i] @ rp[m][j] - rp[m][i] @ r0[m][j]
        - br(PLUS_K, m, i, j).scale(Fraction(m + 2, 2)))
    run("clifford.minus", "rho0_{m-2}(X) rho-(Y) - rho-(X) rho0(Y) = -m/2 rho-([X,Y])",
        lambda i, j: r0[m - 2][i] @ rm[m][j] - rm[m][i] @ r0[m][j]
        + br(MINUS_K, m, i, j).scale(Fraction(m, 2)))
    run("clifford.zero_minus", "rho0(X) rho0(Y) + rho+_{m-2}(X) rho-_m(Y) = m/2 rho0([X,Y]) - m^2 (X,Y)",
        lambda i, j: r0[m][i] @ r0[m][j] + rp[m - 2][i] @ rm[m][j]
        - br(ZERO_K, m, i, j).scale(half * m) + Id.scale(m * m * (i == j)))
    run("clifford.zero_plus",
        "rho0(X) rho0(Y) + rho-_{m+2}(X) rho+_m(Y) = -(m+2)/2 rho0([X,Y]) - (m+2)^2 (X,Y)",
        lambda i, j: r0[m][i] @ r0[m][j] + rm[m + 2][i] @ rp[m][j]
        + br(ZERO_K, m, i, j).scale(half * (m + 2)) + Id.scale((m + 2) ** 2 * (i == j)))

    with timed() as t:
        cas = ExactMatrix.zeros(n, n)
        for i in range(3):
            cas = cas - r0[m][i] @ r0[m][i]
        res = cas - Id.scale(m * (m + 2))
    rep.add("casimir", res.is_zero(), {"m": m}, values={"eigenvalue": m * (m + 2)},
            provenance="-sum_i rho0(e_i)^2 = m(m+2) I", witness={"m": m, "residual": res}, wall_time=t[0])
    return rep


def verify_algebra(m_max: int) -> VerificationReport:
    """Adjointness, infinitesimal equivariance, Clifford relations and Casimir, m <= m_max."""
    if m_max < 0:
        raise ValueError("m_max must be nonnegative")
    rep = VerificationReport("verify-algebra")
    for m in range(m_max + 1):
        rep.extend(_verify_spin(m))
    return rep


def verify_group_equivariance(m: int, g: GroupElement | ExactMatrix) -> VerificationReport:
    """rho^kind(g X g^-1) = rho_target(g) rho^kind(X) rho_m(g^-1) for X in e1, e2, e3."""
    if isinstance(g, ExactMatrix):
        g = GroupElement.from_matrix(g)
    elif not isinstance(g, GroupElement):
        raise TypeError("g must be a GroupElement or a 2x2 ExactMatrix")
    rep = VerificationReport("verify-equivariance")
    ginv = g.inverse()
    for kind in CliffordKind:
        target = kind.target(m)
        with timed() as t:
            bad = None
            for i, X in enumerate(BASIS):
                lhs = _rho(kind, m, g.conjugate_lie(X))
                if target < 0:
                    rhs = ExactMatrix.zeros(0, dim(m))
                else:
                    rhs = rep_group(target, g) @ _rho(kind, m, X) @ rep_group(m, ginv)
                if lhs != rhs:
                    bad = {"X": _LABELS[i], "residual": lhs - rhs}
                    break
        rep.add(f"group_equivariance.{kind.value}", bad is None, {"m": m, "g": str(g)},
                provenance="rho(g X g^-1) = rho(g) rho(X) rho(g^-1)", witness=bad, wall_time=t[0])
    return rep


# --- Clebsch-Gordan oracle -------------------------------------------------

# R^3 -> V_2 through e_i = sigma_i and the su(2) (x) C ~ V_2 correspondence
# z^0 <-> (sigma2 + i sigma3)/2, z^1 <-> i sigma1/2, z^2 <-> (sigma2 - i sigma3)/2.
_E_IN_V2 = (
    (ZERO, ExactScalar(0, -2), ZERO),
    (ExactScalar(1), ZERO, ExactScalar(1)),
    (-I, ZERO, I),
)

_EXPECTED_SQUARED = {
    ZERO_K: lambda m: Fraction(m * (m + 2), 4),
    PLUS_K: lambda m: Fraction((m + 1) * (m + 2), 2),
    MINUS_K: lambda m: Fraction(m * (m + 1), 2),
}


def _lie_in_v2(X: LieVector) -> list[ExactScalar]:
    out = [ZERO, ZERO, ZERO]
    for c, img in zip(X.coords, _E_IN_V2):
        for t in range(3):
            out[t] = out[t] + c * img[t]
    return out


def projection_map(kind: CliffordKind | str, m: int, X: LieVector) -> tuple[ExactMatrix, Fraction | None]:
    """v -> component of v (x) X in V_{target}, via the CG projection.

    Returns the matrix in the z basis of the target together with the scale
    factor t of the CG embedding (None when the component does not exist).
    """
    kind = CliffordKind(kind)
    j = kind.target(m)
    comp = next((c for c in cg_decompose(m, 2) if c.j == j), None) if m >= 0 else None
    if comp is None:
        return ExactMatrix.zeros(dim(j), dim(m)), None
    x = _lie_in_v2(X)
    # column k of the embedding V_m -> V_m (x) V_2 is z^k (x) x
    data = {}
    for k in range(dim(m)):
        for t in range(3):
            if x[t]:
                data[k * 3 + t, k] = x[t]
    tensor_X = ExactMatrix.from_dict(dim(m) * 3, dim(m), data)
    return comp.projection @ tensor_X, comp.scale_factor()


def cg_oracle_compare(m: int) -> VerificationReport:
    """Check each closed-form map is a fixed multiple of its CG projection map.

    The multiple is read off the first nonzero entry (over e1, e2, e3 then
    row-major); its squared modulus divided by the embedding scale must equal
    the square of the normalizing constant of the Clifford homomorphism.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    rep = VerificationReport("verify-cg")
    for kind in CliffordKind:
        with timed() as t:
            pairs = []
            scale = None
            for X in BASIS:
                proj, scale = projection_map(kind, m, X)
                pairs.append((_rho(kind, m, X), proj))
            ratio = None
            for closed, proj in pairs:
                for i, j, v in proj.nonzero_items():
                    ratio = closed[i, j] / v
                    break
                if ratio is not None:
                    break
            expected = _EXPECTED_SQUARED[kind](m)
            values = {"expected_constant_squared": expected}
            if ratio is None:
                ok = all(c.is_zero() for c, _ in pairs)
                witness = {"reason": "projection vanishes but closed form does not"}
                values["scalar"] = None
            else:
                mismatch = next((k for k, (c, p) in enumerate(pairs) if c != p.scale(ratio)), None)
                sq = ratio.abs2() / scale
                values.update({"scalar": ratio, "embedding_scale": scale, "constant_squared": sq})
                ok = mismatch is None and sq == expected
                witness = {"X": _LABELS[mismatch] if mismatch is not None else None,
                           "constant_squared": sq}
        rep.add(f"cg_proportional.{kind.value}", ok, {"m": m}, values=values,
                provenance="Clifford homomorphism = constant x orthogonal CG projection",
                witness=witness, wall_time=t[0])
    return rep


# --- principal symbol -------------------------------------------------------


def symbol_det(m: int, xi: LieVector) -> ExactScalar:
    """det rho_m^0(xi)."""
    return _rho(ZERO_K, m, xi).det()


def symbol_det_poly(m: int) -> Poly:
    """det rho_m^0(xi) as a polynomial in xi1, xi2, xi3."""
    xs = [Poly.var(i, 3) for i in range(3)]
    n = dim(m)
    gens = [generator(ZERO_K, m, i) for i in range(3)]
    mat = [[sum((xs[i] * gens[i][r, c] for i in range(3)), Poly(3)) for c in range(n)] for r in range(n)]
    return poly_det(mat)


def expected_symbol_poly(m: int) -> Poly:
    """(xi1^2 + xi2^2 + xi3^2)^((m+1)/2) * prod_k i(2k - m) for odd m; zero for even m."""
    if m % 2 == 0:
        return Poly(3)
    xs = [Poly.var(i, 3) for i in range(3)]
    norm2 = xs[0] * xs[0] + xs[1] * xs[1] + xs[2] * xs[2]
    const = ExactScalar(1)
    for k in range(m + 1):
        const = const * ExactScalar(0, 2 * k - m)
    return (norm2 ** ((m + 1) // 2)) * const


def verify_symbol(m_odd_max: int = 9, m_even_max: int = 8) -> VerificationReport:
    rep = VerificationReport("verify-algebra")
    for m in range(max(m_odd_max, m_even_max) + 1):
        if (m % 2 and m > m_odd_max) or (m % 2 == 0 and m > m_even_max):
            continue
        with timed() as t:
            got = symbol_det_poly(m)
            want = expected_symbol_poly(m)
        rep.add("symbol_det", got == want, {"m": m},
                values={"terms": len(got.terms), "vanishes": got.is_zero()},
                provenance="det rho0_m(xi) = |xi|^(m+1) prod_k i(2k-m)",
                witness={"difference_terms": len((got - want).terms)}, wall_time=t[0])
    return rep


# --- flat torus -------------------------------------------------------------


@dataclass
class TorusKernels:
    m: int
    d0: int | None
    dplus: int
    lap: int | None
    laptilde: int
    certificate: VerificationReport

    @property
    def pair(self) -> tuple[int | None, int]:
        return (self.d0, self.dplus)


def torus_kernel_dims(m: int) -> TorusKernels:
    """Kernel dimensions on the flat 3-torus by Fourier-symbol analysis.

    Only the zero mode (constants, a copy of V_m) can be in a kernel once the
    symbols at e1 are shown injective; rotation equivariance moves any nonzero
    frequency to a positive multiple of e1.  ``d0`` is None for even m (the
    symbol is singular, so the kernel is infinite-dimensional), and ``lap`` is
    None for m = 0 where that Laplacian vanishes identically.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    rep = VerificationReport("torus")
    n = dim(m)
    e1 = BASIS[0]
    plus = _rho(PLUS_K, m, e1)
    r = rank(plus)
    rep.add("torus.dplus_symbol_injective", r == n, {"m": m}, values={"rank": r},
            provenance="rank rho+_m(e1) = m+1", witness={"rank": r})
    zero = _rho(ZERO_K, m, e1)
    det0 = zero.det()
    if m % 2:
        rep.add("torus.d0_symbol_invertible", bool(det0), {"m": m}, values={"det": det0},
                provenance="det rho0_m(e1) != 0 for odd m", witness={"det": det0})
    sym_lap = zero @ zero + _rho(PLUS_K, m - 2, e1) @ _rho(MINUS_K, m, e1) if m >= 2 else zero @ zero
    sym_lt = zero @ zero + _rho(MINUS_K, m + 2, e1) @ plus
    Id = ExactMatrix.identity(n)
    rep.add("torus.lap_symbol", sym_lap == Id.scale(-m * m), {"m": m},
            provenance="symbol of Delta_m at e1 is m^2 |e1|^2", witness={"symbol": sym_lap})
    rep.add("torus.laptilde_symbol", sym_lt == Id.scale(-(m + 2) ** 2), {"m": m},
            provenance="symbol of tilde Delta_m at e1 is (m+2)^2 |e1|^2", witness={"symbol": sym_lt})
    for g in TEST_GROUP_ELEMENTS:
        eq = verify_group_equivariance(m, g)
        rep.add("torus.rotation_equivariance", eq.passed, {"m": m, "g": str(g)},
                provenance="rho(g X g^-1) = rho(g) rho(X) rho(g^-1)",
                witness=[e.to_dict() for e in eq.failures])
    return TorusKernels(
        m=m,
        d0=n if m % 2 else None,
        dplus=n,
        lap=n if m >= 1 else None,
        laptilde=n,
        certificate=rep,
    )
