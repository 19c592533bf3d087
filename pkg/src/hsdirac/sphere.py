"""Higher spin Dirac operators on the unit 3-sphere as exact finite blocks.

S^3 is realized as SU(2) through x -> [[x4 + i x1, x2 + i x3], [-x2 + i x3, x4 - i x1]].
Sections of the spin-m/2 bundle are V_m-valued functions in the trivialization
(pq^-1, rho_m(p) v), and the operators read

    D0_m = m(m+2)/2 + sum_i rho0_m(e_i) Z_i,      D+-_m = sum_i rho+-_m(e_i) Z_i

with Z_i the right-invariant fields of :data:`hsdirac.poly.Z_FIELDS`.

Every operator preserves W(n, m) = span{f_ab} (x) V_m, where f_ab are the
degree-n matrix coefficients of rho_n(h(x)).  W(n, m) carries the Spin(4)
blocks E_{k,n} for |n-m| <= k <= n+m, k = n+m mod 2 (or E_{n,k}, depending on
the labeling fixed by :func:`resolve_labeling`).  Spectra are found by testing
the closed-form candidate eigenvalues exactly: nullities must add up to the
block dimension and the product of (A - lambda I) over candidates must vanish.
No numerical eigensolver is involved.
"""

from __future__ import annotations

import enum
import json
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from pathlib import Path
from typing import Callable, Iterable

from .clifford import CliffordKind, generator
from .exact import (
    ExactMatrix,
    ExactScalar,
    InconsistentSystemError,
    gram_adjoint,
    nullity,
    nullspace,
    rank,
    solve,
)
from .poly import Poly, apply_derivation, coordinates, Z_FIELDS
from .report import VerificationReport, timed
from .su2 import dim, gram_matrix

__all__ = [
    "OperatorKind",
    "CoeffBasis",
    "coeff_basis",
    "z_matrices",
    "OperatorBlock",
    "operator_block",
    "section_dim",
    "block_gram",
    "gram_by_moments",
    "sphere_moment",
    "verify_gram",
    "resolve_labeling",
    "predicted_blocks",
    "closed_form",
    "SpectrumReport",
    "spectrum_block",
    "KernelResult",
    "KernelUnboundedError",
    "kernel_dimension",
    "required_degree",
    "verify_s3_identities",
    "verify_adjoint_blocks",
    "BoundsReport",
    "check_eigenvalue_bounds",
    "BlockCache",
    "InvarianceError",
]

CACHE_FORMAT = "hsdirac-block/1"


class InvarianceError(ArithmeticError):
    """A re-expression in a supposedly invariant basis left a residual."""


class KernelUnboundedError(ValueError):
    """The closed forms vanish on infinitely many blocks; no finite kernel."""


class OperatorKind(str, enum.Enum):
    D0 = "d0"
    DPLUS = "dplus"
    DMINUS = "dminus"
    LAP = "lap"
    LAPTILDE = "laptilde"
    ZSQ = "zsq"
    DPDM = "dpdm"  # D+_{m-2} D-_m
    DMDP = "dmdp"  # D-_{m+2} D+_m

    @classmethod
    def _missing_(cls, value):
        # accept the long spellings too: "Dplus", "LapTilde", "ZiSquaredSum", ...
        if isinstance(value, str):
            key = value.lower().replace("_", "").replace("-", "")
            key = {"zisquaredsum": "zsq", "dplusdminus": "dpdm", "dminusdplus": "dmdp"}.get(key, key)
            for member in cls:
                if member.value == key:
                    return member
        return None

    def target(self, m: int) -> int:
        return m + {"dplus": 2, "dminus": -2}.get(self.value, 0)


SPECTRAL_KINDS = (OperatorKind.D0, OperatorKind.DPDM, OperatorKind.DMDP, OperatorKind.LAP, OperatorKind.LAPTILDE)


# --- matrix coefficients ------------------------------------------------------


@dataclass(frozen=True)
class CoeffBasis:
    """Entries f_ab of rho_n(h(x)), row-major in (a, b)."""

    n: int
    entries: tuple[Poly, ...]

    def monomials(self) -> list[tuple[int, ...]]:
        return sorted(set().union(*(p.monomials() for p in self.entries)))

    def coefficient_matrix(self, polys: Iterable[Poly] | None = None) -> ExactMatrix:
        """Monomial coefficients (rows) of the given polynomials (columns)."""
        mons = self.monomials()
        polys = list(self.entries if polys is None else polys)
        data = {}
        for c, p in enumerate(polys):
            for mon, v in p.terms.items():
                data[mons.index(mon), c] = v
        return ExactMatrix.from_dict(len(mons), len(polys), data)

    def is_independent(self) -> bool:
        return rank(self.coefficient_matrix()) == len(self.entries)


def _sphere_point_entries() -> tuple[Poly, Poly, Poly, Poly]:
    x1, x2, x3, x4 = coordinates(4)
    i = ExactScalar(0, 1)
    a = x4 + x1 * i
    b = x2 + x3 * i
    c = -x2 + x3 * i
    d = x4 - x1 * i
    return a, b, c, d


@lru_cache(maxsize=None)
def coeff_basis(n: int) -> CoeffBasis:
    """Expand rho_n(h(x)) symbolically; column k is (b z + d)^{n-k} (a z + c)^k."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    a, b, c, d = _sphere_point_entries()
    one = Poly.constant(4)
    cols = []
    for k in range(n + 1):
        # coefficients in z, lowest power first
        poly = [one]
        for lin in [[d, b]] * (n - k) + [[c, a]] * k:
            nxt = [Poly(4)] * (len(poly) + 1)
            for t, p in enumerate(poly):
                nxt[t] = nxt[t] + p * lin[0]
                nxt[t + 1] = nxt[t + 1] + p * lin[1]
            poly = nxt
        cols.append(poly)
    entries = tuple(cols[bcol][arow] for arow in range(n + 1) for bcol in range(n + 1))
    basis = CoeffBasis(n, entries)
    if not basis.is_independent():
        raise InvarianceError(f"matrix coefficients of degree {n} are dependent")
    return basis


@lru_cache(maxsize=None)
def z_matrices(n: int) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """Matrices of Z_1, Z_2, Z_3 on span{f_ab}, found by exact re-expression."""
    basis = coeff_basis(n)
    M = basis.coefficient_matrix()
    out = []
    for field_coeffs in Z_FIELDS:
        images = [apply_derivation(field_coeffs, f) for f in basis.entries]
        mons = set(basis.monomials())
        if any(not set(p.monomials()) <= mons for p in images):
            raise InvarianceError(f"Z field leaves the degree-{n} coefficient span")
        try:
            out.append(solve(M, basis.coefficient_matrix(images)))
        except InconsistentSystemError as exc:
            raise InvarianceError(f"Z field leaves the degree-{n} coefficient span") from exc
    return tuple(out)


def section_dim(n: int, m: int) -> int:
    return (n + 1) ** 2 * dim(m)


# --- operator blocks ----------------------------------------------------------


@dataclass(frozen=True)
class OperatorBlock:
    kind: OperatorKind
    m: int
    n: int
    matrix: ExactMatrix

    @property
    def source(self) -> tuple[int, int]:
        return (self.n, self.m)

    @property
    def target(self) -> tuple[int, int]:
        return (self.n, self.kind.target(self.m))

    def __matmul__(self, other: "OperatorBlock") -> ExactMatrix:
        if other.target != self.source:
            raise ValueError(f"cannot compose {self.kind.value}{self.source} after {other.kind.value}{other.target}")
        return self.matrix @ other.matrix


class BlockCache:
    """On-disk store of operator blocks, one JSON document per (kind, m, n)."""

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def path(self, kind: OperatorKind, m: int, n: int) -> Path:
        return self.directory / f"{kind.value}_m{m}_n{n}.json"

    def load(self, kind: OperatorKind, m: int, n: int) -> ExactMatrix | None:
        p = self.path(kind, m, n)
        try:
            doc = json.loads(p.read_text())
        except (OSError, ValueError):
            return None
        expected = (section_dim(n, kind.target(m)), section_dim(n, m))
        if (
            doc.get("format") != CACHE_FORMAT
            or (doc.get("kind"), doc.get("m"), doc.get("n")) != (kind.value, m, n)
            or (doc.get("matrix", {}).get("rows"), doc.get("matrix", {}).get("cols")) != expected
        ):
            return None
        try:
            mat = ExactMatrix.from_json(doc["matrix"])
        except (KeyError, ValueError, TypeError):
            return None
        return mat if mat.shape == expected else None

    def store(self, kind: OperatorKind, m: int, n: int, matrix: ExactMatrix) -> None:
        self.directory.mkdir(parents=True, exist_ok=True)
        doc = {"format": CACHE_FORMAT, "kind": kind.value, "m": m, "n": n, "matrix": matrix.to_json()}
        tmp = self.path(kind, m, n).with_suffix(".tmp")
        tmp.write_text(json.dumps(doc))
        tmp.replace(self.path(kind, m, n))


def _first_order(kind: CliffordKind, m: int, n: int) -> ExactMatrix:
    Z = z_matrices(n)
    rows, cols = section_dim(n, kind.target(m)), section_dim(n, m)
    out = ExactMatrix.zeros(rows, cols)
    for i in range(3):
        out = out + Z[i].kron(generator(kind, m, i))
    return out


@lru_cache(maxsize=None)
def _block_matrix(kind: OperatorKind, m: int, n: int) -> ExactMatrix:
    K = OperatorKind
    if kind is K.D0:
        return _first_order(CliffordKind.ZERO, m, n).add_scalar(Fraction(m * (m + 2), 2))
    if kind is K.DPLUS:
        return _first_order(CliffordKind.PLUS, m, n)
    if kind is K.DMINUS:
        return _first_order(CliffordKind.MINUS, m, n)
    if kind is K.ZSQ:
        Z = z_matrices(n)
        sq = Z[0] @ Z[0] + Z[1] @ Z[1] + Z[2] @ Z[2]
        return sq.kron(ExactMatrix.identity(dim(m)))
    if kind is K.DPDM:
        if m < 2:
            return ExactMatrix.zeros(section_dim(n, m), section_dim(n, m))
        return _block_matrix(K.DPLUS, m - 2, n) @ _block_matrix(K.DMINUS, m, n)
    if kind is K.DMDP:
        return _block_matrix(K.DMINUS, m + 2, n) @ _block_matrix(K.DPLUS, m, n)
    d0 = _block_matrix(K.D0, m, n)
    if kind is K.LAP:
        return d0 @ d0 + _block_matrix(K.DPDM, m, n)
    if kind is K.LAPTILDE:
        return d0 @ d0 + _block_matrix(K.DMDP, m, n)
    raise ValueError(kind)


def operator_block(kind: OperatorKind | str, m: int, n: int, cache: BlockCache | None = None) -> OperatorBlock:
    """Exact matrix of an operator on W(n, m) in the basis f_ab (x) z^j."""
    kind = OperatorKind(kind)
    if m < 0 or n < 0:
        raise ValueError("spin and degree must be nonnegative")
    if cache is not None:
        mat = cache.load(kind, m, n)
        if mat is None:
            mat = _block_matrix(kind, m, n)
            cache.store(kind, m, n, mat)
    else:
        mat = _block_matrix(kind, m, n)
    return OperatorBlock(kind, m, n, mat)


# --- L^2 Gram ----------------------------------------------------------------


def _coeff_gram_schur(n: int) -> ExactMatrix:
    g = [factorial(k) * factorial(n - k) for k in range(n + 1)]
    return ExactMatrix.diag(Fraction(g[b], g[a] * (n + 1)) for a in range(n + 1) for b in range(n + 1))


@lru_cache(maxsize=None)
def block_gram(n: int, m: int) -> ExactMatrix:
    """L^2 Gram of W(n, m) for normalized Haar measure (Schur orthogonality)."""
    return _coeff_gram_schur(n).kron(gram_matrix(m))


def _double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def sphere_moment(exponents: tuple[int, int, int, int]) -> Fraction:
    """Mean of x^alpha over S^3 under the normalized measure."""
    if any(e % 2 for e in exponents):
        return Fraction(0)
    half = [e // 2 for e in exponents]
    total = sum(half)
    num = 1
    for h in half:
        num *= _double_factorial(2 * h - 1)
    return Fraction(num, 2 ** total * factorial(total + 1))


def _integrate(p: Poly) -> ExactScalar:
    acc = ExactScalar(0)
    for mon, c in p.terms.items():
        w = sphere_moment(mon)
        if w:
            acc = acc + c * w
    return acc


def _conj(p: Poly) -> Poly:
    return Poly(p.nvars, {e: c.conjugate() for e, c in p.terms.items()})


def gram_by_moments(n: int, m: int) -> ExactMatrix:
    """Same Gram as :func:`block_gram`, by integrating monomials over S^3."""
    fs = coeff_basis(n).entries
    N = len(fs)
    conj = [_conj(f) for f in fs]
    data = {}
    for p in range(N):
        for q in range(N):
            v = _integrate(fs[q] * conj[p])
            if v:
                data[p, q] = v
    return ExactMatrix.from_dict(N, N, data).kron(gram_matrix(m))


def verify_gram(n: int, m: int = 0) -> VerificationReport:
    rep = VerificationReport("verify-s3")
    with timed() as t:
        a, b = block_gram(n, m), gram_by_moments(n, m)
    rep.add("gram.schur_vs_moments", a == b, {"n": n, "m": m},
            provenance="L2 Gram by Schur orthogonality = Gram by monomial moments",
            witness={"difference": a - b}, wall_time=t[0])
    return rep


# --- closed forms -------------------------------------------------------------


@lru_cache(maxsize=None)
def resolve_labeling() -> str:
    """Which Spin(4) label W(n, m) carries: "E(k,n)" or "E(n,k)".

    Fixed by the (m=1, n=0) block of D0, which is +3/2 on E_{1,0} and -3/2 on
    E_{0,1}.
    """
    A = _block_matrix(OperatorKind.D0, 1, 0)
    if A == ExactMatrix.identity(2).scale(Fraction(3, 2)):
        return "E(k,n)"
    if A == ExactMatrix.identity(2).scale(Fraction(-3, 2)):
        return "E(n,k)"
    raise ArithmeticError("D0 on W(0,1) is not +-3/2; conventions are inconsistent")


# A closed form for fixed (m, s) is a list of terms (coef, [(a, b), ...]) meaning
# coef * prod (a k' + b), with k' the smaller index of the block.
Term = tuple[Fraction, list[tuple[int, Fraction]]]


def _terms(kind: OperatorKind, m: int, s: int, sign: int) -> list[Term]:
    p = m // 2
    F = Fraction
    odd = m % 2
    if odd:
        d0 = [(F(sign * (2 * s + 1)), [(1, F(2 * s + 3, 2))])]
        dpdm = [(F(4), [(0, F(p - s)), (1, F(1 - (p - s))), (0, F(p + s + 1)), (1, F(p + s + 2))])]
        dmdp = [(F(4), [(0, F(p - s + 1)), (1, F(-(p - s))), (0, F(p + s + 2)), (1, F(p + s + 3))])]
    else:
        d0 = [(F(sign * 2 * s), [(1, F(s + 1))])]
        dpdm = [(F(4), [(0, F(p - s)), (1, F(1 - (p - s))), (0, F(p + s)), (1, F(p + s + 1))])]
        dmdp = [(F(4), [(0, F(p - s + 1)), (1, F(-(p - s))), (0, F(p + s + 1)), (1, F(p + s + 2))])]
    d0sq = [(c * c, f + f) for c, f in d0]
    K = OperatorKind
    table = {K.D0: d0, K.DPDM: dpdm, K.DMDP: dmdp, K.LAP: d0sq + dpdm, K.LAPTILDE: d0sq + dmdp}
    if kind not in table:
        raise ValueError(f"no closed form for {kind.value}")
    return table[kind]


def _evaluate(terms: list[Term], kp: int) -> Fraction:
    total = Fraction(0)
    for c, factors in terms:
        v = c
        for a, b in factors:
            v *= a * kp + b
        total += v
    return total


@dataclass(frozen=True)
class BlockLabel:
    """One Spin(4) summand E_{left,right} of W(n, m)."""

    left: int
    right: int
    s: int
    kp: int
    sign: int  # +1: left > right, -1: left < right, 0: diagonal

    @property
    def dim(self) -> int:
        return (self.left + 1) * (self.right + 1)

    def __str__(self):
        return f"E_{{{self.left},{self.right}}}"


def _label(left: int, right: int, m: int) -> BlockLabel:
    d = abs(left - right)
    s = (d - 1) // 2 if m % 2 else d // 2
    sign = (left > right) - (left < right)
    return BlockLabel(left, right, s, min(left, right), sign)


def predicted_blocks(m: int, n: int) -> list[BlockLabel]:
    """Spin(4) summands of W(n, m) under the resolved labeling."""
    flipped = resolve_labeling() == "E(n,k)"
    out = []
    for k in range(abs(n - m), n + m + 1, 2):
        left, right = (n, k) if flipped else (k, n)
        out.append(_label(left, right, m))
    return out


def closed_form(kind: OperatorKind | str, m: int, label: BlockLabel) -> Fraction:
    kind = OperatorKind(kind)
    return _evaluate(_terms(kind, m, label.s, label.sign), label.kp)


# --- spectra -----------------------------------------------------------------


@dataclass
class SpectrumReport:
    operator: str
    m: int
    n: int
    dimension: int
    labeling: str
    eigenvalues: list[tuple[Fraction, int, list[str]]]
    status: str
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self) -> dict[Fraction, int]:
        return {lam: mult for lam, mult, _ in self.eigenvalues}

    def to_json(self) -> dict:
        return {
            "operator": self.operator,
            "m": self.m,
            "n": self.n,
            "dimension": self.dimension,
            "labeling": self.labeling,
            "eigenvalues": [
                {"eigenvalue": str(lam), "multiplicity": mult, "blocks": labels}
                for lam, mult, labels in self.eigenvalues
            ],
            "status": self.status,
            "details": {k: (str(v) if isinstance(v, Fraction) else v) for k, v in self.details.items()},
        }


def spectrum_block(m: int, n: int, operator: OperatorKind | str = OperatorKind.D0,
                   cache: BlockCache | None = None) -> SpectrumReport:
    """Exact spectrum of an operator on W(n, m) from closed-form candidates."""
    kind = OperatorKind(operator)
    if kind not in SPECTRAL_KINDS:
        raise ValueError(f"{kind.value} is not an endomorphism with a closed-form spectrum")
    A = operator_block(kind, m, n, cache).matrix
    N = A.rows
    predicted: dict[Fraction, list[BlockLabel]] = {}
    for lab in predicted_blocks(m, n):
        predicted.setdefault(closed_form(kind, m, lab), []).append(lab)
    eigen = []
    mismatches = []
    total = 0
    product = ExactMatrix.identity(N)
    for lam in sorted(predicted):
        shifted = A.add_scalar(-lam)
        mult = nullity(shifted)
        expected = sum(lab.dim for lab in predicted[lam])
        if mult != expected:
            mismatches.append({"eigenvalue": str(lam), "nullity": mult, "predicted": expected})
        total += mult
        product = product @ shifted
        if mult:
            eigen.append((lam, mult, [str(lab) for lab in predicted[lam]]))
    product_zero = product.is_zero()
    ok = total == N and product_zero and not mismatches
    details = {"nullity_sum": total, "annihilating_product_zero": product_zero}
    if mismatches:
        details["mismatches"] = mismatches
    if total != N:
        details["unaccounted"] = N - total
        details["residual_rank"] = rank(product)
    return SpectrumReport(kind.value, m, n, N, resolve_labeling(), eigen, "pass" if ok else "fail", details)


# --- kernels -----------------------------------------------------------------


_KERNEL_FORMS = {
    OperatorKind.D0: OperatorKind.D0,
    OperatorKind.DPLUS: OperatorKind.DMDP,  # ker D+ = ker (D+)* D+
    OperatorKind.DMINUS: OperatorKind.DPDM,
    OperatorKind.DMDP: OperatorKind.DMDP,
    OperatorKind.DPDM: OperatorKind.DPDM,
    OperatorKind.LAP: OperatorKind.LAP,
    OperatorKind.LAPTILDE: OperatorKind.LAPTILDE,
}


def _s_range(m: int) -> list[tuple[int, int]]:
    """(s, smallest k') pairs indexing the summands of L^2(S^3, S_m)."""
    p = m // 2
    if m % 2:
        return [(s, p - s) for s in range(p + 1)]
    return [(0, p)] + [(s, p - s) for s in range(1, p + 1)]


def _zero_locus(terms: list[Term], k0: int) -> set[int] | None:
    """k' >= k0 where the sum of terms vanishes; None means for every k'.

    Multi-term forms must be sums of nonnegative terms on the domain, so the
    sum vanishes exactly where every term does.
    """
    if len(terms) > 1:
        for c, factors in terms:
            if c < 0 or any(a < 0 or a * k0 + b < 0 for a, b in factors):
                raise ArithmeticError("closed form is not a sum of nonnegative terms")
    locus: set[int] | None = None
    for c, factors in terms:
        if c == 0 or any(a == 0 and b == 0 for a, b in factors):
            zeros = None
        else:
            zeros = set()
            for a, b in factors:
                if a:
                    root = -b / a
                    if root.denominator == 1 and root >= k0:
                        zeros.add(int(root))
        if zeros is None:
            continue
        locus = zeros if locus is None else locus & zeros
    return locus


def _kernel_blocks(kind: OperatorKind, m: int) -> list[tuple[BlockLabel, int]]:
    """Blocks (label, degree n) on which the closed form of ``kind`` vanishes."""
    form = _KERNEL_FORMS[kind]
    flipped = resolve_labeling() == "E(n,k)"
    out = []
    for s, k0 in _s_range(m):
        d = 2 * s + 1 if m % 2 else 2 * s
        signs = (1, -1) if d else (0,)
        for sign in signs:
            locus = _zero_locus(_terms(form, m, s, sign), k0)
            if locus is None:
                raise KernelUnboundedError(
                    f"closed form of {kind.value} vanishes on every block with s={s}; kernel is infinite-dimensional"
                )
            for kp in sorted(locus):
                left, right = (kp + d, kp) if sign >= 0 else (kp, kp + d)
                lab = BlockLabel(left, right, s, kp, sign)
                n = left if flipped else right
                out.append((lab, n))
    return out


def required_degree(kind: OperatorKind | str, m: int) -> int:
    """Smallest n_max such that every kernel-carrying block has degree <= n_max."""
    blocks = _kernel_blocks(OperatorKind(kind), m)
    return max((n for _, n in blocks), default=0)


@dataclass
class KernelResult:
    kind: str
    m: int
    n_max: int
    dimension: int
    per_degree: dict[int, int]
    predicted: int
    required_degree: int
    certificate: str
    status: str

    def to_json(self) -> dict:
        return {
            "operator": self.kind,
            "m": self.m,
            "n_max": self.n_max,
            "dimension": self.dimension,
            "per_degree": {str(k): v for k, v in self.per_degree.items()},
            "predicted": self.predicted,
            "required_degree": self.required_degree,
            "certificate": self.certificate,
            "status": self.status,
        }


def kernel_dimension(kind: OperatorKind | str, m: int, n_max: int | None = None,
                     cache: BlockCache | None = None) -> KernelResult:
    """dim ker of an operator on L^2(S^3, S_m), summed over degrees n <= n_max.

    Raises ValueError when n_max is below the degree the closed forms require,
    and :class:`KernelUnboundedError` when the kernel is infinite-dimensional.
    """
    kind = OperatorKind(kind)
    if kind not in _KERNEL_FORMS:
        raise ValueError(f"no kernel closed form for {kind.value}")
    blocks = _kernel_blocks(kind, m)
    need = max((n for _, n in blocks), default=0)
    if n_max is None:
        n_max = need
    if n_max < need:
        raise ValueError(f"n_max={n_max} is too small: kernel blocks reach degree {need}")
    per_degree = {}
    for n in range(n_max + 1):
        per_degree[n] = nullity(operator_block(kind, m, n, cache).matrix)
    total = sum(per_degree.values())
    predicted = sum(lab.dim for lab, _ in blocks)
    cert = (
        f"closed form of {_KERNEL_FORMS[kind].value} vanishes only on "
        + (", ".join(f"{lab} (n={n})" for lab, n in blocks) or "no block")
        + f"; every factor is linear in k' with nonnegative slope and positive beyond its root, "
        f"so no block of degree > {need} contributes"
    )
    ok = total == predicted and all(v == 0 for n, v in per_degree.items() if n > need)
    return KernelResult(kind.value, m, n_max, total, per_degree, predicted, need, cert, "pass" if ok else "fail")


# --- identities ---------------------------------------------------------------


def verify_s3_identities(m: int, n: int, cache: BlockCache | None = None) -> VerificationReport:
    """Constant-curvature commutations and the Laplacian formulas on W(n, m)."""
    K = OperatorKind
    rep = VerificationReport("verify-s3")
    params = {"m": m, "n": n}

    def blk(kind, mm):
        return operator_block(kind, mm, n, cache).matrix

    def add(check_id, provenance, fn):
        with timed() as t:
            res = fn()
        rep.add(check_id, res.is_zero(), params, provenance=provenance,
                witness={"residual_nnz": res.nnz, "residual": res}, wall_time=t[0])

    d0 = blk(K.D0, m)
    zsq = blk(K.ZSQ, m)
    lap, lapt = blk(K.LAP, m), blk(K.LAPTILDE, m)
    N = d0.rows
    Id = ExactMatrix.identity(N)
    F = Fraction
    add("s3.commute_plus", "D0_{m+2} D+_m - D+_m D0_m = 0",
        lambda: blk(K.D0, m + 2) @ blk(K.DPLUS, m) - blk(K.DPLUS, m) @ d0)
    if m >= 2:
        add("s3.commute_minus", "D0_{m-2} D-_m - D-_m D0_m = 0",
            lambda: blk(K.D0, m - 2) @ blk(K.DMINUS, m) - blk(K.DMINUS, m) @ d0)
    else:
        add("s3.commute_minus", "D0_{m-2} D-_m - D-_m D0_m = 0",
            lambda: ExactMatrix.zeros(0, N))
    add("s3.laplacian", "Delta_m = -m^2 sum Z_i^2 + m^2 D0_m - m^2(m+2)(m-2)/4",
        lambda: lap + zsq.scale(m * m) - d0.scale(m * m) + Id.scale(F(m * m * (m + 2) * (m - 2), 4)))
    add("s3.laplacian_tilde", "tilde Delta_m = -(m+2)^2 sum Z_i^2 + (m+2)^2 D0_m - m(m+2)^2(m+4)/4",
        lambda: lapt + zsq.scale((m + 2) ** 2) - d0.scale((m + 2) ** 2)
        + Id.scale(F(m * (m + 2) ** 2 * (m + 4), 4)))
    curv = m * (m + 2)
    add("s3.scalar_curvature", "(m+2)^2 Delta_m - m^2 tilde Delta_m = m(m+1)(m+2) R0, R0 = m(m+2)",
        lambda: lap.scale((m + 2) ** 2) - lapt.scale(m * m) - Id.scale(m * (m + 1) * (m + 2) * curv))
    add("s3.lap_commutes_d0", "Delta_m D0_m = D0_m Delta_m", lambda: lap @ d0 - d0 @ lap)
    add("s3.laptilde_commutes_d0", "tilde Delta_m D0_m = D0_m tilde Delta_m", lambda: lapt @ d0 - d0 @ lapt)
    return rep


def verify_adjoint_blocks(m: int, n: int, cache: BlockCache | None = None) -> VerificationReport:
    """Formal adjointness of the block matrices under the L^2 Gram."""
    K = OperatorKind
    rep = VerificationReport("verify-s3")
    params = {"m": m, "n": n}
    G = block_gram(n, m)

    def add(check_id, provenance, lhs_fn, rhs_fn):
        with timed() as t:
            lhs, rhs = lhs_fn(), rhs_fn()
        rep.add(check_id, lhs == rhs, params, provenance=provenance,
                witness={"residual": lhs - rhs}, wall_time=t[0])

    d0 = operator_block(K.D0, m, n, cache).matrix
    add("adjoint.d0", "(D0_m)* = D0_m", lambda: gram_adjoint(d0, G, G), lambda: d0)
    dp = operator_block(K.DPLUS, m, n, cache).matrix
    add("adjoint.dplus", "(D+_m)* = D-_{m+2}",
        lambda: gram_adjoint(dp, G, block_gram(n, m + 2)),
        lambda: operator_block(K.DMINUS, m + 2, n, cache).matrix)
    if m >= 2:
        dm = operator_block(K.DMINUS, m, n, cache).matrix
        add("adjoint.dminus", "(D-_m)* = D+_{m-2}",
            lambda: gram_adjoint(dm, G, block_gram(n, m - 2)),
            lambda: operator_block(K.DPLUS, m - 2, n, cache).matrix)
    return rep


# --- eigenvalue bounds ----------------------------------------------------------


@dataclass
class BoundsReport:
    m: int
    n_max: int
    lambda1: Fraction
    mu1: Fraction
    lambda_bound: Fraction
    mu_bound: Fraction | None
    checks: VerificationReport

    @property
    def passed(self) -> bool:
        return self.checks.passed


def _min_eigen(kind: OperatorKind, m: int, n_max: int, cache) -> tuple[Fraction, list[int], list[SpectrumReport]]:
    reports = [spectrum_block(m, n, kind, cache) for n in range(n_max + 1)]
    lam = min(r.eigenvalues[0][0] for r in reports)
    where = [r.n for r in reports if r.as_dict().get(lam)]
    return lam, where, reports


def _eigvecs_in_kernel(kind: OperatorKind, lam: Fraction, other: OperatorKind | CliffordKind,
                       m: int, degrees: list[int], cache) -> bool:
    for n in degrees:
        A = operator_block(kind, m, n, cache).matrix
        B = operator_block(other, m, n, cache).matrix
        for v in nullspace(A.add_scalar(-lam)):
            if not (B @ v).is_zero():
                return False
    return True


def check_eigenvalue_bounds(m: int, n_max: int = 6, cache: BlockCache | None = None) -> BoundsReport:
    """First eigenvalues of both Laplacians against the curvature lower bounds.

    On the unit sphere the curvature term R0_m equals m(m+2), so both bound
    constants r_{m-} and r_{m+} are m(m+2); the scalar curvature is 6.
    """
    K = OperatorKind
    rep = VerificationReport("bounds")
    r = Fraction(m * (m + 2))
    lam1, lam_at, lam_reports = _min_eigen(K.LAP, m, n_max, cache)
    mu1, mu_at, mu_reports = _min_eigen(K.LAPTILDE, m, n_max, cache)
    spectra_ok = all(s.passed for s in lam_reports + mu_reports)
    rep.add("bounds.spectra_complete", spectra_ok, {"m": m, "n_max": n_max},
            provenance="spectra of both Laplacians fully accounted",
            witness=[s.to_json() for s in lam_reports + mu_reports if not s.passed])

    lam_bound = Fraction(m * (m + 1), m + 2) * r
    values = {"lambda1": lam1, "bound": lam_bound, "attained_at_degrees": lam_at}
    rep.add("bounds.lambda1", lam1 >= lam_bound, {"m": m, "n_max": n_max}, values=values,
            provenance="lambda1(Delta_m) >= m(m+1)/(m+2) r_{m-}", witness=values)
    if lam1 == lam_bound and m >= 1:
        ok = _eigvecs_in_kernel(K.LAP, lam1, K.LAPTILDE, m, lam_at, cache)
        rep.add("bounds.lambda1_equality_kernel", ok, {"m": m},
                values={"lambda1": lam1},
                provenance="equality => eigenvectors lie in ker tilde Delta_m",
                witness={"degrees": lam_at})

    mu_bound = None
    if m >= 1:
        mu_bound = -Fraction((m + 2) * (m + 1), m) * r
        values = {"mu1": mu1, "bound": mu_bound}
        rep.add("bounds.mu1", mu1 >= mu_bound, {"m": m, "n_max": n_max}, values=values,
                provenance="mu1(tilde Delta_m) >= -(m+2)(m+1)/m r_{m+}", witness=values)
    rep.add("bounds.mu1_nonnegative", mu1 >= 0, {"m": m}, values={"mu1": mu1},
            provenance="tilde Delta_m is nonnegative", witness={"mu1": mu1})

    if m == 1:
        kappa = 6
        fr = Fraction(3, 8) * kappa
        values = {"lambda1": lam1, "bound": fr, "equality": lam1 == fr}
        rep.add("bounds.friedrich", lam1 >= fr, {"m": 1}, values=values,
                provenance="lambda1(D)^2 >= 3/8 kappa, kappa = 6", witness=values)
        if lam1 == fr:
            ok = _eigvecs_in_kernel(K.LAP, lam1, K.DPLUS, 1, lam_at, cache)
            rep.add("bounds.friedrich_twistor", ok, {"m": 1},
                    provenance="equality => eigenspinors lie in ker D+_1 (twistor spinors)",
                    witness={"degrees": lam_at})
    return BoundsReport(m, n_max, lam1, mu1, lam_bound, mu_bound, rep)
