"""Exact scalars over Q(i), sparse immutable matrices, and rational elimination.

Rationals are the stdlib :class:`fractions.Fraction`. Everything else here is
built on top of it; no floating point is used anywhere.

Pivot rule for all eliminations: columns are scanned left to right and the
pivot of a column is the lowest-index remaining row with a nonzero entry.
The nullspace basis returned by :func:`nullspace` is the reduced-echelon one:
one vector per non-pivot column ``f``, equal to 1 at ``f`` and 0 at every
other non-pivot column.  That basis depends only on the column matroid of the
matrix, so splitting the matrix into independent blocks (which we do for
speed) does not change the output.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Mapping, Sequence

__all__ = [
    "Fraction",
    "ExactScalar",
    "ExactMatrix",
    "I",
    "ZERO",
    "ONE",
    "as_scalar",
    "nullspace",
    "rank",
    "solve",
    "inverse",
    "gram_adjoint",
    "SingularGramError",
    "InconsistentSystemError",
    "fraction_to_str",
    "fraction_from_str",
]

_F0 = Fraction(0)
_F1 = Fraction(1)


def fraction_to_str(q: Fraction) -> str:
    """Serialize a rational as ``"p/q"`` (``"p"`` when q == 1)."""
    return str(q)


def fraction_from_str(s: str) -> Fraction:
    return Fraction(s)


class ExactScalar:
    """A complex number whose real and imaginary parts are rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, ExactScalar):
            if im:
                raise TypeError("cannot combine an ExactScalar real part with an imaginary part")
            re, im = re.re, re.im
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    def __reduce__(self):
        return (ExactScalar, (self.re, self.im))

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mk(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mk(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return _mk(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b:
            if not d:
                return _mk(a * c, _F0)
            return _mk(a * c, a * d)
        if not d:
            return _mk(a * c, b * c)
        return _mk(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return _mk(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "ExactScalar":
        n = self.abs2()
        if not n:
            raise ZeroDivisionError("ExactScalar division by zero")
        return _mk(self.re / n, -self.im / n)

    def conjugate(self) -> "ExactScalar":
        return _mk(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    # comparison ---------------------------------------------------------
    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    # display / serialization -------------------------------------------
    def __repr__(self):
        return f"ExactScalar({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"

    def to_json(self) -> dict:
        return {"re": fraction_to_str(self.re), "im": fraction_to_str(self.im)}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "ExactScalar":
        return cls(Fraction(obj["re"]), Fraction(obj["im"]))


_new = object.__new__
_set = object.__setattr__


def _mk(re: Fraction, im: Fraction) -> ExactScalar:
    s = _new(ExactScalar)
    _set(s, "re", re)
    _set(s, "im", im)
    return s


def _to_fraction(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, bool):
        return Fraction(int(x))
    if isinstance(x, (int, _RationalABC, str)):
        return Fraction(x)
    raise TypeError(f"exact arithmetic refuses {type(x).__name__} input {x!r}")


def _coerce(x):
    if type(x) is ExactScalar:
        return x
    if isinstance(x, (int, _RationalABC)):
        return _mk(_to_fraction(x), _F0)
    if isinstance(x, complex):
        raise TypeError("exact arithmetic refuses floating complex input")
    return NotImplemented


def as_scalar(x) -> ExactScalar:
    """Convert ints, Fractions and ExactScalars; floats are rejected."""
    if type(x) is ExactScalar:
        return x
    s = _coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to ExactScalar")
    return s


ZERO = _mk(_F0, _F0)
ONE = _mk(_F1, _F0)
I = _mk(_F0, _F1)


class InconsistentSystemError(ValueError):
    """Raised when an exact linear system has no solution."""


class SingularGramError(ValueError):
    """Raised when a Gram matrix is singular, i.e. the basis is malformed."""


class ExactMatrix:
    """Immutable dense-semantics matrix over :class:`ExactScalar`.

    Storage is one ``{col: value}`` dict per row holding nonzero entries only.
    The dicts are never exposed; every operation returns a fresh matrix.
    """

    __slots__ = ("_nrows", "_ncols", "_rows", "_hash")

    def __init__(self, rows: int, cols: int, entries: Iterable = ()):
        """Build from a row-major sequence of ``rows * cols`` entries."""
        entries = list(entries)
        if entries and len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        data = []
        for i in range(rows):
            row = {}
            if entries:
                for j in range(cols):
                    v = as_scalar(entries[i * cols + j])
                    if v:
                        row[j] = v
            data.append(row)
        self._init(rows, cols, tuple(data))

    def _init(self, rows, cols, data):
        _set(self, "_nrows", rows)
        _set(self, "_ncols", cols)
        _set(self, "_rows", data)
        _set(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    def __reduce__(self):
        return (_rebuild_matrix, (self._nrows, self._ncols, self._rows))

    @classmethod
    def _from_rows(cls, rows: int, cols: int, data: Sequence[dict]) -> "ExactMatrix":
        m = _new(cls)
        m._init(rows, cols, tuple(data))
        return m

    # constructors --------------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_dict(cls, rows: int, cols: int, entries: Mapping[tuple[int, int], object]) -> "ExactMatrix":
        data = [dict() for _ in range(rows)]
        for (i, j), v in entries.items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError((i, j))
            v = as_scalar(v)
            if v:
                data[i][j] = v
        return cls._from_rows(rows, cols, data)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls._from_rows(rows, cols, [dict() for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls._from_rows(n, n, [{i: ONE} for i in range(n)])

    @classmethod
    def diag(cls, values: Iterable) -> "ExactMatrix":
        vals = [as_scalar(v) for v in values]
        n = len(vals)
        return cls._from_rows(n, n, [{i: v} if v else {} for i, v in enumerate(vals)])

    @classmethod
    def column(cls, values: Iterable) -> "ExactMatrix":
        vals = [as_scalar(v) for v in values]
        return cls._from_rows(len(vals), 1, [{0: v} if v else {} for v in vals])

    # basic access ---------------------------------------------------------
    @property
    def rows(self) -> int:
        return self._nrows

    @property
    def cols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._nrows, self._ncols)

    @property
    def entries(self) -> list[ExactScalar]:
        """Row-major list of all entries, zeros included."""
        out = []
        for row in self._rows:
            out.extend(row.get(j, ZERO) for j in range(self._ncols))
        return out

    def __getitem__(self, idx: tuple[int, int]) -> ExactScalar:
        i, j = idx
        if not (0 <= i < self._nrows and 0 <= j < self._ncols):
            raise IndexError(idx)
        return self._rows[i].get(j, ZERO)

    def row_items(self, i: int) -> list[tuple[int, ExactScalar]]:
        """Sorted nonzero ``(col, value)`` pairs of row ``i``."""
        return sorted(self._rows[i].items())

    def nonzero_items(self) -> Iterator[tuple[int, int, ExactScalar]]:
        for i, row in enumerate(self._rows):
            for j in sorted(row):
                yield i, j, row[j]

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def to_lists(self) -> list[list[ExactScalar]]:
        return [[row.get(j, ZERO) for j in range(self._ncols)] for row in self._rows]

    def column_vectors(self) -> list["ExactMatrix"]:
        return [self.submatrix(range(self._nrows), [j]) for j in range(self._ncols)]

    def is_zero(self) -> bool:
        return not any(self._rows)

    def is_square(self) -> bool:
        return self._nrows == self._ncols

    def is_diagonal(self) -> bool:
        return all(set(row) <= {i} for i, row in enumerate(self._rows))

    def diagonal(self) -> list[ExactScalar]:
        return [self._rows[i].get(i, ZERO) for i in range(min(self.shape))]

    # arithmetic ---------------------------------------------------------
    def _check_same_shape(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        data = []
        for r1, r2 in zip(self._rows, other._rows):
            row = dict(r1)
            for j, v in r2.items():
                s = row[j] + v if j in row else v
                if s:
                    row[j] = s
                else:
                    del row[j]
            data.append(row)
        return ExactMatrix._from_rows(self._nrows, self._ncols, data)

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix._from_rows(
            self._nrows, self._ncols, [{j: -v for j, v in r.items()} for r in self._rows]
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self + (-other)

    def scale(self, c) -> "ExactMatrix":
        c = as_scalar(c)
        if not c:
            return ExactMatrix.zeros(*self.shape)
        return ExactMatrix._from_rows(
            self._nrows, self._ncols, [{j: c * v for j, v in r.items()} for r in self._rows]
        )

    def __mul__(self, c) -> "ExactMatrix":
        if isinstance(c, ExactMatrix):
            raise TypeError("use @ for matrix products")
        return self.scale(c)

    __rmul__ = __mul__

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self._ncols != other._nrows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        orows = other._rows
        data = []
        for r in self._rows:
            acc: dict[int, ExactScalar] = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    p = a * b
                    acc[j] = acc[j] + p if j in acc else p
            data.append({j: v for j, v in acc.items() if v})
        return ExactMatrix._from_rows(self._nrows, other._ncols, data)

    def add_scalar(self, c) -> "ExactMatrix":
        """Return ``self + c * I`` (square matrices only)."""
        if not self.is_square():
            raise ValueError("add_scalar needs a square matrix")
        c = as_scalar(c)
        if not c:
            return self
        data = []
        for i, r in enumerate(self._rows):
            row = dict(r)
            s = row.get(i, ZERO) + c
            if s:
                row[i] = s
            else:
                row.pop(i, None)
            data.append(row)
        return ExactMatrix._from_rows(self._nrows, self._ncols, data)

    def transpose(self) -> "ExactMatrix":
        data = [dict() for _ in range(self._ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                data[j][i] = v
        return ExactMatrix._from_rows(self._ncols, self._nrows, data)

    def conjugate(self) -> "ExactMatrix":
        return ExactMatrix._from_rows(
            self._nrows, self._ncols, [{j: v.conjugate() for j, v in r.items()} for r in self._rows]
        )

    def conj_transpose(self) -> "ExactMatrix":
        data = [dict() for _ in range(self._ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                data[j][i] = v.conjugate()
        return ExactMatrix._from_rows(self._ncols, self._nrows, data)

    H = property(conj_transpose)

    def kron(self, other: "ExactMatrix") -> "ExactMatrix":
        """Kronecker product; row index of the result is ``i * other.rows + k``."""
        p, q = other.shape
        data = []
        for r in self._rows:
            for k in range(p):
                orow = other._rows[k]
                row = {}
                for j, a in r.items():
                    base = j * q
                    for l, b in orow.items():
                        row[base + l] = a * b
                data.append(row)
        return ExactMatrix._from_rows(self._nrows * p, self._ncols * q, data)

    def submatrix(self, rows: Iterable[int], cols: Iterable[int]) -> "ExactMatrix":
        rows = list(rows)
        cols = list(cols)
        pos = {c: t for t, c in enumerate(cols)}
        data = []
        for i in rows:
            data.append({pos[j]: v for j, v in self._rows[i].items() if j in pos})
        return ExactMatrix._from_rows(len(rows), len(cols), data)

    def hstack(self, other: "ExactMatrix") -> "ExactMatrix":
        if self._nrows != other._nrows:
            raise ValueError("row count mismatch")
        off = self._ncols
        data = []
        for r1, r2 in zip(self._rows, other._rows):
            row = dict(r1)
            row.update({off + j: v for j, v in r2.items()})
            data.append(row)
        return ExactMatrix._from_rows(self._nrows, self._ncols + other._ncols, data)

    @staticmethod
    def hstack_all(mats: Sequence["ExactMatrix"], rows: int | None = None) -> "ExactMatrix":
        if not mats:
            return ExactMatrix.zeros(rows or 0, 0)
        out = mats[0]
        for m in mats[1:]:
            out = out.hstack(m)
        return out

    def trace(self) -> ExactScalar:
        t = ZERO
        for i in range(min(self.shape)):
            t = t + self._rows[i].get(i, ZERO)
        return t

    def det(self) -> ExactScalar:
        """Determinant by exact elimination."""
        if not self.is_square():
            raise ValueError("det needs a square matrix")
        rows = [dict(r) for r in self._rows]
        n = self._nrows
        d = ONE
        for c in range(n):
            piv = next((r for r in range(c, n) if c in rows[r]), None)
            if piv is None:
                return ZERO
            if piv != c:
                rows[c], rows[piv] = rows[piv], rows[c]
                d = -d
            p = rows[c][c]
            d = d * p
            inv = p.inverse()
            for r in range(c + 1, n):
                f = rows[r].get(c)
                if f is not None:
                    _axpy(rows[r], rows[c], -(f * inv))
        return d

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        if self._hash is None:
            h = hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))
            _set(self, "_hash", h)
        return self._hash

    def __repr__(self):
        return f"ExactMatrix({self._nrows}x{self._ncols}, nnz={self.nnz})"

    def pretty(self) -> str:
        cells = [[str(v) for v in r] for r in self.to_lists()]
        width = max((len(c) for r in cells for c in r), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)

    # serialization --------------------------------------------------------
    def to_json(self) -> dict:
        return {
            "rows": self._nrows,
            "cols": self._ncols,
            "entries": [v.to_json() for v in self.entries],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "ExactMatrix":
        return cls(int(obj["rows"]), int(obj["cols"]), [ExactScalar.from_json(e) for e in obj["entries"]])


def _rebuild_matrix(rows, cols, data):
    return ExactMatrix._from_rows(rows, cols, data)


def _axpy(target: dict, source: dict, c: ExactScalar) -> None:
    """In place ``target += c * source`` on sparse rows (private scratch only)."""
    for j, v in source.items():
        if j in target:
            s = target[j] + c * v
            if s:
                target[j] = s
            else:
                del target[j]
        else:
            target[j] = c * v


# ---------------------------------------------------------------------------
# elimination


def _components(A: ExactMatrix) -> list[tuple[list[int], list[int]]]:
    """Connected components of the row/column incidence graph of A.

    Returns ``(rows, cols)`` pairs, both sorted; zero rows are dropped and
    zero columns come back as singleton components with no rows.
    """
    parent = list(range(A.cols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in A._rows:
        it = iter(r)
        first = next(it, None)
        if first is None:
            continue
        a = find(first)
        for j in it:
            b = find(j)
            if a != b:
                parent[b] = a
    groups: dict[int, tuple[list[int], list[int]]] = {}
    for j in range(A.cols):
        groups.setdefault(find(j), ([], []))[1].append(j)
    for i, r in enumerate(A._rows):
        if r:
            groups[find(next(iter(r)))][0].append(i)
    return sorted(groups.values(), key=lambda g: g[1][0])


def _rref(rows: list[dict], ncols_order: Sequence[int]) -> tuple[list[dict], list[int]]:
    """Reduced row echelon form of sparse rows, scanning ``ncols_order``.

    Returns (pivot rows normalized to leading 1, pivot columns).
    """
    pending = [dict(r) for r in rows if r]
    pivot_rows: list[dict] = []
    pivot_cols: list[int] = []
    for c in ncols_order:
        idx = next((t for t, r in enumerate(pending) if c in r), None)
        if idx is None:
            continue
        prow = pending.pop(idx)
        inv = prow[c].inverse()
        if inv != ONE:
            prow = {j: v * inv for j, v in prow.items()}
        for r in pending:
            f = r.get(c)
            if f is not None:
                _axpy(r, prow, -f)
        pending = [r for r in pending if r]
        for r in pivot_rows:
            f = r.get(c)
            if f is not None:
                _axpy(r, prow, -f)
        pivot_rows.append(prow)
        pivot_cols.append(c)
    return pivot_rows, pivot_cols


def nullspace(A: ExactMatrix) -> list[ExactMatrix]:
    """Basis of ``{v : A v = 0}`` as column vectors (reduced-echelon basis)."""
    n = A.cols
    vectors: list[tuple[int, dict]] = []
    for comp_rows, comp_cols in _components(A):
        rows = [A._rows[i] for i in comp_rows]
        prows, pcols = _rref(rows, comp_cols)
        pivset = set(pcols)
        for f in comp_cols:
            if f in pivset:
                continue
            vec = {f: ONE}
            for pr, pc in zip(prows, pcols):
                v = pr.get(f)
                if v is not None:
                    vec[pc] = -v
            vectors.append((f, vec))
    vectors.sort(key=lambda t: t[0])
    return [ExactMatrix._from_rows(n, 1, [{0: vec[i]} if i in vec else {} for i in range(n)]) for _, vec in vectors]


def rank(A: ExactMatrix) -> int:
    total = 0
    for comp_rows, comp_cols in _components(A):
        if comp_rows:
            _, pcols = _rref([A._rows[i] for i in comp_rows], comp_cols)
            total += len(pcols)
    return total


def nullity(A: ExactMatrix) -> int:
    return A.cols - rank(A)


def solve(A: ExactMatrix, B: ExactMatrix) -> ExactMatrix:
    """Solve ``A X = B`` exactly for A of full column rank.

    Raises :class:`InconsistentSystemError` when some column of B is not in
    the column space of A, and ``ValueError`` when A is rank deficient.
    """
    if A.rows != B.rows:
        raise ValueError("row count mismatch")
    n, k = A.cols, B.cols
    aug = A.hstack(B)
    prows, pcols = _rref(list(aug._rows), range(n + k))
    if any(c >= n for c in pcols):
        raise InconsistentSystemError("right-hand side outside the column space")
    if len(pcols) != n:
        raise ValueError("coefficient matrix is rank deficient")
    data = [dict() for _ in range(n)]
    for pr, pc in zip(prows, pcols):
        data[pc] = {j - n: v for j, v in pr.items() if j >= n}
    return ExactMatrix._from_rows(n, k, data)


def inverse(A: ExactMatrix) -> ExactMatrix:
    if not A.is_square():
        raise ValueError("inverse needs a square matrix")
    if A.is_diagonal():
        d = A.diagonal()
        if not all(d):
            raise ZeroDivisionError("singular matrix")
        return ExactMatrix.diag(v.inverse() for v in d)
    try:
        return solve(A, ExactMatrix.identity(A.rows))
    except ValueError as exc:
        raise ZeroDivisionError("singular matrix") from exc


def gram_adjoint(A: ExactMatrix, G_src: ExactMatrix, G_dst: ExactMatrix) -> ExactMatrix:
    """Adjoint of ``A: src -> dst`` for ``<u, v>_G = v* G u``: ``G_src^-1 A* G_dst``."""
    if G_src.shape != (A.cols, A.cols) or G_dst.shape != (A.rows, A.rows):
        raise ValueError("Gram shapes do not match the map")
    try:
        Ginv = inverse(G_src)
    except ZeroDivisionError as exc:
        raise SingularGramError("singular source Gram matrix; basis is malformed") from exc
    if G_dst.rows and rank(G_dst) != G_dst.rows:
        raise SingularGramError("singular target Gram matrix; basis is malformed")
    return Ginv @ A.conj_transpose() @ G_dst
