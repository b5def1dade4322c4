"""Exact scalars and sparse matrices over Q or a prime field F_p.

Scalars are plain Python numbers: over Q an ``int`` or a ``fractions.Fraction``
(always in lowest terms with positive denominator, which ``Fraction``
guarantees); over F_p an ``int`` in ``[0, p)``.  Matrices store their rows as
dictionaries ``{column: nonzero value}``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Row = Dict[int, object]


class Field:
    """Either the rationals (``p is None``) or the prime field F_p."""

    def __init__(self, p: Optional[int] = None):
        if p is not None:
            p = int(p)
            if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
                raise ValueError(f"characteristic must be prime, got {p}")
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F_{self.p}"

    @property
    def name(self) -> str:
        return repr(self)

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, x) -> object:
        """Coerce ``x`` (int, Fraction or a string like ``"3/7"``) into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, bool):
                x = int(x)
            if isinstance(x, int):
                return x
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} is not defined in {self!r}")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p is not None:
            return pow(int(x), -1, self.p)
        if x == 1 or x == -1:
            return int(x)
        return 1 / Fraction(x)

    def canonical(self, x):
        """Canonical representative: ``Fraction`` over Q, int in [0,p) over F_p."""
        if self.p is not None:
            return int(x) % self.p
        return Fraction(x)

    def to_str(self, x) -> str:
        return str(self.canonical(x))


QQ = Field(None)


class Matrix:
    """Sparse ``rows x cols`` matrix over a :class:`Field`."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: Optional[List[Row]] = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows if rows is not None else [{} for _ in range(nrows)]
        assert len(self.rows) == nrows

    # -- construction -------------------------------------------------------
    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [{i: 1} for i in range(n)])

    @classmethod
    def from_dense(cls, field: Field, data: Sequence[Sequence], ncols: Optional[int] = None) -> "Matrix":
        data = [list(r) for r in data]
        if ncols is None:
            ncols = len(data[0]) if data else 0
        rows = []
        for r in data:
            if len(r) != ncols:
                raise ValueError("ragged matrix data")
            rows.append({j: v for j, v in ((j, field(x)) for j, x in enumerate(r)) if v != 0})
        return cls(field, len(data), ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[Dict[int, object]]) -> "Matrix":
        m = cls(field, nrows, len(columns))
        rows = m.rows
        mod = field.p
        for j, col in enumerate(columns):
            for i, v in col.items():
                if mod is not None:
                    v %= mod
                if v != 0:
                    rows[i][j] = v
        return m

    @classmethod
    def from_entries(cls, field: Field, nrows: int, ncols: int,
                     entries: Iterable[Tuple[int, int, object]]) -> "Matrix":
        """Accumulate ``(row, col, value)`` triples (duplicates are summed)."""
        m = cls(field, nrows, ncols)
        mod = field.p
        for i, j, v in entries:
            r = m.rows[i]
            w = r.get(j, 0) + v
            if mod is not None:
                w %= mod
            if w == 0:
                r.pop(j, None)
            else:
                r[j] = w
        return m

    def copy(self) -> "Matrix":
        return Matrix(self.field, self.nrows, self.ncols, [dict(r) for r in self.rows])

    # -- access -------------------------------------------------------------
    @property
    def shape(self) -> Tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, 0)

    def to_dense(self) -> List[List[object]]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def columns(self) -> List[Dict[int, object]]:
        cols: List[Dict[int, object]] = [{} for _ in range(self.ncols)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                cols[j][i] = v
        return cols

    def column(self, j: int) -> Dict[int, object]:
        return {i: r[j] for i, r in enumerate(self.rows) if j in r}

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.rows, other.rows))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # -- arithmetic ---------------------------------------------------------
    def _check_field(self, other: "Matrix"):
        if self.field != other.field:
            raise ValueError("matrices over different fields")

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, 1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._combine(other, -1)

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        mod = self.field.p
        rows = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            for j, v in b.items():
                w = r.get(j, 0) + sign * v
                if mod is not None:
                    w %= mod
                if w == 0:
                    r.pop(j, None)
                else:
                    r[j] = w
            rows.append(r)
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        if c == 0:
            return Matrix.zeros(self.field, self.nrows, self.ncols)
        mod = self.field.p
        if mod is None:
            rows = [{j: v * c for j, v in r.items()} for r in self.rows]
        else:
            rows = [{j: (v * c) % mod for j, v in r.items()} for r in self.rows]
        return Matrix(self.field, self.nrows, self.ncols, rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        mod = self.field.p
        orows = other.rows
        out = []
        for r in self.rows:
            acc: Row = {}
            for k, a in r.items():
                for j, b in orows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            if mod is None:
                out.append({j: v for j, v in acc.items() if v != 0})
            else:
                out.append({j: v % mod for j, v in acc.items() if v % mod != 0})
        return Matrix(self.field, self.nrows, other.ncols, out)

    def apply(self, vec: Dict[int, object]) -> Dict[int, object]:
        """Multiply by a sparse column vector."""
        mod = self.field.p
        out = {}
        for i, r in enumerate(self.rows):
            s = 0
            for j, v in vec.items():
                w = r.get(j)
                if w is not None:
                    s += w * v
            if mod is not None:
                s %= mod
            if s != 0:
                out[i] = s
        return out

    def transpose(self) -> "Matrix":
        t = Matrix(self.field, self.ncols, self.nrows)
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                t.rows[j][i] = v
        return t

    T = property(transpose)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        pos = {c: k for k, c in enumerate(col_idx)}
        rows = []
        for i in row_idx:
            r = self.rows[i]
            rows.append({pos[j]: v for j, v in r.items() if j in pos})
        return Matrix(self.field, len(row_idx), len(col_idx), rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        off = self.ncols
        rows = []
        for a, b in zip(self.rows, other.rows):
            r = dict(a)
            r.update({off + j: v for j, v in b.items()})
            rows.append(r)
        return Matrix(self.field, self.nrows, self.ncols + other.ncols, rows)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check_field(other)
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix(self.field, self.nrows + other.nrows, self.ncols,
                      [dict(r) for r in self.rows] + [dict(r) for r in other.rows])


# ---------------------------------------------------------------------------
# elimination


def _reduce_leading(r: Row, pivots: Dict[int, Row], mod: Optional[int]) -> Row:
    """Eliminate pivot columns from ``r`` until its leading column is new."""
    while r:
        c = min(r)
        prow = pivots.get(c)
        if prow is None:
            return r
        f = r[c]
        for j, v in prow.items():
            w = r.get(j, 0) - f * v
            if mod is not None:
                w %= mod
            if w == 0:
                r.pop(j, None)
            else:
                r[j] = w
    return r


def _normalize(r: Row, field: Field) -> Row:
    c = min(r)
    inv = field.inv(r[c])
    if inv == 1:
        return r
    mod = field.p
    if mod is None:
        return {j: v * inv for j, v in r.items()}
    return {j: (v * inv) % mod for j, v in r.items()}


def echelon(m: Matrix) -> Dict[int, Row]:
    """Row echelon form as ``{pivot column: normalized row}`` (leading 1s)."""
    mod = m.field.p
    pivots: Dict[int, Row] = {}
    for row in m.rows:
        if not row:
            continue
        r = _reduce_leading(dict(row), pivots, mod)
        if r:
            r = _normalize(r, m.field)
            pivots[min(r)] = r
    return pivots


def rref(m: Matrix) -> Dict[int, Row]:
    """Reduced row echelon form: every pivot column is zero outside its row."""
    pivots = echelon(m)
    mod = m.field.p
    for c in sorted(pivots, reverse=True):
        r = pivots[c]
        hits = sorted(j for j in r if j != c and j in pivots)
        for k in hits:
            f = r.get(k)
            if not f:
                continue
            for j, v in pivots[k].items():
                w = r.get(j, 0) - f * v
                if mod is not None:
                    w %= mod
                if w == 0:
                    r.pop(j, None)
                else:
                    r[j] = w
    return pivots


def rank(m: Matrix) -> int:
    """Rank by exact elimination (eliminates along the shorter side)."""
    if m.nrows == 0 or m.ncols == 0:
        return 0
    if m.ncols < m.nrows:
        m = m.transpose()
    return len(echelon(m))


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``ker(m)``.

    Each basis vector has a 1 in its own free column and 0 in every other free
    column, so a kernel vector's coordinates are its values at the free columns
    (see :func:`kernel_with_free_columns`).
    """
    return kernel_with_free_columns(m)[0]


def kernel_with_free_columns(m: Matrix) -> Tuple[Matrix, List[int]]:
    pivots = rref(m)
    free = [j for j in range(m.ncols) if j not in pivots]
    free_set = set(free)
    cols: List[Dict[int, object]] = [{f: 1} for f in free]
    where = {f: k for k, f in enumerate(free)}
    mod = m.field.p
    for c, r in pivots.items():
        for j, v in r.items():
            if j in free_set:
                w = -v
                if mod is not None:
                    w %= mod
                cols[where[j]][c] = w
    return Matrix.from_columns(m.field, m.ncols, cols), free


def nullity(m: Matrix) -> int:
    return m.ncols - rank(m)


def solve(a: Matrix, b) -> Optional[Dict[int, object]]:
    """Return some sparse ``x`` with ``a x = b`` or ``None`` when inconsistent.

    ``b`` may be a sparse dict, a dense list, or an ``n x 1`` Matrix.
    """
    if isinstance(b, Matrix):
        if b.ncols != 1:
            raise ValueError("right-hand side must be a single column")
        b = b.column(0)
    elif not isinstance(b, dict):
        b = list(b)
        if len(b) != a.nrows:
            raise ValueError(f"right-hand side has length {len(b)}, expected {a.nrows}")
        b = {i: a.field(v) for i, v in enumerate(b) if a.field(v) != 0}
    if any(i >= a.nrows or i < 0 for i in b):
        raise ValueError("right-hand side index out of range")
    aug = Matrix(a.field, a.nrows, a.ncols + 1, [dict(r) for r in a.rows])
    for i, v in b.items():
        aug.rows[i][a.ncols] = v
    pivots = rref(aug)
    if a.ncols in pivots:
        return None
    x = {}
    for c, r in pivots.items():
        v = r.get(a.ncols, 0)
        if v != 0:
            x[c] = v
    return x


def tensor_matrix(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; basis pairs ordered with the left factor slowest."""
    a._check_field(b)
    mod = a.field.p
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            r = {}
            for i, u in ra.items():
                base = i * b.ncols
                for j, v in rb.items():
                    w = u * v
                    if mod is not None:
                        w %= mod
                    if w != 0:
                        r[base + j] = w
            rows.append(r)
    return Matrix(a.field, a.nrows * b.nrows, a.ncols * b.ncols, rows)


def direct_sum(a: Matrix, b: Matrix) -> Matrix:
    a._check_field(b)
    off = a.ncols
    rows = [dict(r) for r in a.rows] + [{off + j: v for j, v in r.items()} for r in b.rows]
    return Matrix(a.field, a.nrows + b.nrows, a.ncols + b.ncols, rows)


class SpanSolver:
    """Incremental column-space basis that can express vectors in it.

    Vectors are added one at a time; each added vector is recorded as a
    combination of the *added* vectors, so :meth:`express` returns coefficients
    with respect to the original inputs.
    """

    def __init__(self, field: Field):
        self.field = field
        self.count = 0
        self._pivots: Dict[int, Tuple[Row, Row]] = {}  # lead -> (vector, combo)

    def _reduce(self, v: Row, combo: Row) -> Tuple[Row, Row]:
        mod = self.field.p
        while v:
            c = min(v)
            hit = self._pivots.get(c)
            if hit is None:
                break
            pv, pc = hit
            f = v[c]
            for j, w in pv.items():
                x = v.get(j, 0) - f * w
                if mod is not None:
                    x %= mod
                if x == 0:
                    v.pop(j, None)
                else:
                    v[j] = x
            for j, w in pc.items():
                x = combo.get(j, 0) - f * w
                if mod is not None:
                    x %= mod
                if x == 0:
                    combo.pop(j, None)
                else:
                    combo[j] = x
        return v, combo

    def add(self, vec: Dict[int, object]) -> bool:
        """Add a vector; returns False when it was already in the span."""
        idx = self.count
        self.count += 1
        v, combo = self._reduce(dict(vec), {idx: 1})
        if not v:
            return False
        c = min(v)
        inv = self.field.inv(v[c])
        mod = self.field.p
        if inv != 1:
            if mod is None:
                v = {j: x * inv for j, x in v.items()}
                combo = {j: x * inv for j, x in combo.items()}
            else:
                v = {j: (x * inv) % mod for j, x in v.items()}
                combo = {j: (x * inv) % mod for j, x in combo.items()}
        self._pivots[c] = (v, combo)
        return True

    @property
    def dim(self) -> int:
        return len(self._pivots)

    def contains(self, vec: Dict[int, object]) -> bool:
        v, _ = self._reduce(dict(vec), {})
        return not v

    def express(self, vec: Dict[int, object]) -> Optional[Dict[int, object]]:
        """Coefficients on the added vectors, or None when ``vec`` is outside the span."""
        v, combo = self._reduce(dict(vec), {})
        if v:
            return None
        mod = self.field.p
        out = {}
        for j, x in combo.items():
            y = -x
            if mod is not None:
                y %= mod
            if y != 0:
                out[j] = y
        return out


def vec_add(field: Field, a: Dict[int, object], b: Dict[int, object], c=1) -> Dict[int, object]:
    """``a + c*b`` for sparse vectors."""
    mod = field.p
    out = dict(a)
    for j, v in b.items():
        w = out.get(j, 0) + c * v
        if mod is not None:
            w %= mod
        if w == 0:
            out.pop(j, None)
        else:
            out[j] = w
    return out
