"""Cohomologically graded complexes of finite-dimensional vector spaces.

Differentials raise degree: ``d_n`` maps degree ``n`` to degree ``n + 1``.

Sign conventions (used everywhere in the package):

* shift: ``X[k]_n = X_{n-k}`` with differential ``(-1)^k d_X``;
* cone: ``Co(f)_n = M_{n+1} (+) N_n`` with block differential
  ``[[-d_M, 0], [f, d_N]]``;
* tensor: ``d(x (x) y) = dx (x) y + (-1)^|x| x (x) dy``;
* Hom: ``D(f) = d_Z f - (-1)^n f d_Y`` for ``f`` of degree ``n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .linalg import Field, Matrix, SpanSolver, kernel_with_free_columns, rank, solve, tensor_matrix


class ComplexError(ValueError):
    pass


class GradedSpace:
    """Per-degree ordered basis labels with finite support."""

    def __init__(self, labels: Dict[int, Sequence[str]]):
        self.labels = {n: list(ls) for n, ls in labels.items() if ls}
        for n, ls in self.labels.items():
            if len(set(ls)) != len(ls):
                raise ComplexError(f"duplicate labels in degree {n}")

    @classmethod
    def from_dims(cls, dims: Dict[int, int], prefix: str = "e") -> "GradedSpace":
        return cls({n: [f"{prefix}{n}_{i}" for i in range(k)] for n, k in dims.items()})

    @property
    def dims(self) -> Dict[int, int]:
        return {n: len(ls) for n, ls in self.labels.items()}

    def dim(self, n: int) -> int:
        return len(self.labels.get(n, ()))

    @property
    def support(self) -> List[int]:
        return sorted(self.labels)

    def total_dim(self) -> int:
        return sum(len(v) for v in self.labels.values())


class ChainComplex:
    """Finite-support cochain complex: ``dims[n]`` and ``d[n]: n -> n+1``."""

    def __init__(self, field: Field, dims: Dict[int, int], diff: Optional[Dict[int, Matrix]] = None,
                 labels: Optional[Dict[int, Sequence]] = None, check: bool = True):
        self.field = field
        self.dims = {n: k for n, k in dims.items() if k > 0}
        self.diff: Dict[int, Matrix] = {}
        for n, m in (diff or {}).items():
            if m.shape != (self.dim(n + 1), self.dim(n)):
                raise ComplexError(f"d_{n} has shape {m.shape}, expected {(self.dim(n + 1), self.dim(n))}")
            if m.field != field:
                raise ComplexError("differential over a different field")
            if not m.is_zero():
                self.diff[n] = m
        self.labels = labels
        if check:
            self.check_square_zero()

    @classmethod
    def empty(cls, field: Field) -> "ChainComplex":
        return cls(field, {})

    @classmethod
    def point(cls, field: Field, degree: int = 0) -> "ChainComplex":
        """The ground field in one degree."""
        return cls(field, {degree: 1})

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> Matrix:
        m = self.diff.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.dim(n + 1), self.dim(n))
        return m

    @property
    def support(self) -> List[int]:
        return sorted(self.dims)

    def check_square_zero(self):
        for n in self.diff:
            if n + 1 in self.diff and not (self.diff[n + 1] @ self.diff[n]).is_zero():
                raise ComplexError(f"d_{n + 1} d_{n} != 0")

    def euler_characteristic(self) -> int:
        return sum((-1) ** (n % 2) * k for n, k in self.dims.items())

    def __repr__(self):
        return f"ChainComplex({self.field!r}, dims={dict(sorted(self.dims.items()))})"

    def same_as(self, other: "ChainComplex") -> bool:
        if self.dims != other.dims:
            return False
        return all(self.d(n) == other.d(n) for n in set(self.diff) | set(other.diff))


@dataclass
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    components: Dict[int, Matrix]
    degree: int = 0

    def __post_init__(self):
        for n, m in self.components.items():
            if m.shape != (self.target.dim(n + self.degree), self.source.dim(n)):
                raise ComplexError(f"component {n} has shape {m.shape}")

    def at(self, n: int) -> Matrix:
        m = self.components.get(n)
        if m is None:
            return Matrix.zeros(self.source.field, self.target.dim(n + self.degree), self.source.dim(n))
        return m

    def defects(self) -> List[int]:
        """Degrees where ``d f = (-1)^deg f d`` fails."""
        sign = -1 if self.degree % 2 else 1
        bad = []
        degs = set(self.source.dims) | {n - 1 for n in self.source.dims}
        for n in sorted(degs):
            lhs = self.target.d(n + self.degree) @ self.at(n)
            rhs = self.at(n + 1) @ self.source.d(n)
            if not (lhs - rhs.scale(sign)).is_zero():
                bad.append(n)
        return bad

    def is_chain_map(self) -> bool:
        return not self.defects()

    @classmethod
    def identity(cls, x: ChainComplex) -> "ChainMap":
        return cls(x, x, {n: Matrix.identity(x.field, k) for n, k in x.dims.items()})

    @classmethod
    def zero(cls, x: ChainComplex, y: ChainComplex) -> "ChainMap":
        return cls(x, y, {})

    def __sub__(self, other: "ChainMap") -> "ChainMap":
        degs = set(self.components) | set(other.components)
        return ChainMap(self.source, self.target, {n: self.at(n) - other.at(n) for n in degs}, self.degree)

    def compose(self, other: "ChainMap") -> "ChainMap":
        """``self o other``."""
        comps = {}
        for n in other.source.dims:
            comps[n] = self.at(n + other.degree) @ other.at(n)
        return ChainMap(other.source, self.target, comps, self.degree + other.degree)


# ---------------------------------------------------------------------------
# cohomology


class CohomologyGroup:
    """``H^n`` with explicit cocycle representatives.

    Classes are compared by solving a linear system: ``coordinates(v)``
    expresses a cocycle modulo coboundaries in the representative basis.
    """

    def __init__(self, x: ChainComplex, n: int):
        self.degree = n
        self.field = x.field
        self.ambient_dim = x.dim(n)
        dn = x.d(n)
        kern, _ = kernel_with_free_columns(dn)
        self.cycle_dim = kern.ncols
        boundaries = x.d(n - 1).columns()
        self._solver = SpanSolver(x.field)
        nb = 0
        for col in boundaries:
            self._solver.add(col)
            nb += 1
        self.boundary_dim = self._solver.dim
        reps = []
        self._rep_index: Dict[int, int] = {}
        for col in kern.columns():
            idx = self._solver.count
            if self._solver.add(col):
                self._rep_index[idx] = len(reps)
                reps.append(col)
        self.representatives = reps
        self.dim = len(reps)
        self._d = dn

    def is_cocycle(self, v: Dict[int, object]) -> bool:
        return not self._d.apply(v)

    def coordinates(self, v: Dict[int, object]) -> Dict[int, object]:
        """Class of cocycle ``v`` in the representative basis."""
        combo = self._solver.express(v)
        if combo is None:
            raise ComplexError(f"vector is not a cocycle in degree {self.degree}")
        return {self._rep_index[j]: c for j, c in combo.items() if j in self._rep_index}

    def is_coboundary(self, v: Dict[int, object]) -> bool:
        return not self.coordinates(v)

    def representative_matrix(self) -> Matrix:
        return Matrix.from_columns(self.field, self.ambient_dim, self.representatives)


def cohomology(x: ChainComplex, degrees: Optional[Iterable[int]] = None) -> Dict[int, CohomologyGroup]:
    if degrees is None:
        degrees = x.support
    return {n: CohomologyGroup(x, n) for n in degrees}


def cohomology_dims(x: ChainComplex, degrees: Optional[Iterable[int]] = None) -> Dict[int, int]:
    """``dim H^n = dim ker d_n - rank d_{n-1}`` (ranks only, no representatives)."""
    if degrees is None:
        degrees = x.support
    degrees = list(degrees)
    ranks: Dict[int, int] = {}

    def rk(n):
        if n not in ranks:
            ranks[n] = rank(x.d(n)) if x.dim(n) and x.dim(n + 1) else 0
        return ranks[n]

    return {n: x.dim(n) - rk(n) - rk(n - 1) for n in degrees}


# ---------------------------------------------------------------------------
# constructions


def shift(x: ChainComplex, k: int) -> ChainComplex:
    sign = -1 if k % 2 else 1
    dims = {n + k: d for n, d in x.dims.items()}
    diff = {n + k: m.scale(sign) for n, m in x.diff.items()}
    labels = {n + k: v for n, v in x.labels.items()} if x.labels else None
    return ChainComplex(x.field, dims, diff, labels, check=False)


def cone(f: ChainMap) -> ChainComplex:
    """``Co(f)_n = M[-1]_n (+) N_n`` with differential ``d_{M[-1]} + f + d_N``."""
    if f.degree != 0:
        raise ComplexError("cone needs a degree-0 map")
    bad = f.defects()
    if bad:
        raise ComplexError(f"not a chain map in degrees {bad}")
    m, nn = f.source, f.target
    fld = m.field
    degs = {n - 1 for n in m.dims} | set(nn.dims)
    dims = {n: m.dim(n + 1) + nn.dim(n) for n in degs}
    diff = {}
    for n in degs:
        a = m.dim(n + 1)
        rows = [dict(r) for r in m.d(n + 1).scale(-1).rows]  # M_{n+1} -> M_{n+2}
        fcomp = f.at(n + 1)
        dn = nn.d(n)
        for i in range(nn.dim(n + 1)):
            r = dict(fcomp.rows[i]) if fcomp.nrows else {}
            r.update({a + j: v for j, v in dn.rows[i].items()})
            rows.append(r)
        diff[n] = Matrix(fld, dims.get(n + 1, 0), dims[n], rows)
    return ChainComplex(fld, dims, diff)


def tensor_complex(x: ChainComplex, y: ChainComplex) -> ChainComplex:
    """``(x (x) y)_r = (+)_{p+q=r} x_p (x) y_q`` ordered by ``p`` ascending."""
    if x.field != y.field:
        raise ComplexError("field mismatch")
    fld = x.field
    blocks: Dict[int, List[Tuple[int, int, int]]] = {}
    for p in x.support:
        for q in y.support:
            blocks.setdefault(p + q, []).append((p, q, x.dim(p) * y.dim(q)))
    offsets: Dict[int, Dict[Tuple[int, int], int]] = {}
    dims = {}
    for r, bl in blocks.items():
        off = 0
        offsets[r] = {}
        for p, q, k in sorted(bl):
            offsets[r][(p, q)] = off
            off += k
        dims[r] = off
    diff = {}
    for r in dims:
        if r + 1 not in dims:
            continue
        entries = []
        for (p, q), off in offsets[r].items():
            idp = Matrix.identity(fld, x.dim(p))
            idq = Matrix.identity(fld, y.dim(q))
            if (p + 1, q) in offsets[r + 1]:
                blk = tensor_matrix(x.d(p), idq)
                toff = offsets[r + 1][(p + 1, q)]
                for i, row in enumerate(blk.rows):
                    for j, v in row.items():
                        entries.append((toff + i, off + j, v))
            if (p, q + 1) in offsets[r + 1]:
                blk = tensor_matrix(idp, y.d(q))
                sign = -1 if p % 2 else 1
                toff = offsets[r + 1][(p, q + 1)]
                for i, row in enumerate(blk.rows):
                    for j, v in row.items():
                        entries.append((toff + i, off + j, sign * v))
        diff[r] = Matrix.from_entries(fld, dims[r + 1], dims[r], entries)
    return ChainComplex(fld, dims, diff)


def hom_index(y: ChainComplex, z: ChainComplex, n: int) -> Dict[int, int]:
    """Offsets of the blocks ``Hom(y_m, z_{m+n})`` inside ``Hom(y, z)_n``."""
    offs = {}
    off = 0
    for m in y.support:
        if z.dim(m + n):
            offs[m] = off
            off += y.dim(m) * z.dim(m + n)
    return offs


def hom_complex(y: ChainComplex, z: ChainComplex, degrees: Optional[Iterable[int]] = None,
                constraint: Optional[Callable[[int], Matrix]] = None) -> ChainComplex:
    """Hom complex ``Hom(y, z)`` with ``D(f) = d_z f - (-1)^n f d_y``.

    A degree-``n`` map is stored blockwise over source degree ``m`` ascending;
    inside a block the entry ``(i, j)`` (target ``i``, source ``j``) sits at
    ``i * dim y_m + j``.  If ``constraint(n)`` is given, the complex is
    restricted to the subspaces ``ker constraint(n)`` (e.g. colinear maps),
    which must be preserved by ``D``.
    """
    if y.field != z.field:
        raise ComplexError("field mismatch")
    fld = y.field
    if degrees is None:
        lo = min(z.support, default=0) - max(y.support, default=0)
        hi = max(z.support, default=0) - min(y.support, default=0)
        degrees = range(lo, hi + 1)
    degrees = sorted(set(degrees))
    offsets = {n: hom_index(y, z, n) for n in degrees}
    dims = {}
    for n in degrees:
        dims[n] = sum(y.dim(m) * z.dim(m + n) for m in offsets[n])
    diff = {}
    for n in degrees:
        if n + 1 not in offsets:
            continue
        entries = []
        sign = -1 if n % 2 else 1
        src, dst = offsets[n], offsets[n + 1]
        for m, off in src.items():
            a, b = y.dim(m), z.dim(m + n)
            dz = z.d(m + n)
            if m in dst:
                toff = dst[m]
                # d_z o E_ij = sum_k dz[k][i] E_kj
                cols_dz = dz.columns()
                for i in range(b):
                    for k, v in cols_dz[i].items():
                        for j in range(a):
                            entries.append((toff + k * a + j, off + i * a + j, v))
            if (m - 1) in dst:
                dy = y.d(m - 1)  # y_{m-1} -> y_m
                toff = dst[m - 1]
                ap = y.dim(m - 1)
                for j in range(a):
                    for l, v in dy.rows[j].items():
                        for i in range(b):
                            entries.append((toff + i * ap + l, off + i * a + j, -sign * v))
        diff[n] = Matrix.from_entries(fld, dims[n + 1], dims[n], entries)
    hom = ChainComplex(fld, dims, diff)
    if constraint is None:
        return hom
    return restrict_to_kernels(hom, {n: constraint(n) for n in degrees})


def restrict_to_kernels(x: ChainComplex, constraints: Dict[int, Matrix]) -> ChainComplex:
    """Subcomplex ``ker constraints[n]`` in kernel coordinates.

    Raises if the differential does not preserve the kernels.
    """
    bases = {}
    for n in x.dims.keys() | constraints.keys():
        c = constraints.get(n)
        if c is None:
            c = Matrix.zeros(x.field, 0, x.dim(n))
        bases[n] = kernel_with_free_columns(c)
    dims = {n: b[0].ncols for n, b in bases.items()}
    diff = {}
    for n, (kn, _) in bases.items():
        if n + 1 not in bases or not kn.ncols:
            continue
        img = x.d(n) @ kn
        knext, free = bases[n + 1]
        c = constraints.get(n + 1)
        if c is not None and not (c @ img).is_zero():
            raise ComplexError(f"differential leaves the constrained subspace in degree {n + 1}")
        diff[n] = img.submatrix(free, range(img.ncols)) if free else Matrix.zeros(x.field, 0, kn.ncols)
    return ChainComplex(x.field, dims, diff)


# ---------------------------------------------------------------------------
# bicomplexes


@dataclass
class Bicomplex:
    """Columns ``j = 0, 1, ...`` with horizontal maps ``h_j: col j -> col j+1``.

    Column ``j`` sits ``j`` steps up in total degree.  With ``commuting=True``
    the squares commute and totalization twists the vertical differential by
    ``(-1)^j``; otherwise they must anticommute and are used as they are.
    ``min_degree`` bounds the column degrees of every column (including
    columns not stored), which determines the window of exactness of a
    column truncation.
    """

    columns: List[ChainComplex]
    horizontal: List[Dict[int, Matrix]]
    commuting: bool = True
    min_degree: int = 0

    def h(self, j: int, n: int) -> Matrix:
        m = self.horizontal[j].get(n) if j < len(self.horizontal) else None
        if m is None:
            return Matrix.zeros(self.columns[0].field, self.columns[j + 1].dim(n), self.columns[j].dim(n))
        return m

    def defects(self) -> List[str]:
        out = []
        for j in range(len(self.columns) - 1):
            a, b = self.columns[j], self.columns[j + 1]
            for n in set(a.dims) | {k - 1 for k in a.dims}:
                lhs = b.d(n) @ self.h(j, n)
                rhs = self.h(j, n + 1) @ a.d(n)
                bad = (lhs - rhs) if self.commuting else (lhs + rhs)
                if not bad.is_zero():
                    out.append(f"square ({j},{n})")
            if j + 2 < len(self.columns):
                for n in a.dims:
                    if not (self.h(j + 1, n) @ self.h(j, n)).is_zero():
                        out.append(f"h∘h at ({j},{n})")
        return out


@dataclass
class TotalComplex:
    complex: ChainComplex
    exact_through: Optional[int]
    offsets: Dict[int, Dict[int, int]] = dc_field(default_factory=dict)


def total_complex(b: Bicomplex, columns: Optional[int] = None) -> TotalComplex:
    """Direct-sum totalization of columns ``0..J``.

    The result computes the cohomology of the full (infinite) bicomplex in
    total degrees ``<= J + min_degree - 1`` (``exact_through``); columns
    beyond ``J`` only touch higher degrees.
    """
    J = len(b.columns) - 1 if columns is None else columns
    if J < 0:
        raise ComplexError("need at least one column")
    cols = b.columns[: J + 1]
    fld = cols[0].field
    offsets: Dict[int, Dict[int, int]] = {}
    dims: Dict[int, int] = {}
    for j, c in enumerate(cols):
        for n in c.support:
            t = n + j
            offsets.setdefault(t, {})[j] = dims.get(t, 0)
            dims[t] = dims.get(t, 0) + c.dim(n)
    diff = {}
    for t in dims:
        if t + 1 not in dims:
            continue
        entries = []
        for j, off in offsets[t].items():
            c = cols[j]
            n = t - j
            if j in offsets[t + 1]:
                sign = (-1 if j % 2 else 1) if b.commuting else 1
                toff = offsets[t + 1][j]
                for i, row in enumerate(c.d(n).rows):
                    for k, v in row.items():
                        entries.append((toff + i, off + k, sign * v))
            if j + 1 <= J and (j + 1) in offsets[t + 1]:
                toff = offsets[t + 1][j + 1]
                for i, row in enumerate(b.h(j, n).rows):
                    for k, v in row.items():
                        entries.append((toff + i, off + k, v))
        diff[t] = Matrix.from_entries(fld, dims[t + 1], dims[t], entries)
    tot = ChainComplex(fld, dims, diff)
    return TotalComplex(tot, J + b.min_degree - 1, offsets)


# ---------------------------------------------------------------------------
# maps on cohomology


def induced_map(f: ChainMap, n: int, hs: Optional[CohomologyGroup] = None,
                ht: Optional[CohomologyGroup] = None) -> Matrix:
    """Matrix of ``H^n(f)`` in the representative bases."""
    hs = hs or CohomologyGroup(f.source, n)
    ht = ht or CohomologyGroup(f.target, n + f.degree)
    comp = f.at(n)
    cols = [ht.coordinates(comp.apply(z)) for z in hs.representatives]
    return Matrix.from_columns(f.source.field, ht.dim, cols)


@dataclass
class QuasiIsoReport:
    ok: bool
    per_degree: Dict[int, dict]


def is_quasi_iso(f: ChainMap, degrees: Optional[Iterable[int]] = None) -> QuasiIsoReport:
    if degrees is None:
        degrees = sorted(set(f.source.dims) | set(f.target.dims))
    per = {}
    ok = True
    for n in degrees:
        hs = CohomologyGroup(f.source, n)
        ht = CohomologyGroup(f.target, n)
        m = induced_map(f, n, hs, ht)
        r = rank(m)
        good = hs.dim == ht.dim == r
        per[n] = {"source": hs.dim, "target": ht.dim, "rank": r, "iso": good}
        ok = ok and good
    return QuasiIsoReport(ok, per)


def homotopy_witness(f: ChainMap, g: ChainMap) -> Optional[Dict[int, Matrix]]:
    """Solve ``f - g = d h + h d`` for ``h_n: X_n -> Y_{n-1}`` as one system."""
    if f.source is not g.source or f.target is not g.target:
        if not (f.source.same_as(g.source) and f.target.same_as(g.target)):
            raise ComplexError("maps must share source and target")
    x, y = f.source, f.target
    fld = x.field
    # unknown blocks h_n for every n with X_n and Y_{n-1} nonzero
    unk: Dict[int, int] = {}
    off = 0
    for n in x.support:
        if y.dim(n - 1):
            unk[n] = off
            off += y.dim(n - 1) * x.dim(n)
    eq_off: Dict[int, int] = {}
    neq = 0
    degs = sorted(set(x.dims) & set(y.dims))
    for n in degs:
        eq_off[n] = neq
        neq += y.dim(n) * x.dim(n)
    entries = []
    rhs = {}
    for n in degs:
        a, bdim = x.dim(n), y.dim(n)
        diff = f.at(n) - g.at(n)
        for i, row in enumerate(diff.rows):
            for j, v in row.items():
                rhs[eq_off[n] + i * a + j] = v
        # d_Y h_n: Y_{n-1} -> Y_n
        if n in unk:
            dy = y.d(n - 1)
            bp = y.dim(n - 1)
            cols = dy.columns()
            for k in range(bp):
                for i, v in cols[k].items():
                    for j in range(a):
                        entries.append((eq_off[n] + i * a + j, unk[n] + k * a + j, v))
        # h_{n+1} d_X: X_n -> X_{n+1} -> Y_n
        if n + 1 in unk:
            dx = x.d(n)
            an = x.dim(n + 1)
            for k in range(an):
                for j, v in dx.rows[k].items():
                    for i in range(bdim):
                        entries.append((eq_off[n] + i * a + j, unk[n + 1] + i * an + k, v))
    system = Matrix.from_entries(fld, neq, off, entries)
    sol = solve(system, rhs)
    if sol is None:
        return None
    out = {}
    for n, o in unk.items():
        a, bp = x.dim(n), y.dim(n - 1)
        ent = [(k // a, k % a, v) for k, v in ((idx - o, val) for idx, val in sol.items()) if 0 <= k < a * bp]
        out[n] = Matrix.from_entries(fld, bp, a, ent)
    return out


# ---------------------------------------------------------------------------
# long exact sequences


@dataclass
class LESNode:
    label: str
    degree: int
    dim: int


@dataclass
class LongExactSequence:
    """Nodes ``H^n(A) -> H^n(X) -> H^n(Q) -> H^{n+1}(A) -> ...`` with maps."""

    nodes: List[LESNode]
    maps: List[Matrix]  # maps[k]: nodes[k] -> nodes[k+1]

    def exactness(self) -> List[dict]:
        out = []
        for k in range(1, len(self.nodes) - 1):
            incoming = rank(self.maps[k - 1])
            outgoing = self.maps[k]
            kern = self.nodes[k].dim - rank(outgoing)
            out.append({"node": f"{self.nodes[k].label}^{self.nodes[k].degree}",
                        "image_in": incoming, "kernel_out": kern, "exact": incoming == kern})
        return out

    def is_exact(self) -> bool:
        return all(e["exact"] for e in self.exactness())

    def consecutive_compositions_vanish(self) -> bool:
        return all((self.maps[k + 1] @ self.maps[k]).is_zero() for k in range(len(self.maps) - 1))


def long_exact_sequence(i: ChainMap, p: ChainMap, degrees: Iterable[int],
                        labels: Tuple[str, str, str] = ("A", "X", "Q")) -> LongExactSequence:
    """Long exact sequence of ``0 -> A -i-> X -p-> Q -> 0`` (assumed short exact)."""
    a, x, q = i.source, i.target, p.target
    degrees = sorted(degrees)
    nodes: List[LESNode] = []
    maps: List[Matrix] = []
    groups = {}

    def grp(cx, tag, n):
        key = (tag, n)
        if key not in groups:
            groups[key] = CohomologyGroup(cx, n)
        return groups[key]

    for idx, n in enumerate(degrees):
        ha, hx, hq = grp(a, "A", n), grp(x, "X", n), grp(q, "Q", n)
        nodes += [LESNode(labels[0], n, ha.dim), LESNode(labels[1], n, hx.dim), LESNode(labels[2], n, hq.dim)]
        maps.append(induced_map(i, n, ha, hx))
        maps.append(induced_map(p, n, hx, hq))
        if idx + 1 < len(degrees):
            ha1 = grp(a, "A", n + 1)
            maps.append(connecting_map(i, p, n, hq, ha1))
    return LongExactSequence(nodes, maps)


def connecting_map(i: ChainMap, p: ChainMap, n: int, hq: CohomologyGroup,
                   ha1: CohomologyGroup) -> Matrix:
    x = i.target
    cols = []
    pn = p.at(n)
    in1 = i.at(n + 1)
    for z in hq.representatives:
        lift = solve(pn, z)
        if lift is None:
            raise ComplexError("projection is not surjective")
        dx = x.d(n).apply(lift)
        pre = solve(in1, dx)
        if pre is None:
            raise ComplexError("boundary of lift is not in the subcomplex")
        cols.append(ha1.coordinates(pre))
    return Matrix.from_columns(x.field, ha1.dim, cols)
