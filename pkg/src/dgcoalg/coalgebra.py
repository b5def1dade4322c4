"""Differential graded coalgebras, comodules and bicomodules as structure constants.

Everything is stored over an explicit ordered basis (labels with integer
degrees).  Structure maps are lists of terms per basis element:

* comultiplication ``comult[i] = [(left, right, coeff), ...]``;
* counit ``counit[i] = coeff``;
* differential ``diff[i] = [(target, coeff), ...]`` (degree +1);
* coaction ``coaction[m] = [(c, m', coeff), ...]`` meaning ``c (x) m'`` for a
  left comodule and ``m' (x) c`` for a right comodule.

Validators never raise on a failed identity: they return a
:class:`ValidationReport` listing every failure with the offending label.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple

from .complexes import ChainComplex
from .linalg import Field, Matrix

DIMENSION_CAP = 64

Terms2 = List[Tuple[int, int, object]]


class StructureError(ValueError):
    pass


def _acc(out: dict, key, val, mod):
    w = out.get(key, 0) + val
    if mod is not None:
        w %= mod
    if w == 0:
        out.pop(key, None)
    else:
        out[key] = w


@dataclass
class Failure:
    identity: str
    label: str
    detail: str = ""

    def as_dict(self) -> dict:
        return {"identity": self.identity, "label": self.label, "detail": self.detail}


@dataclass
class ValidationReport:
    subject: str
    checks: List[str] = dc_field(default_factory=list)
    failures: List[Failure] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, identity: str, label: str, detail: str = ""):
        self.failures.append(Failure(identity, label, detail))

    def failed_identities(self) -> List[str]:
        return sorted({f.identity for f in self.failures})

    def as_dict(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "checks": list(self.checks),
                "failures": [f.as_dict() for f in self.failures]}

    def __bool__(self):
        return self.ok


class _Graded:
    """Shared bookkeeping for objects with a labelled graded basis."""

    def _init_basis(self, field: Field, labels: Sequence[str], degrees: Sequence[int], cap: bool = True):
        if len(labels) != len(degrees):
            raise StructureError("labels and degrees differ in length")
        if len(set(labels)) != len(labels):
            raise StructureError("duplicate basis labels")
        if cap and len(labels) > DIMENSION_CAP:
            raise StructureError(f"dimension {len(labels)} exceeds the cap of {DIMENSION_CAP}")
        self.field = field
        self.labels = tuple(labels)
        self.degrees = tuple(int(d) for d in degrees)
        self._index = {l: i for i, l in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise StructureError(f"unknown basis label {label!r}") from None

    def degree_support(self) -> List[int]:
        return sorted(set(self.degrees))

    def min_degree(self) -> int:
        return min(self.degrees, default=0)

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def apply_diff(self, i: int) -> Dict[int, object]:
        return {j: c for j, c in self.diff[i]}

    def as_complex(self) -> ChainComplex:
        """Underlying complex; each degree keeps the basis order."""
        by_deg: Dict[int, List[int]] = {}
        for i, d in enumerate(self.degrees):
            by_deg.setdefault(d, []).append(i)
        pos = {i: k for idxs in by_deg.values() for k, i in enumerate(idxs)}
        diff = {}
        for n, idxs in by_deg.items():
            if n + 1 not in by_deg:
                continue
            ent = []
            for i in idxs:
                for j, c in self.diff[i]:
                    ent.append((pos[j], pos[i], c))
            diff[n] = Matrix.from_entries(self.field, len(by_deg[n + 1]), len(idxs), ent)
        labels = {n: [self.labels[i] for i in idxs] for n, idxs in by_deg.items()}
        return ChainComplex(self.field, {n: len(v) for n, v in by_deg.items()}, diff, labels, check=False)

    def degree_blocks(self) -> Dict[int, List[int]]:
        out: Dict[int, List[int]] = {}
        for i, d in enumerate(self.degrees):
            out.setdefault(d, []).append(i)
        return out


def _clean_terms(field: Field, terms, arity: int):
    out = []
    acc: dict = {}
    for t in terms:
        key = tuple(t[:arity])
        _acc(acc, key, field(t[arity]), field.p)
    for key in sorted(acc):
        out.append(key + (acc[key],))
    return out


class DGCoalgebra(_Graded):
    def __init__(self, field: Field, labels: Sequence[str], degrees: Sequence[int],
                 comult: Sequence[Sequence[tuple]], counit: Sequence, diff: Optional[Sequence[Sequence[tuple]]] = None,
                 name: str = "C"):
        self._init_basis(field, labels, degrees)
        n = self.dim
        if len(comult) != n or len(counit) != n:
            raise StructureError("structure constants do not match the basis size")
        self.comult: List[Terms2] = [_clean_terms(field, ts, 2) for ts in comult]
        self.counit = [field(e) for e in counit]
        diff = diff if diff is not None else [[] for _ in range(n)]
        if len(diff) != n:
            raise StructureError("differential does not match the basis size")
        self.diff = [_clean_terms(field, ts, 1) for ts in diff]
        self.name = name
        for ts in self.comult:
            for a, b, _ in ts:
                if not (0 <= a < n and 0 <= b < n):
                    raise StructureError("comultiplication index out of range")

    # -- predicates ---------------------------------------------------------
    def is_concentrated(self) -> bool:
        return all(d == 0 for d in self.degrees) and not any(self.diff)

    def is_positively_graded(self) -> bool:
        return all(d >= 0 for d in self.degrees)

    def has_differential(self) -> bool:
        return any(self.diff)

    # -- matrices -----------------------------------------------------------
    def comult_matrix(self) -> Matrix:
        n = self.dim
        return Matrix.from_entries(self.field, n * n, n,
                                   ((a * n + b, i, c) for i, ts in enumerate(self.comult) for a, b, c in ts))

    def counit_matrix(self) -> Matrix:
        return Matrix.from_entries(self.field, 1, self.dim, ((0, i, c) for i, c in enumerate(self.counit)))

    def diff_matrix(self) -> Matrix:
        return Matrix.from_entries(self.field, self.dim, self.dim,
                                   ((j, i, c) for i, ts in enumerate(self.diff) for j, c in ts))

    def structure_key(self):
        return (self.field, self.labels, self.degrees, tuple(map(tuple, self.comult)),
                tuple(self.counit), tuple(map(tuple, self.diff)))

    def __eq__(self, other):
        return isinstance(other, DGCoalgebra) and self.structure_key() == other.structure_key()

    def __hash__(self):
        return hash((self.labels, self.degrees))

    def __repr__(self):
        return f"DGCoalgebra({self.name!r}, dim={self.dim}, {self.field!r})"


class DGComodule(_Graded):
    """One-sided dg comodule; ``coaction[m] = [(c, m', coeff)]``."""

    def __init__(self, coalgebra: DGCoalgebra, side: str, labels: Sequence[str], degrees: Sequence[int],
                 coaction: Sequence[Sequence[tuple]], diff: Optional[Sequence[Sequence[tuple]]] = None,
                 name: str = "M", cap: bool = True):
        if side not in ("left", "right"):
            raise StructureError(f"side must be 'left' or 'right', got {side!r}")
        self._init_basis(coalgebra.field, labels, degrees, cap)
        self.coalgebra = coalgebra
        self.side = side
        n = self.dim
        if len(coaction) != n:
            raise StructureError("coaction does not match the basis size")
        self.coaction: Terms2 = [_clean_terms(self.field, ts, 2) for ts in coaction]
        diff = diff if diff is not None else [[] for _ in range(n)]
        self.diff = [_clean_terms(self.field, ts, 1) for ts in diff]
        self.name = name

    def __repr__(self):
        return f"DGComodule({self.name!r}, {self.side}, dim={self.dim})"


class Bicomodule(_Graded):
    """``D``-``C`` bicomodule: left ``D``-coaction and right ``C``-coaction.

    ``left_coaction[m] = [(d, m', coeff)]`` means ``d (x) m'``;
    ``right_coaction[m] = [(c, m', coeff)]`` means ``m' (x) c``.
    """

    def __init__(self, left: DGCoalgebra, right: DGCoalgebra, labels: Sequence[str], degrees: Sequence[int],
                 left_coaction, right_coaction, diff=None, name: str = "X", cap: bool = True):
        if left.field != right.field:
            raise StructureError("coalgebras over different fields")
        self._init_basis(left.field, labels, degrees, cap)
        self.left = left
        self.right = right
        n = self.dim
        if len(left_coaction) != n or len(right_coaction) != n:
            raise StructureError("coaction does not match the basis size")
        self.left_coaction = [_clean_terms(self.field, ts, 2) for ts in left_coaction]
        self.right_coaction = [_clean_terms(self.field, ts, 2) for ts in right_coaction]
        diff = diff if diff is not None else [[] for _ in range(n)]
        self.diff = [_clean_terms(self.field, ts, 1) for ts in diff]
        self.name = name

    def left_comodule(self) -> DGComodule:
        return DGComodule(self.left, "left", self.labels, self.degrees, self.left_coaction, self.diff,
                          name=self.name, cap=False)

    def right_comodule(self) -> DGComodule:
        return DGComodule(self.right, "right", self.labels, self.degrees, self.right_coaction, self.diff,
                          name=self.name, cap=False)

    def __repr__(self):
        return f"Bicomodule({self.name!r}, {self.left.name}-{self.right.name}, dim={self.dim})"


@dataclass
class CoalgebraMorphism:
    """Degree-preserving linear map; ``matrix`` is ``dim target x dim source``."""

    source: DGCoalgebra
    target: DGCoalgebra
    matrix: Matrix
    name: str = "f"

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise StructureError(f"morphism matrix has shape {self.matrix.shape}")

    def image(self, i: int) -> Dict[int, object]:
        return self.matrix.column(i)

    @classmethod
    def identity(cls, c: DGCoalgebra) -> "CoalgebraMorphism":
        return cls(c, c, Matrix.identity(c.field, c.dim), name="id")


# ---------------------------------------------------------------------------
# element-level helpers


def comult_of(c: DGCoalgebra, i: int) -> Dict[Tuple[int, int], object]:
    return {(a, b): v for a, b, v in c.comult[i]}


def diff_tensor2(c: DGCoalgebra, pairs: Dict[Tuple[int, int], object]) -> Dict[Tuple[int, int], object]:
    """``d(a (x) b) = da (x) b + (-1)^|a| a (x) db`` on a combination of pairs."""
    mod = c.field.p
    out: dict = {}
    for (a, b), v in pairs.items():
        for t, w in c.diff[a]:
            _acc(out, (t, b), v * w, mod)
        s = -1 if c.degrees[a] % 2 else 1
        for t, w in c.diff[b]:
            _acc(out, (a, t), s * v * w, mod)
    return out


def _linear_comb(pairs):
    return {k: v for k, v in pairs.items() if v != 0}


# ---------------------------------------------------------------------------
# validators


def validate_coalgebra(c: DGCoalgebra) -> ValidationReport:
    rep = ValidationReport(f"coalgebra {c.name}")
    mod = c.field.p
    n = c.dim
    rep.checks += ["grading", "coassociativity", "counit", "d^2=0", "co-Leibniz", "counit∘d=0"]
    for i in range(n):
        lab = c.labels[i]
        for a, b, _ in c.comult[i]:
            if c.degrees[a] + c.degrees[b] != c.degrees[i]:
                rep.fail("grading", lab, f"Δ term {c.labels[a]}⊗{c.labels[b]} has the wrong degree")
        if c.counit[i] != 0 and c.degrees[i] != 0:
            rep.fail("grading", lab, "counit nonzero outside degree 0")
        for t, _ in c.diff[i]:
            if c.degrees[t] != c.degrees[i] + 1:
                rep.fail("grading", lab, f"d term {c.labels[t]} does not raise degree by 1")
        # coassociativity
        left: dict = {}
        right: dict = {}
        for a, b, v in c.comult[i]:
            for a1, a2, w in c.comult[a]:
                _acc(left, (a1, a2, b), v * w, mod)
            for b1, b2, w in c.comult[b]:
                _acc(right, (a, b1, b2), v * w, mod)
        if left != right:
            rep.fail("coassociativity", lab)
        # counit laws
        l1: dict = {}
        r1: dict = {}
        for a, b, v in c.comult[i]:
            if c.counit[a] != 0:
                _acc(l1, b, c.counit[a] * v, mod)
            if c.counit[b] != 0:
                _acc(r1, a, c.counit[b] * v, mod)
        if l1 != {i: 1}:
            rep.fail("counit", lab, "(ε⊗id)Δ ≠ id")
        if r1 != {i: 1}:
            rep.fail("counit", lab, "(id⊗ε)Δ ≠ id")
        # d^2 = 0
        dd: dict = {}
        for t, v in c.diff[i]:
            for u, w in c.diff[t]:
                _acc(dd, u, v * w, mod)
        if dd:
            rep.fail("d^2=0", lab)
        # co-Leibniz
        lhs: dict = {}
        for t, v in c.diff[i]:
            for a, b, w in c.comult[t]:
                _acc(lhs, (a, b), v * w, mod)
        rhs = diff_tensor2(c, comult_of(c, i))
        if lhs != rhs:
            rep.fail("co-Leibniz", lab, "Δd ≠ dΔ")
        # counit kills d
        e = 0
        for t, v in c.diff[i]:
            e += c.counit[t] * v
        if mod is not None:
            e %= mod
        if e != 0:
            rep.fail("counit∘d=0", lab)
    return rep


def validate_comodule(m: DGComodule) -> ValidationReport:
    rep = ValidationReport(f"{m.side} comodule {m.name} over {m.coalgebra.name}")
    c = m.coalgebra
    mod = m.field.p
    rep.checks += ["grading", "coassociativity", "counit", "d^2=0", "dg-coaction"]
    left = m.side == "left"
    for i in range(m.dim):
        lab = m.labels[i]
        for a, j, _ in m.coaction[i]:
            if not (0 <= a < c.dim and 0 <= j < m.dim):
                rep.fail("grading", lab, "coaction index out of range")
                return rep
            if c.degrees[a] + m.degrees[j] != m.degrees[i]:
                rep.fail("grading", lab, "coaction term has the wrong degree")
        for t, _ in m.diff[i]:
            if m.degrees[t] != m.degrees[i] + 1:
                rep.fail("grading", lab, "d does not raise degree by 1")
        x: dict = {}
        y: dict = {}
        for a, j, v in m.coaction[i]:
            for a1, a2, w in c.comult[a]:
                # left: (Δ⊗1)ρ -> (a1,a2,j); right: (1⊗Δ)ρ -> (j,a1,a2)
                _acc(x, (a1, a2, j) if left else (j, a1, a2), v * w, mod)
            for b, k, w in m.coaction[j]:
                # left: (1⊗ρ)ρ -> (a,b,k); right: (ρ⊗1)ρ -> (k,b,a)
                _acc(y, (a, b, k) if left else (k, b, a), v * w, mod)
        if x != y:
            rep.fail("coassociativity", lab)
        e: dict = {}
        for a, j, v in m.coaction[i]:
            if c.counit[a] != 0:
                _acc(e, j, c.counit[a] * v, mod)
        if e != {i: 1}:
            rep.fail("counit", lab, "counit law fails")
        dd: dict = {}
        for t, v in m.diff[i]:
            for u, w in m.diff[t]:
                _acc(dd, u, v * w, mod)
        if dd:
            rep.fail("d^2=0", lab)
        # coaction is a chain map into C⊗M (resp. M⊗C) with the Koszul differential
        lhs: dict = {}
        for t, v in m.diff[i]:
            for a, j, w in m.coaction[t]:
                _acc(lhs, (a, j), v * w, mod)
        rhs: dict = {}
        for a, j, v in m.coaction[i]:
            if left:
                for t, w in c.diff[a]:
                    _acc(rhs, (t, j), v * w, mod)
                s = -1 if c.degrees[a] % 2 else 1
                for t, w in m.diff[j]:
                    _acc(rhs, (a, t), s * v * w, mod)
            else:
                for t, w in m.diff[j]:
                    _acc(rhs, (a, t), v * w, mod)
                s = -1 if m.degrees[j] % 2 else 1
                for t, w in c.diff[a]:
                    _acc(rhs, (t, j), s * v * w, mod)
        if lhs != rhs:
            rep.fail("dg-coaction", lab, "ρd ≠ dρ")
    return rep


def validate_bicomodule(x: Bicomodule) -> ValidationReport:
    rep = ValidationReport(f"bicomodule {x.name} over {x.left.name}-{x.right.name}")
    for side in (x.left_comodule(), x.right_comodule()):
        sub = validate_comodule(side)
        rep.checks += [f"{side.side}:{c}" for c in sub.checks]
        for f in sub.failures:
            rep.fail(f"{side.side} {f.identity}", f.label, f.detail)
    rep.checks.append("commuting coactions")
    mod = x.field.p
    for i in range(x.dim):
        a: dict = {}
        b: dict = {}
        # (id_D ⊗ ρ_R) ρ_L and (ρ_L ⊗ id_C) ρ_R, ordered (D-leg, module, C-leg)
        for d, j, v in x.left_coaction[i]:
            for c, k, w in x.right_coaction[j]:
                _acc(a, (d, k, c), v * w, mod)
        for c, j, v in x.right_coaction[i]:
            for d, k, w in x.left_coaction[j]:
                _acc(b, (d, k, c), v * w, mod)
        if a != b:
            rep.fail("commuting coactions", x.labels[i])
    return rep


def validate_morphism(f: CoalgebraMorphism) -> ValidationReport:
    rep = ValidationReport(f"morphism {f.name}: {f.source.name} -> {f.target.name}")
    rep.checks += ["grading", "comultiplicative", "counit", "chain map"]
    c, d = f.source, f.target
    mod = c.field.p
    cols = f.matrix.columns()
    for i in range(c.dim):
        lab = c.labels[i]
        fi = cols[i]
        for t in fi:
            if d.degrees[t] != c.degrees[i]:
                rep.fail("grading", lab, "f does not preserve degree")
        lhs: dict = {}
        for t, v in fi.items():
            for a, b, w in d.comult[t]:
                _acc(lhs, (a, b), v * w, mod)
        rhs: dict = {}
        for a, b, v in c.comult[i]:
            for s, w in cols[a].items():
                for t, u in cols[b].items():
                    _acc(rhs, (s, t), v * w * u, mod)
        if lhs != rhs:
            rep.fail("comultiplicative", lab, "Δ_D f ≠ (f⊗f)Δ_C")
        e = sum(d.counit[t] * v for t, v in fi.items())
        if mod is not None:
            e %= mod
        if e != c.counit[i]:
            rep.fail("counit", lab, "ε_D f ≠ ε_C")
        a1: dict = {}
        for t, v in fi.items():
            for u, w in d.diff[t]:
                _acc(a1, u, v * w, mod)
        a2: dict = {}
        for t, v in c.diff[i]:
            for u, w in cols[t].items():
                _acc(a2, u, v * w, mod)
        if a1 != a2:
            rep.fail("chain map", lab, "f d ≠ d f")
    return rep


# ---------------------------------------------------------------------------
# constructions


def opposite(c: DGCoalgebra) -> DGCoalgebra:
    """``Δ^op(x) = Σ (-1)^{|x'||x''|} x'' ⊗ x'``."""
    comult = []
    for ts in c.comult:
        comult.append([(b, a, v if (c.degrees[a] * c.degrees[b]) % 2 == 0 else -v) for a, b, v in ts])
    name = c.name[:-3] if c.name.endswith("^op") else c.name + "^op"
    return DGCoalgebra(c.field, c.labels, c.degrees, comult, c.counit, c.diff, name=name)


def tensor_coalgebra(c: DGCoalgebra, d: DGCoalgebra, name: Optional[str] = None) -> DGCoalgebra:
    """``C ⊗ D`` with the Koszul sign in the middle flip; basis ordered ``c`` slowest."""
    if c.field != d.field:
        raise StructureError("field mismatch")
    nd = d.dim
    labels = [f"{a}|{b}" for a in c.labels for b in d.labels]
    degrees = [x + y for x in c.degrees for y in d.degrees]
    comult = []
    counit = []
    diff = []
    for i in range(c.dim):
        for j in range(nd):
            terms = []
            for a1, a2, v in c.comult[i]:
                for b1, b2, w in d.comult[j]:
                    s = -1 if (c.degrees[a2] * d.degrees[b1]) % 2 else 1
                    terms.append((a1 * nd + b1, a2 * nd + b2, s * v * w))
            comult.append(terms)
            counit.append(c.counit[i] * d.counit[j])
            dt = [(t * nd + j, v) for t, v in c.diff[i]]
            s = -1 if c.degrees[i] % 2 else 1
            dt += [(i * nd + t, s * v) for t, v in d.diff[j]]
            diff.append(dt)
    return DGCoalgebra(c.field, labels, degrees, comult, counit, diff, name=name or f"{c.name}⊗{d.name}")


def enveloping(c: DGCoalgebra) -> DGCoalgebra:
    return tensor_coalgebra(c, opposite(c), name=f"{c.name}^e")


def regular_comodule(c: DGCoalgebra, side: str = "left") -> DGComodule:
    if side == "left":
        coaction = [[(a, b, v) for a, b, v in ts] for ts in c.comult]
    else:
        coaction = [[(b, a, v) for a, b, v in ts] for ts in c.comult]
    return DGComodule(c, side, c.labels, c.degrees, coaction, c.diff, name=c.name)


def regular_bicomodule(c: DGCoalgebra) -> Bicomodule:
    """``C`` as a ``C``-``C`` bicomodule via ``Δ`` on both sides."""
    left = [[(a, b, v) for a, b, v in ts] for ts in c.comult]
    right = [[(b, a, v) for a, b, v in ts] for ts in c.comult]
    return Bicomodule(c, c, c.labels, c.degrees, left, right, c.diff, name=c.name)


def cofree(c: DGCoalgebra, v: ChainComplex, name: Optional[str] = None) -> DGComodule:
    """``C ⊗ V`` with coaction ``Δ ⊗ id`` and Koszul differential."""
    if c.field != v.field:
        raise StructureError("field mismatch")
    vbasis = [(n, k) for n in v.support for k in range(v.dim(n))]
    vpos = {b: i for i, b in enumerate(vbasis)}
    nv = len(vbasis)
    labels, degrees, coaction, diff = [], [], [], []
    dv = {n: v.d(n).columns() for n in v.support}
    for i in range(c.dim):
        for (n, k) in vbasis:
            lab = v.labels[n][k] if v.labels and n in v.labels else f"v{n}_{k}"
            labels.append(f"{c.labels[i]}|{lab}")
            degrees.append(c.degrees[i] + n)
            coaction.append([(a, b * nv + vpos[(n, k)], w) for a, b, w in c.comult[i]])
            dt = [(t * nv + vpos[(n, k)], w) for t, w in c.diff[i]]
            s = -1 if c.degrees[i] % 2 else 1
            dt += [(i * nv + vpos[(n + 1, r)], s * w) for r, w in dv[n][k].items()]
            diff.append(dt)
    return DGComodule(c, "left", labels, degrees, coaction, diff, name=name or f"{c.name}⊗V", cap=False)


def corestrict(f: CoalgebraMorphism, m: DGComodule) -> DGComodule:
    """Coaction ``(f⊗id)ρ`` (or ``(id⊗f)ρ`` for a right comodule) over the target."""
    rep = validate_morphism(f)
    if not rep.ok:
        raise StructureError(f"invalid morphism: {rep.failed_identities()}")
    if m.coalgebra != f.source:
        raise StructureError("comodule is not over the source of the morphism")
    cols = f.matrix.columns()
    mod = m.field.p
    coaction = []
    for ts in m.coaction:
        acc: dict = {}
        for a, j, v in ts:
            for t, w in cols[a].items():
                _acc(acc, (t, j), v * w, mod)
        coaction.append([(t, j, v) for (t, j), v in sorted(acc.items())])
    return DGComodule(f.target, m.side, m.labels, m.degrees, coaction, m.diff, name=m.name, cap=False)


def corestrict_bicomodule(x: Bicomodule, f_left: Optional[CoalgebraMorphism] = None,
                          f_right: Optional[CoalgebraMorphism] = None) -> Bicomodule:
    left = x.left_comodule()
    right = x.right_comodule()
    if f_left is not None:
        left = corestrict(f_left, left)
    if f_right is not None:
        right = corestrict(f_right, right)
    return Bicomodule(left.coalgebra, right.coalgebra, x.labels, x.degrees, left.coaction, right.coaction,
                      x.diff, name=x.name, cap=False)


def as_enveloping_comodule(x: Bicomodule) -> DGComodule:
    """View a ``D``-``C`` bicomodule as a left comodule over ``D ⊗ C^op``.

    ``m ↦ Σ ± (d ⊗ c) ⊗ m'`` where the sign is the Koszul sign of moving the
    right leg ``c`` past ``m'``.
    """
    env = tensor_coalgebra(x.left, opposite(x.right))
    nc = x.right.dim
    mod = x.field.p
    coaction = []
    for i in range(x.dim):
        acc: dict = {}
        for d, j, v in x.left_coaction[i]:
            for c, k, w in x.right_coaction[j]:
                s = -1 if (x.right.degrees[c] * x.degrees[k]) % 2 else 1
                _acc(acc, (d * nc + c, k), s * v * w, mod)
        coaction.append([(a, k, v) for (a, k), v in sorted(acc.items())])
    return DGComodule(env, "left", x.labels, x.degrees, coaction, x.diff, name=x.name, cap=False)


def direct_sum_comodules(ms: Sequence[DGComodule], name: str = "⊕") -> DGComodule:
    if not ms:
        raise StructureError("empty direct sum")
    c = ms[0].coalgebra
    side = ms[0].side
    labels, degrees, coaction, diff = [], [], [], []
    off = 0
    for k, m in enumerate(ms):
        if m.coalgebra != c or m.side != side:
            raise StructureError("summands over different coalgebras or sides")
        labels += [f"{l}#{k}" for l in m.labels]
        degrees += list(m.degrees)
        coaction += [[(a, j + off, v) for a, j, v in ts] for ts in m.coaction]
        diff += [[(t + off, v) for t, v in ts] for ts in m.diff]
        off += m.dim
    return DGComodule(c, side, labels, degrees, coaction, diff, name=name, cap=False)


def is_colinear(f: Matrix, m: DGComodule, n: DGComodule) -> bool:
    """Degree-0 linear map ``f: M -> N`` (``dim N x dim M``) commutes with the coactions."""
    return not colinearity_defects(f, m, n)


def colinearity_defects(f: Matrix, m: DGComodule, n: DGComodule) -> List[str]:
    if m.coalgebra != n.coalgebra or m.side != n.side:
        raise StructureError("comodules over different coalgebras or sides")
    mod = m.field.p
    cols = f.columns()
    bad = []
    for i in range(m.dim):
        a: dict = {}
        for t, v in cols[i].items():
            for c, j, w in n.coaction[t]:
                _acc(a, (c, j), v * w, mod)
        b: dict = {}
        for c, j, v in m.coaction[i]:
            for t, w in cols[j].items():
                _acc(b, (c, t), v * w, mod)
        if a != b:
            bad.append(m.labels[i])
    return bad
