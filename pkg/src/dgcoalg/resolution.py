"""Cotensor products and truncated standard (cobar) resolutions.

An element of the resolution ``C(M)`` of a left comodule ``M`` is a pair
``(cs, m)`` where ``cs`` is a tuple of coalgebra basis indices (the level
``r = len(cs)``) and ``m`` a module basis index.  Its degree is
``Σ|c_i| + |m| + r - 1``; level 0 only occurs in the augmented version.

Truncating to levels ``<= p`` is the quotient by the subcomplex of higher
levels, so cohomology is unchanged in degrees ``<= p + min|M| - 2`` when the
coalgebra is non-negatively graded (the discarded part starts in degree
``p + min|M|``).  Optionally only degrees ``<= max_degree`` are built; that
brutal truncation loses the top degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .coalgebra import (Bicomodule, DGCoalgebra, DGComodule, StructureError, _acc, opposite,
                        tensor_coalgebra)
from .complexes import ChainComplex, ChainMap, cohomology_dims, restrict_to_kernels
from .linalg import Matrix, kernel_with_free_columns, rank, solve
from .tensor_ops import tuples_by_degree

Elem = Tuple[tuple, int]


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


class ResolutionError(ValueError):
    pass


# ---------------------------------------------------------------------------
# generic complexes spanned by explicit basis keys


@dataclass
class KeyedComplex:
    """A complex whose degree-``n`` basis is an explicit list of hashable keys."""

    complex: ChainComplex
    basis: Dict[int, List[object]]
    position: Dict[object, Tuple[int, int]] = dc_field(default_factory=dict)

    def vector(self, n: int, combo: Dict[object, object]) -> Dict[int, object]:
        out = {}
        for k, v in combo.items():
            deg, pos = self.position[k]
            if deg != n:
                raise ValueError(f"basis key {k!r} lives in degree {deg}, not {n}")
            out[pos] = v
        return out


def keyed_complex(field, basis: Dict[int, List[object]], boundary, check: bool = True) -> KeyedComplex:
    """Assemble a complex from ``boundary(key) -> {key: coeff}``; keys outside the basis are dropped."""
    position = {}
    for n, keys in basis.items():
        for i, k in enumerate(keys):
            position[k] = (n, i)
    diff = {}
    for n, keys in basis.items():
        if n + 1 not in basis:
            continue
        entries = []
        for j, k in enumerate(keys):
            for u, v in boundary(k).items():
                loc = position.get(u)
                if loc is None:
                    continue
                if loc[0] != n + 1:
                    raise ResolutionError(f"boundary of {k!r} has a term in degree {loc[0]}")
                entries.append((loc[1], j, v))
        diff[n] = Matrix.from_entries(field, len(basis[n + 1]), len(keys), entries)
    cx = ChainComplex(field, {n: len(v) for n, v in basis.items()}, diff, check=check)
    return KeyedComplex(cx, basis, position)


# ---------------------------------------------------------------------------
# standard resolution


def _left_structure(m: Union[DGComodule, Bicomodule]):
    if isinstance(m, Bicomodule):
        return m.left, m.left_coaction, m.right, m.right_coaction
    if m.side != "left":
        raise ResolutionError("the standard resolution is built for left comodules")
    return m.coalgebra, m.coaction, None, None


class StandardResolution:
    """Truncated ``C_p(M)`` (levels ``1..p``) or its augmented version ``Ĉ_p(M)`` (levels ``0..p``).

    If ``M`` is a bicomodule (left ``C``, right ``E``) the resolution carries
    the induced right ``E``-coaction as well.
    """

    def __init__(self, m: Union[DGComodule, Bicomodule], levels: int, max_degree: Optional[int] = None,
                 augmented: bool = False):
        if levels < 1:
            raise ResolutionError("need at least one resolution level")
        c, coaction, right, right_coaction = _left_structure(m)
        if not c.is_positively_graded():
            raise ResolutionError("the coalgebra must be non-negatively graded")
        self.base = m
        self.coalgebra = c
        self.field = c.field
        self.levels = levels
        self.augmented = augmented
        self.max_degree = max_degree
        self._rho = coaction
        self.right = right
        self._rho_right = right_coaction
        self.basis = self._enumerate()
        kc = keyed_complex(self.field, self.basis, self.boundary)
        self.keyed = kc
        self.complex = kc.complex
        self.position = kc.position

    # -- basis --------------------------------------------------------------
    def degree(self, x: Elem) -> int:
        cs, j = x
        return sum(self.coalgebra.degrees[i] for i in cs) + self.base.degrees[j] + len(cs) - 1

    def _enumerate(self) -> Dict[int, List[Elem]]:
        c, m = self.coalgebra, self.base
        out: Dict[int, List[Elem]] = {}
        lo = 0 if self.augmented else 1
        top = self.max_degree
        for r in range(lo, self.levels + 1):
            for j in range(m.dim):
                base = m.degrees[j] + r - 1
                budget = (top - base) if top is not None else None
                if budget is not None and budget < 0:
                    continue
                if budget is None:
                    budget = r * c.max_degree()
                for deg, ts in tuples_by_degree(c, r, budget).items():
                    for t in ts:
                        out.setdefault(base + deg, []).append((t, j))
        for n in out:
            out[n].sort(key=lambda x: (len(x[0]), x[0], x[1]))
        return out

    @property
    def window(self) -> int:
        """Cohomology of the truncation agrees with the full resolution in degrees ``<= window``."""
        w = self.levels + self.base.min_degree() - 2
        if self.max_degree is not None:
            w = min(w, self.max_degree - 1)
        return w

    def level(self, x: Elem) -> int:
        return len(x[0])

    # -- operators ----------------------------------------------------------
    def d_part(self, x: Elem) -> Dict[Elem, object]:
        cs, j = x
        c, m = self.coalgebra, self.base
        mod = self.field.p
        r = len(cs)
        out: dict = {}
        pre = 0
        for k, ck in enumerate(cs):
            s = _sign(r + pre)
            for t, v in c.diff[ck]:
                _acc(out, (cs[:k] + (t,) + cs[k + 1:], j), s * v, mod)
            pre += c.degrees[ck]
        s = _sign(r + pre)
        for t, v in m.diff[j]:
            _acc(out, (cs, t), s * v, mod)
        return out

    def bprime_part(self, x: Elem) -> Dict[Elem, object]:
        cs, j = x
        r = len(cs)
        if r + 1 > self.levels:
            return {}
        c = self.coalgebra
        mod = self.field.p
        out: dict = {}
        for k, ck in enumerate(cs):
            s = _sign(k)
            for a, b, v in c.comult[ck]:
                _acc(out, (cs[:k] + (a, b) + cs[k + 1:], j), s * v, mod)
        s = _sign(r)
        for a, t, v in self._rho[j]:
            _acc(out, (cs + (a,), t), s * v, mod)
        return out

    def boundary(self, x: Elem) -> Dict[Elem, object]:
        out = self.d_part(x)
        mod = self.field.p
        for k, v in self.bprime_part(x).items():
            _acc(out, k, v, mod)
        return out

    def homotopy(self, x: Elem) -> Dict[Elem, object]:
        """``h(c_1..c_r, m) = ε(c_1)(c_2..c_r, m)`` and ``h(m) = 0``."""
        cs, j = x
        if not cs:
            return {}
        e = self.coalgebra.counit[cs[0]]
        return {(cs[1:], j): e} if e != 0 else {}

    # -- coactions on the resolution ---------------------------------------
    def left_coaction(self, x: Elem) -> List[Tuple[int, Elem, object]]:
        """``(c_1..c_r, m) ↦ Σ (-1)^{|c_1'| r} c_1' ⊗ (c_1'', c_2.., m)``."""
        cs, j = x
        if not cs:
            raise ResolutionError("level 0 carries no cofree coaction")
        r = len(cs)
        out = []
        for a, b, v in self.coalgebra.comult[cs[0]]:
            s = _sign(self.coalgebra.degrees[a] * r)
            out.append((a, ((b,) + cs[1:], j), s * v))
        return out

    def right_coaction(self, x: Elem) -> List[Tuple[int, Elem, object]]:
        """``(.., m) ↦ Σ (-1)^{|e|} (.., m_0) ⊗ e`` from the right coaction of ``M``."""
        if self._rho_right is None:
            raise ResolutionError("the base carries no right coaction")
        cs, j = x
        out = []
        for e, t, v in self._rho_right[j]:
            out.append((e, (cs, t), _sign(self.right.degrees[e]) * v))
        return out

    # -- packaged views -----------------------------------------------------
    def _flat(self):
        keys = [k for n in sorted(self.basis) for k in self.basis[n]]
        idx = {k: i for i, k in enumerate(keys)}
        return keys, idx

    def _label(self, x: Elem) -> str:
        cs, j = x
        c = self.coalgebra
        return "(" + ",".join([c.labels[i] for i in cs] + [self.base.labels[j]]) + ")"

    def _flat_diff(self, keys, idx):
        mod = self.field.p
        diff = []
        for k in keys:
            terms = [(idx[u], v) for u, v in self.boundary(k).items() if u in idx]
            diff.append(terms)
        return diff

    def as_comodule(self) -> DGComodule:
        """The (truncated) resolution as a left dg comodule over ``C`` (levels ``>= 1``)."""
        if self.augmented:
            raise ResolutionError("the augmented resolution is not a comodule")
        keys, idx = self._flat()
        co = []
        for k in keys:
            co.append([(a, idx[y], v) for a, y, v in self.left_coaction(k) if y in idx])
        return DGComodule(self.coalgebra, "left", [self._label(k) for k in keys], [self.degree(k) for k in keys],
                          co, self._flat_diff(keys, idx), name=f"C({self.base.name})", cap=False)

    def as_bicomodule(self) -> Bicomodule:
        if self.augmented or self._rho_right is None:
            raise ResolutionError("needs a non-augmented resolution of a bicomodule")
        keys, idx = self._flat()
        lc, rc = [], []
        for k in keys:
            lc.append([(a, idx[y], v) for a, y, v in self.left_coaction(k) if y in idx])
            rc.append([(e, idx[y], v) for e, y, v in self.right_coaction(k) if y in idx])
        return Bicomodule(self.coalgebra, self.right, [self._label(k) for k in keys],
                          [self.degree(k) for k in keys], lc, rc, self._flat_diff(keys, idx),
                          name=f"C({self.base.name})", cap=False)

    # -- augmentation and homotopy checks ----------------------------------
    def augmentation(self) -> ChainMap:
        """``m ↦ (-1)^{|m|} ρ(m)``, a chain map ``M -> C_p(M)``."""
        if self.augmented:
            raise ResolutionError("augmentation targets the non-augmented resolution")
        src = self.base.as_complex()
        blocks = self.base.degree_blocks()
        comps = {}
        for n, idxs in blocks.items():
            if n not in self.basis:
                continue
            ent = []
            for col, j in enumerate(idxs):
                s = _sign(self.base.degrees[j])
                for a, t, v in self._rho[j]:
                    deg, pos = self.position[((a,), t)]
                    ent.append((pos, col, s * v))
            comps[n] = Matrix.from_entries(self.field, len(self.basis[n]), len(idxs), ent)
        tgt = self.complex
        return ChainMap(src, tgt, comps)

    def operator_matrix(self, op, n: int, shift: int) -> Matrix:
        """Matrix of an element-level operator from degree ``n`` to ``n + shift``."""
        src = self.basis.get(n, [])
        tgt = self.basis.get(n + shift, [])
        ent = []
        for j, k in enumerate(src):
            for u, v in op(k).items():
                loc = self.position.get(u)
                if loc is not None:
                    ent.append((loc[1], j, v))
        return Matrix.from_entries(self.field, len(tgt), len(src), ent)

    def homotopy_defects(self) -> List[str]:
        """Check ``b'h + hb' = id`` and ``dh + hd = 0`` on every element of level ``< p``.

        Only elements whose images stay inside the built degrees are used.
        """
        if not self.augmented:
            raise ResolutionError("the contracting homotopy lives on the augmented resolution")
        bad = []
        mod = self.field.p
        for n, keys in self.basis.items():
            for x in keys:
                if self.level(x) >= self.levels:
                    continue
                if self.max_degree is not None and n + 1 > self.max_degree:
                    continue
                a: dict = {}
                for y, v in self.homotopy(x).items():
                    for z, w in self.bprime_part(y).items():
                        _acc(a, z, v * w, mod)
                for y, v in self.bprime_part(x).items():
                    for z, w in self.homotopy(y).items():
                        _acc(a, z, v * w, mod)
                if a != {x: 1}:
                    bad.append(f"b'h+hb' at {self._label(x)}")
                b: dict = {}
                for y, v in self.homotopy(x).items():
                    for z, w in self.d_part(y).items():
                        _acc(b, z, v * w, mod)
                for y, v in self.d_part(x).items():
                    for z, w in self.homotopy(y).items():
                        _acc(b, z, v * w, mod)
                if b:
                    bad.append(f"dh+hd at {self._label(x)}")
        return bad


def standard_resolution(m: Union[DGComodule, Bicomodule], p: int, max_degree: Optional[int] = None) -> StandardResolution:
    return StandardResolution(m, p, max_degree=max_degree, augmented=False)


def augmented_resolution(m: Union[DGComodule, Bicomodule], p: int, max_degree: Optional[int] = None) -> StandardResolution:
    return StandardResolution(m, p, max_degree=max_degree, augmented=True)


def contracting_homotopy(r: StandardResolution, n: int) -> Matrix:
    """Matrix of ``h`` from degree ``n`` to ``n - 1`` on an augmented resolution."""
    if not r.augmented:
        raise ResolutionError("the contracting homotopy lives on the augmented resolution")
    return r.operator_matrix(r.homotopy, n, -1)


# ---------------------------------------------------------------------------
# cotensor products


@dataclass
class CotensorResult:
    """Kernel subcomplex of ``X ⊗ Y``; ``ambient`` is the keyed tensor complex."""

    complex: ChainComplex
    ambient: KeyedComplex
    kernels: Dict[int, Tuple[Matrix, List[int]]]

    def dims(self) -> Dict[int, int]:
        return dict(self.complex.dims)


def _tensor_keyed(x, y, max_degree: Optional[int] = None) -> KeyedComplex:
    """``X ⊗ Y`` over pairs of basis indices with the Koszul differential."""
    basis: Dict[int, List[tuple]] = {}
    for i in range(x.dim):
        for j in range(y.dim):
            n = x.degrees[i] + y.degrees[j]
            if max_degree is None or n <= max_degree:
                basis.setdefault(n, []).append((i, j))
    mod = x.field.p

    def bd(k):
        i, j = k
        out: dict = {}
        for t, v in x.diff[i]:
            _acc(out, (t, j), v, mod)
        s = _sign(x.degrees[i])
        for t, v in y.diff[j]:
            _acc(out, (i, t), s * v, mod)
        return out

    return keyed_complex(x.field, basis, bd, check=False)


def _kernel_complex(amb: KeyedComplex, constraint) -> CotensorResult:
    """Restrict ``amb`` to the kernels of ``constraint(key) -> {row key: coeff}``."""
    fld = amb.complex.field
    cons = {}
    for n, keys in amb.basis.items():
        rows: Dict[object, int] = {}
        ent = []
        for j, k in enumerate(keys):
            for rk, v in constraint(k).items():
                if rk not in rows:
                    rows[rk] = len(rows)
                ent.append((rows[rk], j, v))
        cons[n] = Matrix.from_entries(fld, len(rows), len(keys), ent)
    kernels = {n: kernel_with_free_columns(m) for n, m in cons.items()}
    sub = restrict_to_kernels(amb.complex, cons)
    return CotensorResult(sub, amb, kernels)


def cotensor(m: DGComodule, n: DGComodule, max_degree: Optional[int] = None) -> CotensorResult:
    """``M □_C N``: kernel of ``ρ_M ⊗ id - id ⊗ ρ_N`` on ``M ⊗ N``."""
    if m.side != "right" or n.side != "left":
        raise StructureError("cotensor needs a right comodule and a left comodule")
    if m.coalgebra != n.coalgebra:
        raise StructureError("comodules over different coalgebras")
    mod = m.field.p
    amb = _tensor_keyed(m, n, max_degree)

    def con(k):
        i, j = k
        out: dict = {}
        for c, t, v in m.coaction[i]:
            _acc(out, (t, c, j), v, mod)
        for c, t, v in n.coaction[j]:
            _acc(out, (i, c, t), -v, mod)
        return out

    return _kernel_complex(amb, con)


def cotensor_comodule(t: Bicomodule, x: DGComodule) -> DGComodule:
    """``T □_C X`` for a ``D``-``C`` bicomodule ``T`` as a left ``D``-comodule."""
    res = cotensor(t.right_comodule(), x)
    amb = res.ambient
    labels, degrees, keyvecs = [], [], []
    for n in sorted(res.kernels):
        k, free = res.kernels[n]
        for col in range(k.ncols):
            vec = {amb.basis[n][i]: v for i, v in k.column(col).items()}
            keyvecs.append((n, vec, free))
            labels.append(f"z{n}_{col}")
            degrees.append(n)
    offset = {}
    acc = 0
    for n in sorted(res.kernels):
        offset[n] = acc
        acc += res.kernels[n][0].ncols
    mod = t.field.p
    coaction = []
    diff = []
    for n, vec, free in keyvecs:
        # left D-coaction on the first leg: d ⊗ (t' ⊗ x); legs group by the D-element
        by_d: Dict[int, dict] = {}
        for (i, j), v in vec.items():
            for dd, i2, w in t.left_coaction[i]:
                _acc(by_d.setdefault(dd, {}), (i2, j), v * w, mod)
        terms = []
        for dd, comp in sorted(by_d.items()):
            if not comp:
                continue
            m_deg = n - t.left.degrees[dd]
            k2, free2 = res.kernels[m_deg]
            pos = amb.position
            for fi, f in enumerate(free2):
                key = amb.basis[m_deg][f]
                if key in comp:
                    terms.append((dd, offset[m_deg] + fi, comp[key]))
        coaction.append(terms)
        dv = amb.complex.d(n).apply({amb.position[k][1]: v for k, v in vec.items()})
        dterms = []
        if n + 1 in res.kernels:
            for fi, f in enumerate(res.kernels[n + 1][1]):
                if f in dv:
                    dterms.append((offset[n + 1] + fi, dv[f]))
        diff.append(dterms)
    return DGComodule(t.left, "left", labels, degrees, coaction, diff, name=f"{t.name}□{x.name}", cap=False)


def cotensor_bicomodules(x: Bicomodule, m: Bicomodule, max_degree: Optional[int] = None) -> CotensorResult:
    """``X □_{C^e} M`` for two ``C``-``C`` bicomodules.

    Kernel on ``X ⊗ M`` of ``ρ_R^X ⊗ id - id ⊗ ρ_L^M`` (into ``X ⊗ C ⊗ M``)
    together with ``ρ_L^X ⊗ id - τ(id ⊗ ρ_R^M)`` (into ``C ⊗ X ⊗ M``), where
    ``τ`` moves the right leg of ``M`` to the front with its Koszul sign.
    """
    c = x.left
    if not (x.right == c and m.left == c and m.right == c):
        raise StructureError("both arguments must be C-C bicomodules over the same C")
    mod = c.field.p
    amb = _tensor_keyed(x, m, max_degree)

    def con(k):
        i, j = k
        out: dict = {}
        for e, t, v in x.right_coaction[i]:
            _acc(out, ("R", t, e, j), v, mod)
        for e, t, v in m.left_coaction[j]:
            _acc(out, ("R", i, e, t), -v, mod)
        for e, t, v in x.left_coaction[i]:
            _acc(out, ("L", e, t, j), v, mod)
        for e, t, v in m.right_coaction[j]:
            s = _sign(c.degrees[e] * (x.degrees[i] + m.degrees[t]))
            _acc(out, ("L", e, i, t), -s * v, mod)
        return out

    return _kernel_complex(amb, con)


def derived_cotensor(x: Union[DGComodule, Bicomodule], m: Union[DGComodule, Bicomodule], p: int,
                     max_degree: Optional[int] = None) -> Tuple[CotensorResult, int]:
    """``X □_C C_p(M)`` with its sound window.

    ``x`` is a right ``C``-comodule (or a bicomodule whose right side is
    used); ``m`` a left ``C``-comodule (or bicomodule).
    """
    xr = x.right_comodule() if isinstance(x, Bicomodule) else x
    res = standard_resolution(m, p, max_degree=max_degree)
    cm = res.as_comodule()
    out = cotensor(xr, cm, max_degree)
    w = res.window + xr.min_degree()
    if max_degree is not None:
        w = min(w, max_degree - 1)
    return out, w


# ---------------------------------------------------------------------------
# colinear Hom complexes


def _colinear_hom_complex(m, x, degrees, left: bool = True, right: bool = False) -> ChainComplex:
    """Kernel route: all graded maps ``M -> X`` restricted to colinear ones.

    ``m`` and ``x`` are comodules (``left``) or bicomodules (``left`` and/or
    ``right`` constraints).  Degree-``n`` colinearity on the left carries the
    sign ``(-1)^{n|c|}``; on the right no sign appears.
    """
    from .complexes import hom_complex, hom_index

    ym = m.as_complex()
    zx = x.as_complex()
    blocks_m = m.degree_blocks()
    blocks_x = x.degree_blocks()
    pos_m = {i: (d, k) for d, idxs in blocks_m.items() for k, i in enumerate(idxs)}
    pos_x = {i: (d, k) for d, idxs in blocks_x.items() for k, i in enumerate(idxs)}
    if isinstance(m, Bicomodule):
        lm, lx = m.left_coaction, x.left_coaction
        rm, rx = m.right_coaction, x.right_coaction
        lco = m.left
    else:
        lm, lx = m.coaction, x.coaction
        rm = rx = None
        lco = m.coalgebra
    mod = m.field.p

    def constraint(n):
        offs = hom_index(ym, zx, n)
        total = sum(ym.dim(a) * zx.dim(a + n) for a in offs)

        def var(i_x, j_m):
            dm, km = pos_m[j_m]
            dx, kx = pos_x[i_x]
            if dm not in offs or dx != dm + n:
                return None
            return offs[dm] + kx * ym.dim(dm) + km

        rows: Dict[tuple, int] = {}
        ent = []

        def add(rk, col, v):
            if col is None:
                return
            if rk not in rows:
                rows[rk] = len(rows)
            ent.append((rows[rk], col, v))

        for j in range(m.dim):
            for i in range(x.dim):
                col = var(i, j)
                if col is None:
                    continue
                if left:
                    # ρ_X F(m_j): F has entry at (i, j); ρ_X(x_i) = Σ c ⊗ x_t
                    for cc, t, v in lx[i]:
                        add(("L", j, cc, t), col, v)
            if left:
                # (1⊗F) ρ_M(m_j) = Σ (-1)^{n|c|} c ⊗ F(m_t)
                for cc, t, v in lm[j]:
                    s = _sign(n * lco.degrees[cc])
                    for i in range(x.dim):
                        col = var(i, t)
                        if col is not None:
                            add(("L", j, cc, i), col, -s * v)
            if right:
                for i in range(x.dim):
                    col = var(i, j)
                    if col is None:
                        continue
                    for cc, t, v in rx[i]:
                        add(("R", j, t, cc), col, v)
                for cc, t, v in rm[j]:
                    for i in range(x.dim):
                        col = var(i, t)
                        if col is not None:
                            add(("R", j, i, cc), col, -v)
        return Matrix.from_entries(m.field, len(rows), total, ent)

    return hom_complex(ym, zx, degrees, constraint=constraint)


class CofreeHom:
    """``Hom`` into a standard resolution transported through the cofree adjunction.

    Degree-``n`` colinear maps ``M -> C_p(N)`` correspond to graded linear
    maps from ``M`` into the "inner" part of each level: for a left
    comodule target the level-``r`` summand is ``C ⊗ W_r`` with
    ``W_r = C^{⊗r-1} ⊗ N``; for a bicomodule target ``N = C`` it is
    ``C ⊗ C^{⊗r-1} ⊗ C``.  ``Φ`` rebuilds the colinear map, ``Ψ`` applies
    the counit to the cofree legs, and the differential is ``Ψ ∘ D ∘ Φ``.
    """

    def __init__(self, source, res: StandardResolution, degrees: Sequence[int], two_sided: bool = False):
        self.source = source
        self.res = res
        self.two_sided = two_sided
        c = res.coalgebra
        self.c = c
        self.field = c.field
        if two_sided:
            if not isinstance(source, Bicomodule) or res.right is None:
                raise ResolutionError("two-sided transport needs bicomodules")
            self._lm, self._rm = source.left_coaction, source.right_coaction
        else:
            self._lm = source.coaction if isinstance(source, DGComodule) else source.left_coaction
            self._rm = None
        self.degrees = sorted(set(degrees))
        self.basis = {n: self._enumerate(n) for n in self.degrees}
        self.keyed = keyed_complex(self.field, self.basis, self.delta)
        self.complex = self.keyed.complex

    # inner keys: (inner tuple, end index, level r, source index j)
    def _inner_elems(self, r: int, deg_needed: int):
        """Inner elements of level ``r`` with internal degree ``deg_needed``."""
        c = self.c
        nb = self.res.base
        out = []
        if self.two_sided:
            # W = C^{⊗r-1}; the last leg of the level is cofree too
            if r - 1 < 0:
                return out
            for t in tuples_by_degree(c, r - 1, max(deg_needed, 0)).get(deg_needed, []):
                out.append((t, None))
            return out
        for jn in range(nb.dim):
            rest = deg_needed - nb.degrees[jn]
            if rest < 0:
                continue
            for t in tuples_by_degree(c, r - 1, rest).get(rest, []):
                out.append((t, jn))
        return out

    def _enumerate(self, n: int):
        keys = []
        src = self.source
        for r in range(1, self.res.levels + 1):
            for j in range(src.dim):
                # a level-r element (cs, end) has degree internal + r - 1 = |m_j| + n
                need = src.degrees[j] + n - r + 1
                if need < 0:
                    continue
                for inner in self._inner_elems(r, need):
                    keys.append((inner, r, j))
        keys.sort(key=lambda k: (k[1], k[0][0], -1 if k[0][1] is None else k[0][1], k[2]))
        return keys

    def phi(self, key, n: int) -> Dict[int, Dict[Elem, object]]:
        """``Φ(g)`` for the elementary map ``g = (m_j ↦ inner)`` as ``{source index: vector}``."""
        (inner, jn), r, j = key
        c = self.c
        mod = self.field.p
        ng = n - (r - 1)
        out: Dict[int, dict] = {}
        # Φ(g)(m) = Σ s (a, g(m_0)[, b]) over ρ(m) = Σ a ⊗ m_0 (⊗ b)
        for mm in range(self.source.dim):
            vec: dict = {}
            for a, t, v in self._lm[mm]:
                if not self.two_sided:
                    if t != j:
                        continue
                    s = _sign(c.degrees[a] * (ng - 1))
                    _acc(vec, ((a,) + inner, jn), s * v, mod)
                else:
                    for b, t2, w in self._rm[t]:
                        if t2 != j:
                            continue
                        s = _sign(c.degrees[a] * (ng - 1) + c.degrees[b])
                        _acc(vec, ((a,) + inner, b), s * v * w, mod)
            if vec:
                out[mm] = vec
        return out

    def psi(self, f: Dict[int, Dict[Elem, object]], n: int) -> Dict[object, object]:
        """Apply the counit to the cofree legs and read off the inner coordinates."""
        c = self.c
        mod = self.field.p
        out: dict = {}
        for mm, vec in f.items():
            for (cs, end), v in vec.items():
                if not cs:
                    continue
                e = c.counit[cs[0]]
                if e == 0:
                    continue
                r = len(cs)
                if self.two_sided:
                    e2 = c.counit[end]
                    if e2 == 0:
                        continue
                    _acc(out, ((cs[1:], None), r, mm), v * e * e2, mod)
                else:
                    _acc(out, ((cs[1:], end), r, mm), v * e, mod)
        return out

    def delta(self, key) -> Dict[object, object]:
        n = self._degree_of(key)
        f = self.phi(key, n)
        mod = self.field.p
        # D(F) = d_X F - (-1)^n F d_M
        g: Dict[int, dict] = {}
        for mm, vec in f.items():
            acc = g.setdefault(mm, {})
            for x, v in vec.items():
                for y, w in self.res.boundary(x).items():
                    _acc(acc, y, v * w, mod)
        s = _sign(n)
        for mm in range(self.source.dim):
            for t, v in self.source.diff[mm]:
                if t in f:
                    acc = g.setdefault(mm, {})
                    for y, w in f[t].items():
                        _acc(acc, y, -s * v * w, mod)
        return self.psi(g, n + 1)

    def _degree_of(self, key) -> int:
        (inner, jn), r, j = key
        c = self.c
        deg = sum(c.degrees[i] for i in inner)
        if not self.two_sided:
            deg += self.res.base.degrees[jn]
        return deg + r - 1 - self.source.degrees[j]


def hom_into_resolution(source, res: StandardResolution, degrees: Sequence[int], route: str = "adjunction",
                        two_sided: bool = False) -> ChainComplex:
    """Colinear ``𝓗om(M, C_p(N))`` by the adjunction transport or by the kernel route."""
    if route == "adjunction":
        return CofreeHom(source, res, degrees, two_sided=two_sided).complex
    if route == "kernel":
        target = res.as_bicomodule() if two_sided else res.as_comodule()
        return _colinear_hom_complex(source, target, degrees, left=True, right=two_sided)
    raise ValueError(f"unknown route {route!r}")


def hom_window(source, res: StandardResolution) -> int:
    """Degrees of ``𝓗om(M, C_p(N))`` unaffected by the level truncation."""
    return res.levels + res.base.min_degree() - source.max_degree() - 2


def ext_comodule(t: DGComodule, t2: DGComodule, max_n: int, p: Optional[int] = None,
                 route: str = "adjunction") -> Dict[int, int]:
    """``Ext^n_D(T, T')`` for ``0 <= n <= max_n`` via ``𝓗om_D(T, D_p(T'))``."""
    if t.side != "left" or t2.side != "left" or t.coalgebra != t2.coalgebra:
        raise StructureError("ext_comodule needs left comodules over one coalgebra")
    if p is None:
        p = max_n + 2 + t.max_degree() - t2.min_degree()
    res = standard_resolution(t2, p)
    w = hom_window(t, res)
    if w < max_n:
        raise ResolutionError(f"{p} levels only determine Ext through degree {w}")
    lo = min(0, -t.max_degree())
    cx = hom_into_resolution(t, res, range(lo - 1, max_n + 2), route=route)
    return {n: d for n, d in cohomology_dims(cx, range(0, max_n + 1)).items()}


def colinear_maps(m: DGComodule, n: DGComodule) -> Tuple[Matrix, List[Tuple[int, int]]]:
    """Basis of degree-0 colinear maps ``M -> N`` (ignoring differentials).

    Returns a matrix whose columns are maps flattened as ``i * dim M + j``
    (target ``i``, source ``j``) and the list of variable positions.
    """
    if m.coalgebra != n.coalgebra or m.side != n.side:
        raise StructureError("comodules over different coalgebras or sides")
    mod = m.field.p
    var = {}
    for i in range(n.dim):
        for j in range(m.dim):
            if n.degrees[i] == m.degrees[j]:
                var[(i, j)] = len(var)
    rows: Dict[tuple, int] = {}
    ent = []

    def add(rk, col, v):
        if rk not in rows:
            rows[rk] = len(rows)
        ent.append((rows[rk], col, v))

    for (i, j), col in var.items():
        for c, t, v in n.coaction[i]:
            add((j, c, t), col, v)
        for c, t, v in m.coaction[j]:
            if (i, t) in var:
                add((j, c, i), var[(i, t)], -v)
    cons = Matrix.from_entries(m.field, len(rows), len(var), ent)
    k, _ = kernel_with_free_columns(cons)
    inv = sorted(var, key=var.get)
    cols = []
    for col in range(k.ncols):
        v = k.column(col)
        cols.append({inv[a][0] * m.dim + inv[a][1]: w for a, w in v.items()})
    return Matrix.from_columns(m.field, n.dim * m.dim, cols), inv


def _unflatten(field, vec: Dict[int, object], rows: int, cols: int) -> Matrix:
    return Matrix.from_entries(field, rows, cols, ((k // cols, k % cols, v) for k, v in vec.items()))


def _flatten(mat: Matrix) -> Dict[int, object]:
    out = {}
    for i, r in enumerate(mat.rows):
        for j, v in r.items():
            out[i * mat.ncols + j] = v
    return out


# ---------------------------------------------------------------------------
# cohom and coendomorphism coalgebras (concentrated data)


def _require_concentrated(*objs):
    for o in objs:
        if any(d != 0 for d in o.degrees) or any(o.diff):
            raise ResolutionError("cohom and coend are implemented for concentrated data")


def cohom(t: Bicomodule, y: DGComodule) -> DGComodule:
    """``h_D(T, Y) = Com_D(Y, T)^*`` as a left ``C``-comodule.

    ``Com_D(Y, T)`` is a right ``C``-comodule through the right coaction of
    ``T``; its linear dual is a left ``C``-comodule.
    """
    _require_concentrated(t, y, t.left, t.right)
    if y.side != "left" or y.coalgebra != t.left:
        raise StructureError("Y must be a left comodule over the left coalgebra of T")
    tl = t.left_comodule()
    basis, _ = colinear_maps(y, tl)
    fld = t.field
    mod = fld.p
    k = basis.ncols
    cols = basis.columns()
    # express ρ_R ∘ f_a = Σ_b f_b ⊗ r_ba by solving coordinate systems per C-element
    ct = t.right
    coeff: Dict[Tuple[int, int], Dict[int, object]] = {}
    for a in range(k):
        per_c: Dict[int, dict] = {}
        for key, v in cols[a].items():
            i, j = divmod(key, y.dim)
            for cc, i2, w in t.right_coaction[i]:
                _acc(per_c.setdefault(cc, {}), i2 * y.dim + j, v * w, mod)
        for cc, vec in per_c.items():
            sol = solve(basis, vec) if vec else {}
            if sol is None:
                raise ResolutionError("colinear maps are not closed under the right coaction")
            for b, w in sol.items():
                coeff.setdefault((a, b), {})[cc] = w
    # dual: ρ(φ_b) = Σ_a r_ba ⊗ φ_a, with r_ba the C-element multiplying f_b in ρ(f_a)
    coaction = []
    for b in range(k):
        terms = []
        for a in range(k):
            for cc, w in coeff.get((a, b), {}).items():
                terms.append((cc, a, w))
        coaction.append(terms)
    labels = [f"φ{a}" for a in range(k)]
    return DGComodule(ct, "left", labels, [0] * k, coaction, name=f"h({t.name},{y.name})", cap=False)


def coend(t: Bicomodule, side: str = "left") -> DGCoalgebra:
    """Coendomorphism coalgebra ``e_D(T) = Com_D(T, T)^*``.

    ``side="left"`` uses the left ``D``-coaction and comultiplication dual to
    ``f ⊗ g ↦ f ∘ g``; ``side="right"`` uses the right ``C``-coaction and
    ``f ⊗ g ↦ g ∘ f``.
    """
    _require_concentrated(t, t.left, t.right)
    tm = t.left_comodule() if side == "left" else t.right_comodule()
    basis, _ = colinear_maps(tm, tm)
    fld = t.field
    k = basis.ncols
    n = t.dim
    mats = [_unflatten(fld, basis.column(a), n, n) for a in range(k)]
    comult = [[] for _ in range(k)]
    for i in range(k):
        for j in range(k):
            prod = mats[i] @ mats[j] if side == "left" else mats[j] @ mats[i]
            sol = solve(basis, _flatten(prod))
            if sol is None:
                raise ResolutionError("colinear maps are not closed under composition")
            for kk, v in sol.items():
                comult[kk].append((i, j, v))
    ident = solve(basis, _flatten(Matrix.identity(fld, n)))
    counit = [ident.get(a, 0) for a in range(k)]
    return DGCoalgebra(fld, [f"ω{a}" for a in range(k)], [0] * k, comult, counit, name=f"e({t.name})")
