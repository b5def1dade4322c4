"""Hochschild, H* and cyclic cohomology of dg coalgebras.

The Hochschild column is ``Tot(⊕_{n>=0} C^{⊗n+1}, b, d)`` with
``(c_0..c_n)`` in total degree ``n + Σ|c_i|``; the acyclic column uses ``b'``
instead of ``b`` with the same grading.  For a non-negatively graded
coalgebra every total degree is finite-dimensional, so building all
elements of total degree ``<= N + 1`` computes cohomology exactly through
degree ``N``.

In the cyclic bicomplex column ``j`` is Hochschild for even ``j`` and
acyclic for odd ``j``; ``1 - T`` maps an even column to the next one and
``N`` an odd column to the next one.  Column ``j`` sits ``j`` steps up in
total degree, so with ``J = N + 1`` columns and arities ``<= N + 1`` the
total complex is exact through degree ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Optional, Sequence, Union

from .coalgebra import (Bicomodule, CoalgebraMorphism, DGCoalgebra, StructureError, _acc, enveloping,
                        regular_bicomodule, tensor_coalgebra, opposite)
from .complexes import (Bicomplex, ChainComplex, ChainMap, CohomologyGroup, LongExactSequence,
                        cohomology_dims, long_exact_sequence, total_complex)
from .linalg import Matrix, rank, solve
from .resolution import (CofreeHom, KeyedComplex, ResolutionError, cotensor_bicomodules, hom_into_resolution,
                         hom_window, keyed_complex, standard_resolution)
from . import tensor_ops as ops

OPERATORS = ("T", "delta", "b", "b'", "N", "d", "1-T")


class WindowError(ValueError):
    pass


def _check_positive(c: DGCoalgebra):
    if not c.is_positively_graded():
        raise WindowError(f"{c.name} is not non-negatively graded")


# ---------------------------------------------------------------------------
# operators


def operator(kind: str, c: DGCoalgebra, n: int, i: Optional[int] = None) -> Matrix:
    """Matrix of a cyclic operator on ``C^{⊗n+1}``.

    ``delta``, ``b`` and ``b'`` land in ``C^{⊗n+2}``; the rest are
    endomorphisms.  ``delta`` needs ``0 <= i <= n + 1``.
    """
    if n < 0:
        raise ValueError(f"arity must be non-negative, got {n}")
    fns = {
        "T": (lambda t: ops.cyclic_T(c, t), 0),
        "b": (lambda t: ops.b_full(c, t), 1),
        "b'": (lambda t: ops.b_prime(c, t), 1),
        "N": (lambda t: ops.norm_N(c, t), 0),
        "d": (lambda t: ops.internal_d(c, t), 0),
        "1-T": (lambda t: ops.one_minus_T(c, t), 0),
    }
    if kind == "delta":
        if i is None or not 0 <= i <= n + 1:
            raise ValueError(f"Δ_i needs 0 <= i <= {n + 1}, got {i}")
        return ops.operator_matrix(c, lambda t: ops.delta_i(c, t, i), n + 1, n + 2)
    if kind not in fns:
        raise ValueError(f"unknown operator {kind!r}")
    f, extra = fns[kind]
    return ops.operator_matrix(c, f, n + 1, n + 1 + extra)


def operator_identities(c: DGCoalgebra, n: int, include_delta: bool = True) -> Dict[str, bool]:
    """Check the cyclic relations on arity ``n`` as exact matrix identities."""
    fld = c.field
    T = operator("T", c, n)
    T1 = operator("T", c, n + 1)
    N = operator("N", c, n)
    N1 = operator("N", c, n + 1)
    b = operator("b", c, n)
    bp = operator("b'", c, n)
    d = operator("d", c, n)
    I = Matrix.identity(fld, T.nrows)
    I1 = Matrix.identity(fld, T1.nrows)
    P = I
    for _ in range(n + 1):
        P = T @ P
    one_t = I - T
    out = {
        "T^(n+1)=id": P == I,
        "Nb'=bN": N1 @ bp == b @ N,
        "(1-T)N=0": (one_t @ N).is_zero(),
        "N(1-T)=0": (N @ one_t).is_zero(),
        "(1-T)b=b'(1-T)": (I1 - T1) @ b == bp @ one_t,
        "dT=Td": d @ T == T @ d,
    }
    if include_delta:
        ok = True
        deltas = [operator("delta", c, n, i) for i in range(n + 2)]
        for i in range(1, n + 1):
            ok &= T1 @ deltas[i] == -(deltas[i - 1] @ T)
        sign = -1 if (n + 1) % 2 else 1
        ok &= T1 @ deltas[0] == deltas[n + 1].scale(sign)
        out["TΔ_i=-Δ_(i-1)T, TΔ_0=±Δ_(n+1)"] = ok
    return out


# ---------------------------------------------------------------------------
# Hochschild and acyclic columns


def _column_basis(c: DGCoalgebra, max_degree: int, min_arity: int = 0) -> Dict[int, List[tuple]]:
    basis: Dict[int, List[tuple]] = {}
    for n in range(min_arity, max_degree + 1):
        for deg, ts in ops.tuples_by_degree(c, n + 1, max_degree - n).items():
            basis.setdefault(n + deg, []).extend(ts)
    return basis


def hochschild_complex(c: DGCoalgebra, max_degree: int, kind: str = "b") -> KeyedComplex:
    """``(⊕ C^{⊗n+1}, b + d)`` (``kind="b"``) or with ``b'`` (``kind="b'"``), total degree ``<= max_degree``.

    The top degree has no outgoing differential, so cohomology is exact
    through ``max_degree - 1``.
    """
    _check_positive(c)
    if kind not in ("b", "b'"):
        raise ValueError("kind must be 'b' or \"b'\"")
    bfun = ops.b_full if kind == "b" else ops.b_prime
    mod = c.field.p

    def bd(t):
        out = ops.internal_d(c, t)
        for u, v in bfun(c, t).items():
            _acc(out, u, v, mod)
        return out

    return keyed_complex(c.field, _column_basis(c, max_degree), bd)


def hoch(c: DGCoalgebra, max_degree: int) -> Dict[int, int]:
    """``dim Hoch^n(C)`` for ``0 <= n <= max_degree``."""
    kc = hochschild_complex(c, max_degree + 1)
    return cohomology_dims(kc.complex, range(0, max_degree + 1))


def _regular_resolution(c: DGCoalgebra, p: int, max_degree: Optional[int]):
    return standard_resolution(regular_bicomodule(c), p, max_degree=max_degree)


def hoch_bicomodule(m: Bicomodule, c: DGCoalgebra, max_degree: int, p: Optional[int] = None) -> Dict[int, int]:
    """``dim H^n(C_p(C) □_{C^e} M)`` for ``0 <= n <= max_degree``."""
    _check_positive(c)
    if m.left != c or m.right != c:
        raise StructureError("coefficients must be a C-C bicomodule")
    p = max_degree + 2 if p is None else p
    if p + min(0, m.min_degree()) - 2 < max_degree:
        raise WindowError(f"{p} levels only determine degrees through {p + min(0, m.min_degree()) - 2}")
    top = max_degree + 1
    res = _regular_resolution(c, p, max_degree=top - m.min_degree())
    x = res.as_bicomodule()
    cot = cotensor_bicomodules(x, m, max_degree=top)
    return cohomology_dims(cot.complex, range(0, max_degree + 1))


def h_complex(m: Bicomodule, c: DGCoalgebra, max_degree: int, p: Optional[int] = None,
              route: str = "adjunction") -> ChainComplex:
    _check_positive(c)
    if m.left != c or m.right != c:
        raise StructureError("coefficients must be a C-C bicomodule")
    top_m = m.max_degree()
    if p is None:
        p = max_degree + 2 + top_m - c.min_degree()
    res = _regular_resolution(c, p, max_degree=max_degree + 1 + top_m)
    if hom_window(m, res) < max_degree:
        raise WindowError(f"{p} levels only determine degrees through {hom_window(m, res)}")
    lo = min(-1, -top_m - 1)
    return hom_into_resolution(m, res, range(lo, max_degree + 2), route=route, two_sided=True)


def h_cohomology(m: Bicomodule, c: DGCoalgebra, max_degree: int, p: Optional[int] = None,
                 route: str = "adjunction") -> Dict[int, int]:
    """``dim H^n(M, C)`` from the colinear ``𝓗om_{C^e}(M, C_p(C))`` for ``0 <= n <= max_degree``."""
    cx = h_complex(m, c, max_degree, p, route)
    return cohomology_dims(cx, range(0, max_degree + 1))


# ---------------------------------------------------------------------------
# cyclic bicomplex


@dataclass
class CyclicBicomplex:
    bicomplex: Bicomplex
    columns: List[KeyedComplex]
    exact_through: int

    def total(self):
        return total_complex(self.bicomplex)


def cyclic_bicomplex(c: DGCoalgebra, max_degree: int, columns: Optional[int] = None) -> CyclicBicomplex:
    """Columns ``0..J`` truncated at total degree ``max_degree + 1``."""
    _check_positive(c)
    J = max_degree + 1 if columns is None else columns
    top = max_degree + 1
    cols: List[KeyedComplex] = []
    for j in range(J + 1):
        if top - j < 0:
            break
        cols.append(hochschild_complex(c, top - j, "b" if j % 2 == 0 else "b'"))
    horizontal = []
    for j in range(len(cols) - 1):
        src, dst = cols[j], cols[j + 1]
        fn = (lambda t: ops.one_minus_T(c, t)) if j % 2 == 0 else (lambda t: ops.norm_N(c, t))
        maps = {}
        for n, keys in src.basis.items():
            if n not in dst.basis:
                continue
            ent = []
            for a, t in enumerate(keys):
                for u, v in fn(t).items():
                    ent.append((dst.position[u][1], a, v))
            maps[n] = Matrix.from_entries(c.field, len(dst.basis[n]), len(keys), ent)
        horizontal.append(maps)
    bic = Bicomplex([k.complex for k in cols], horizontal, commuting=True, min_degree=0)
    return CyclicBicomplex(bic, cols, max_degree)


def hc(c: DGCoalgebra, max_degree: int, columns: Optional[int] = None, confirm: bool = False) -> Dict[int, int]:
    """``dim HC^n(C)`` for ``0 <= n <= max_degree``.

    ``confirm=True`` recomputes with one more degree and column and insists
    on agreement.
    """
    cb = cyclic_bicomplex(c, max_degree, columns)
    bad = cb.bicomplex.defects()
    if bad:
        raise StructureError(f"cyclic bicomplex defects: {bad}")
    tot = cb.total().complex
    dims = cohomology_dims(tot, range(0, max_degree + 1))
    if confirm:
        again = hc(c, max_degree + 1, None if columns is None else columns + 1)
        if any(again[n] != dims[n] for n in dims):
            raise WindowError("cyclic cohomology is not stable under enlarging the truncation")
    return dims


# ---------------------------------------------------------------------------
# SBI sequence


def _sub_and_quotient(tot, offsets: Dict[int, Dict[int, int]], cols: List[ChainComplex], cut: int):
    """Subcomplex of columns ``>= cut`` and quotient by it, with inclusion and projection."""
    fld = tot.field
    keep_sub: Dict[int, List[int]] = {}
    keep_q: Dict[int, List[int]] = {}
    for t, offs in offsets.items():
        for j, off in sorted(offs.items()):
            size = cols[j].dim(t - j)
            rng = list(range(off, off + size))
            (keep_sub if j >= cut else keep_q).setdefault(t, []).extend(rng)

    def restrict(keep):
        dims = {t: len(v) for t, v in keep.items()}
        diff = {}
        for t, rows in keep.items():
            if t + 1 in keep:
                diff[t] = tot.d(t).submatrix(keep[t + 1], rows)
        return ChainComplex(fld, dims, diff)

    sub = restrict(keep_sub)
    quo = restrict(keep_q)
    inc, proj = {}, {}
    for t in tot.dims:
        s = keep_sub.get(t, [])
        q = keep_q.get(t, [])
        inc[t] = Matrix.from_entries(fld, tot.dim(t), len(s), ((r, k, 1) for k, r in enumerate(s)))
        proj[t] = Matrix.from_entries(fld, len(q), tot.dim(t), ((k, r, 1) for k, r in enumerate(q)))
    return sub, quo, ChainMap(sub, tot, inc), ChainMap(tot, quo, proj)


@dataclass
class SBIReport:
    max_degree: int
    hc: Dict[int, int]
    hoch: Dict[int, int]
    sequence: LongExactSequence
    nodes: List[dict] = dc_field(default_factory=list)
    quotient_matches_hoch: bool = True
    sub_matches_shifted_hc: bool = True

    @property
    def exact(self) -> bool:
        return all(n["exact"] for n in self.nodes)

    @property
    def ok(self) -> bool:
        return self.exact and self.quotient_matches_hoch and self.sub_matches_shifted_hc


def sbi(c: DGCoalgebra, max_degree: int) -> SBIReport:
    """Long exact sequence ``HC^{n-2} -S-> HC^n -I-> Hoch^n -B-> HC^{n-1}`` through ``max_degree``.

    Built from ``0 -> (columns >= 2) -> Tot -> (columns 0, 1) -> 0``; the
    subcomplex is the whole bicomplex moved up two degrees and the quotient
    is the cone of ``1 - T``, quasi-isomorphic to the Hochschild column.
    """
    N = max_degree
    cb = cyclic_bicomplex(c, N + 1)
    tc = cb.total()
    tot = tc.complex
    sub, quo, inc, proj = _sub_and_quotient(tot, tc.offsets, cb.bicomplex.columns, 2)
    seq = long_exact_sequence(inc, proj, range(0, N + 2), labels=("HC[-2]", "HC", "Hoch"))
    hcd = cohomology_dims(tot, range(0, N + 1))
    hod = hoch(c, N)
    nodes = []
    # H^{-1} of the quotient vanishes, so the first map must be injective
    first = seq.nodes[0]
    nodes.append({"node": f"{first.label}^{first.degree}", "image_in": 0,
                  "kernel_out": first.dim - rank(seq.maps[0]),
                  "exact": first.dim - rank(seq.maps[0]) == 0})
    for e, node in zip(seq.exactness(), seq.nodes[1:-1]):
        if node.degree <= N:
            nodes.append(e)
    qd = cohomology_dims(quo, range(0, N + 1))
    sd = cohomology_dims(sub, range(0, N + 1))
    rep = SBIReport(N, hcd, hod, seq, nodes,
                    quotient_matches_hoch=all(qd[n] == hod[n] for n in range(N + 1)),
                    sub_matches_shifted_hc=all(sd[n] == (hcd[n - 2] if n >= 2 else 0) for n in range(N + 1)))
    return rep


# ---------------------------------------------------------------------------
# functoriality


def induced_hochschild_map(f: CoalgebraMorphism, max_degree: int) -> ChainMap:
    """``f^{⊗n+1}`` as a chain map between truncated Hochschild complexes."""
    src = hochschild_complex(f.source, max_degree)
    tgt = hochschild_complex(f.target, max_degree)
    cols = f.matrix.columns()
    mod = f.source.field.p
    comps = {}
    for n, keys in src.basis.items():
        ent = []
        for a, t in enumerate(keys):
            img: dict = {(): 1}
            for x in t:
                nxt: dict = {}
                for u, v in img.items():
                    for y, w in cols[x].items():
                        _acc(nxt, u + (y,), v * w, mod)
                img = nxt
            for u, v in img.items():
                loc = tgt.position.get(u)
                if loc is None:
                    raise StructureError("morphism does not preserve degrees")
                ent.append((loc[1], a, v))
        comps[n] = Matrix.from_entries(f.source.field, tgt.complex.dim(n), len(keys), ent)
    return ChainMap(src.complex, tgt.complex, comps)


# ---------------------------------------------------------------------------
# product on H*


@dataclass
class HClass:
    """A class of ``H^n(C, C)`` stored as a cocycle of the transported Hom complex.

    Keys are ``((inner, None), level, source index)`` as in
    :class:`~dgcoalg.resolution.CofreeHom`; they do not depend on how many
    resolution levels are built.
    """

    degree: int
    vector: Dict[object, object]


def _require_concentrated(c: DGCoalgebra):
    if not c.is_concentrated():
        raise WindowError("the product on H* is implemented for concentrated coalgebras")


def _class_space(c: DGCoalgebra, n: int, p: Optional[int] = None) -> CofreeHom:
    p = n + 2 if p is None else p
    res = _regular_resolution(c, p, None)
    return CofreeHom(regular_bicomodule(c), res, range(-1, n + 2), two_sided=True)


def h_classes(c: DGCoalgebra, n: int) -> List[HClass]:
    """Cocycles representing a basis of ``H^n(C, C)``."""
    ch = _class_space(c, n)
    grp = CohomologyGroup(ch.complex, n)
    keys = ch.basis[n]
    return [HClass(n, {keys[i]: v for i, v in rep.items()}) for rep in grp.representatives]


def unit_class(c: DGCoalgebra) -> HClass:
    """The class of the augmentation, i.e. the counit ``C -> k = C^{⊗0}``."""
    return HClass(0, {(((), None), 1, j): e for j, e in enumerate(c.counit) if e != 0})


def class_coordinates(x: HClass, c: DGCoalgebra) -> Dict[int, object]:
    ch = _class_space(c, x.degree)
    grp = CohomologyGroup(ch.complex, x.degree)
    return grp.coordinates(ch.keyed.vector(x.degree, x.vector))


def class_equal(x: HClass, y: HClass, c: DGCoalgebra) -> bool:
    if x.degree != y.degree:
        return False
    ch = _class_space(c, x.degree)
    grp = CohomologyGroup(ch.complex, x.degree)
    diff = dict(x.vector)
    mod = c.field.p
    for k, v in y.vector.items():
        _acc(diff, k, -v, mod)
    return grp.is_coboundary(ch.keyed.vector(x.degree, diff))


def _as_maps(ch: CofreeHom, degree: int, vec: Dict[object, object]) -> Dict[int, dict]:
    """``Φ`` of a transported vector: ``{source index: vector in the target resolution}``."""
    mod = ch.field.p
    out: Dict[int, dict] = {}
    for key, v in vec.items():
        for mm, img in ch.phi(key, degree).items():
            acc = out.setdefault(mm, {})
            for x, w in img.items():
                _acc(acc, x, v * w, mod)
    return out


def yoneda_product(alpha: HClass, beta: HClass, c: DGCoalgebra) -> HClass:
    """Composition product ``alpha ⋆ beta`` on ``H^*(C, C)``.

    ``beta`` is lifted to a colinear chain map ``B: C_s(C) -> C_t(C)`` with
    ``B ∘ aug`` cohomologous to ``beta``, and the product is ``B ∘ alpha``.
    The source keeps ``a + b + 3`` levels and the target ``a + b + 2``, so
    the discarded top of the source cannot interact with maps of degree
    ``b`` (concentrated coalgebras only).
    """
    _require_concentrated(c)
    a, b = alpha.degree, beta.degree
    if a < 0 or b < 0:
        raise WindowError("classes live in non-negative degrees")
    fld = c.field
    mod = fld.p
    bim = regular_bicomodule(c)
    ps, pt = a + b + 3, a + b + 2
    res_s = _regular_resolution(c, ps, None)
    res_t = _regular_resolution(c, pt, None)
    xs = res_s.as_bicomodule()
    skeys, sidx = res_s._flat()
    st = CofreeHom(xs, res_t, [b, b + 1], two_sided=True)
    ct = CofreeHom(bim, res_t, [b - 1, b, b + a], two_sided=True)
    nb = len(st.basis[b])
    nh = len(ct.basis.get(b - 1, []))
    rows_b = len(ct.basis[b])
    # P: B ↦ Ψ(Φ(B) ∘ aug), aug(m) = (-1)^{|m|} ρ(m) on level 1
    aug: Dict[int, dict] = {}
    for m in range(c.dim):
        vec: dict = {}
        for e, t, v in c.comult[m]:
            _acc(vec, sidx[((e,), t)], v, mod)
        aug[m] = vec
    ent = []
    for col, key in enumerate(st.basis[b]):
        fb = st.phi(key, b)
        comp: Dict[int, dict] = {}
        for m, vec in aug.items():
            acc = comp.setdefault(m, {})
            for xi, v in vec.items():
                for y, w in fb.get(xi, {}).items():
                    _acc(acc, y, v * w, mod)
        for k2, v in ct.psi(comp, b).items():
            loc = ct.keyed.position.get(k2)
            if loc is not None:
                ent.append((loc[1], col, v))
    dh = ct.complex.d(b - 1)
    for i, row in enumerate(dh.rows):
        for j, v in row.items():
            ent.append((i, nb + j, -v))
    db = st.complex.d(b)
    for i, row in enumerate(db.rows):
        for j, v in row.items():
            ent.append((rows_b + i, j, v))
    system = Matrix.from_entries(fld, rows_b + db.nrows, nb + nh, ent)
    rhs = {ct.keyed.position[k][1]: v for k, v in beta.vector.items()}
    sol = solve(system, rhs)
    if sol is None:
        raise ResolutionError("could not lift the class within the truncation")
    bvec = {st.basis[b][j]: v for j, v in sol.items() if j < nb}
    fb = _as_maps(st, b, bvec)
    cs_ = CofreeHom(bim, res_s, [a], two_sided=True)
    fa = _as_maps(cs_, a, alpha.vector)
    out: Dict[int, dict] = {}
    for m, vec in fa.items():
        acc = out.setdefault(m, {})
        for x, v in vec.items():
            for y, w in fb.get(sidx[x], {}).items():
                _acc(acc, y, v * w, mod)
    return HClass(a + b, ct.psi(out, a + b))
