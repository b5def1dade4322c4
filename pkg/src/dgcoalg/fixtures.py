"""Programmatic builders for the standard small examples.

The bundled JSON fixture files are generated from these builders and the
tests check that both agree.
"""

from __future__ import annotations

from typing import Optional

from .coalgebra import CoalgebraMorphism, DGCoalgebra, DGComodule, Bicomodule
from .linalg import QQ, Field, Matrix


def trivial(field: Field = QQ) -> DGCoalgebra:
    """The ground field: one group-like in degree 0."""
    return DGCoalgebra(field, ["1"], [0], [[(0, 0, 1)]], [1], name="k")


def grouplikes(n: int, field: Field = QQ) -> DGCoalgebra:
    """``k^n``: ``n`` group-like elements."""
    labels = [f"g{i + 1}" for i in range(n)]
    return DGCoalgebra(field, labels, [0] * n, [[(i, i, 1)] for i in range(n)], [1] * n, name=f"k^{n}")


def divided_powers(top: int = 1, field: Field = QQ) -> DGCoalgebra:
    """``c_0..c_top`` with ``Δ c_n = Σ c_i ⊗ c_{n-i}``, concentrated in degree 0."""
    labels = [f"c{i}" for i in range(top + 1)]
    comult = [[(i, n - i, 1) for i in range(n + 1)] for n in range(top + 1)]
    counit = [1] + [0] * top
    return DGCoalgebra(field, labels, [0] * (top + 1), comult, counit, name="DP" if top == 1 else f"DP{top}")


def matrix_coalgebra(n: int = 2, field: Field = QQ) -> DGCoalgebra:
    """Comatrix coalgebra: ``Δ e_ij = Σ_k e_ik ⊗ e_kj``, ``ε e_ij = δ_ij``."""
    idx = {(i, j): i * n + j for i in range(n) for j in range(n)}
    labels = [f"e{i + 1}{j + 1}" for i in range(n) for j in range(n)]
    comult = [[(idx[i, k], idx[k, j], 1) for k in range(n)] for i in range(n) for j in range(n)]
    counit = [1 if i == j else 0 for i in range(n) for j in range(n)]
    return DGCoalgebra(field, labels, [0] * (n * n), comult, counit, name=f"M{n}c")


def acyclic_extension(sabotaged: bool = False, field: Field = QQ) -> DGCoalgebra:
    """``g`` group-like, ``u`` (degree 1) and ``v`` (degree 2) primitive over ``g``, ``du = v``.

    With ``sabotaged=True`` the differential vanishes, so ``u`` and ``v``
    survive in cohomology.
    """
    comult = [[(0, 0, 1)], [(0, 1, 1), (1, 0, 1)], [(0, 2, 1), (2, 0, 1)]]
    diff = [[], [] if sabotaged else [(2, 1)], []]
    return DGCoalgebra(field, ["g", "u", "v"], [0, 1, 2], comult, [1, 0, 0], diff,
                       name="D0" if sabotaged else "D")


def inclusion_into_extension(sabotaged: bool = False, field: Field = QQ) -> CoalgebraMorphism:
    src = trivial(field)
    src.name = "k[g]"
    tgt = acyclic_extension(sabotaged, field)
    return CoalgebraMorphism(src, tgt, Matrix.from_dense(field, [[1], [0], [0]]), name="f")


def comatrix_module(n: int = 2, field: Field = QQ) -> Bicomodule:
    """``k^n`` as a ``M_n^c``-``k`` bicomodule: ``t_i ↦ Σ_j e_ij ⊗ t_j``."""
    d = matrix_coalgebra(n, field)
    k = trivial(field)
    labels = [f"t{i + 1}" for i in range(n)]
    left = [[(i * n + j, j, 1) for j in range(n)] for i in range(n)]
    right = [[(0, i, 1)] for i in range(n)]
    return Bicomodule(d, k, labels, [0] * n, left, right, name="T")


def grouplike_point(c: DGCoalgebra, g: int, side: str = "left", name: Optional[str] = None) -> DGComodule:
    """One-dimensional comodule ``k_g`` for a group-like basis element ``g``."""
    lab = name or f"k_{c.labels[g]}"
    return DGComodule(c, side, [lab], [0], [[(g, 0, 1)]], name=lab)


# ---------------------------------------------------------------------------
# Morita contexts and cotilting certificates


def _counit_left_map(c: DGCoalgebra, post: Optional[Matrix] = None) -> Matrix:
    """``a ⊗ b ↦ ε(a) b`` on ``C ⊗ C`` (optionally followed by ``post``)."""
    n = c.dim
    ent = []
    for a in range(n):
        if c.counit[a] == 0:
            continue
        for b in range(n):
            ent.append((b, a * n + b, c.counit[a]))
    m = Matrix.from_entries(c.field, n, n * n, ent)
    return post @ m if post is not None else m


def identity_context(c: DGCoalgebra):
    from .invariance import MoritaContext
    from .coalgebra import regular_bicomodule
    x = regular_bicomodule(c)
    phi = _counit_left_map(c)
    return MoritaContext(c, c, x, x, phi, phi, name=f"identity context on {c.name}")


def morphism_context(f: CoalgebraMorphism):
    """``P = C_f`` and ``Q = _fC`` for a morphism ``f: C -> D``."""
    from .invariance import MoritaContext
    from .coalgebra import corestrict_bicomodule, regular_bicomodule
    c = f.source
    reg = regular_bicomodule(c)
    p = corestrict_bicomodule(reg, f_right=f)
    p.name = f"{c.name}_f"
    q = corestrict_bicomodule(reg, f_left=f)
    q.name = f"f_{c.name}"
    return MoritaContext(c, f.target, p, q, _counit_left_map(c), _counit_left_map(c, f.matrix),
                         name=f"context of {f.name}: {c.name} -> {f.target.name}")


def dual_comatrix_module(n: int = 2, field: Field = QQ) -> Bicomodule:
    """``k^n`` as a ``k``-``M_n^c`` bicomodule: ``s_j ↦ Σ_i s_i ⊗ e_ij``."""
    d = matrix_coalgebra(n, field)
    k = trivial(field)
    labels = [f"s{j + 1}" for j in range(n)]
    left = [[(0, j, 1)] for j in range(n)]
    right = [[(i * n + j, i, 1) for i in range(n)] for j in range(n)]
    return Bicomodule(k, d, labels, [0] * n, left, right, name="T*")


def comatrix_context(n: int = 2, field: Field = QQ):
    """Morita-Takeuchi context between ``k`` and ``M_n^c``."""
    from .invariance import MoritaContext
    k = trivial(field)
    d = matrix_coalgebra(n, field)
    p = dual_comatrix_module(n, field)
    q = comatrix_module(n, field)
    phi = Matrix.from_entries(field, 1, n * n, [(0, i * n + i, 1) for i in range(n)])
    psi = Matrix.from_entries(field, n * n, n * n, [(i * n + j, i * n + j, 1) for i in range(n) for j in range(n)])
    return MoritaContext(k, d, p, q, phi, psi, name=f"k ~ {d.name}")


def _convolution_witnesses(c: DGCoalgebra, side: str):
    """``x ↦ Σ x' c_k^*(x'')`` (left) or ``x ↦ Σ c_k^*(x') x''`` (right) for each basis element."""
    out = []
    for k in range(c.dim):
        ent = []
        for x in range(c.dim):
            for a, b, v in c.comult[x]:
                if side == "left" and b == k:
                    ent.append((a, x, v))
                elif side == "right" and a == k:
                    ent.append((b, x, v))
        out.append(Matrix.from_entries(c.field, c.dim, c.dim, ent))
    return out


def identity_certificate(c: DGCoalgebra):
    """``T = C`` as a ``C``-``C`` bicomodule: every condition holds with identity maps."""
    from .invariance import AddSequence, CotiltingCertificate, InjectiveSequence, SplitWitness
    from .coalgebra import regular_bicomodule, regular_comodule
    t = regular_bicomodule(c)
    ident = Matrix.identity(c.field, c.dim)
    add = AddSequence([regular_comodule(c, "left")], [ident], [1], [SplitWitness(ident, ident)])
    inj = InjectiveSequence([t], [ident], [1], [SplitWitness(ident, ident)])
    return CotiltingCertificate(c, c, t, _convolution_witnesses(c, "left"), _convolution_witnesses(c, "right"),
                                add, inj, name=f"identity certificate on {c.name}")


def comatrix_certificate(n: int = 2, field: Field = QQ):
    """``T = k^n`` realizing ``k`` and ``M_n^c`` as Morita-Takeuchi equivalent."""
    from .invariance import AddSequence, CotiltingCertificate, InjectiveSequence, SplitWitness
    from .coalgebra import direct_sum_comodules
    t = comatrix_module(n, field)
    k = t.right
    d = t.left
    units = [Matrix.from_entries(field, n, n, [(j, i, 1)]) for i in range(n) for j in range(n)]
    t0 = direct_sum_comodules([t.left_comodule()] * n, name=f"T^{n}")
    # copy j of T goes onto column j of the comatrix coalgebra
    to_d = Matrix.from_entries(field, n * n, n * n, [(i * n + j, j * n + i, 1) for i in range(n) for j in range(n)])
    ident = Matrix.identity(field, n * n)
    add = AddSequence([t0], [to_d], [n], [SplitWitness(ident, ident)])
    emb = Matrix.from_entries(field, n * n, n, [(i * n, i, 1) for i in range(n)])
    proj = Matrix.from_entries(field, n, n * n, [(i, i * n, 1) for i in range(n)])
    inj = InjectiveSequence([t], [Matrix.identity(field, n)], [1], [SplitWitness(emb, proj)])
    return CotiltingCertificate(k, d, t, [Matrix.identity(field, n)], units, add, inj,
                                name=f"comatrix certificate k ~ {d.name}")


def defective_certificate(kind: str, n: int = 2, field: Field = QQ):
    """The comatrix certificate with one deliberate defect.

    ``kind`` is ``"coend"`` (the identity witness is replaced by its negative,
    breaking condition 1), ``"sequence"`` (the map ``T_0 -> D`` is removed,
    breaking condition 3) or ``"split"`` (the projection of the cofree
    embedding has its sign flipped, breaking condition 4).
    """
    cert = comatrix_certificate(n, field)
    if kind == "coend":
        cert.witness_c = [-cert.witness_c[0]]
    elif kind == "sequence":
        cert.add_sequence.maps[0] = None
    elif kind == "split":
        sw = cert.injective_sequence.splits[0]
        sw.projection = -sw.projection
    else:
        raise ValueError(f"unknown defect {kind!r}")
    cert.name = f"{cert.name} (defect: {kind})"
    return cert
