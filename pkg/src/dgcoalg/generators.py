"""Random valid dg coalgebras for fuzzing.

Direct sums of small building blocks, transported along a random
degree-preserving change of basis.  Every output passes
:func:`~dgcoalg.coalgebra.validate_coalgebra` by construction.
"""

from __future__ import annotations

import random
from typing import Callable, List, Optional, Sequence

from .coalgebra import DGCoalgebra, _acc
from .linalg import QQ, Field, Matrix, rank, solve


def _primitive_pair(fld: Field, deg: int) -> DGCoalgebra:
    return DGCoalgebra(fld, ["1", "x"], [0, deg], [[(0, 0, 1)], [(0, 1, 1), (1, 0, 1)]], [1, 0], name=f"E{deg}")


def _primitive_chain(fld: Field, d0: int, diff: bool) -> DGCoalgebra:
    comult = [[(0, 0, 1)], [(0, 1, 1), (1, 0, 1)], [(0, 2, 1), (2, 0, 1)]]
    return DGCoalgebra(fld, ["g", "u", "v"], [0, d0, d0 + 1], comult, [1, 0, 0], [[], [(2, 1)] if diff else [], []],
                       name="P")


def _graded_divided(fld: Field) -> DGCoalgebra:
    comult = [[(0, 0, 1)], [(0, 1, 1), (1, 0, 1)], [(0, 2, 1), (1, 1, 1), (2, 0, 1)]]
    return DGCoalgebra(fld, ["1", "x", "y"], [0, 1, 2], comult, [1, 0, 0], name="G")


def _divided(fld: Field, top: int) -> DGCoalgebra:
    comult = [[(i, n - i, 1) for i in range(n + 1)] for n in range(top + 1)]
    return DGCoalgebra(fld, [f"c{i}" for i in range(top + 1)], [0] * (top + 1), comult, [1] + [0] * top, name="DP")


def _exterior_square(fld: Field) -> DGCoalgebra:
    # (1, x, y, xy) with x, y primitive of degree 1; Δ(xy) carries a Koszul sign
    comult = [[(0, 0, 1)], [(0, 1, 1), (1, 0, 1)], [(0, 2, 1), (2, 0, 1)],
              [(0, 3, 1), (1, 2, 1), (2, 1, -1), (3, 0, 1)]]
    return DGCoalgebra(fld, ["1", "x", "y", "xy"], [0, 1, 1, 2], comult, [1, 0, 0, 0], name="X")


def _comatrix(fld: Field) -> DGCoalgebra:
    idx = {(i, j): 2 * i + j for i in range(2) for j in range(2)}
    comult = [[(idx[i, k], idx[k, j], 1) for k in range(2)] for i in range(2) for j in range(2)]
    return DGCoalgebra(fld, ["e11", "e12", "e21", "e22"], [0] * 4, comult, [1, 0, 0, 1], name="M")


def building_blocks(fld: Field) -> List[DGCoalgebra]:
    return [DGCoalgebra(fld, ["g"], [0], [[(0, 0, 1)]], [1], name="k"),
            _primitive_pair(fld, 0), _primitive_pair(fld, 1), _primitive_pair(fld, 2),
            _primitive_chain(fld, 0, True), _primitive_chain(fld, 1, True), _primitive_chain(fld, 1, False),
            _graded_divided(fld), _divided(fld, 2), _divided(fld, 3), _exterior_square(fld), _comatrix(fld)]


def direct_sum(cs: Sequence[DGCoalgebra], name: str = "C") -> DGCoalgebra:
    labels, degrees, comult, counit, diff = [], [], [], [], []
    off = 0
    for k, c in enumerate(cs):
        labels += [f"{l}.{k}" for l in c.labels]
        degrees += c.degrees
        comult += [[(a + off, b + off, v) for a, b, v in ts] for ts in c.comult]
        counit += c.counit
        diff += [[(t + off, v) for t, v in ts] for ts in c.diff]
        off += c.dim
    return DGCoalgebra(cs[0].field, labels, degrees, comult, counit, diff, name=name)


def transport(c: DGCoalgebra, t: Matrix, name: Optional[str] = None) -> DGCoalgebra:
    """The coalgebra structure moved along the invertible degree-preserving map ``t``.

    New basis element ``j`` is ``Σ_i t[i, j] e_i``; structure constants are
    re-expressed in the new basis.
    """
    fld = c.field
    n = c.dim
    inv_cols = []
    for i in range(n):
        x = solve(t, {i: fld(1)})
        if x is None:
            raise ValueError("change of basis is not invertible")
        inv_cols.append(x)
    # s[j][i]: coordinate of old e_i in new basis element j
    mod = fld.p
    tcols = t.columns()
    comult, counit, diff = [], [], []
    for j in range(n):
        acc: dict = {}
        eps = fld(0)
        dacc: dict = {}
        for i, v in tcols[j].items():
            eps = fld(eps + v * c.counit[i])
            for a, b, w in c.comult[i]:
                for a2, x in inv_cols[a].items():
                    for b2, y in inv_cols[b].items():
                        _acc(acc, (a2, b2), v * w * x * y, mod)
            for s, w in c.diff[i]:
                for s2, x in inv_cols[s].items():
                    _acc(dacc, s2, v * w * x, mod)
        comult.append([(a, b, w) for (a, b), w in sorted(acc.items())])
        counit.append(eps)
        diff.append(sorted(dacc.items()))
    return DGCoalgebra(fld, [f"f{j}" for j in range(n)], c.degrees, comult, counit, diff, name=name or c.name)


def random_block_change(rng: random.Random, fld: Field, degrees: Sequence[int], ops: int = 2) -> Matrix:
    """A random invertible degree-preserving matrix: a block permutation with
    nonzero scalings, followed by ``ops`` elementary row additions."""
    n = len(degrees)
    perm = list(range(n))
    for d in set(degrees):
        idx = [i for i in range(n) if degrees[i] == d]
        shuffled = idx[:]
        rng.shuffle(shuffled)
        for a, b in zip(idx, shuffled):
            perm[a] = b
    scale = [rng.choice((1, -1, 2)) for _ in range(n)]
    m = Matrix.from_entries(fld, n, n, [(perm[j], j, scale[j]) for j in range(n)])
    for _ in range(ops):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j and degrees[i] == degrees[j]:
            e = Matrix.from_entries(fld, n, n, [(k, k, 1) for k in range(n)] + [(i, j, rng.choice((1, -1, 2)))])
            m = e @ m
    if rank(m) != n:  # scalings by 2 vanish only in characteristic 2
        return Matrix.identity(fld, n)
    return m


def random_coalgebra(rng: random.Random, fld: Field = QQ, max_dim: int = 4,
                     dim: Optional[int] = None) -> DGCoalgebra:
    """A random valid dg coalgebra of total dimension ``dim`` (or at most ``max_dim``)."""
    target = dim if dim is not None else rng.randint(1, max_dim)
    blocks = building_blocks(fld)
    parts: List[DGCoalgebra] = []
    left = target
    while left:
        fits = [b for b in blocks if b.dim <= left]
        b = rng.choice(fits)
        parts.append(b)
        left -= b.dim
    c = direct_sum(parts)
    return transport(c, random_block_change(rng, fld, c.degrees), name="+".join(p.name for p in parts))
