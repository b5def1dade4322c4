"""Element-level operators on tensor powers of a dg coalgebra.

A basis element of ``C^{⊗n+1}`` is a tuple of basis indices; a vector is a
dict ``tuple -> coefficient``.  All functions here take and return such
dicts and are the single place where the cyclic operator signs live.
"""

from __future__ import annotations

from itertools import product
from typing import Callable, Dict, Iterator, List, Sequence, Tuple

from .coalgebra import DGCoalgebra, _acc
from .linalg import Matrix

Vec = Dict[tuple, object]


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def tuple_degree(c: DGCoalgebra, t: Sequence[int]) -> int:
    return sum(c.degrees[i] for i in t)


def internal_d(c: DGCoalgebra, t: tuple) -> Vec:
    """``(c_0..c_n) ↦ (-1)^n Σ_k (-1)^{|c_0..c_{k-1}|} (.., d c_k, ..)``."""
    n = len(t) - 1
    mod = c.field.p
    out: Vec = {}
    pre = 0
    for k, x in enumerate(t):
        s = _sign(n + pre)
        for y, v in c.diff[x]:
            _acc(out, t[:k] + (y,) + t[k + 1:], s * v, mod)
        pre += c.degrees[x]
    return out


def _rotate(c: DGCoalgebra, t: tuple):
    """``T`` on one tuple: the rotated tuple and its sign."""
    n = len(t) - 1
    return t[1:] + t[:1], _sign(n + c.degrees[t[0]] * tuple_degree(c, t[1:]))


def cyclic_T(c: DGCoalgebra, t: tuple) -> Vec:
    """``(c_0..c_n) ↦ (-1)^n (-1)^{|c_0|·|(c_1..c_n)|} (c_1..c_n, c_0)``."""
    u, s = _rotate(c, t)
    return {u: s % c.field.p if c.field.p else s}


def delta_at(c: DGCoalgebra, t: tuple, i: int) -> Vec:
    """``Δ_i`` for ``0 <= i <= n``: comultiply the ``i``-th factor (no sign)."""
    out: Vec = {}
    for a, b, v in c.comult[t[i]]:
        out[t[:i] + (a, b) + t[i + 1:]] = v
    return out


def apply_linear(f: Callable[[tuple], Vec], vec: Vec, mod) -> Vec:
    out: Vec = {}
    for t, v in vec.items():
        for u, w in f(t).items():
            _acc(out, u, v * w, mod)
    return out


def delta_i(c: DGCoalgebra, t: tuple, i: int) -> Vec:
    """``Δ_i`` including ``Δ_{n+1} = (-1)^{n+1} T Δ_0``."""
    n = len(t) - 1
    if 0 <= i <= n:
        return delta_at(c, t, i)
    if i == n + 1:
        mod = c.field.p
        s = _sign(n + 1)
        out = apply_linear(lambda u: cyclic_T(c, u), delta_at(c, t, 0), mod)
        if s < 0:
            out = {u: (-v) % mod if mod else -v for u, v in out.items()}
        return out
    raise ValueError(f"Δ_{i} undefined on arity {n}")


def b_prime(c: DGCoalgebra, t: tuple) -> Vec:
    mod = c.field.p
    out: Vec = {}
    for i in range(len(t)):
        s = _sign(i)
        for u, w in delta_at(c, t, i).items():
            _acc(out, u, s * w, mod)
    return out


def b_full(c: DGCoalgebra, t: tuple) -> Vec:
    mod = c.field.p
    n = len(t) - 1
    out = b_prime(c, t)
    for u, w in delta_i(c, t, n + 1).items():
        _acc(out, u, _sign(n + 1) * w, mod)
    return out


def norm_N(c: DGCoalgebra, t: tuple) -> Vec:
    mod = c.field.p
    out: Vec = {}
    cur, s = t, 1
    for _ in range(len(t)):
        _acc(out, cur, s, mod)
        cur, s2 = _rotate(c, cur)
        s *= s2
    return out


def one_minus_T(c: DGCoalgebra, t: tuple) -> Vec:
    mod = c.field.p
    out: Vec = {t: 1}
    for u, w in cyclic_T(c, t).items():
        _acc(out, u, -w, mod)
    return out


# ---------------------------------------------------------------------------
# matrices on the full tensor power


def tuples(dim: int, length: int) -> Iterator[tuple]:
    """Basis of ``C^{⊗length}`` in lexicographic order (left factor slowest)."""
    return product(range(dim), repeat=length)


def tuple_index(t: Sequence[int], dim: int) -> int:
    k = 0
    for x in t:
        k = k * dim + x
    return k


def operator_matrix(c: DGCoalgebra, f: Callable[[tuple], Vec], n_in: int, n_out: int) -> Matrix:
    """Matrix of ``f: C^{⊗n_in} -> C^{⊗n_out}`` in the lexicographic bases."""
    dim = c.dim
    entries = []
    for j, t in enumerate(tuples(dim, n_in)):
        for u, v in f(t).items():
            entries.append((tuple_index(u, dim), j, v))
    return Matrix.from_entries(c.field, dim ** n_out, dim ** n_in, entries)


def tuples_by_degree(c: DGCoalgebra, length: int, max_degree: int) -> Dict[int, List[tuple]]:
    """Tuples of the given length grouped by internal degree ``<= max_degree`` (lex order kept)."""
    out: Dict[int, List[tuple]] = {}
    if c.min_degree() < 0:
        raise ValueError("needs a non-negatively graded coalgebra")

    def rec(prefix: tuple, deg: int):
        if len(prefix) == length:
            out.setdefault(deg, []).append(prefix)
            return
        for i in range(c.dim):
            e = deg + c.degrees[i]
            if e <= max_degree:
                rec(prefix + (i,), e)

    rec((), 0)
    return out
