"""Independent rank oracles for concentrated coalgebras.

Nothing here imports the engine.  A coalgebra is given by its dimension and
``comult[i] = {(a, b): coeff}``; all complexes are written out explicitly on
tensor powers and their cohomology read off from ranks.
"""

from fractions import Fraction
from itertools import product


def rank(rows, mod=None):
    """Rank of a list of equal-length rows by plain Gaussian elimination."""
    m = [[Fraction(x) if mod is None else x % mod for x in r] for r in rows]
    rk = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(rk, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = 1 / m[rk][col] if mod is None else pow(m[rk][col], -1, mod)
        for i in range(len(m)):
            if i != rk and m[i][col] != 0:
                f = m[i][col] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[rk])]
                if mod is not None:
                    m[i] = [x % mod for x in m[i]]
        rk += 1
    return rk


def _index(t, dim):
    k = 0
    for x in t:
        k = k * dim + x
    return k


def hochschild_coboundary(dim, comult, n):
    """Matrix (rows = arity n+2, cols = arity n+1) of the cobar-type coboundary

    ``b(c_0..c_n) = Σ_{i=0}^{n} (-1)^i (.., c_i', c_i'', ..) + (-1)^{n+1} (c_0'', c_1..c_n, c_0')``.
    """
    rows, cols = dim ** (n + 2), dim ** (n + 1)
    m = [[0] * cols for _ in range(rows)]
    for j, t in enumerate(product(range(dim), repeat=n + 1)):
        for i in range(n + 1):
            for (a, b), v in comult[t[i]].items():
                u = t[:i] + (a, b) + t[i + 1:]
                m[_index(u, dim)][j] += (-1) ** i * v
        for (a, b), v in comult[t[0]].items():
            u = (b,) + t[1:] + (a,)
            m[_index(u, dim)][j] += (-1) ** (n + 1) * v
    return m


def _cols(m):
    return [list(c) for c in zip(*m)] if m else []


def hochschild_dims(dim, comult, max_degree):
    """``dim H^n`` of ``(C^{⊗n+1}, b)`` for ``n = 0..max_degree``."""
    ranks = [rank(_cols(hochschild_coboundary(dim, comult, n))) for n in range(max_degree + 1)]
    return tuple(dim ** (n + 1) - ranks[n] - (ranks[n - 1] if n else 0) for n in range(max_degree + 1))


def cyclic_dims(dim, comult, max_degree):
    """Cyclic cohomology over Q as the cohomology of the cyclically invariant subcomplex.

    ``t(c_0..c_n) = (-1)^n (c_1..c_n, c_0)``; invariants are spanned by the
    orbit sums ``Σ_k t^k(x)``.
    """
    spaces = []
    for n in range(max_degree + 2):
        vecs = []
        for t in product(range(dim), repeat=n + 1):
            v = [Fraction(0)] * dim ** (n + 1)
            cur, s = t, 1
            for _ in range(n + 1):
                v[_index(cur, dim)] += s
                cur, s = cur[1:] + cur[:1], s * (-1) ** n
            vecs.append(v)
        spaces.append(vecs)
    dims_inv = [rank(s) for s in spaces]
    ranks = []
    for n in range(max_degree + 1):
        b = hochschild_coboundary(dim, comult, n)
        images = [[sum(b[r][c] * v[c] for c in range(len(v))) for r in range(len(b))] for v in spaces[n]]
        ranks.append(rank(images))
    return tuple(dims_inv[n] - ranks[n] - (ranks[n - 1] if n else 0) for n in range(max_degree + 1))


# a few coalgebras written out by hand

TRIVIAL = (1, [{(0, 0): 1}])


def grouplikes(n):
    return (n, [{(i, i): 1} for i in range(n)])


DIVIDED_POWERS = (2, [{(0, 0): 1}, {(0, 1): 1, (1, 0): 1}])
