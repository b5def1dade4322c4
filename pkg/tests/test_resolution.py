import pytest

from conftest import bundled_coalgebras
from dgcoalg import fixtures as F
from dgcoalg.coalgebra import (DGCoalgebra, regular_bicomodule, regular_comodule, validate_bicomodule,
                               validate_coalgebra, validate_comodule)
from dgcoalg.complexes import ChainComplex, cohomology_dims
from dgcoalg.coalgebra import cofree
from dgcoalg.linalg import QQ, Matrix, rank
from dgcoalg.resolution import (augmented_resolution, cohom, coend, colinear_maps, contracting_homotopy, cotensor,
                                cotensor_bicomodules, cotensor_comodule, derived_cotensor, ext_comodule,
                                hom_into_resolution, standard_resolution)

EXT1 = DGCoalgebra(QQ, ["1", "x"], [0, 1], [[(0, 0, 1)], [(0, 1, 1), (1, 0, 1)]], [1, 0], name="E1")


def _square_zero(cx):
    return all((cx.d(n + 1) @ cx.d(n)).is_zero() for n in cx.support)


@pytest.mark.parametrize("c", bundled_coalgebras() + [EXT1], ids=lambda c: c.name)
@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_resolution_identities(c, p):
    r = augmented_resolution(regular_bicomodule(c), p)
    assert _square_zero(r.complex)
    assert r.homotopy_defects() == []


def test_homotopy_matrix_identity_on_trivial():
    r = augmented_resolution(regular_comodule(F.trivial()), 3)
    d, h = r.complex.d, lambda n: contracting_homotopy(r, n)
    for n in range(0, r.window):
        lhs = d(n - 1) @ h(n) + h(n + 1) @ d(n)
        assert lhs == Matrix.identity(QQ, r.complex.dim(n))


@pytest.mark.parametrize("c", bundled_coalgebras() + [EXT1], ids=lambda c: c.name)
def test_resolution_is_a_comodule_resolution(c):
    m = regular_bicomodule(c)
    r = standard_resolution(m, 3)
    assert validate_comodule(r.as_comodule()).ok
    assert validate_bicomodule(r.as_bicomodule()).ok
    aug = r.augmentation()
    assert aug.is_chain_map()
    degs = range(0, r.window + 1)
    assert cohomology_dims(r.complex, degs) == cohomology_dims(c.as_complex(), degs)


def test_augmented_trivial_window():
    k = regular_comodule(F.trivial())
    a4 = augmented_resolution(k, 4)
    assert a4.window == 2
    assert all(v == 0 for v in cohomology_dims(a4.complex, range(-1, 3)).values())
    # the truncated top level survives just past the window
    assert cohomology_dims(a4.complex, [3])[3] == 1
    a5 = augmented_resolution(k, 5)
    assert cohomology_dims(a5.complex, [3])[3] == 0


@pytest.mark.parametrize("c", [F.trivial(), F.divided_powers(), F.grouplikes(2)], ids=lambda c: c.name)
def test_truncation_stability(c):
    m = regular_comodule(c)
    for p in (2, 3, 4):
        a = cohomology_dims(standard_resolution(m, p).complex, range(0, p - 1))
        b = cohomology_dims(standard_resolution(m, p + 1).complex, range(0, p - 1))
        assert a == b


def test_cotensor_points():
    k2 = F.grouplikes(2)
    g1r = F.grouplike_point(k2, 0, "right")
    assert cotensor(g1r, F.grouplike_point(k2, 0)).dims() == {0: 1}
    assert cotensor(g1r, F.grouplike_point(k2, 1)).dims() == {}


@pytest.mark.parametrize("c", bundled_coalgebras(), ids=lambda c: c.name)
def test_cotensor_with_regular_is_identity(c):
    res = cotensor(regular_comodule(c, "right"), regular_comodule(c, "left"))
    assert cohomology_dims(res.complex) == cohomology_dims(c.as_complex())
    assert sum(res.dims().values()) == c.dim


def test_cotensor_preserves_injections():
    dp = F.divided_powers()
    x = regular_comodule(dp, "right")
    pt, reg = F.grouplike_point(dp, 0), regular_comodule(dp, "left")
    inc = Matrix.from_dense(QQ, [[1], [0]])  # 1 -> c0 is colinear
    src, tgt = cotensor(x, pt), cotensor(x, reg)
    images = []
    for n, (k, _) in src.kernels.items():
        for col in range(k.ncols):
            img = {}
            for a, v in k.column(col).items():
                i, j = src.ambient.basis[n][a]
                for t, w in inc.column(j).items():
                    pos = tgt.ambient.position[(i, t)][1]
                    img[pos] = img.get(pos, 0) + v * w
            images.append(img)
    m = Matrix.from_columns(QQ, max(tgt.ambient.complex.dim(0), 1), images)
    assert rank(m) == len(images) == 1


def test_derived_cotensor_of_points():
    k2 = F.grouplikes(2)
    res, window = derived_cotensor(F.grouplike_point(k2, 0, "right"), F.grouplike_point(k2, 0), 3)
    assert cohomology_dims(res.complex, range(0, window + 1)) == {n: int(n == 0) for n in range(window + 1)}


def test_hochschild_cotensor_of_enveloping():
    c = F.divided_powers()
    m = regular_bicomodule(c)
    res = cotensor_bicomodules(m, m)
    assert res.complex.dims


@pytest.mark.parametrize("c", [F.trivial(), F.divided_powers(), F.acyclic_extension(), F.acyclic_extension(True),
                               EXT1, F.grouplikes(2)], ids=lambda c: c.name)
def test_hom_routes_agree(c):
    m = regular_bicomodule(c)
    r = standard_resolution(m, 4)
    degs = range(0, 3)
    a = hom_into_resolution(m, r, degs, route="adjunction", two_sided=True)
    b = hom_into_resolution(m, r, degs, route="kernel", two_sided=True)
    assert cohomology_dims(a, degs) == cohomology_dims(b, degs)


@pytest.mark.parametrize("c,expected", [
    (F.trivial(), (1, 0, 0, 0)), (F.divided_powers(), (2, 0, 0, 0)), (F.acyclic_extension(), (1, 0, 0, 0)),
    (F.matrix_coalgebra(), (4, 0, 0, 0))], ids=lambda x: getattr(x, "name", ""))
def test_ext_of_regular(c, expected):
    r = regular_comodule(c)
    assert tuple(ext_comodule(r, r, 3).values()) == expected
    assert ext_comodule(r, r, 2, route="kernel") == {n: expected[n] for n in range(3)}


def test_ext_points():
    k2 = F.grouplikes(2)
    g1, g2 = F.grouplike_point(k2, 0), F.grouplike_point(k2, 1)
    assert ext_comodule(g1, g1, 2) == {0: 1, 1: 0, 2: 0}
    assert ext_comodule(g1, g2, 2) == {0: 0, 1: 0, 2: 0}
    dp = F.divided_powers()
    pt = F.grouplike_point(dp, 0)
    assert ext_comodule(pt, pt, 3) == {0: 1, 1: 1, 2: 1, 3: 1}


def test_ext_of_comatrix_module_vanishes():
    t = F.comatrix_module().left_comodule()
    assert ext_comodule(t, t, 3) == {0: 1, 1: 0, 2: 0, 3: 0}


def test_cofree_adjunction_dimension():
    c = F.divided_powers()
    v = ChainComplex(QQ, {0: 2})
    cf = cofree(c, v)
    for m in (F.grouplike_point(c, 0), regular_comodule(c)):
        assert colinear_maps(m, cf)[0].ncols == m.dim * 2


def test_coend_of_comatrix_module():
    t = F.comatrix_module()
    left, right = coend(t, "left"), coend(t, "right")
    assert left.dim == 1 and right.dim == 4
    assert validate_coalgebra(left).ok and validate_coalgebra(right).ok


def test_cohom_adjunction_dimensions():
    t = F.comatrix_module()
    x = regular_comodule(t.right, "left")
    tx = cotensor_comodule(t, x)
    assert validate_comodule(tx).ok
    for y in (t.left_comodule(), regular_comodule(t.left, "left")):
        h = cohom(t, y)
        assert validate_comodule(h).ok
        assert colinear_maps(h, x)[0].ncols == colinear_maps(y, tx)[0].ncols
