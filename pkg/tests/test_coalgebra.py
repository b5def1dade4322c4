import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import F5, bundled_coalgebras
from dgcoalg import fixtures as F
from dgcoalg.coalgebra import (Bicomodule, CoalgebraMorphism, DGCoalgebra, DGComodule, StructureError,
                               as_enveloping_comodule, cofree, corestrict, corestrict_bicomodule, enveloping,
                               is_colinear, opposite, regular_bicomodule, regular_comodule, tensor_coalgebra,
                               validate_bicomodule, validate_coalgebra, validate_comodule, validate_morphism)
from dgcoalg.complexes import ChainComplex
from dgcoalg.generators import random_coalgebra
from dgcoalg.linalg import QQ, Matrix


@pytest.mark.parametrize("c", bundled_coalgebras(), ids=lambda c: c.name)
def test_fixtures_validate(c):
    rep = validate_coalgebra(c)
    assert rep.ok, rep.failures


def test_fixture_shapes():
    assert F.trivial().dim == 1
    assert F.grouplikes(3).labels == ("g1", "g2", "g3")
    d = F.acyclic_extension()
    assert d.degrees == (0, 1, 2) and d.has_differential()
    assert not F.acyclic_extension(True).has_differential()
    assert F.matrix_coalgebra().is_concentrated()


def test_broken_counit_named():
    c = F.divided_powers()
    c.counit = [1, 1]
    rep = validate_coalgebra(c)
    assert rep.failed_identities() == ["counit"]
    assert {f.label for f in rep.failures} == {"c1"}


def test_broken_coassociativity_named():
    # Δb = b⊗b + b⊗a: the two iterates differ by b⊗a⊗b
    c = DGCoalgebra(QQ, ["a", "b"], [0, 0], [[(0, 0, 1)], [(1, 1, 1), (1, 0, 1)]], [1, 0])
    assert "coassociativity" in validate_coalgebra(c).failed_identities()


def test_broken_square_zero_named():
    c = DGCoalgebra(QQ, ["g", "u", "v"], [0, 1, 1], [[(0, 0, 1)], [(0, 1, 1), (1, 0, 1)], [(0, 2, 1), (2, 0, 1)]],
                    [1, 0, 0], [[], [(2, 1)], []])
    assert "grading" in validate_coalgebra(c).failed_identities()


def test_broken_co_leibniz_named():
    # d u = v but v is not primitive-compatible: Δ v = g⊗v only
    c = DGCoalgebra(QQ, ["g", "u", "v"], [0, 1, 2], [[(0, 0, 1)], [(0, 1, 1), (1, 0, 1)], [(0, 2, 1), (2, 0, 1)]],
                    [1, 0, 0], [[], [(2, 1)], [(2, 1)]])
    assert validate_coalgebra(c).failed_identities()


def test_counit_kills_image_of_d():
    # d u = g breaks the grading and ε∘d = 0
    c = DGCoalgebra(QQ, ["g", "u"], [0, -1], [[(0, 0, 1)], [(0, 1, 1), (1, 0, 1)]], [1, 0], [[], [(0, 1)]])
    assert "counit∘d=0" in validate_coalgebra(c).failed_identities()


def test_structure_errors():
    with pytest.raises(StructureError):
        DGCoalgebra(QQ, ["a", "a"], [0, 0], [[], []], [1, 1])
    with pytest.raises(StructureError):
        DGCoalgebra(QQ, ["a"], [0, 1], [[]], [1])
    with pytest.raises(StructureError):
        DGCoalgebra(QQ, ["a"], [0], [[(0, 3, 1)]], [1])
    with pytest.raises(StructureError):
        DGCoalgebra(QQ, [f"x{i}" for i in range(65)], [0] * 65, [[]] * 65, [0] * 65)


@pytest.mark.parametrize("c", bundled_coalgebras(), ids=lambda c: c.name)
def test_constructions_validate(c):
    assert validate_coalgebra(opposite(c)).ok
    assert validate_comodule(regular_comodule(c, "left")).ok
    assert validate_comodule(regular_comodule(c, "right")).ok
    assert validate_bicomodule(regular_bicomodule(c)).ok
    if c.dim <= 3:
        assert validate_coalgebra(enveloping(c)).ok
        assert validate_comodule(as_enveloping_comodule(regular_bicomodule(c))).ok


def test_tensor_coalgebra_labels_and_validity():
    c = tensor_coalgebra(F.acyclic_extension(), F.divided_powers())
    assert c.dim == 6 and "u|c1" in c.labels
    assert validate_coalgebra(c).ok


def test_cofree_comodule():
    v = ChainComplex(QQ, {0: 1, 1: 1}, {0: Matrix.identity(QQ, 1)})
    m = cofree(F.acyclic_extension(), v)
    assert m.dim == 6
    assert validate_comodule(m).ok


def test_comatrix_module_and_points():
    assert validate_bicomodule(F.comatrix_module(2)).ok
    assert validate_bicomodule(F.dual_comatrix_module(2)).ok
    assert validate_comodule(F.grouplike_point(F.grouplikes(2), 1)).ok


def test_broken_comodule_named():
    c = F.grouplikes(2)
    m = DGComodule(c, "left", ["m"], [0], [[(0, 0, 1), (1, 0, 1)]])
    rep = validate_comodule(m)
    assert not rep.ok


def test_morphisms():
    f = F.inclusion_into_extension()
    assert validate_morphism(f).ok
    bad = CoalgebraMorphism(f.source, f.target, Matrix.from_dense(QQ, [[2], [0], [0]]))
    assert not validate_morphism(bad).ok
    assert validate_morphism(CoalgebraMorphism.identity(F.matrix_coalgebra())).ok


def test_corestriction():
    f = F.inclusion_into_extension()
    m = corestrict(f, regular_comodule(f.source))
    assert m.coalgebra == f.target and validate_comodule(m).ok
    x = corestrict_bicomodule(regular_bicomodule(f.source), f_left=f, f_right=f)
    assert validate_bicomodule(x).ok


def test_colinearity():
    c = F.grouplikes(2)
    m = regular_comodule(c)
    assert is_colinear(Matrix.identity(QQ, 2), m, m)
    assert not is_colinear(Matrix.from_dense(QQ, [[0, 1], [1, 0]]), m, m)


@given(st.integers(0, 10 ** 6), st.sampled_from([QQ, F5]), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_random_coalgebras_validate(seed, fld, dim):
    c = random_coalgebra(random.Random(seed), fld, dim=dim)
    assert c.dim == dim
    assert set(c.degrees) <= {0, 1, 2}
    assert validate_coalgebra(c).ok
    assert validate_coalgebra(opposite(c)).ok
    assert validate_bicomodule(regular_bicomodule(c)).ok


def test_equality_is_structural():
    assert F.divided_powers() == F.divided_powers()
    assert F.divided_powers() != F.grouplikes(2)
