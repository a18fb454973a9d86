import pytest

from app.errors import StructuralError
from app.services.adjunction import (
    adjunction_check,
    adjunction_unit,
    check_algebra,
    evaluation_counit,
    left_adjoint_F,
    monad_multiplication,
    realizable_algebra_structure,
    truncation_unit,
)
from app.services.mapping_space import check_level_map, mapping_space
from app.services.simplicial import check_map, isomorphic, point, sphere


def test_left_adjoint_on_spheres():
    assert isomorphic(left_adjoint_F(sphere(0), sphere(1)), sphere(1))
    assert left_adjoint_F(sphere(1), point()).cell_counts() == [1]


@pytest.mark.parametrize("A", ["s0", "s1"])
@pytest.mark.parametrize("K", ["s0", "s1", "point"])
def test_adjunction_bijection_and_triangles(A, K):
    named = {"s0": sphere(0), "s1": sphere(1), "point": point()}
    report = adjunction_check(named[A], named[K], sphere(1), m=1)
    assert report.violations == []
    assert report.left_count == report.right_count


def test_unit_and_counit_are_maps():
    T, eta = adjunction_unit(sphere(0), sphere(1), 1)
    assert check_map(eta) == []
    _, ev = evaluation_counit(mapping_space(sphere(1), sphere(1), 1))
    assert check_map(ev) == []


def test_monad_structure_maps_are_simplicial():
    X = mapping_space(sphere(0), sphere(1), 1)
    TX, eta = truncation_unit(X)
    assert check_level_map(X, TX, eta) == []
    TTX, mu = monad_multiplication(TX)
    assert check_level_map(TTX, TX, mu) == []


@pytest.mark.parametrize("A,Y", [("s0", "s1"), ("s1", "s1"), ("s1", "point")])
def test_mapping_spaces_are_algebras(A, Y):
    named = {"s0": sphere(0), "s1": sphere(1), "point": point()}
    structure = realizable_algebra_structure(named[A], named[Y], 1)
    assert check_algebra(structure) == []


def test_corrupted_structure_is_caught():
    structure = realizable_algebra_structure(sphere(1), sphere(1), 1)
    mutated = structure.mutate()
    assert mutated.mutated
    assert check_algebra(mutated)


def test_single_element_levels_cannot_be_corrupted():
    structure = realizable_algebra_structure(sphere(1), point(), 1)
    with pytest.raises(StructuralError):
        structure.mutate()
