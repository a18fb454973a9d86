import pytest

from app.errors import CogroupRequired, StructuralError
from app.services.simplicial import check_map, constant_map, identity, maps_equal, point, sphere, validate
from app.services.stover import (
    COPY,
    CYLINDER,
    SUSPENSION,
    check_counit_resolution,
    coassociativity,
    comultiplication,
    counit_identities,
    elementary_stover,
    naturality,
    rebuild_from_rho,
    stover_cogroup_variant,
    stover_comonad,
    stover_map,
)

PAIRS = [("s0", "s0"), ("s1", "point")]


def objects(a, y):
    named = {"s0": sphere(0), "s1": sphere(1), "point": point()}
    return named[a], named[y]


def test_stover_object_of_s0():
    L = stover_comonad(sphere(0), sphere(0), 0)
    assert validate(L.result) == []
    assert check_map(L.counit) == []
    kinds = [p.kind for p in L.pieces]
    assert kinds.count(COPY) == 2
    assert kinds.count(CYLINDER) == 2
    assert L.piece(0, COPY, 0).label == "0.0.f0"
    with pytest.raises(StructuralError):
        L.piece(3, COPY, 0)


def test_stover_object_is_cached():
    assert stover_comonad(sphere(0), sphere(0), 0) is stover_comonad(sphere(0), sphere(0), 0)


@pytest.mark.parametrize("a,y", PAIRS)
def test_counit_laws(a, y):
    L = stover_comonad(*objects(a, y), 0)
    assert counit_identities(L) == []


@pytest.mark.parametrize("a,y", PAIRS)
def test_object_is_rebuilt_from_its_rho_tables(a, y):
    assert rebuild_from_rho(stover_comonad(*objects(a, y), 0))


@pytest.mark.parametrize("a,y", PAIRS)
def test_counit_is_natural(a, y):
    A, Y = objects(a, y)
    L = stover_comonad(A, Y, 0)
    assert naturality(constant_map(Y, point()), L) == []
    assert naturality(identity(Y), L) == []


def test_coassociativity():
    assert coassociativity(stover_comonad(sphere(0), point(), 0)) == []


def test_comultiplication_is_a_map():
    mu, LL = comultiplication(stover_comonad(sphere(0), sphere(0), 0))
    assert check_map(mu) == []
    assert mu.target is LL.result


def test_derived_objects_keep_the_node_budget():
    L = stover_comonad(sphere(0), sphere(0), 0, budget=10_000)
    mu, LL = comultiplication(L)
    assert LL.budget == 10_000
    assert LL is stover_comonad(sphere(0), L.result, 0, 10_000)
    g, L2 = stover_map(identity(sphere(0)), L)
    assert L2 is L


def test_stover_map_needs_the_base():
    L = stover_comonad(sphere(0), sphere(0), 0)
    with pytest.raises(StructuralError):
        stover_map(identity(sphere(1)), L)


@pytest.mark.parametrize("a, y", [("s0", "s1"), ("s1", "s1"), ("s0", "s0")])
@pytest.mark.parametrize("i_max", [0, 1])
def test_counit_resolution(a, y, i_max):
    named = {"s0": sphere(0), "s1": sphere(1)}
    report = check_counit_resolution(named[a], named[y], i_max)
    assert report.passed
    assert set(report.surjective) == set(range(i_max + 1))
    assert all(report.surjective.values())
    assert all(lift is not None for lift in report.lifts.values())


def test_elementary_object():
    E = elementary_stover(sphere(0), sphere(0), 0)
    assert [p.kind for p in E.pieces] == [COPY, CYLINDER]
    assert validate(E.built.result) == []
    with pytest.raises(StructuralError):
        elementary_stover(sphere(0), sphere(0), 5)


def test_cogroup_variant_refuses_s0():
    with pytest.raises(CogroupRequired):
        stover_cogroup_variant(sphere(0), sphere(1), 0, cogroup=True)
    with pytest.raises(CogroupRequired):
        stover_cogroup_variant(sphere(1), sphere(1), 0, cogroup=False)


def test_cogroup_variant_on_the_circle():
    L = stover_cogroup_variant(sphere(1), sphere(1), 0, cogroup=True)
    assert validate(L.result) == []
    assert check_map(L.counit) == []
    assert L.variant == "cogroup"
    with pytest.raises(StructuralError):
        comultiplication(L)


def test_cogroup_variant_over_a_point_is_collapsed():
    L = stover_cogroup_variant(sphere(1), point(), 0, cogroup=True)
    assert [p.kind for p in L.pieces] == [SUSPENSION]
    assert L.result.cell_counts() == [1]
    assert check_map(L.counit) == []


def test_closed_cones_land_on_suspended_copies():
    L = stover_cogroup_variant(sphere(1), sphere(1), 1, cogroup=True)
    assert validate(L.result) == []
    assert check_map(L.counit) == []
    closed = [p for p in L.pieces if p.kind == SUSPENSION and p.degree == 0]
    assert closed
    copies = [L.leg(q) for q in L.pieces if q.kind == COPY and q.degree == 1]
    for p in closed:
        leg = L.leg(p)
        if maps_equal(L.piece_map(p), constant_map(leg.source, sphere(1))):
            assert maps_equal(leg, constant_map(leg.source, L.result))
        else:
            assert any(maps_equal(leg, q) for q in copies)
