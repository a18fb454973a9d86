import pytest
from hypothesis import given, settings, strategies as st

from app.errors import BudgetError, CapError
from app.services.constructions import suspension
from app.services.mapping_space import (
    TruncatedObject,
    check_level_map,
    check_truncation,
    components_of,
    enumerate_pointed_maps,
    homotopy_classes,
    level0_index,
    level0_map,
    loop_space,
    mapping_space,
    point_truncation,
    postcompose,
    product_truncation,
    rho,
    verify_sigma_omega,
)
from app.services.simplicial import (
    boundary,
    check_map,
    constant_map,
    identity,
    pi0,
    point,
    sphere,
    standard_simplex,
    validate,
)

TARGETS = {
    "point": lambda: point(),
    "s0": lambda: sphere(0),
    "s1": lambda: sphere(1),
    "s2": lambda: sphere(2),
    "d1": lambda: standard_simplex(1),
    "boundary2": lambda: boundary(2),
}


def test_circle_self_maps():
    maps = enumerate_pointed_maps(sphere(1), sphere(1))
    assert len(maps) == 2
    assert all(check_map(f) == [] for f in maps)


@settings(deadline=None, max_examples=10)
@given(name=st.sampled_from(sorted(TARGETS)))
def test_maps_out_of_s0_are_target_simplices(name):
    Y = TARGETS[name]()
    assert len(enumerate_pointed_maps(sphere(0), Y)) == Y.count_simplices(0)
    T = mapping_space(sphere(0), Y, 2)
    assert T.counts() == [Y.count_simplices(n) for n in range(3)]


def test_enumeration_respects_budget():
    with pytest.raises(BudgetError) as excinfo:
        enumerate_pointed_maps(sphere(2), sphere(2), budget=1)
    assert excinfo.value.partial_count == 0


@pytest.mark.parametrize("A,Y", [("s0", "s1"), ("s1", "s1"), ("s1", "s2"), ("s0", "boundary2")])
def test_mapping_space_tables_are_simplicial(A, Y):
    T = mapping_space(TARGETS[A](), TARGETS[Y](), 2)
    assert check_truncation(T) == []
    assert validate(T.realize()) == []
    assert T.normal_form(1, T.basepoint_at(1)).degens == (0,)


def test_mapping_space_is_cached_by_identity():
    assert mapping_space(sphere(1), sphere(1), 1) is mapping_space(sphere(1), sphere(1), 1)


def test_level0_round_trip():
    T = mapping_space(sphere(1), sphere(1), 1)
    for e in range(len(T.levels[0])):
        assert level0_index(T, level0_map(T, e)) == e
    assert level0_map(T, T.constant(0)).key == constant_map(sphere(1), sphere(1)).key


def test_postcomposition_commutes_with_structure():
    A, Y = sphere(1), sphere(1)
    T = mapping_space(A, Y, 2)
    lm = postcompose(T, identity(Y), T)
    assert lm == tuple(tuple(range(len(level))) for level in T.levels)
    to_point = mapping_space(A, point(), 2)
    collapse = postcompose(T, constant_map(Y, point()), to_point)
    assert check_level_map(T, to_point, collapse) == []


def test_homotopy_classes():
    assert len(homotopy_classes(sphere(0), sphere(0)).classes) == 2
    # the edge of Delta[1] joins its two vertices
    assert len(homotopy_classes(sphere(0), standard_simplex(1)).classes) == 1
    table = homotopy_classes(sphere(0), boundary(2))
    assert len(table.classes) == 1
    assert table.representatives == (0,)


@settings(deadline=None, max_examples=20)
@given(name=st.sampled_from(["s0", "s1", "d1", "boundary2"]), data=st.data())
def test_classes_do_not_depend_on_edge_order(name, data):
    R = rho(mapping_space(sphere(0), TARGETS[name](), 1))
    order = data.draw(st.permutations(range(len(R.k1))))
    shuffled = TruncatedObject(
        R.k0, tuple(R.k1[e] for e in order), tuple(R.d0[e] for e in order), tuple(R.d1[e] for e in order),
    )
    assert components_of(shuffled)[:2] == components_of(R)[:2]
    # maps out of S0 are the vertices, so classes are the components of the target
    assert len(components_of(R)[0]) == len(pi0(TARGETS[name]()))


def test_truncation_helpers():
    P = point_truncation(2)
    assert P.counts() == [1, 1, 1]
    assert check_truncation(P) == []
    assert loop_space(P).counts() == [1, 1]
    T = mapping_space(sphere(0), sphere(1), 1)
    square = product_truncation([T, T])
    assert square.counts() == [n * n for n in T.counts()]
    assert check_truncation(square) == []
    with pytest.raises(CapError):
        T.restrict(3)
    with pytest.raises(CapError):
        loop_space(point_truncation(0))


@pytest.mark.parametrize("A,Y", [("s0", "s1"), ("s0", "s2"), ("s1", "s1"), ("s1", "s2")])
def test_suspension_loop_comparison_is_bijective(A, Y):
    report = verify_sigma_omega(TARGETS[A](), TARGETS[Y](), m=1)
    assert report.bijective
    assert [lv.left_count for lv in report.levels] == [lv.right_count for lv in report.levels]


def test_suspension_of_s0_maps_match_loops_at_level_zero():
    # map(susp S0, S1)_0 are the 1-simplices of S1 with both ends at the basepoint
    T = mapping_space(suspension(sphere(0), 1), sphere(1), 0)
    assert T.counts() == [2]
