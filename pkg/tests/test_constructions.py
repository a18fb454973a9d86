import pytest
from hypothesis import given, settings, strategies as st

from app.errors import StructuralError
from app.services.constructions import (
    cone,
    end_inclusion,
    half_smash,
    product,
    pushout,
    smash_left,
    suspension,
    wedge,
)
from app.services.mapping_space import enumerate_pointed_maps
from app.services.simplicial import (
    Simplex,
    SimplicialMap,
    boundary,
    check_map,
    compose,
    isomorphic,
    maps_equal,
    pi0,
    point,
    sphere,
    standard_simplex,
    validate,
)

SMALL = {
    "point": lambda: point(),
    "s0": lambda: sphere(0),
    "s1": lambda: sphere(1),
    "d1": lambda: standard_simplex(1),
    "boundary2": lambda: boundary(2),
}


def test_square_has_two_triangles():
    square = product(standard_simplex(1), standard_simplex(1))
    assert square.cell_counts() == [4, 5, 2]
    assert validate(square) == []


def test_torus_cells():
    assert product(sphere(1), sphere(1)).cell_counts() == [1, 3, 2]


@settings(deadline=None, max_examples=25)
@given(
    left=st.sampled_from(sorted(SMALL)),
    right=st.sampled_from(sorted(SMALL)),
    n=st.integers(min_value=0, max_value=2),
)
def test_product_levels_multiply(left, right, n):
    X, Y = SMALL[left](), SMALL[right]()
    assert product(X, Y).count_simplices(n) == X.count_simplices(n) * Y.count_simplices(n)


def test_suspended_circle():
    S = suspension(sphere(1), 1)
    assert S.cell_counts() == [1, 1, 2]
    assert validate(S) == []
    assert suspension(sphere(1), 0) is sphere(1)
    with pytest.raises(StructuralError):
        suspension(sphere(1), -1)


def test_double_suspension_is_iterated():
    twice = suspension(sphere(0), 2)
    assert twice is suspension(suspension(sphere(0), 1), 1)
    assert suspension(sphere(0), 1).cell_counts() == [1, 1]
    assert twice.cell_counts() == [1, 1, 2]
    assert validate(twice) == []


def test_smash_of_circles():
    S = smash_left(sphere(1), sphere(1))
    assert S.cell_counts() == [1, 1, 2]
    assert validate(S) == []


def test_half_smash_with_a_vertex_is_the_object():
    assert isomorphic(half_smash(sphere(1), standard_simplex(0)).result, sphere(1))
    assert half_smash(sphere(1), standard_simplex(1)) is half_smash(sphere(1), standard_simplex(1))


def test_cone_is_connected():
    C = cone(sphere(0)).result
    assert validate(C) == []
    assert len(pi0(C)) == 1


def test_end_inclusions_are_maps():
    cyl = half_smash(sphere(1), standard_simplex(1))
    for vertex in (0, 1):
        inclusion = end_inclusion(cyl, vertex)
        assert check_map(inclusion) == []
        assert inclusion.is_injective()


def test_wedge_of_circles():
    pres = wedge([sphere(1), sphere(1)])
    assert pres.result.cell_counts() == [1, 2]
    assert all(check_map(leg) == [] for leg in pres.legs)
    assert wedge([]).result.cell_counts() == [1]


def test_pushout_glues_two_intervals_into_a_circle():
    d1 = standard_simplex(1)
    S0 = sphere(0)
    ends = SimplicialMap(S0, d1, {"*": Simplex((), "0"), "v": Simplex((), "1")})
    pres = pushout(ends, ends, "circle")
    assert pres.result.cell_counts() == [2, 2]
    assert pres.cofibration == "both"
    assert len(pi0(pres.result)) == 1
    # legs agree on the glued vertices
    left, right = pres.legs
    assert left.apply(Simplex((), "1")) == right.apply(Simplex((), "1"))


def test_induced_map_out_of_a_wedge():
    pres = wedge([sphere(1), sphere(1)])
    S1 = sphere(1)
    fold = pres.induced([SimplicialMap(S1, S1, dict(leg_map)) for leg_map in
                         ({"*": Simplex((), "*"), "e1": Simplex((), "e1")},) * 2], S1)
    assert check_map(fold) == []


@settings(deadline=None, max_examples=15)
@given(names=st.lists(st.sampled_from(sorted(SMALL)), min_size=1, max_size=3), data=st.data())
def test_wedge_does_not_depend_on_summand_order(names, data):
    shuffled = data.draw(st.permutations(names))
    one = wedge([SMALL[n]() for n in names]).result
    two = wedge([SMALL[n]() for n in shuffled]).result
    assert one.cell_counts() == two.cell_counts()
    assert isomorphic(one, two)


@pytest.mark.parametrize("target", ["s1", "boundary2", "d1"])
def test_pushout_maps_are_compatible_pairs(target):
    d1, S0, Y = standard_simplex(1), sphere(0), SMALL[target]()
    ends = SimplicialMap(S0, d1, {"*": Simplex((), "0"), "v": Simplex((), "1")})
    pres = pushout(ends, ends, "circle")
    legs = enumerate_pointed_maps(d1, Y)
    pairs = [(u, v) for u in legs for v in legs if maps_equal(compose(u, ends), compose(v, ends))]
    for u, v in pairs:
        h = pres.induced([u, v], Y)
        assert check_map(h) == []
        assert maps_equal(compose(h, pres.legs[0]), u)
        assert maps_equal(compose(h, pres.legs[1]), v)
    # every map out of the pushout is induced by exactly one compatible pair
    assert len(enumerate_pointed_maps(pres.result, Y)) == len(pairs)
