from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from app.errors import CapError, StructuralError
from app.services.simplicial import (
    BASEPOINT,
    Cell,
    Simplex,
    boundary,
    build,
    characteristic_map,
    check_map,
    compose,
    constant_map,
    delta_simplex,
    delta_vertices,
    identity,
    is_normal_word,
    isomorphic,
    maps_equal,
    pi0,
    point,
    sphere,
    standard_simplex,
    validate,
)


def test_standard_simplex_cells():
    assert standard_simplex(2).cell_counts() == [3, 3, 1]
    assert boundary(2).cell_counts() == [3, 3]
    assert sphere(2).cell_counts() == [1, 0, 1]
    assert point().cell_counts() == [1]


@settings(deadline=None, max_examples=20)
@given(n=st.integers(min_value=0, max_value=3), k=st.integers(min_value=0, max_value=3))
def test_delta_level_counts_are_monotone_maps(n, k):
    # order-preserving maps [k] -> [n]
    assert standard_simplex(n).count_simplices(k) == comb(n + k + 1, k + 1)


def test_sphere_levels_count_degenerate_simplices():
    S2 = sphere(2)
    assert S2.count_simplices(2) == 2
    assert S2.count_simplices(3) == 4
    assert all(is_normal_word(s.degens) for s in S2.simplices(3))


@settings(deadline=None, max_examples=30)
@given(
    name=st.sampled_from(["delta2", "sphere2", "boundary2"]),
    level=st.integers(min_value=1, max_value=3),
    data=st.data(),
)
def test_simplicial_identities_hold_on_every_simplex(name, level, data):
    X = {"delta2": standard_simplex(2), "sphere2": sphere(2), "boundary2": boundary(2)}[name]
    x = data.draw(st.sampled_from(X.simplices(level)))
    j = data.draw(st.integers(min_value=0, max_value=level))
    i = data.draw(st.integers(min_value=0, max_value=level + 1))
    # d_i d_j needs the faces to land above the vertices
    if level >= 2 and i < j:
        assert X.face(X.face(x, j), i) == X.face(X.face(x, i), j - 1)
    # d_i s_j
    sx = X.degeneracy(x, j)
    if i in (j, j + 1):
        assert X.face(sx, i) == x
    elif i < j:
        assert X.face(sx, i) == X.degeneracy(X.face(x, i), j - 1)
    else:
        assert X.face(sx, i) == X.degeneracy(X.face(x, i - 1), j)


def test_vertices_have_no_faces():
    S1 = sphere(1)
    with pytest.raises(StructuralError):
        S1.face(Simplex((), S1.basepoint), 0)
    with pytest.raises(StructuralError):
        S1.face(S1.degeneracy(Simplex((), S1.basepoint), 0), 2)


def test_delta_simplex_and_vertices_agree():
    for theta in [(0, 0, 1), (0, 2), (1, 1, 1), (0, 1, 2)]:
        assert delta_vertices(delta_simplex(theta)) == theta


def test_validate_reports_broken_faces():
    broken = build(
        [Cell(BASEPOINT, 0), Cell("v", 0), Cell("e", 1, (Simplex((), "v"), Simplex((), "missing")))],
        BASEPOINT, 3, "broken",
    )
    assert validate(broken)
    assert validate(sphere(3)) == []


def test_build_refuses_cells_above_cap():
    with pytest.raises(CapError) as excinfo:
        build([Cell(BASEPOINT, 0), Cell("e", 2, tuple(Simplex((0,), BASEPOINT) for _ in range(3)))], BASEPOINT, 1)
    assert excinfo.value.cap == 1


def test_components():
    assert len(pi0(sphere(0))) == 2
    assert len(pi0(boundary(2))) == 1
    assert len(pi0(sphere(1))) == 1


def test_isomorphism_ignores_cell_names():
    relabeled = build(
        [Cell("base", 0), Cell("loop", 1, (Simplex((), "base"), Simplex((), "base")))], "base", 3, "circle",
    )
    assert isomorphic(relabeled, sphere(1))
    assert not isomorphic(boundary(2), sphere(1))


def test_maps_compose_and_check():
    X = sphere(2)
    assert check_map(identity(X)) == []
    f = constant_map(X, sphere(1))
    assert check_map(f) == []
    assert maps_equal(compose(f, identity(X)), f)
    with pytest.raises(StructuralError):
        compose(f, f)


def test_characteristic_map_is_simplicial():
    X = sphere(2)
    for s in X.simplices(2):
        chi = characteristic_map(X, s)
        assert check_map(chi) == []
        assert chi.apply(Simplex((), "0.1.2")) == s
