import pytest
from dataclasses import replace

from app.errors import StructuralError
from app.services.constructions import wedge
from app.services.mapping_space import mapping_space, postcompose
from app.services.simplicial import check_map, compose, constant_map, identity, maps_equal, sphere, standard_simplex, validate
from app.services.tower import (
    DOLD_LASHOF,
    STOVER,
    Stage,
    dold_lashof_step,
    injectivity_witnesses,
    mapping_cylinder,
    recovery_report,
    run_tower,
    start_tower,
    stover_injectivity_witnesses,
    stover_tower_step,
)


def two_point_start(kind):
    """Stage 0 is S0 sent to the basepoint, so two classes share one image"""
    state = start_tower(kind, sphere(0), sphere(1), 1)
    Z = sphere(0)
    e = constant_map(Z, sphere(1))
    space = mapping_space(sphere(0), Z, 1)
    return replace(state, stages=(Stage(Z, space, postcompose(space, e, state.X), e),))


def test_stage_zero_is_the_point():
    state = start_tower(DOLD_LASHOF, sphere(0), sphere(1), 1)
    assert state.last.Z.cell_counts() == [1]
    assert check_map(state.last.e) == []
    with pytest.raises(StructuralError):
        start_tower("nope", sphere(0), sphere(1), 1)


@pytest.mark.parametrize("target", [lambda: sphere(1), lambda: wedge([sphere(1), sphere(1)]).result], ids=["s1", "s1vs1"])
def test_dold_lashof_tower_on_s0_recovers_the_mapping_space(target):
    state = run_tower(DOLD_LASHOF, sphere(0), target(), 1, m=1)
    stage = state.last
    assert validate(stage.Z) == []
    assert check_map(stage.e) == []
    assert stage.checks["expand_inclusion"] == []
    assert stage.checks["expand_projection"] == []
    report = recovery_report(state)
    assert report.bijective_levels
    assert report.surjective[0]
    assert all(w.faces_ok for w in report.witnesses)


def test_stover_tower_splits():
    state = run_tower(STOVER, sphere(0), sphere(1), 1, m=1, sigma_max=0)
    stage = state.last
    assert stage.checks["retraction"] == []
    assert stage.checks["splitting"] == []
    assert check_map(stage.i) == []
    report = recovery_report(state)
    assert report.surjective[0]
    assert all(w.faces_ok for w in report.witnesses)


def test_mapping_cylinder_of_an_identity():
    X = standard_simplex(1)
    cyl, front, back, collapse, sweep = mapping_cylinder(identity(X))
    assert validate(cyl) == []
    for f in (front, back, collapse, sweep):
        assert check_map(f) == []
    assert maps_equal(compose(collapse, back), identity(X))
    assert maps_equal(compose(collapse, front), identity(X))


def test_dold_lashof_witness_merges_classes_with_one_image():
    state = dold_lashof_step(two_point_start(DOLD_LASHOF))
    witnesses = injectivity_witnesses(state)
    assert sorted((w.g, w.g_prime) for w in witnesses) == [(0, 1), (1, 0)]
    assert all(w.faces_ok and w.merged and w.path == (w.tau,) for w in witnesses)


def test_stover_witness_is_a_path_through_the_cylinders():
    state = stover_tower_step(two_point_start(STOVER))
    witnesses = stover_injectivity_witnesses(state)
    assert sorted((w.g, w.g_prime) for w in witnesses) == [(0, 1), (1, 0)]
    for w in witnesses:
        assert w.faces_ok
        assert w.merged
        assert len(w.path) == 3 and w.path[1] == w.tau
    assert recovery_report(state).witnesses == witnesses


@pytest.mark.parametrize("kind", [DOLD_LASHOF, STOVER])
def test_circle_towers_keep_their_identities(kind):
    state = run_tower(kind, sphere(1), sphere(1), 2, m=1, sigma_max=0)
    assert len(state.stages) == 3
    for stage in state.stages[1:]:
        assert validate(stage.Z) == []
        assert stage.checks["expand_inclusion"] == []
        assert stage.checks["expand_projection"] == []
    report = recovery_report(state)
    assert report.surjective[0]
    assert all(w.faces_ok and w.merged for w in report.witnesses)
