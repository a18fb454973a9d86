"""
Finite-stage recovery towers for a realizable X = map(A, Y).

Both kinds start from the point and glue in a pushout per stage: the
Dold-Lashof step glues F_A X along the evaluation counit, the Stover step
glues the mapping cylinder of L_A(e) along the Stover counit. Every stage
checks its identities and records the outcome.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, NamedTuple, Optional, Tuple

from app import config
from app.errors import LawViolation, StructuralError
from app.services.adjunction import (
    compose_levels,
    evaluation_counit,
    left_adjoint_F,
    truncation_unit,
)
from app.services.constructions import (
    end_inclusion,
    half_smash,
    pushout,
    suspension,
)
from app.services.mapping_space import (
    LevelMap,
    MappingSpaceTruncation,
    homotopy_classes,
    level0_index,
    mapping_space,
    postcompose,
    realize_level_map,
)
from app.services.simplicial import (
    SimplicialMap,
    SimplicialSet,
    compose,
    constant_map,
    identity,
    maps_equal,
    point,
    standard_simplex,
    validate,
)
from app.services.stover import COPY, CYLINDER, stover_comonad, stover_map

logger = logging.getLogger(__name__)

DOLD_LASHOF = "dold_lashof"
STOVER = "stover"


@dataclass(frozen=True, eq=False)
class Stage:
    Z: SimplicialSet
    space: MappingSpaceTruncation
    f: LevelMap
    e: SimplicialMap
    p: Optional[SimplicialMap] = None
    i: Optional[SimplicialMap] = None
    checks: Dict[str, List[str]] = field(default_factory=dict)
    # Stover stages: the cylinder over L_A Z swept into Z'
    sweep: Optional[SimplicialMap] = None


@dataclass(frozen=True, eq=False)
class TowerState:
    kind: str
    A: SimplicialSet
    Y: SimplicialSet
    X: MappingSpaceTruncation
    stages: Tuple[Stage, ...]
    sigma_max: int = 0
    budget: Optional[int] = None

    @property
    def level_cap(self) -> int:
        return self.X.level_cap

    @property
    def last(self) -> Stage:
        return self.stages[-1]


def _stage_from_lift(Z: SimplicialSet, e: SimplicialMap, state_X: MappingSpaceTruncation, budget) -> Tuple[MappingSpaceTruncation, LevelMap]:
    space = mapping_space(state_X.A, Z, state_X.level_cap, budget)
    return space, postcompose(space, e, state_X)


def start_tower(
    kind: str, A: SimplicialSet, Y: SimplicialSet, m: Optional[int] = None,
    sigma_max: int = 0, budget: Optional[int] = None,
) -> TowerState:
    """Stage 0 is the point, mapped to Y by the unit"""
    if kind not in (DOLD_LASHOF, STOVER):
        raise StructuralError(f"unknown tower kind {kind!r}")
    X = mapping_space(A, Y, config.LEVEL_CAP if m is None else m, budget)
    Z = point()
    e = constant_map(Z, Y)
    space, f = _stage_from_lift(Z, e, X, budget)
    return TowerState(kind, A, Y, X, (Stage(Z, space, f, e),), sigma_max, budget)


def _level_differences(name: str, one: LevelMap, two: LevelMap) -> List[str]:
    return [
        f"{name}: level {n} element {x} gives {a} and {b}"
        for n, (row_one, row_two) in enumerate(zip(one, two))
        for x, (a, b) in enumerate(zip(row_one, row_two)) if a != b
    ]


def _expand_identities(state: TowerState, prev: Stage, space, f, i_map, p_map, P_space, eps) -> Dict[str, List[str]]:
    """f' after M_A i equals f, and f' after M_A p equals the structure map"""
    checks: Dict[str, List[str]] = {}
    M_i = postcompose(prev.space, i_map, space)
    checks["expand_inclusion"] = _level_differences("f' M_A(i) = f", compose_levels(f, M_i), prev.f)
    M_p = postcompose(P_space, p_map, space)
    checks["expand_projection"] = _level_differences("f' M_A(p) = eps", compose_levels(f, M_p), eps)
    return checks


def _finish(state: TowerState, prev: Stage, Z, e, i_map, p_map, P_space, eps, extra, sweep=None) -> TowerState:
    problems = validate(Z)
    if problems:
        raise StructuralError(f"stage {len(state.stages)} is not a simplicial set: {problems[0]}")
    space, f = _stage_from_lift(Z, e, state.X, state.budget)
    checks = _expand_identities(state, prev, space, f, i_map, p_map, P_space, eps)
    checks["inclusion_injective"] = [] if i_map.is_injective() else [f"i at stage {len(state.stages) - 1} is not injective"]
    checks.update(extra)
    for name in ("expand_inclusion", "expand_projection"):
        if checks[name]:
            raise LawViolation(f"{name} fails at stage {len(state.stages)}: {checks[name][0]}", offending=checks[name][0])
    stage = Stage(Z, space, f, e, p_map, i_map, checks, sweep)
    logger.info(
        f"tower stage built: kind={state.kind}, stage={len(state.stages)}, cells={Z.cell_counts()}, "
        f"injective={not checks['inclusion_injective']}"
    )
    return replace(state, stages=state.stages + (stage,))


def dold_lashof_step(state: TowerState) -> TowerState:
    """Z' = Z  u_{F_A M_A Z}  F_A X, along the evaluation counit and F_A f"""
    prev = state.last
    A, X = state.A, state.X
    sm_Z, ev_Z = evaluation_counit(prev.space)
    f_bar = realize_level_map(prev.space, X, prev.f)
    sm_X, ev_X = evaluation_counit(X)
    F_f = sm_Z.functor(sm_X, identity(A), f_bar)
    pres = pushout(ev_Z, F_f, f"Z{len(state.stages)}")
    i_map, p_map = pres.legs
    e = pres.induced([prev.e, ev_X], state.Y)
    P_space, _ = truncation_unit(X, state.budget)
    eps = postcompose(P_space, ev_X, X)
    if P_space.Y is not sm_X.result:
        raise StructuralError("F_A X does not match the unit's target")
    return _finish(state, prev, pres.result, e, i_map, p_map, P_space, eps, {})


class MappingCylinder(NamedTuple):
    result: SimplicialSet
    front: SimplicialMap
    back: SimplicialMap
    collapse: SimplicialMap
    sweep: SimplicialMap


def mapping_cylinder(phi: SimplicialMap) -> MappingCylinder:
    """
    Cyl(phi) = (P |x Delta[1]) u_P Q with the vertex-1 end glued along phi.
    Carries the front inclusion, the back section j, the collapse l and the
    map from P |x Delta[1] onto the cylinder.
    """
    P, Q = phi.source, phi.target
    cyl = half_smash(P, standard_simplex(1))
    pres = pushout(end_inclusion(cyl, 1), phi, f"cyl({P.name})")
    body, back = pres.legs
    front = compose(body, end_inclusion(cyl, 0))
    collapse = pres.induced([cyl.induced(Q, lambda a, b: phi.apply(a)), identity(Q)], Q)
    return MappingCylinder(pres.result, front, back, collapse, body)


def stover_tower_step(state: TowerState) -> TowerState:
    """Y' = Y  u_{L_A Y}  Cyl(L_A e), along the Stover counit and the front inclusion"""
    prev = state.last
    L_prev = stover_comonad(state.A, prev.Z, state.sigma_max, state.budget)
    L_Y = stover_comonad(state.A, state.Y, state.sigma_max, state.budget)
    L_e, _ = stover_map(prev.e, L_prev, L_Y)
    cylinder = mapping_cylinder(L_e)
    j, ell = cylinder.back, cylinder.collapse
    pres = pushout(L_prev.counit, cylinder.front, f"Y{len(state.stages)}")
    i_map, body = pres.legs
    e = pres.induced([prev.e, compose(L_Y.counit, ell)], state.Y)
    p_map = compose(body, j)
    extra = {"retraction": [] if maps_equal(compose(ell, j), identity(L_Y.result)) else ["l after j is not the identity"]}
    P_space = mapping_space(state.A, L_Y.result, state.level_cap, state.budget)
    eps = postcompose(P_space, L_Y.counit, state.X)
    next_state = _finish(state, prev, pres.result, e, i_map, p_map, P_space, eps, extra, compose(body, cylinder.sweep))
    next_state.last.checks["splitting"] = splitting_violations(next_state, L_Y, p_map)
    return next_state


def splitting_violations(state: TowerState, L_Y, p_map: SimplicialMap) -> List[str]:
    """f after the section x -> p(copy of x) is the identity on levels 0 and 1"""
    stage = state.last
    T = L_Y.spaces[0]
    problems = []
    for x in range(len(state.X.levels[0])):
        lifted = compose(p_map, L_Y.leg(L_Y.piece(0, COPY, x)))
        if stage.f[0][level0_index(stage.space, lifted)] != x:
            problems.append(f"section fails on vertex {x}")
    if state.level_cap >= 1:
        for F in range(len(T.levels[1])):
            lifted = compose(p_map, L_Y.leg(L_Y.piece(0, CYLINDER, F)))
            if stage.f[1][stage.space.index_of(1, lifted.key)] != F:
                problems.append(f"section fails on edge {F}")
    return problems


def run_tower(kind: str, A: SimplicialSet, Y: SimplicialSet, stages: int, m: Optional[int] = None,
              sigma_max: int = 0, budget: Optional[int] = None) -> TowerState:
    state = start_tower(kind, A, Y, m, sigma_max, budget)
    step = dold_lashof_step if kind == DOLD_LASHOF else stover_tower_step
    for _ in range(stages):
        state = step(state)
    return state


# ---------- recovery ----------


@dataclass
class Witness:
    stage: int
    g: int
    g_prime: int
    sigma: int
    tau: int
    faces_ok: bool
    merged: bool
    # edges of map(A, Z') from i g to i g'
    path: Tuple[int, ...] = ()


@dataclass
class RecoveryReport:
    kind: str
    stages: int
    surjective: Dict[int, bool] = field(default_factory=dict)
    lifts: Dict[str, Optional[int]] = field(default_factory=dict)
    bijective_levels: bool = False
    witnesses: List[Witness] = field(default_factory=list)
    stabilized: Dict[int, bool] = field(default_factory=dict)
    conditional: str = "stabilization of class tables does not certify an A-equivalence for non-fibrant targets"


def _bijective(lm: LevelMap, target: MappingSpaceTruncation) -> bool:
    return all(sorted(row) == list(range(len(target.levels[n]))) for n, row in enumerate(lm))


def recovery_report(state: TowerState, sigma_max: Optional[int] = None) -> RecoveryReport:
    sigma_max = state.sigma_max if sigma_max is None else sigma_max
    report = RecoveryReport(state.kind, len(state.stages) - 1)
    last = state.last
    report.bijective_levels = _bijective(last.f, state.X)
    for i in range(sigma_max + 1):
        B = suspension(state.A, i)
        target = homotopy_classes(B, state.Y, state.budget)
        source_space = mapping_space(B, last.Z, 1, state.budget)
        pushed = postcompose(source_space, last.e, target.space)[0]
        for phi in range(len(target.classes)):
            lift = next((g for g, image in enumerate(pushed) if target.class_of[image] == phi), None)
            report.lifts[f"{i}:{phi}"] = lift
        report.surjective[i] = all(report.lifts[f"{i}:{phi}"] is not None for phi in range(len(target.classes)))
        if len(state.stages) >= 2:
            before = homotopy_classes(B, state.stages[-2].Z, state.budget)
            after = homotopy_classes(B, last.Z, state.budget, source_space)
            moved = postcompose(before.space, last.i, after.space)[0]
            images = {after.class_of[moved[g]] for g in range(len(moved))}
            report.stabilized[i] = len(before.classes) == len(after.classes) == len(images)
    if state.kind == DOLD_LASHOF:
        report.witnesses = injectivity_witnesses(state)
    else:
        report.witnesses = stover_injectivity_witnesses(state)
    return report


def injectivity_witnesses(state: TowerState) -> List[Witness]:
    """
    For class representatives g, g' of map(A, Z) whose images are joined by an
    edge sigma of X, push sigma forward to tau = M_A(p) eta(sigma) one stage up
    and check d0 tau = i g and d1 tau = i g'.
    """
    witnesses = []
    X = state.X
    if X.level_cap < 1:
        return witnesses
    TX, eta = truncation_unit(X, state.budget)
    for alpha in range(len(state.stages) - 1):
        here, there = state.stages[alpha], state.stages[alpha + 1]
        classes = homotopy_classes(state.A, here.Z, state.budget, here.space)
        reps = classes.representatives
        M_p = postcompose(TX, there.p, there.space)
        M_i = postcompose(here.space, there.i, there.space)
        after = homotopy_classes(state.A, there.Z, state.budget, there.space)
        for g in reps:
            for g_prime in reps:
                if g == g_prime:
                    continue
                for sigma in range(len(X.levels[1])):
                    if X.faces[1][sigma] != (here.f[0][g], here.f[0][g_prime]):
                        continue
                    tau = M_p[1][eta[1][sigma]]
                    faces_ok = there.space.faces[1][tau] == (M_i[0][g], M_i[0][g_prime])
                    merged = after.class_of[M_i[0][g]] == after.class_of[M_i[0][g_prime]]
                    witnesses.append(Witness(alpha, g, g_prime, sigma, tau, faces_ok, merged, (tau,)))
                    break
    return witnesses


def stover_injectivity_witnesses(state: TowerState) -> List[Witness]:
    """
    For class representatives g, g' of map(A, Z) whose images are joined by an
    edge sigma of X, tau = p after the cylinder of sigma in L_A Y. In Z' the
    copy of f(g) sits at the back of the swept cylinder over the copy of g, so
    the witness is the path i g -> p(f g) <- tau -> p(f g') -> i g' and every
    face along it is checked.
    """
    witnesses = []
    X = state.X
    if X.level_cap < 1:
        return witnesses
    L_Y = stover_comonad(state.A, state.Y, state.sigma_max, state.budget)
    interval = standard_simplex(1)
    slab = half_smash(state.A, interval)
    for alpha in range(len(state.stages) - 1):
        here, there = state.stages[alpha], state.stages[alpha + 1]
        L_here = stover_comonad(state.A, here.Z, state.sigma_max, state.budget)
        cyl = half_smash(L_here.result, interval)
        reps = homotopy_classes(state.A, here.Z, state.budget, here.space).representatives
        after = homotopy_classes(state.A, there.Z, state.budget, there.space)
        M_i = postcompose(here.space, there.i, there.space)
        faces = there.space.faces[1]

        def swept(g: int) -> int:
            copy = L_here.leg(L_here.piece(0, COPY, g))
            return there.space.index_of(1, compose(there.sweep, slab.functor(cyl, copy, identity(interval))).key)

        def pushed(x: int) -> int:
            return level0_index(there.space, compose(there.p, L_Y.leg(L_Y.piece(0, COPY, x))))

        for g in reps:
            for g_prime in reps:
                if g == g_prime:
                    continue
                x, x_prime = here.f[0][g], here.f[0][g_prime]
                for sigma in range(len(X.levels[1])):
                    if X.faces[1][sigma] != (x, x_prime):
                        continue
                    tau = there.space.index_of(1, compose(there.p, L_Y.leg(L_Y.piece(0, CYLINDER, sigma))).key)
                    path = (swept(g), tau, swept(g_prime))
                    faces_ok = (
                        faces[path[0]] == (pushed(x), M_i[0][g])
                        and faces[tau] == (pushed(x), pushed(x_prime))
                        and faces[path[2]] == (pushed(x_prime), M_i[0][g_prime])
                    )
                    merged = after.class_of[M_i[0][g]] == after.class_of[M_i[0][g_prime]]
                    witnesses.append(Witness(alpha, g, g_prime, sigma, tau, faces_ok, merged, path))
                    break
    return witnesses


__all__ = [
    "DOLD_LASHOF", "STOVER", "Stage", "TowerState", "dold_lashof_step", "left_adjoint_F",
    "MappingCylinder", "mapping_cylinder", "recovery_report", "run_tower", "start_tower", "stover_tower_step",
]
