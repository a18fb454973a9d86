"""
The adjunction F_A = A ^ - against M_A = map(A, -), the monad T_A = M_A F_A,
and the algebra structure every realizable mapping space carries.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Tuple, Union

from app import config
from app.errors import StructuralError
from app.services.constructions import ProductQuotient, smash, smash_left
from app.services.mapping_space import (
    LevelMap,
    MappingSpaceTruncation,
    Truncation,
    check_level_map,
    enumerate_pointed_maps,
    mapping_space,
    postcompose,
    realize_level_map,
)
from app.services.simplicial import (
    Simplex,
    SimplicialMap,
    SimplicialSet,
    compose,
    delta_vertices,
    identity,
    surjection_of,
)

logger = logging.getLogger(__name__)


def left_adjoint_F(A: SimplicialSet, K: Union[SimplicialSet, Truncation]) -> SimplicialSet:
    if isinstance(K, Truncation):
        K = K.realize()
    return smash_left(A, K)


def _cell_index(cell_id: str) -> Tuple[int, int]:
    level, index = cell_id.split(":")
    return int(level), int(index)


def evaluate_realized(T: MappingSpaceTruncation, a: Simplex, r: Simplex) -> Simplex:
    """ev(a, r) for r a simplex of T.realize() of the same dimension as a"""
    k, e = _cell_index(r.cell)
    sigma = surjection_of(r.degens, T.A.dim(a))
    return T.evaluate(k, e, a, sigma)


def evaluation_counit(T: MappingSpaceTruncation) -> Tuple[ProductQuotient, SimplicialMap]:
    """The counit A ^ |map(A, Y)| -> Y"""
    sm = smash(T.A, T.realize())
    return sm, sm.induced(T.Y, lambda a, r: evaluate_realized(T, a, r))


def _element(T: MappingSpaceTruncation, n: int, rule: Callable[[Simplex, Simplex], Simplex]) -> int:
    src = T.sources[n]
    return T.index_of(n, tuple(
        T.Y.basepoint_simplex(0) if c.id == src.result.basepoint else rule(*src.components(c.id))
        for c in src.result.cells
    ))


def flat(g: SimplicialMap, K: SimplicialSet, T: MappingSpaceTruncation) -> SimplicialMap:
    """g: A ^ K -> Y  to  K -> |map(A, Y)|"""
    sm = smash(T.A, K)
    if g.source is not sm.result:
        raise StructuralError("flat needs a map out of A ^ K")
    assignment = {}
    for c in K.cells:
        k = Simplex((), c.id)
        e = _element(T, c.dim, lambda a, t: g.apply(sm.pair(a, K.act(delta_vertices(t), k))))
        assignment[c.id] = T.normal_form(c.dim, e)
    return SimplicialMap(K, T.realize(), assignment)


def sharp(h: SimplicialMap, T: MappingSpaceTruncation) -> SimplicialMap:
    """h: K -> |map(A, Y)|  to  A ^ K -> Y"""
    sm = smash(T.A, h.source)
    return sm.induced(T.Y, lambda a, k: evaluate_realized(T, a, h.apply(k)))


def adjunction_unit(A: SimplicialSet, K: SimplicialSet, m: int, budget: Optional[int] = None) -> Tuple[MappingSpaceTruncation, SimplicialMap]:
    """eta_K: K -> |map(A, A ^ K)|"""
    sm = smash(A, K)
    T = mapping_space(A, sm.result, m, budget)
    return T, flat(identity(sm.result), K, T)


def compose_levels(g: LevelMap, f: LevelMap) -> LevelMap:
    return tuple(tuple(g[n][x] for x in row) for n, row in enumerate(f))


def _differences(name: str, one, two) -> List[str]:
    return [
        f"{name}: cell {cid} goes to {one.assignment[cid]} instead of {two.assignment[cid]}"
        for cid in one.assignment if one.assignment[cid] != two.assignment[cid]
    ]


@dataclass
class AdjunctionReport:
    A: str
    K: str
    X: str
    left_count: int
    right_count: int
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.left_count == self.right_count and not self.violations


def adjunction_check(
    A: SimplicialSet, K: SimplicialSet, X: SimplicialSet, m: Optional[int] = None, budget: Optional[int] = None,
) -> AdjunctionReport:
    """
    Build the bijection map(A ^ K, X)_0 = map(K, M_A X)_0 both ways and check
    the triangle identities on every enumerated element.
    """
    m = max(config.LEVEL_CAP if m is None else m, K.max_dim)
    sm = smash(A, K)
    T = mapping_space(A, X, m, budget)
    R = T.realize()
    left = enumerate_pointed_maps(sm.result, X, budget)
    right = enumerate_pointed_maps(K, R, budget)
    right_keys = {h.key for h in right}
    report = AdjunctionReport(A.name, K.name, X.name, len(left), len(right))

    TK, eta_K = adjunction_unit(A, K, m, budget)
    for n, g in enumerate(left):
        h = flat(g, K, T)
        if h.key not in right_keys:
            report.violations.append(f"flat of map {n} is not a map into M_A X")
        report.violations.extend(_differences(f"sharp(flat(map {n}))", sharp(h, T), g))
        M_g = realize_level_map(TK, T, postcompose(TK, g, T))
        report.violations.extend(_differences(f"unit factorization of map {n}", compose(M_g, eta_K), h))
    for n, h in enumerate(right):
        report.violations.extend(_differences(f"flat(sharp(map {n}))", flat(sharp(h, T), K, T), h))

    # eps_{F K} after F(eta_K) is the identity of A ^ K
    unit_smash = sm.functor(smash(A, TK.realize()), identity(A), eta_K)
    _, ev_FK = evaluation_counit(TK)
    report.violations.extend(_differences("counit triangle", compose(ev_FK, unit_smash), identity(sm.result)))
    # M(eps_X) after eta_{M X} is the identity of M_A X
    TT, eta_T = truncation_unit(T, budget)
    _, ev_X = evaluation_counit(T)
    round_trip = compose_levels(postcompose(TT, ev_X, T), eta_T)
    for n, row in enumerate(round_trip):
        for e, image in enumerate(row):
            if image != e:
                report.violations.append(f"unit triangle: level {n} element {e} goes to {image}")
    logger.info(
        f"adjunction check: A={A.name}, K={K.name}, X={X.name}, "
        f"left={report.left_count}, right={report.right_count}, violations={len(report.violations)}"
    )
    return report


# ---------- the monad T_A and its algebras ----------


def truncation_unit(T: MappingSpaceTruncation, budget: Optional[int] = None) -> Tuple[MappingSpaceTruncation, LevelMap]:
    """eta_X: X -> T_A X = map(A, A ^ |X|) as a level map"""
    R = T.realize()
    sm = smash(T.A, R)
    TX = mapping_space(T.A, sm.result, T.level_cap, budget)
    rows = []
    for n in range(T.level_cap + 1):
        row = []
        for e in range(len(T.levels[n])):
            x = T.normal_form(n, e)
            row.append(_element(TX, n, lambda a, t: sm.pair(a, R.act(delta_vertices(t), x))))
        rows.append(tuple(row))
    return TX, tuple(rows)


def monad_multiplication(TX: MappingSpaceTruncation, budget: Optional[int] = None) -> Tuple[MappingSpaceTruncation, LevelMap]:
    """mu_X: T_A T_A X -> T_A X, induced by the evaluation counit at F_A |X|"""
    TTX, _ = truncation_unit(TX, budget)
    _, ev = evaluation_counit(TX)
    return TTX, postcompose(TTX, ev, TX)


@dataclass(frozen=True, eq=False)
class AlgebraStructure:
    X: MappingSpaceTruncation
    TX: MappingSpaceTruncation
    eta: LevelMap
    eps: LevelMap
    mutated: bool = False

    def mutate(self, level: int = 0) -> "AlgebraStructure":
        """Corrupt the value of eps on eta of the first element at ``level``"""
        count = len(self.X.levels[level])
        if count < 2:
            raise StructuralError(f"level {level} of {self.X.name} has a single element; nothing to corrupt")
        target = self.eta[level][0]
        rows = [list(row) for row in self.eps]
        rows[level][target] = (rows[level][target] + 1) % count
        return replace(self, eps=tuple(tuple(row) for row in rows), mutated=True)


def realizable_algebra_structure(
    A: SimplicialSet, Y: SimplicialSet, m: Optional[int] = None, budget: Optional[int] = None,
) -> AlgebraStructure:
    """eps = M_A(ev): the splitting every mapping space carries"""
    X = mapping_space(A, Y, config.LEVEL_CAP if m is None else m, budget)
    TX, eta = truncation_unit(X, budget)
    _, ev = evaluation_counit(X)
    eps = postcompose(TX, ev, X)
    logger.info(f"algebra structure built: A={A.name}, Y={Y.name}, T_A X levels={TX.counts()}")
    return AlgebraStructure(X, TX, eta, eps)


def check_algebra(structure: AlgebraStructure, budget: Optional[int] = None) -> List[str]:
    """Unit law and associativity square, element by element"""
    X, TX, eta, eps = structure.X, structure.TX, structure.eta, structure.eps
    problems = []
    for n, row in enumerate(compose_levels(eps, eta)):
        for e, image in enumerate(row):
            if image != e:
                problems.append(f"unit law: level {n} element {e} goes to {image}")
    not_simplicial = check_level_map(TX, X, eps)
    if not_simplicial:
        problems.extend(f"associativity square: eps {p}" for p in not_simplicial)
        return problems
    TTX, mu = monad_multiplication(TX, budget)
    eps_bar = realize_level_map(TX, X, eps)
    outer = smash(X.A, TX.realize()).functor(smash(X.A, X.realize()), identity(X.A), eps_bar)
    T_eps = postcompose(TTX, outer, TX)
    one = compose_levels(eps, T_eps)
    two = compose_levels(eps, mu)
    for n, (row_one, row_two) in enumerate(zip(one, two)):
        for e, (a, b) in enumerate(zip(row_one, row_two)):
            if a != b:
                problems.append(f"associativity square: level {n} element {e} gives {a} and {b}")
    return problems
