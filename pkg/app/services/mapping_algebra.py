"""
Discrete mapping algebras: a value X<A> plus the rule that evaluates it on any
finite wedge of suspensions of A (wedges go to products, suspensions to loops).
"""
from __future__ import annotations

import logging
import re
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from app import config
from app.errors import BudgetError, CapError, ParseError
from app.services.constructions import ColimitPresentation, half_smash, suspension, wedge
from app.services.mapping_space import (
    LevelComparison,
    MappingSpaceTruncation,
    Truncation,
    check_level_map,
    homotopy_classes,
    iterated_sigma_omega,
    level0_index,
    level0_map,
    loop_space,
    mapping_space,
    point_truncation,
    postcompose,
    product_truncation,
)
from app.services.simplicial import SimplicialMap, SimplicialSet, compose, identity, standard_simplex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FormalObject:
    """A finite wedge of suspensions of A, stored as sorted (degree, count) pairs"""

    terms: Tuple[Tuple[int, int], ...] = ((0, 1),)

    @classmethod
    def of(cls, degrees) -> "FormalObject":
        counts = Counter(degrees)
        return cls(tuple(sorted(counts.items())))

    @property
    def degrees(self) -> List[int]:
        return [d for d, count in self.terms for _ in range(count)]

    @property
    def max_degree(self) -> int:
        return max((d for d, _ in self.terms), default=0)

    def suspend(self, i: int) -> "FormalObject":
        return FormalObject.of(d + i for d in self.degrees)

    def __str__(self) -> str:
        parts = ["A" if d == 0 else f"susp(A,{d})" for d in self.degrees]
        if len(parts) == 1:
            return parts[0]
        return "wedge(" + ",".join(parts) + ")"


_REALIZED: Dict[Tuple[int, FormalObject], Tuple[SimplicialSet, Optional[ColimitPresentation]]] = {}


def realize_formal(B: FormalObject, A: SimplicialSet) -> Tuple[SimplicialSet, Optional[ColimitPresentation]]:
    """The simplicial set B names, plus its wedge presentation when B has several summands"""
    key = (id(A), B)
    if key not in _REALIZED:
        degrees = B.degrees
        if len(degrees) == 1:
            _REALIZED[key] = (suspension(A, degrees[0]), None)
        else:
            pres = wedge([suspension(A, d) for d in degrees], name=str(B).replace("A", A.name or "A"))
            _REALIZED[key] = (pres.result, pres)
    return _REALIZED[key]


_TOKEN = re.compile(r"\s*(wedge|susp|A|\d+|[(),])")


def parse_formal_object(text: str) -> FormalObject:
    """Parse ``A``, ``susp(<obj>,i)`` and ``wedge(<obj>,...)``"""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"unexpected input at offset {pos} in {text!r}")
        tokens.append(match.group(1))
        pos = match.end()
    tokens.append(None)
    cursor = 0

    def expect(tok):
        nonlocal cursor
        if tokens[cursor] != tok:
            raise ParseError(f"expected {tok!r} but found {tokens[cursor]!r} in {text!r}")
        cursor += 1

    def obj() -> List[int]:
        nonlocal cursor
        tok = tokens[cursor]
        cursor += 1
        if tok == "A":
            return [0]
        if tok == "susp":
            expect("(")
            inner = obj()
            expect(",")
            degree = tokens[cursor]
            if degree is None or not degree.isdigit():
                raise ParseError(f"suspension degree must be a natural number in {text!r}")
            cursor += 1
            expect(")")
            return [d + int(degree) for d in inner]
        if tok == "wedge":
            expect("(")
            degrees: List[int] = []
            if tokens[cursor] == ")":
                cursor += 1
                return degrees
            degrees.extend(obj())
            while tokens[cursor] == ",":
                cursor += 1
                degrees.extend(obj())
            expect(")")
            return degrees
        raise ParseError(f"unexpected token {tok!r} in {text!r}")

    degrees = obj()
    if tokens[cursor] is not None:
        raise ParseError(f"trailing input in {text!r}")
    return FormalObject.of(degrees)


# ---------- algebras ----------


@dataclass(frozen=True, eq=False)
class DiscreteMappingAlgebra:
    base: Truncation
    name: str = "X"

    def value(self, B: FormalObject, m: int) -> Truncation:
        factors = []
        for degree in B.degrees:
            need = m + degree
            if self.base.level_cap < need:
                raise CapError(
                    f"{self.name}<{B}> at level {m} needs base level {need}, have {self.base.level_cap}",
                    dim=need, cap=self.base.level_cap,
                )
            T = self.base.restrict(need) if self.base.level_cap > need else self.base
            for _ in range(degree):
                T = loop_space(T)
            factors.append(T)
        if not factors:
            return point_truncation(m)
        return product_truncation(factors, m)


class RealizableAlgebra:
    """M_A Y: values are mapping spaces map(B, Y), computed on demand"""

    def __init__(self, A: SimplicialSet, Y: SimplicialSet, budget: Optional[int] = None):
        self.A = A
        self.Y = Y
        self.budget = budget

    def base(self, level: int) -> MappingSpaceTruncation:
        return mapping_space(self.A, self.Y, level, self.budget)

    def discrete(self, level: int) -> DiscreteMappingAlgebra:
        return DiscreteMappingAlgebra(self.base(level), f"M_{self.A.name}({self.Y.name})")

    def value(self, B: FormalObject, m: int) -> MappingSpaceTruncation:
        realized, _ = realize_formal(B, self.A)
        return mapping_space(realized, self.Y, m, self.budget)


def evaluate(X: Union[DiscreteMappingAlgebra, RealizableAlgebra], B: FormalObject, m: Optional[int] = None) -> Truncation:
    """X<B> through level m, computed from X<A> alone"""
    m = config.LEVEL_CAP if m is None else m
    if isinstance(X, RealizableAlgebra):
        X = X.discrete(m + B.max_degree)
    T = X.value(B, m)
    logger.info(f"algebra evaluated: algebra={X.name}, B={B}, levels={T.counts()}")
    return T


@dataclass
class EvaluationComparison:
    B: str
    levels: List[LevelComparison] = field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return all(level.bijective for level in self.levels)


def compare_evaluation(X: RealizableAlgebra, B: FormalObject, m: Optional[int] = None) -> EvaluationComparison:
    """
    Compare evaluate(X, B) with map(realize B, Y) through the canonical
    comparison: restriction to each summand, then the iterated suspension/loop
    map on summands of positive degree.
    """
    m = config.LEVEL_CAP if m is None else m
    evaluated = evaluate(X, B, m)
    direct = X.value(B, m)
    report = EvaluationComparison(str(B))
    realized, pres = realize_formal(B, X.A)
    summands = [realized] if pres is None else list(pres.objects)
    legs = [identity(realized)] if pres is None else list(pres.legs)
    rows = {d: iterated_sigma_omega(X.A, X.Y, d, m, X.budget)[1] for d in set(B.degrees)}
    for n in range(m + 1):
        delta_n = standard_simplex(n)
        restrictions = [
            half_smash(Bk, delta_n).functor(half_smash(realized, delta_n), leg, identity(delta_n))
            for Bk, leg in zip(summands, legs)
        ]
        images = []
        for g in direct.maps[n]:
            label = []
            for degree, Bk, r in zip(B.degrees, summands, restrictions):
                part = mapping_space(Bk, X.Y, m, X.budget)
                idx = part.index_of(n, tuple(g.apply(r.assignment[c.id]) for c in r.source.cells))
                label.append(rows[degree][n][idx])
            images.append(evaluated.index_of(n, tuple(label)))
        report.levels.append(LevelComparison(
            level=n,
            left_count=len(direct.levels[n]),
            right_count=len(evaluated.levels[n]),
            injective=len(set(images)) == len(images),
            surjective=set(images) == set(range(len(evaluated.levels[n]))),
        ))
    return report


# ---------- free algebras ----------


@dataclass
class YonedaReport:
    B: str
    Y: str
    families: int
    elements: int
    injective: bool
    natural: bool
    violations: List[str] = field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return self.injective and self.natural and self.families == self.elements


def _natural_families(
    family: List[SimplicialSet], B: SimplicialSet, Y: SimplicialSet, budget: Optional[int],
) -> List[Tuple[Tuple[int, ...], ...]]:
    """
    Every choice of functions map(C, B)_0 -> map(C, Y)_0, one per C in the
    family, that commutes with precomposition by all maps between family
    members. Backtracking, with a value forced as soon as a naturality square
    has its other corner assigned.
    """
    budget = config.NODE_BUDGET if budget is None else budget
    into_B = [mapping_space(C, B, 0, budget) for C in family]
    into_Y = [mapping_space(C, Y, 0, budget) for C in family]
    home = next(c for c, C in enumerate(family) if C is B)
    ident = level0_index(into_B[home], identity(B))
    variables = [(home, ident)] + [
        (c, x) for c, T in enumerate(into_B) for x in range(len(T.levels[0])) if (c, x) != (home, ident)
    ]
    position = {v: k for k, v in enumerate(variables)}
    # (a, b, table): value[b] == table[value[a]]
    squares: List[Tuple[int, int, Tuple[int, ...]]] = []
    for c, C in enumerate(family):
        for c_prime, C_prime in enumerate(family):
            between = mapping_space(C_prime, C, 0, budget)
            for u in range(len(between.levels[0])):
                u_map = level0_map(between, u)
                table = tuple(
                    level0_index(into_Y[c_prime], compose(level0_map(into_Y[c], y), u_map))
                    for y in range(len(into_Y[c].levels[0]))
                )
                for x in range(len(into_B[c].levels[0])):
                    xu = level0_index(into_B[c_prime], compose(level0_map(into_B[c], x), u_map))
                    squares.append((position[(c, x)], position[(c_prime, xu)], table))
    incoming: Dict[int, List[Tuple[int, Tuple[int, ...]]]] = {}
    outgoing: Dict[int, List[Tuple[int, Tuple[int, ...]]]] = {}
    for a, b, table in squares:
        incoming.setdefault(b, []).append((a, table))
        outgoing.setdefault(a, []).append((b, table))

    values: Dict[int, int] = {}
    found: List[Tuple[Tuple[int, ...], ...]] = []
    nodes = 0

    def consistent(k: int, value: int) -> bool:
        if any(a in values and table[values[a]] != value for a, table in incoming.get(k, ())):
            return False
        return all(b not in values or values[b] == table[value] for b, table in outgoing.get(k, ()))

    def search(k: int) -> None:
        nonlocal nodes
        if k == len(variables):
            found.append(tuple(
                tuple(values[position[(c, x)]] for x in range(len(T.levels[0]))) for c, T in enumerate(into_B)
            ))
            return
        c, _ = variables[k]
        forced = {table[values[a]] for a, table in incoming.get(k, ()) if a in values}
        pool = sorted(forced) if forced else range(len(into_Y[c].levels[0]))
        for value in pool:
            nodes += 1
            if nodes > budget:
                raise BudgetError(
                    f"natural family search exceeded node budget {budget} after {len(found)} families",
                    partial_count=len(found), nodes=nodes,
                )
            if consistent(k, value):
                values[k] = value
                search(k + 1)
                del values[k]

    search(0)
    return found


def yoneda_check(
    B: FormalObject, Y: SimplicialSet, A: SimplicialSet, budget: Optional[int] = None,
) -> YonedaReport:
    """
    Level-0 Yoneda correspondence between algebra maps M_A(B) -> M_A(Y) and
    elements of map(B, Y)_0. One side enumerates every natural family on the
    test objects A, susp A and B; the other sends each f to f_*. A family goes
    back to its value on Id_B.
    """
    realized, _ = realize_formal(B, A)
    family: List[SimplicialSet] = []
    for C in (A, suspension(A, 1), realized):
        if all(C is not D for D in family):
            family.append(C)
    own = mapping_space(realized, Y, 1, budget)
    violations: List[str] = []
    families = _natural_families(family, realized, Y, budget)
    pushed = []
    for idx in range(len(own.levels[0])):
        f = level0_map(own, idx)
        signature = []
        for C in family:
            into_B = mapping_space(C, realized, 1, budget)
            into_Y = mapping_space(C, Y, 1, budget)
            lm = postcompose(into_B, f, into_Y)
            for problem in check_level_map(into_B, into_Y, lm):
                violations.append(f"f={idx} on {C.name}: {problem}")
            signature.append(lm[0])
        pushed.append(tuple(signature))
    ident = level0_index(mapping_space(realized, realized, 0, budget), identity(realized))
    at_identity = next(c for c, C in enumerate(family) if C is realized)
    for idx, signature in enumerate(pushed):
        if signature not in families:
            violations.append(f"f={idx}: f_* is not among the natural families")
        if signature[at_identity][ident] != idx:
            violations.append(f"f={idx}: f_* evaluated at the identity gives {signature[at_identity][ident]}")
    for k, candidate in enumerate(families):
        if candidate not in pushed:
            violations.append(f"natural family {k} is not f_* for its value {candidate[at_identity][ident]} at the identity")
    report = YonedaReport(
        B=str(B), Y=Y.name,
        families=len(families), elements=len(own.levels[0]),
        injective=len(set(pushed)) == len(pushed), natural=not violations, violations=violations,
    )
    logger.info(f"yoneda check: B={B}, Y={Y.name}, families={report.families}, elements={report.elements}")
    return report


# ---------- A-equivalences ----------


@dataclass
class DegreeVerdict:
    degree: int
    source_classes: int
    target_classes: int
    bijective: bool


@dataclass
class AEquivalenceVerdict:
    positive: bool
    label: str
    degrees: List[DegreeVerdict] = field(default_factory=list)


def a_equivalence_check(
    f: SimplicialMap, A: SimplicialSet, i_max: Optional[int] = None, m: Optional[int] = None,
    budget: Optional[int] = None,
) -> AEquivalenceVerdict:
    """Bijection on [susp^i A, -] classes for i <= i_max, read off level-m truncations"""
    i_max = config.SIGMA_MAX if i_max is None else i_max
    m = max(1, config.LEVEL_CAP if m is None else m)
    verdict = AEquivalenceVerdict(positive=True, label=f"up to ({i_max}, {m})")
    for i in range(i_max + 1):
        B = suspension(A, i)
        src = homotopy_classes(B, f.source, budget, mapping_space(B, f.source, m, budget))
        tgt = homotopy_classes(B, f.target, budget, mapping_space(B, f.target, m, budget))
        induced = postcompose(src.space, f, tgt.space)[0]
        hits: Dict[int, set] = {}
        for e, image in enumerate(induced):
            hits.setdefault(src.class_of[e], set()).add(tgt.class_of[image])
        well_defined = all(len(targets) == 1 for targets in hits.values())
        bijective = (
            well_defined
            and len(set().union(*hits.values())) == len(src.classes)
            and len(src.classes) == len(tgt.classes)
        )
        verdict.degrees.append(DegreeVerdict(i, len(src.classes), len(tgt.classes), bijective))
        verdict.positive = verdict.positive and bijective
    logger.info(f"A-equivalence check: A={A.name}, map={f.source.name}->{f.target.name}, positive={verdict.positive}")
    return verdict
