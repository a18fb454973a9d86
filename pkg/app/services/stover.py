"""
Elementary Stover objects and the Stover comonad L_A.

L_A Y is a single colimit: one copy of B = susp^i A per vertex f of map(B, Y)
and one cylinder B |x Delta[1] per edge F, the cylinder's vertex-1 end glued to
the copy of d0 F and its vertex-0 end to the copy of d1 F. The colimit only
reads the (K1 => K0) part of each mapping space; the counit reads the maps.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from app import config
from app.errors import CogroupRequired, StructuralError
from app.services.constructions import (
    ColimitPresentation,
    colimit,
    cone,
    end_inclusion,
    half_smash,
    suspension,
    suspension_quotient,
)
from app.services.mapping_space import (
    HomotopyClassTable,
    MappingSpaceTruncation,
    TruncatedObject,
    components_of,
    homotopy_classes,
    level0_index,
    level0_map,
    mapping_space,
    postcompose,
    rho,
)
from app.services.simplicial import (
    SimplicialMap,
    SimplicialSet,
    compose,
    constant_map,
    identity,
    maps_equal,
    pi0,
    standard_simplex,
)

logger = logging.getLogger(__name__)

COPY = "copy"
CYLINDER = "cylinder"
CONE = "cone"
SUSPENSION = "suspension"


@dataclass(frozen=True)
class Piece:
    degree: int
    phi: int
    kind: str
    index: int
    position: int

    @property
    def label(self) -> str:
        prefix = {COPY: "f", CYLINDER: "F", CONE: "C", SUSPENSION: "S"}[self.kind]
        return f"{self.degree}.{self.phi}.{prefix}{self.index}"


@dataclass(frozen=True)
class Block:
    """The rho-level data of one summand: which vertices and edges to use"""

    degree: int
    B: SimplicialSet
    phi: int
    copies: Tuple[int, ...]
    cylinders: Tuple[Tuple[int, int, int], ...]


def _blocks(degree: int, B: SimplicialSet, data: TruncatedObject, phis: Optional[Sequence[int]] = None) -> List[Block]:
    classes, class_of, _ = components_of(data)
    blocks = []
    for phi, members in enumerate(classes):
        if phis is not None and phi not in phis:
            continue
        cylinders = tuple(
            (F, data.d0[F], data.d1[F]) for F in range(len(data.k1)) if class_of[data.d0[F]] == phi
        )
        blocks.append(Block(degree, B, phi, members, cylinders))
    return blocks


def _assemble(blocks: Sequence[Block], name: str) -> Tuple[ColimitPresentation, List[Piece]]:
    objects: List[SimplicialSet] = []
    labels: List[str] = []
    pieces: List[Piece] = []
    relations = []
    for block in blocks:
        where = {}
        for f in block.copies:
            where[f] = len(objects)
            piece = Piece(block.degree, block.phi, COPY, f, len(objects))
            pieces.append(piece)
            objects.append(block.B)
            labels.append(piece.label)
        cyl = half_smash(block.B, standard_simplex(1))
        ident = identity(block.B)
        for F, d0, d1 in block.cylinders:
            k = len(objects)
            piece = Piece(block.degree, block.phi, CYLINDER, F, k)
            pieces.append(piece)
            objects.append(cyl.result)
            labels.append(piece.label)
            relations.append((end_inclusion(cyl, 1), k, ident, where[d0]))
            relations.append((end_inclusion(cyl, 0), k, ident, where[d1]))
    return colimit(objects, relations, name, labels), pieces


@dataclass(frozen=True, eq=False)
class ElementaryStoverObject:
    B: SimplicialSet
    Y: SimplicialSet
    phi: int
    S: Tuple[int, ...]
    T: Dict[Tuple[int, int], Tuple[int, ...]]
    degree: int = 0

    @cached_property
    def _built(self) -> Tuple[ColimitPresentation, List[Piece]]:
        cylinders = tuple(
            (F, f, g) for (f, g), witnesses in sorted(self.T.items()) for F in witnesses
        )
        block = Block(self.degree, self.B, self.phi, self.S, tuple(sorted(cylinders)))
        return _assemble([block], f"E[{self.B.name},{self.Y.name},{self.phi}]")

    @property
    def built(self) -> ColimitPresentation:
        return self._built[0]

    @property
    def pieces(self) -> List[Piece]:
        return self._built[1]


def elementary_stover(B: SimplicialSet, Y: SimplicialSet, phi: int, table: Optional[HomotopyClassTable] = None, degree: int = 0) -> ElementaryStoverObject:
    table = table or homotopy_classes(B, Y)
    if not 0 <= phi < len(table.classes):
        raise StructuralError(f"no homotopy class {phi} in [{B.name}, {Y.name}]")
    members = table.classes[phi]
    witnesses = {(f, g): Fs for (f, g), Fs in table.witnesses.items() if table.class_of[f] == phi}
    return ElementaryStoverObject(B, Y, phi, members, witnesses, degree)


@dataclass(eq=False)
class StoverObject:
    A: SimplicialSet
    Y: SimplicialSet
    i_max: int
    variant: str
    spaces: Dict[int, MappingSpaceTruncation]
    tables: Dict[int, HomotopyClassTable]
    presentation: ColimitPresentation
    pieces: List[Piece]
    counit: SimplicialMap
    budget: Optional[int] = None

    @property
    def result(self) -> SimplicialSet:
        return self.presentation.result

    @cached_property
    def _by_key(self) -> Dict[Tuple[int, str, int], Piece]:
        return {(p.degree, p.kind, p.index): p for p in self.pieces}

    def piece(self, degree: int, kind: str, index: int) -> Piece:
        try:
            return self._by_key[(degree, kind, index)]
        except KeyError:
            raise StructuralError(f"L_A {self.Y.name} has no {kind} piece {index} in degree {degree}") from None

    def leg(self, piece: Piece) -> SimplicialMap:
        return self.presentation.legs[piece.position]

    def piece_map(self, piece: Piece) -> SimplicialMap:
        """What the counit does on a piece"""
        T = self.spaces[piece.degree]
        if piece.kind == COPY:
            return level0_map(T, piece.index)
        if piece.kind == CYLINDER:
            return T.maps[1][piece.index]
        obj = self.presentation.objects[piece.position]
        F = T.maps[1][piece.index]
        src = half_smash(T.A, standard_simplex(1))
        quotient = cone(T.A) if piece.kind == CONE else suspension_quotient(T.A, 1)
        if obj is not quotient.result:
            raise StructuralError("cone piece does not match its object")
        return quotient.induced(T.Y, lambda a, b: F.apply(src.pair(a, b)))


_COMONAD: Dict[Tuple, StoverObject] = {}


def _spaces(A: SimplicialSet, Y: SimplicialSet, i_max: int, budget: Optional[int]):
    spaces, tables = {}, {}
    for i in range(i_max + 1):
        B = suspension(A, i)
        spaces[i] = mapping_space(B, Y, 1, budget)
        tables[i] = homotopy_classes(B, Y, budget, spaces[i])
    return spaces, tables


def stover_comonad(
    A: SimplicialSet, Y: SimplicialSet, i_max: Optional[int] = None, budget: Optional[int] = None,
) -> StoverObject:
    """L_A Y with its tautological counit"""
    i_max = config.SIGMA_MAX if i_max is None else i_max
    key = (id(A), id(Y), i_max, budget, "general")
    cached = _COMONAD.get(key)
    if cached is not None and cached.A is A and cached.Y is Y:
        return cached
    spaces, tables = _spaces(A, Y, i_max, budget)
    blocks: List[Block] = []
    for i in range(i_max + 1):
        B = spaces[i].A
        blocks.extend(_blocks(i, B, rho(spaces[i])))
    presentation, pieces = _assemble(blocks, f"L[{A.name}]({Y.name})")
    L = StoverObject(A, Y, i_max, "general", spaces, tables, presentation, pieces, None, budget)
    L.counit = presentation.induced([L.piece_map(p) for p in pieces], Y)
    logger.info(
        f"stover object built: A={A.name}, Y={Y.name}, i_max={i_max}, pieces={len(pieces)}, "
        f"cells={L.result.cell_counts()}"
    )
    _COMONAD[key] = L
    return L


def rebuild_from_rho(L: StoverObject) -> bool:
    """Re-assemble L from detached (K1 => K0) tables and compare presentations"""
    blocks: List[Block] = []
    for i in range(L.i_max + 1):
        data = rho(L.spaces[i])
        detached = TruncatedObject(tuple(data.k0), tuple(data.k1), tuple(data.d0), tuple(data.d1))
        blocks.extend(_blocks(i, L.spaces[i].A, detached))
    again, pieces = _assemble(blocks, L.result.name)
    return pieces == L.pieces and [
        (c.id, c.dim, c.faces) for c in again.result.cells
    ] == [(c.id, c.dim, c.faces) for c in L.result.cells]


def comultiplication(L: StoverObject) -> Tuple[SimplicialMap, StoverObject]:
    """
    L_A Y -> L_A L_A Y: the copy indexed by f goes identically onto the copy
    indexed by its own inclusion into L_A Y; cylinders likewise.
    """
    if L.variant != "general":
        raise StructuralError("comultiplication is defined for the general construction")
    LL = stover_comonad(L.A, L.result, L.i_max, L.budget)
    maps = []
    for p in L.pieces:
        T = LL.spaces[p.degree]
        leg = L.leg(p)
        if p.kind == COPY:
            target = LL.piece(p.degree, COPY, level0_index(T, leg))
        else:
            target = LL.piece(p.degree, CYLINDER, T.index_of(1, leg.key))
        maps.append(LL.leg(target))
    return L.presentation.induced(maps, LL.result), LL


def stover_map(g: SimplicialMap, L: StoverObject, L2: Optional[StoverObject] = None) -> Tuple[SimplicialMap, StoverObject]:
    """L_A g: L_A Y -> L_A Y' for g: Y -> Y'"""
    if g.source is not L.Y:
        raise StructuralError("map source is not the base of the Stover object")
    L2 = L2 or stover_comonad(L.A, g.target, L.i_max, L.budget)
    maps = []
    for p in L.pieces:
        level = postcompose(L.spaces[p.degree], g, L2.spaces[p.degree])
        index = level[0][p.index] if p.kind == COPY else level[1][p.index]
        maps.append(L2.leg(L2.piece(p.degree, p.kind, index)))
    return L.presentation.induced(maps, L2.result), L2


# ---------- law checks ----------


def counit_identities(L: StoverObject) -> List[str]:
    """Both counit laws of the comonad, cell by cell"""
    mu, LL = comultiplication(L)
    problems = []
    ident = identity(L.result)
    left = compose(LL.counit, mu)
    right = compose(stover_map(L.counit, LL, L)[0], mu)
    for name, candidate in (("counit of L_A L_A Y after comultiplication", left), ("L_A of counit after comultiplication", right)):
        for c in L.result.cells:
            if candidate.assignment[c.id] != ident.assignment[c.id]:
                problems.append(f"{name}: cell {c.id} goes to {candidate.assignment[c.id]}")
    return problems


def coassociativity(L: StoverObject) -> List[str]:
    mu, LL = comultiplication(L)
    mu_LL, LLL = comultiplication(LL)
    L_mu, LLL2 = stover_map(mu, LL, LLL)
    if LLL2 is not LLL:
        raise StructuralError("iterated Stover objects were not shared")
    one = compose(L_mu, mu)
    two = compose(mu_LL, mu)
    return [
        f"cell {c.id}: {one.assignment[c.id]} != {two.assignment[c.id]}"
        for c in L.result.cells if one.assignment[c.id] != two.assignment[c.id]
    ]


def naturality(g: SimplicialMap, L: StoverObject) -> List[str]:
    """counit' after L_A g equals g after counit"""
    Lg, L2 = stover_map(g, L)
    one = compose(L2.counit, Lg)
    two = compose(g, L.counit)
    return [
        f"cell {c.id}: {one.assignment[c.id]} != {two.assignment[c.id]}"
        for c in L.result.cells if one.assignment[c.id] != two.assignment[c.id]
    ]


@dataclass
class CounitReport:
    copies_ok: bool
    cylinders_ok: bool
    surjective: Dict[int, bool] = field(default_factory=dict)
    lifts: Dict[str, int] = field(default_factory=dict)
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.copies_ok and self.cylinders_ok and all(self.surjective.values())


def check_counit_resolution(
    A: SimplicialSet, Y: SimplicialSet, i_max: Optional[int] = None, budget: Optional[int] = None,
) -> CounitReport:
    L = stover_comonad(A, Y, i_max, budget)
    report = CounitReport(copies_ok=True, cylinders_ok=True)
    for p in L.pieces:
        if not maps_equal(compose(L.counit, L.leg(p)), L.piece_map(p)):
            report.violations.append(f"counit on {p.label} differs from its index")
            if p.kind == COPY:
                report.copies_ok = False
            else:
                report.cylinders_ok = False
    for i in range(L.i_max + 1):
        B = L.spaces[i].A
        lifted = mapping_space(B, L.result, 1, budget)
        lifted_classes = homotopy_classes(B, L.result, budget, lifted)
        pushed = postcompose(lifted, L.counit, L.spaces[i])[0]
        table = L.tables[i]
        hit = set()
        for phi, members in enumerate(table.classes):
            f = members[0]
            lift = level0_index(lifted, L.leg(L.piece(i, COPY, f)))
            report.lifts[f"{i}:{phi}"] = lift
            if table.class_of[pushed[lift]] == phi:
                hit.add(phi)
        report.surjective[i] = len(hit) == len(table.classes)
        logger.debug(
            f"counit classes: degree={i}, source_classes={len(lifted_classes.classes)}, "
            f"target_classes={len(table.classes)}, hit={len(hit)}"
        )
    return report


# ---------- cogroup variant ----------


def stover_cogroup_variant(
    A: SimplicialSet, Y: SimplicialSet, i_max: Optional[int] = None, cogroup: bool = False,
    budget: Optional[int] = None,
) -> StoverObject:
    """
    Copies for nonzero vertices, one cone per null-homotopy. The copy of the
    zero map is the basepoint, so its cones close up into suspensions.
    """
    if not cogroup:
        raise CogroupRequired(f"{A.name} was not flagged as a homotopy cogroup")
    if len(pi0(A)) != 1:
        raise CogroupRequired(f"{A.name} is not connected, so it cannot be a homotopy cogroup")
    i_max = config.SIGMA_MAX if i_max is None else i_max
    spaces, tables = _spaces(A, Y, i_max, budget)
    objects: List[SimplicialSet] = []
    labels: List[str] = []
    pieces: List[Piece] = []
    relations = []
    where: Dict[int, Dict[int, int]] = {}
    closed: List[Tuple[int, int, SimplicialMap]] = []
    for i in range(i_max + 1):
        T, table = spaces[i], tables[i]
        B = T.A
        zero = T.constant(0)
        where[i] = {}
        for f in range(len(T.levels[0])):
            if f == zero:
                continue
            where[i][f] = len(objects)
            piece = Piece(i, table.class_of[f], COPY, f, len(objects))
            pieces.append(piece)
            objects.append(B)
            labels.append(piece.label)
        ident = identity(B)
        src = half_smash(B, standard_simplex(1))
        for F in range(len(T.levels[1])):
            d0, d1 = T.faces[1][F]
            if d1 != zero:
                continue
            k = len(objects)
            kind = SUSPENSION if d0 == zero else CONE
            quotient = suspension_quotient(B, 1) if kind == SUSPENSION else cone(B)
            piece = Piece(i, table.class_of[d0], kind, F, k)
            pieces.append(piece)
            objects.append(quotient.result)
            labels.append(piece.label)
            if kind == CONE:
                relations.append((end_inclusion(quotient, 1), k, ident, where[i][d0]))
            else:
                F_map = T.maps[1][F]
                closed.append((i, k, quotient.induced(Y, lambda a, b, F_map=F_map: F_map.apply(src.pair(a, b)))))
    # a closed-up cone is susp^(i+1) A; it goes onto the degree i+1 copy of the
    # same map, or onto the basepoint when that map is constant
    for i, k, h in closed:
        S = objects[k]
        if maps_equal(h, constant_map(S, Y)):
            relations.append((identity(S), k, constant_map(S, S), k))
        elif i < i_max:
            relations.append((identity(S), k, identity(S), where[i + 1][level0_index(spaces[i + 1], h)]))
    presentation = colimit(objects, relations, f"Lc[{A.name}]({Y.name})", labels)
    L = StoverObject(A, Y, i_max, "cogroup", spaces, tables, presentation, pieces, None, budget)
    L.counit = presentation.induced([L.piece_map(p) for p in pieces], Y)
    logger.info(f"cogroup stover object built: A={A.name}, Y={Y.name}, pieces={len(pieces)}")
    return L
