"""
Pointed mapping spaces map(A, Y), computed level by level.

Level n of map(A, Y) is the set of pointed maps A |x Delta[n] -> Y, found by
exhaustive backtracking. Faces and degeneracies act by precomposition.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product as cartesian
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from app import config
from app.errors import BudgetError, CapError, StructuralError
from app.services.constructions import Product, ProductQuotient, half_smash, suspension, suspension_quotient
from app.services.simplicial import (
    Cell,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    _UnionFind,
    build,
    codegeneracy,
    coface,
    collapsed,
    compose,
    default_cap,
    delta_simplex,
    delta_vertices,
    identity,
    normalize_word,
    standard_simplex,
    vertices_of,
)

logger = logging.getLogger(__name__)

LevelMap = Tuple[Tuple[int, ...], ...]


# ---------- enumeration ----------


def _face_index(Y: SimplicialSet, n: int) -> Dict[Tuple[Simplex, ...], List[Simplex]]:
    store = Y._caches.setdefault("face_index", {})
    if n not in store:
        index: Dict[Tuple[Simplex, ...], List[Simplex]] = {}
        for s in Y.simplices(n):
            key = tuple(Y.face(s, i) for i in range(n + 1))
            index.setdefault(key, []).append(s)
        store[n] = index
    return store[n]


def enumerate_pointed_maps(
    A: SimplicialSet,
    Y: SimplicialSet,
    budget: Optional[int] = None,
    fixed: Optional[Mapping[str, Simplex]] = None,
) -> List[SimplicialMap]:
    """
    Every pointed map A -> Y, in a deterministic order.

    Cells of A are assigned in increasing dimension; an n-cell may only go to an
    n-simplex of Y whose faces are the images of its faces, so candidates come
    straight from a face-indexed table. ``fixed`` pins chosen cells.
    """
    budget = config.NODE_BUDGET if budget is None else budget
    order = sorted(A.cells, key=lambda c: (c.dim, A.order[c.id]))
    vertices = list(Y.simplices(0))
    assignment: Dict[str, Simplex] = {}
    results: List[SimplicialMap] = []
    nodes = 0

    def image(s: Simplex) -> Simplex:
        img = assignment[s.cell]
        if not s.degens:
            return img
        return Simplex(normalize_word(s.degens + img.degens, Y.cell(img.cell).dim), img.cell)

    def candidates(c: Cell) -> Sequence[Simplex]:
        if c.id == A.basepoint:
            pool: Sequence[Simplex] = [Simplex((), Y.basepoint)]
        elif c.dim == 0:
            pool = vertices
        else:
            pool = _face_index(Y, c.dim).get(tuple(image(f) for f in c.faces), ())
        if fixed and c.id in fixed:
            pool = [fixed[c.id]] if fixed[c.id] in pool else []
        return pool

    def search(depth: int) -> None:
        nonlocal nodes
        if depth == len(order):
            results.append(SimplicialMap(A, Y, dict(assignment)))
            return
        c = order[depth]
        for s in candidates(c):
            nodes += 1
            if nodes > budget:
                raise BudgetError(
                    f"enumeration {A.name} -> {Y.name} exceeded node budget {budget} "
                    f"after {len(results)} maps",
                    partial_count=len(results), nodes=nodes,
                )
            assignment[c.id] = s
            search(depth + 1)
        assignment.pop(c.id, None)

    search(0)
    logger.debug(f"enumeration done: source={A.name}, target={Y.name}, maps={len(results)}, nodes={nodes}")
    return results


def delta_map(theta: Sequence[int], k: int, n: int) -> SimplicialMap:
    """Delta[k] -> Delta[n] induced by theta: [k] -> [n]"""
    src, tgt = standard_simplex(k), standard_simplex(n)
    return SimplicialMap(src, tgt, {
        c.id: delta_simplex(tuple(theta[v] for v in vertices_of(c.id))) for c in src.cells
    })


def _precompose(e: SimplicialMap, c: SimplicialMap) -> Tuple[Simplex, ...]:
    return tuple(e.apply(c.assignment[cell.id]) for cell in c.source.cells)


# ---------- truncated simplicial sets ----------


@dataclass(frozen=True, eq=False)
class Truncation:
    """Levels 0..m of a simplicial set with face and degeneracy tables"""

    levels: Tuple[Tuple[Any, ...], ...]
    faces: Tuple[Tuple[Tuple[int, ...], ...], ...]
    degeneracies: Tuple[Tuple[Tuple[int, ...], ...], ...]
    basepoint: int
    name: str = ""

    @property
    def level_cap(self) -> int:
        return len(self.levels) - 1

    def counts(self) -> List[int]:
        return [len(level) for level in self.levels]

    @cached_property
    def lookup(self) -> Tuple[Dict[Any, int], ...]:
        return tuple({label: k for k, label in enumerate(level)} for level in self.levels)

    def index_of(self, n: int, label: Any) -> int:
        try:
            return self.lookup[n][label]
        except KeyError:
            raise StructuralError(f"{self.name}: element not found at level {n}") from None

    def basepoint_at(self, n: int) -> int:
        e = self.basepoint
        for k in range(n):
            e = self.degeneracies[k][e][0]
        return e

    @cached_property
    def _normal(self) -> Dict[Tuple[int, int], Simplex]:
        return {}

    def normal_form(self, n: int, e: int) -> Simplex:
        """The element as a simplex of ``realize()``"""
        key = (n, e)
        if key not in self._normal:
            result = Simplex((), f"{n}:{e}")
            for j in range(n - 1, -1, -1):
                lower = self.faces[n][e][j]
                if self.degeneracies[n - 1][lower][j] == e:
                    inner = self.normal_form(n - 1, lower)
                    base_dim = n - 1 - len(inner.degens)
                    result = Simplex(normalize_word((j,) + inner.degens, base_dim), inner.cell)
                    break
            self._normal[key] = result
        return self._normal[key]

    @cached_property
    def realization(self) -> SimplicialSet:
        cells = []
        for n, level in enumerate(self.levels):
            for e in range(len(level)):
                s = self.normal_form(n, e)
                if not s.degens:
                    faces = tuple(self.normal_form(n - 1, f) for f in self.faces[n][e]) if n else ()
                    cells.append(Cell(s.cell, n, faces))
        m = self.level_cap
        return build(cells, f"0:{self.basepoint}", default_cap(m), f"|{self.name}|")

    def realize(self) -> SimplicialSet:
        """The finite simplicial set generated by levels 0..m"""
        return self.realization

    def restrict(self, m: int) -> "Truncation":
        if m > self.level_cap:
            raise CapError(f"{self.name}: level {m} requested above level cap {self.level_cap}", dim=m, cap=self.level_cap)
        degens = self.degeneracies[:m] + (tuple(() for _ in self.levels[m]),)
        return Truncation(self.levels[: m + 1], self.faces[: m + 1], degens, self.basepoint, self.name)


def _tables(
    levels: Sequence[Sequence[Any]], face_of, degeneracy_of, index_of,
) -> Tuple[Tuple, Tuple]:
    m = len(levels) - 1
    faces = [tuple(() for _ in levels[0])]
    for n in range(1, m + 1):
        faces.append(tuple(
            tuple(index_of(n - 1, face_of(n, e, i)) for i in range(n + 1)) for e in range(len(levels[n]))
        ))
    degens = []
    for n in range(m + 1):
        if n == m:
            degens.append(tuple(() for _ in levels[n]))
        else:
            degens.append(tuple(
                tuple(index_of(n + 1, degeneracy_of(n, e, j)) for j in range(n + 1)) for e in range(len(levels[n]))
            ))
    return tuple(faces), tuple(degens)


def check_truncation(T: Truncation) -> List[str]:
    """Simplicial identities of the face/degeneracy tables"""
    problems = []
    m = T.level_cap
    for n in range(2, m + 1):
        for e in range(len(T.levels[n])):
            for j in range(n + 1):
                for i in range(j):
                    lhs = T.faces[n - 1][T.faces[n][e][j]][i]
                    rhs = T.faces[n - 1][T.faces[n][e][i]][j - 1]
                    if lhs != rhs:
                        problems.append(f"level {n} element {e}: d_{i}d_{j} != d_{j - 1}d_{i}")
    for n in range(m):
        for e in range(len(T.levels[n])):
            for j in range(n + 1):
                up = T.degeneracies[n][e][j]
                for i in range(n + 2):
                    got = T.faces[n + 1][up][i]
                    if i in (j, j + 1):
                        if got != e:
                            problems.append(f"level {n} element {e}: d_{i}s_{j} != id")
                    elif n >= 1:
                        if i < j:
                            want = T.degeneracies[n - 1][T.faces[n][e][i]][j - 1]
                        else:
                            want = T.degeneracies[n - 1][T.faces[n][e][i - 1]][j]
                        if got != want:
                            problems.append(f"level {n} element {e}: d_{i}s_{j} identity fails")
    return problems


# ---------- mapping spaces ----------


@dataclass(frozen=True, eq=False)
class MappingSpaceTruncation(Truncation):
    A: Optional[SimplicialSet] = None
    Y: Optional[SimplicialSet] = None
    maps: Tuple[Tuple[SimplicialMap, ...], ...] = ()
    sources: Tuple[ProductQuotient, ...] = ()

    def index_of_map(self, n: int, f: SimplicialMap) -> int:
        return self.index_of(n, f.key)

    def evaluate(self, k: int, e: int, a: Simplex, theta: Sequence[int]) -> Simplex:
        """Value of the level-k element e on (a, theta) with theta: [dim a] -> [k]"""
        return self.maps[k][e].apply(self.sources[k].pair(a, delta_simplex(theta)))

    def constant(self, n: int) -> int:
        return self.basepoint_at(n)


_MAPPING_CACHE: Dict[Tuple[int, int, int, int], MappingSpaceTruncation] = {}


def mapping_space(
    A: SimplicialSet, Y: SimplicialSet, m: Optional[int] = None, budget: Optional[int] = None,
) -> MappingSpaceTruncation:
    m = config.LEVEL_CAP if m is None else m
    cache_key = (id(A), id(Y), m, budget if budget is not None else config.NODE_BUDGET)
    if cache_key in _MAPPING_CACHE:
        cached = _MAPPING_CACHE[cache_key]
        if cached.A is A and cached.Y is Y:
            return cached
    sources = tuple(half_smash(A, standard_simplex(n)) for n in range(m + 1))
    maps = tuple(tuple(enumerate_pointed_maps(src.result, Y, budget)) for src in sources)
    levels = tuple(tuple(f.key for f in level) for level in maps)
    lookup = tuple({label: k for k, label in enumerate(level)} for level in levels)
    ida = identity(A)

    def structure(n_from: int, n_to: int, theta) -> SimplicialMap:
        return sources[n_from].functor(sources[n_to], ida, delta_map(theta, n_from, n_to))

    cofaces = {(n, i): structure(n - 1, n, coface(i, n)) for n in range(1, m + 1) for i in range(n + 1)}
    codegens = {(n, j): structure(n + 1, n, codegeneracy(j, n)) for n in range(m) for j in range(n + 1)}

    def index_of(n, label):
        try:
            return lookup[n][label]
        except KeyError:
            raise StructuralError(f"map({A.name},{Y.name}): precomposite missing at level {n}") from None

    faces, degens = _tables(
        levels,
        lambda n, e, i: _precompose(maps[n][e], cofaces[(n, i)]),
        lambda n, e, j: _precompose(maps[n][e], codegens[(n, j)]),
        index_of,
    )
    constant = tuple(Y.basepoint_simplex(c.dim) for c in sources[0].result.cells)
    T = MappingSpaceTruncation(
        levels, faces, degens, lookup[0][constant], f"map({A.name},{Y.name})",
        A=A, Y=Y, maps=maps, sources=sources,
    )
    logger.info(f"mapping space built: A={A.name}, Y={Y.name}, levels={T.counts()}")
    _MAPPING_CACHE[cache_key] = T
    return T


def level0_map(T: MappingSpaceTruncation, e: int) -> SimplicialMap:
    """A vertex of map(A, Y) as a map A -> Y"""
    src, f = T.sources[0], T.maps[0][e]
    return SimplicialMap(T.A, T.Y, {
        c.id: f.apply(src.pair(Simplex((), c.id), collapsed(c.dim, "0"))) for c in T.A.cells
    })


def level0_index(T: MappingSpaceTruncation, g: SimplicialMap) -> int:
    src = T.sources[0]
    return T.index_of(0, tuple(
        T.Y.basepoint_simplex(0) if c.id == src.result.basepoint else g.apply(src.components(c.id)[0])
        for c in src.result.cells
    ))


def postcompose(T: MappingSpaceTruncation, g: SimplicialMap, target: MappingSpaceTruncation) -> LevelMap:
    """map(A, g): map(A, Y) -> map(A, Y') level by level"""
    if g.source is not T.Y or g.target is not target.Y or T.A is not target.A:
        raise StructuralError("postcomposition needs matching sources and targets")
    m = min(T.level_cap, target.level_cap)
    return tuple(
        tuple(target.index_of(n, tuple(g.apply(s) for s in f.key)) for f in T.maps[n]) for n in range(m + 1)
    )


def check_level_map(S: Truncation, T: Truncation, lm: LevelMap) -> List[str]:
    """Violations of commuting with faces and degeneracies"""
    problems = []
    for n, row in enumerate(lm):
        for e, image in enumerate(row):
            if n:
                for i in range(n + 1):
                    if lm[n - 1][S.faces[n][e][i]] != T.faces[n][image][i]:
                        problems.append(f"level {n} element {e}: does not commute with d_{i}")
            if n + 1 < len(lm):
                for j in range(n + 1):
                    if lm[n + 1][S.degeneracies[n][e][j]] != T.degeneracies[n][image][j]:
                        problems.append(f"level {n} element {e}: does not commute with s_{j}")
    return problems


def realize_level_map(S: Truncation, T: Truncation, lm: LevelMap) -> SimplicialMap:
    """A level map as a simplicial map of realizations"""
    RS, RT = S.realize(), T.realize()
    assignment = {}
    for c in RS.cells:
        n, e = (int(part) for part in c.id.split(":"))
        assignment[c.id] = T.normal_form(n, lm[n][e])
    return SimplicialMap(RS, RT, assignment)


# ---------- components ----------


@dataclass(frozen=True)
class TruncatedObject:
    k0: Tuple[str, ...]
    k1: Tuple[str, ...]
    d0: Tuple[int, ...]
    d1: Tuple[int, ...]


def rho(X) -> TruncatedObject:
    """The d0, d1: K1 -> K0 part of a simplicial set or a truncation"""
    if isinstance(X, SimplicialSet):
        K0 = X.simplices(0)
        K1 = X.simplices(1)
        where = {s: k for k, s in enumerate(K0)}
        return TruncatedObject(
            tuple(_label(s) for s in K0), tuple(_label(s) for s in K1),
            tuple(where[X.face(s, 0)] for s in K1), tuple(where[X.face(s, 1)] for s in K1),
        )
    if X.level_cap < 1:
        raise CapError("rho needs level cap >= 1", dim=1, cap=X.level_cap)
    return TruncatedObject(
        tuple(f"0:{e}" for e in range(len(X.levels[0]))),
        tuple(f"1:{e}" for e in range(len(X.levels[1]))),
        tuple(X.faces[1][e][0] for e in range(len(X.levels[1]))),
        tuple(X.faces[1][e][1] for e in range(len(X.levels[1]))),
    )


def _label(s: Simplex) -> str:
    return s.cell if not s.degens else "s" + ".".join(map(str, s.degens)) + "[" + s.cell + "]"


@dataclass(frozen=True, eq=False)
class HomotopyClassTable:
    B: SimplicialSet
    Y: SimplicialSet
    classes: Tuple[Tuple[int, ...], ...]
    class_of: Tuple[int, ...]
    witnesses: Mapping[Tuple[int, int], Tuple[int, ...]]
    space: Optional[MappingSpaceTruncation] = None

    @property
    def representatives(self) -> Tuple[int, ...]:
        return tuple(members[0] for members in self.classes)

    def witnesses_for(self, f: int, g: int) -> Tuple[int, ...]:
        return self.witnesses.get((f, g), ())


def components_of(rho_data: TruncatedObject) -> Tuple[Tuple[Tuple[int, ...], ...], Tuple[int, ...], Dict]:
    """Classes of K0 under the relation generated by K1, plus the witness sets"""
    uf = _UnionFind()
    for v in range(len(rho_data.k0)):
        uf.add(v)
    witnesses: Dict[Tuple[int, int], List[int]] = {}
    for F in range(len(rho_data.k1)):
        f, g = rho_data.d0[F], rho_data.d1[F]
        uf.union(f, g)
        witnesses.setdefault((f, g), []).append(F)
    groups = sorted((tuple(sorted(members)) for members in uf.groups().values()), key=lambda c: c[0])
    class_of = [0] * len(rho_data.k0)
    for k, members in enumerate(groups):
        for v in members:
            class_of[v] = k
    return tuple(groups), tuple(class_of), {key: tuple(v) for key, v in witnesses.items()}


def homotopy_classes(
    B: SimplicialSet, Y: SimplicialSet, budget: Optional[int] = None, space: Optional[MappingSpaceTruncation] = None,
) -> HomotopyClassTable:
    T = space if space is not None else mapping_space(B, Y, max(1, config.LEVEL_CAP), budget)
    classes, class_of, witnesses = components_of(rho(T))
    return HomotopyClassTable(B, Y, classes, class_of, witnesses, T)


# ---------- loops and products of truncations ----------


@dataclass(frozen=True, eq=False)
class LoopTruncation(Truncation):
    base: Optional[Truncation] = None
    maps: Tuple[Tuple[SimplicialMap, ...], ...] = ()
    products: Tuple[Product, ...] = ()


def loop_space(T: Truncation, budget: Optional[int] = None) -> LoopTruncation:
    """
    Omega T through level cap - 1: level n is the set of maps
    Delta[1] x Delta[n] -> T sending both ends to the basepoint.
    """
    if T.level_cap < 1:
        raise CapError("loops need level cap >= 1", dim=1, cap=T.level_cap)
    R = T.realize()
    m = T.level_cap - 1
    interval = standard_simplex(1)
    products = tuple(Product(interval, standard_simplex(n), default_cap(n + 1)) for n in range(m + 1))
    maps = []
    for P in products:
        fixed = {
            cid: collapsed(interval.dim(a), R.basepoint)
            for cid, (a, b) in P.components.items() if a.cell in ("0", "1")
        }
        maps.append(tuple(enumerate_pointed_maps(P.result, R, budget, fixed)))
    levels = tuple(tuple(f.key for f in level) for level in maps)
    lookup = tuple({label: k for k, label in enumerate(level)} for level in levels)
    ident = identity(interval)

    def structure(n_from, n_to, theta) -> SimplicialMap:
        P, Q = products[n_from], products[n_to]
        dm = delta_map(theta, n_from, n_to)
        return SimplicialMap(P.result, Q.result, {
            cid: Q.pair(ident.apply(a), dm.apply(b)) for cid, (a, b) in P.components.items()
        })

    cofaces = {(n, i): structure(n - 1, n, coface(i, n)) for n in range(1, m + 1) for i in range(n + 1)}
    codegens = {(n, j): structure(n + 1, n, codegeneracy(j, n)) for n in range(m) for j in range(n + 1)}
    faces, degens = _tables(
        levels,
        lambda n, e, i: _precompose(maps[n][e], cofaces[(n, i)]),
        lambda n, e, j: _precompose(maps[n][e], codegens[(n, j)]),
        lambda n, label: lookup[n][label],
    )
    constant = tuple(collapsed(c.dim, R.basepoint) for c in products[0].result.cells)
    logger.debug(f"loop space built: base={T.name}, levels={[len(level) for level in levels]}")
    return LoopTruncation(
        levels, faces, degens, lookup[0][constant], f"loops({T.name})",
        base=T, maps=tuple(maps), products=products,
    )


def point_truncation(m: int) -> Truncation:
    levels = tuple(((),) for _ in range(m + 1))
    faces = tuple(((0,) * (n + 1),) if n else ((),) for n in range(m + 1))
    degens = tuple(((0,) * (n + 1),) if n < m else ((),) for n in range(m + 1))
    return Truncation(levels, faces, degens, 0, "point")


def product_truncation(factors: Sequence[Truncation], m: Optional[int] = None) -> Truncation:
    """Level-wise cartesian product"""
    if not factors:
        return point_truncation(config.LEVEL_CAP if m is None else m)
    cap = min(T.level_cap for T in factors) if m is None else m
    factors = [T.restrict(cap) if T.level_cap > cap else T for T in factors]
    levels = tuple(
        tuple(cartesian(*[range(len(T.levels[n])) for T in factors])) for n in range(cap + 1)
    )
    lookup = tuple({label: k for k, label in enumerate(level)} for level in levels)
    faces, degens = _tables(
        levels,
        lambda n, e, i: tuple(T.faces[n][c][i] for T, c in zip(factors, levels[n][e])),
        lambda n, e, j: tuple(T.degeneracies[n][c][j] for T, c in zip(factors, levels[n][e])),
        lambda n, label: lookup[n][label],
    )
    basepoint = lookup[0][tuple(T.basepoint for T in factors)]
    return Truncation(levels, faces, degens, basepoint, " x ".join(T.name for T in factors))


# ---------- suspension against loops ----------


@dataclass
class LevelComparison:
    level: int
    left_count: int
    right_count: int
    injective: bool
    surjective: bool

    @property
    def bijective(self) -> bool:
        return self.injective and self.surjective


@dataclass
class SigmaOmegaReport:
    A: str
    Y: str
    levels: List[LevelComparison] = field(default_factory=list)

    @property
    def bijective(self) -> bool:
        return all(level.bijective for level in self.levels)


def sigma_omega_comparison(
    A: SimplicialSet, Y: SimplicialSet, m: int, budget: Optional[int] = None,
) -> Tuple[MappingSpaceTruncation, LoopTruncation, LevelMap]:
    """The canonical level map map(Sigma A, Y) -> Omega map(A, Y) through level m"""
    susp = suspension_quotient(A, 1)
    left = mapping_space(susp.result, Y, m, budget)
    X = mapping_space(A, Y, m + 1, budget)
    loops = loop_space(X, budget)
    interval = standard_simplex(1)
    rows = []
    for n in range(m + 1):
        P = loops.products[n]
        delta_n = standard_simplex(n)
        row = []
        for g in left.maps[n]:
            assignment = {}
            for cid, (u, v) in P.components.items():
                k = interval.dim(u)
                src = X.sources[k]
                element = []
                for c in src.result.cells:
                    if c.id == src.result.basepoint:
                        element.append(Y.basepoint_simplex(0))
                        continue
                    a, t = src.components(c.id)
                    theta = delta_vertices(t)
                    inner = susp.pair(a, interval.act(theta, u))
                    element.append(g.apply(left.sources[n].pair(inner, delta_n.act(theta, v))))
                assignment[cid] = X.normal_form(k, X.index_of(k, tuple(element)))
            row.append(loops.index_of(n, tuple(assignment[c.id] for c in P.result.cells)))
        rows.append(tuple(row))
    return left, loops, tuple(rows)


def loop_level_map(source: LoopTruncation, target: LoopTruncation, lm: LevelMap) -> LevelMap:
    """Omega of a level map source.base -> target.base, by postcomposing each loop"""
    S, T = source.base, target.base
    realized = {}
    for n, level in enumerate(S.levels):
        for e in range(len(level)):
            s = S.normal_form(n, e)
            if not s.degens:
                realized[s.cell] = T.normal_form(n, lm[n][e])
    f = SimplicialMap(S.realize(), T.realize(), realized)
    return tuple(
        tuple(target.index_of(n, compose(f, g).key) for g in source.maps[n])
        for n in range(source.level_cap + 1)
    )


def iterated_sigma_omega(
    A: SimplicialSet, Y: SimplicialSet, d: int, m: int, budget: Optional[int] = None,
) -> Tuple[Truncation, LevelMap]:
    """
    The level map map(susp^d A, Y) -> Omega^d map(A, Y) through level m: the
    one-step comparison for susp^(d-1) A followed by Omega of the comparison
    one degree down.
    """
    if d == 0:
        T = mapping_space(A, Y, m, budget)
        return T, tuple(tuple(range(len(level))) for level in T.levels)
    _, loops, first = sigma_omega_comparison(suspension(A, d - 1), Y, m, budget)
    inner, inner_rows = iterated_sigma_omega(A, Y, d - 1, m + 1, budget)
    outer = loop_space(inner, budget)
    lifted = loop_level_map(loops, outer, inner_rows)
    return outer, tuple(tuple(lifted[n][x] for x in first[n]) for n in range(m + 1))


def verify_sigma_omega(A: SimplicialSet, Y: SimplicialSet, m: int = 1, budget: Optional[int] = None) -> SigmaOmegaReport:
    left, loops, comparison = sigma_omega_comparison(A, Y, m, budget)
    report = SigmaOmegaReport(A.name, Y.name)
    for n, row in enumerate(comparison):
        report.levels.append(LevelComparison(
            level=n,
            left_count=len(left.levels[n]),
            right_count=len(loops.levels[n]),
            injective=len(set(row)) == len(row),
            surjective=set(row) == set(range(len(loops.levels[n]))),
        ))
    logger.info(f"sigma-omega comparison: A={A.name}, Y={Y.name}, bijective={report.bijective}")
    return report
