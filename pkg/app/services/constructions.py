"""
Products, quotients and colimits of finite pointed simplicial sets.

Half-smash, smash, suspension and cone are all a product modulo a subcomplex
and share ``ProductQuotient``; colimits are computed level by level and then
read back into normal form.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from app.errors import CapError, StructuralError
from app.services.simplicial import (
    Cell,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    _UnionFind,
    build,
    collapsed,
    encode,
    identity,
    normalize_word,
    point,
    standard_simplex,
    surjection_of,
    top_cell,
    word_of,
)

logger = logging.getLogger(__name__)


# ---------- products ----------


def pair_id(a: Simplex, b: Simplex) -> str:
    return f"({encode(a)},{encode(b)})"


class Product:
    """Cartesian product; nondegenerate cells are the shuffle pairs"""

    def __init__(self, left: SimplicialSet, right: SimplicialSet, dim_cap: Optional[int] = None):
        self.left = left
        self.right = right
        cap = dim_cap if dim_cap is not None else max(left.dim_cap, right.dim_cap)
        self.components: Dict[str, Tuple[Simplex, Simplex]] = {}
        cells: List[Cell] = []
        for n in range(left.max_dim + right.max_dim + 1):
            for x in left.cells:
                if x.dim > n:
                    continue
                for y in right.cells:
                    if y.dim > n or x.dim + y.dim < n:
                        continue
                    for J in combinations(range(n), n - x.dim):
                        rest = [i for i in range(n) if i not in J]
                        for K in combinations(rest, n - y.dim):
                            if n > cap:
                                raise CapError(
                                    f"product {left.name} x {right.name} needs dimension {n} above cap {cap}",
                                    dim=n, cap=cap,
                                )
                            a = Simplex(tuple(sorted(J, reverse=True)), x.id)
                            b = Simplex(tuple(sorted(K, reverse=True)), y.id)
                            cid = pair_id(a, b)
                            if cid in self.components:
                                raise StructuralError(f"product cell id collision on {cid!r}")
                            self.components[cid] = (a, b)
                            faces = tuple(
                                self.pair(left.face(a, i), right.face(b, i)) for i in range(n + 1)
                            ) if n else ()
                            cells.append(Cell(cid, n, faces))
        basepoint = pair_id(Simplex((), left.basepoint), Simplex((), right.basepoint))
        self.result = build(cells, basepoint, cap, f"{left.name} x {right.name}")

    def pair(self, a: Simplex, b: Simplex) -> Simplex:
        """The simplex (a, b) of the product, in normal form"""
        common = set(a.degens) & set(b.degens)
        if not common:
            return Simplex((), pair_id(a, b))
        word = tuple(sorted(common, reverse=True))
        n = self.left.dim(a)
        pi = surjection_of(word, n)
        return Simplex(word, pair_id(_factor(self.left, a, pi), _factor(self.right, b, pi)))


def _factor(X: SimplicialSet, s: Simplex, pi: Tuple[int, ...]) -> Simplex:
    # s = X(pi) s' for the returned s'
    sigma = surjection_of(s.degens, X.dim(s))
    reduced = [0] * (pi[-1] + 1)
    for i, p in enumerate(pi):
        reduced[p] = sigma[i]
    return Simplex(word_of(reduced), s.cell)


def product(X: SimplicialSet, Y: SimplicialSet, dim_cap: Optional[int] = None) -> SimplicialSet:
    return Product(X, Y, dim_cap).result


# ---------- quotients ----------


def quotient(X: SimplicialSet, sub, name: str = "") -> Tuple[SimplicialSet, SimplicialMap]:
    """Collapse a face-closed subcomplex containing the basepoint to the basepoint"""
    sub = frozenset(sub)
    if X.basepoint not in sub:
        raise StructuralError("collapsed subcomplex must contain the basepoint")
    for cid in sub:
        for i, f in enumerate(X.cell(cid).faces):
            if f.cell not in sub:
                raise StructuralError(f"subcomplex not face-closed: d_{i} of {cid} is {f.cell} outside it")

    def project(s: Simplex) -> Simplex:
        if s.cell in sub:
            return collapsed(X.dim(s), X.basepoint)
        return s

    cells = [Cell(X.basepoint, 0)]
    for c in X.cells:
        if c.id not in sub:
            cells.append(Cell(c.id, c.dim, tuple(project(f) for f in c.faces)))
    Q = build(cells, X.basepoint, X.dim_cap, name or f"{X.name}/~")
    assignment = {c.id: (collapsed(c.dim, X.basepoint) if c.id in sub else Simplex((), c.id)) for c in X.cells}
    return Q, SimplicialMap(X, Q, assignment)


class ProductQuotient:
    """A product with a subcomplex, described by a predicate on components, collapsed"""

    def __init__(
        self,
        left: SimplicialSet,
        right: SimplicialSet,
        collapse: Callable[[Simplex, Simplex], bool],
        name: str,
        dim_cap: Optional[int] = None,
    ):
        self.left = left
        self.right = right
        self.product = Product(left, right, dim_cap)
        sub = {cid for cid, (a, b) in self.product.components.items() if collapse(a, b)}
        self.result, self.projection = quotient(self.product.result, sub, name=name)

    def pair(self, a: Simplex, b: Simplex) -> Simplex:
        return self.projection.apply(self.product.pair(a, b))

    def components(self, cell_id: str) -> Tuple[Simplex, Simplex]:
        return self.product.components[cell_id]

    def induced(self, target: SimplicialSet, rule: Callable[[Simplex, Simplex], Simplex]) -> SimplicialMap:
        """Map out of the quotient given by its value on the components of each cell"""
        assignment = {self.result.basepoint: Simplex((), target.basepoint)}
        for c in self.result.cells:
            if c.id != self.result.basepoint:
                a, b = self.components(c.id)
                assignment[c.id] = rule(a, b)
        return SimplicialMap(self.result, target, assignment)

    def functor(self, other: "ProductQuotient", f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
        """f x g descended to the quotients"""
        return self.induced(other.result, lambda a, b: other.pair(f.apply(a), g.apply(b)))


def _is_base(X: SimplicialSet, s: Simplex) -> bool:
    return s.cell == X.basepoint


@lru_cache(maxsize=None)
def half_smash(X: SimplicialSet, K: SimplicialSet) -> ProductQuotient:
    return ProductQuotient(X, K, lambda a, b: _is_base(X, a), f"{X.name} |x {K.name}")


@lru_cache(maxsize=None)
def smash(A: SimplicialSet, K: SimplicialSet) -> ProductQuotient:
    return ProductQuotient(A, K, lambda a, b: _is_base(A, a) or _is_base(K, b), f"{A.name} ^ {K.name}")


@lru_cache(maxsize=None)
def suspension_quotient(A: SimplicialSet, i: int) -> ProductQuotient:
    delta = standard_simplex(i)
    top = top_cell(i)
    return ProductQuotient(A, delta, lambda a, b: _is_base(A, a) or b.cell != top, f"susp({A.name},{i})")


@lru_cache(maxsize=None)
def cone(A: SimplicialSet) -> ProductQuotient:
    """A |x Delta[1] with the end over vertex 0 collapsed"""
    return ProductQuotient(A, standard_simplex(1), lambda a, b: _is_base(A, a) or b.cell == "0", f"cone({A.name})")


def half_smash_right(X: SimplicialSet, K: SimplicialSet) -> SimplicialSet:
    """(X x K)/(* x K)"""
    return half_smash(X, K).result


def smash_left(A: SimplicialSet, K: SimplicialSet) -> SimplicialSet:
    """(A x K)/(* x K u A x *)"""
    return smash(A, K).result


def suspension(A: SimplicialSet, i: int) -> SimplicialSet:
    """susp^i A as i single suspensions, so susp^(i+1) A is exactly susp(susp^i A, 1)"""
    if i < 0:
        raise StructuralError("suspension degree must be >= 0")
    if i == 0:
        return A
    return suspension_quotient(suspension(A, i - 1), 1).result


def end_inclusion(cyl: ProductQuotient, vertex: int) -> SimplicialMap:
    """B -> B |x Delta[1] onto the end over the given vertex"""
    B = cyl.left
    v = str(vertex)
    return SimplicialMap(
        B, cyl.result,
        {c.id: cyl.pair(Simplex((), c.id), collapsed(c.dim, v)) for c in B.cells},
    )


# ---------- colimits ----------


@dataclass(frozen=True, eq=False)
class ColimitPresentation:
    result: SimplicialSet
    objects: Tuple[SimplicialSet, ...]
    legs: Tuple[SimplicialMap, ...]
    tags: Mapping[str, Tuple[Tuple[int, str], ...]]
    cofibration: Optional[str] = None

    def induced(self, maps: Sequence[SimplicialMap], target: SimplicialSet) -> SimplicialMap:
        """The unique map out of the colimit restricting to ``maps`` along the legs"""
        assignment = {}
        for c in self.result.cells:
            if c.id == self.result.basepoint:
                assignment[c.id] = Simplex((), target.basepoint)
                continue
            images = {maps[idx].assignment[cid] for idx, cid in self.tags[c.id]}
            if len(images) != 1:
                raise StructuralError(f"maps disagree on colimit cell {c.id}: {sorted(map(encode, images))}")
            assignment[c.id] = images.pop()
        return SimplicialMap(self.result, target, assignment)


Relation = Tuple[SimplicialMap, int, SimplicialMap, int]


def colimit(
    objects: Sequence[SimplicialSet],
    relations: Sequence[Relation] = (),
    name: str = "colim",
    labels: Optional[Sequence[str]] = None,
) -> ColimitPresentation:
    """
    Pointed colimit: the disjoint union of ``objects`` with every basepoint
    identified and f(x) ~ g(x) for each relation (f, i, g, j), f into object i
    and g into object j. Computed level-wise, then re-normalized.
    """
    objects = tuple(objects)
    if not objects:
        P = point()
        return ColimitPresentation(P, (), (), {P.basepoint: ()})
    labels = list(labels) if labels is not None else [str(k) for k in range(len(objects))]
    top = max(o.max_dim for o in objects)
    cap = max(o.dim_cap for o in objects)
    levels: List[_UnionFind] = []
    for n in range(top + 1):
        uf = _UnionFind()
        for idx, obj in enumerate(objects):
            for s in obj.simplices(n):
                uf.add((idx, s))
        base = (0, objects[0].basepoint_simplex(n))
        for idx, obj in enumerate(objects):
            uf.union(base, (idx, obj.basepoint_simplex(n)))
        for f, i, g, j in relations:
            for x in f.source.simplices(n):
                uf.union((i, f.apply(x)), (j, g.apply(x)))
        levels.append(uf)

    def op(n: int, elem, kind: str, k: int):
        idx, s = elem
        obj = objects[idx]
        return (idx, obj.face(s, k) if kind == "d" else obj.degeneracy(s, k))

    groups = [uf.groups() for uf in levels]
    names: Dict[Tuple[int, object], str] = {}
    tags: Dict[str, Tuple[Tuple[int, str], ...]] = {}
    basepoint_root = levels[0].find((0, objects[0].basepoint_simplex(0)))
    for n in range(top + 1):
        for root, members in groups[n].items():
            if n and any(levels[n].find(op(n - 1, op(n, root, "d", j), "s", j)) == root for j in range(n)):
                continue
            if n == 0 and root == basepoint_root:
                cid = "*"
            else:
                idx, s = next(m for m in members if not m[1].degens)
                cid = f"{labels[idx]}/{s.cell}"
            names[(n, root)] = cid
            tags[cid] = tuple((idx, s.cell) for idx, s in members if not s.degens)

    normal_cache: Dict[Tuple[int, object], Simplex] = {}

    def normal(n: int, root) -> Simplex:
        key = (n, root)
        if key in normal_cache:
            return normal_cache[key]
        if key in names:
            result = Simplex((), names[key])
        else:
            result = None
            for j in range(n - 1, -1, -1):
                lower = op(n, root, "d", j)
                if levels[n].find(op(n - 1, lower, "s", j)) == root:
                    inner = normal(n - 1, levels[n - 1].find(lower))
                    base_dim = n - 1 - len(inner.degens)
                    result = Simplex(normalize_word((j,) + inner.degens, base_dim), inner.cell)
                    break
            if result is None:
                raise StructuralError(f"colimit class at level {n} has no normal form")
        normal_cache[key] = result
        return result

    cells = []
    for (n, root), cid in names.items():
        faces = tuple(
            normal(n - 1, levels[n - 1].find(op(n, root, "d", i))) for i in range(n + 1)
        ) if n else ()
        cells.append(Cell(cid, n, faces))
    cells.sort(key=lambda c: c.dim)
    result = build(cells, "*", cap, name)
    legs = tuple(
        SimplicialMap(obj, result, {
            c.id: normal(c.dim, levels[c.dim].find((idx, Simplex((), c.id)))) for c in obj.cells
        })
        for idx, obj in enumerate(objects)
    )
    logger.debug(f"colimit {name}: objects={len(objects)}, relations={len(relations)}, cells={len(cells)}")
    return ColimitPresentation(result, objects, legs, tags)


def wedge(objects: Sequence[SimplicialSet], name: Optional[str] = None) -> ColimitPresentation:
    """Pointed coproduct; the empty wedge is the point"""
    label = name or "wedge(" + ",".join(o.name for o in objects) + ")"
    return colimit(objects, (), label)


def pushout(f: SimplicialMap, g: SimplicialMap, name: str = "pushout") -> ColimitPresentation:
    """Pushout of Y <-f- X -g-> Z with legs Y -> P and Z -> P"""
    if f.source is not g.source:
        raise StructuralError("pushout legs must share their source")
    pres = colimit((f.target, g.target), ((f, 0, g, 1),), name, labels=("L", "R"))
    flags = [side for side, m in (("left", f), ("right", g)) if m.is_injective()]
    cofibration = "both" if len(flags) == 2 else (flags[0] if flags else None)
    return ColimitPresentation(pres.result, pres.objects, pres.legs, pres.tags, cofibration)


__all__ = [
    "ColimitPresentation", "Product", "ProductQuotient", "colimit", "cone", "end_inclusion",
    "half_smash", "half_smash_right", "identity", "product", "pushout", "quotient", "smash",
    "smash_left", "suspension", "suspension_quotient", "wedge",
]
