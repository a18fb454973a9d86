"""
Finite pointed simplicial sets in Eilenberg-Zilber normal form.

A simplicial set stores only its nondegenerate cells. Every simplex, degenerate
or not, is a ``Simplex(degens, cell)``: a strictly decreasing degeneracy word
applied to a nondegenerate cell. Simplicial operators are computed on demand by
going through the order-preserving maps of the simplex category.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple

from app import config
from app.errors import CapError, StructuralError

logger = logging.getLogger(__name__)

BASEPOINT = "*"


class Simplex(NamedTuple):
    degens: Tuple[int, ...]
    cell: str


# ---------- degeneracy words and order-preserving maps ----------


def surjection_of(word: Sequence[int], top: int) -> Tuple[int, ...]:
    """Order-preserving surjection [top] -> [top - len(word)] of s_{a1}...s_{am}"""
    theta = tuple(range(top + 1))
    for j in word:
        theta = tuple(t if t <= j else t - 1 for t in theta)
    return theta


def word_of(theta: Sequence[int]) -> Tuple[int, ...]:
    """Normal-form degeneracy word of an order-preserving surjection"""
    return tuple(i for i in range(len(theta) - 2, -1, -1) if theta[i] == theta[i + 1])


def normalize_word(word: Sequence[int], base_dim: int) -> Tuple[int, ...]:
    return word_of(surjection_of(word, base_dim + len(word)))


def is_normal_word(word: Sequence[int]) -> bool:
    return all(word[k] > word[k + 1] for k in range(len(word) - 1)) and all(j >= 0 for j in word)


def coface(i: int, n: int) -> Tuple[int, ...]:
    """delta^i: [n-1] -> [n]"""
    return tuple(t if t < i else t + 1 for t in range(n))


def codegeneracy(j: int, n: int) -> Tuple[int, ...]:
    """sigma^j: [n+1] -> [n]"""
    return tuple(t if t <= j else t - 1 for t in range(n + 2))


def collapsed(n: int, basepoint: str) -> Simplex:
    return Simplex(tuple(range(n - 1, -1, -1)), basepoint)


def encode(s: Simplex) -> str:
    if not s.degens:
        return s.cell
    return "s" + ".".join(str(j) for j in s.degens) + "[" + s.cell + "]"


# ---------- simplicial sets ----------


@dataclass(frozen=True)
class Cell:
    id: str
    dim: int
    faces: Tuple[Simplex, ...] = ()


@dataclass(frozen=True, eq=False)
class SimplicialSet:
    cells: Tuple[Cell, ...]
    basepoint: str
    dim_cap: int
    name: str = ""

    @cached_property
    def index(self) -> Dict[str, Cell]:
        return {c.id: c for c in self.cells}

    @cached_property
    def order(self) -> Dict[str, int]:
        return {c.id: k for k, c in enumerate(self.cells)}

    @cached_property
    def max_dim(self) -> int:
        return max((c.dim for c in self.cells), default=0)

    @cached_property
    def _by_dim(self) -> Dict[int, Tuple[Cell, ...]]:
        grouped: Dict[int, List[Cell]] = {}
        for c in self.cells:
            grouped.setdefault(c.dim, []).append(c)
        return {d: tuple(cs) for d, cs in grouped.items()}

    @cached_property
    def _caches(self) -> Dict[str, dict]:
        return {"act": {}, "restrict": {}, "simplices": {}}

    def cell(self, cell_id: str) -> Cell:
        try:
            return self.index[cell_id]
        except KeyError:
            raise StructuralError(f"{self.name or 'object'} has no cell {cell_id!r}") from None

    def cells_of_dim(self, n: int) -> Tuple[Cell, ...]:
        return self._by_dim.get(n, ())

    def dim(self, s: Simplex) -> int:
        return self.cell(s.cell).dim + len(s.degens)

    def basepoint_simplex(self, n: int) -> Simplex:
        return collapsed(n, self.basepoint)

    def simplices(self, n: int) -> Tuple[Simplex, ...]:
        """All n-simplices, degenerate ones included, in a deterministic order"""
        cache = self._caches["simplices"]
        if n not in cache:
            found = []
            for k in range(min(n, self.max_dim) + 1):
                words = [tuple(sorted(J, reverse=True)) for J in combinations(range(n), n - k)]
                for c in self.cells_of_dim(k):
                    found.extend(Simplex(w, c.id) for w in words)
            cache[n] = tuple(found)
        return cache[n]

    def act(self, theta: Tuple[int, ...], s: Simplex) -> Simplex:
        """X(theta)(s) for an order-preserving theta: [m] -> [dim s]"""
        key = (theta, s)
        cache = self._caches["act"]
        if key in cache:
            return cache[key]
        k = self.cell(s.cell).dim
        sigma = surjection_of(s.degens, k + len(s.degens))
        phi = tuple(sigma[t] for t in theta)
        image = sorted(set(phi))
        pi = tuple(image.index(p) for p in phi)
        base = Simplex((), s.cell) if len(image) == k + 1 else self._restrict(s.cell, tuple(image))
        bdim = self.cell(base.cell).dim
        bsigma = surjection_of(base.degens, bdim + len(base.degens))
        result = Simplex(word_of(tuple(bsigma[p] for p in pi)), base.cell)
        cache[key] = result
        return result

    def _restrict(self, cell_id: str, image: Tuple[int, ...]) -> Simplex:
        # face of a nondegenerate cell along the injection with the given image
        key = (cell_id, image)
        cache = self._caches["restrict"]
        if key not in cache:
            c = self.cell(cell_id)
            missing = max(v for v in range(c.dim + 1) if v not in image)
            face = c.faces[missing]
            inner = tuple(u if u < missing else u - 1 for u in image)
            cache[key] = self.act(inner, face)
        return cache[key]

    def face(self, s: Simplex, i: int) -> Simplex:
        n = self.dim(s)
        if n == 0:
            raise StructuralError(f"a vertex of {self.name or 'object'} has no faces")
        if not 0 <= i <= n:
            raise StructuralError(f"face index {i} out of range for a {n}-simplex")
        return self.act(coface(i, n), s)

    def degeneracy(self, s: Simplex, j: int) -> Simplex:
        return self.act(codegeneracy(j, self.dim(s)), s)

    def count_simplices(self, n: int) -> int:
        return len(self.simplices(n))

    def cell_counts(self) -> List[int]:
        return [len(self.cells_of_dim(d)) for d in range(self.max_dim + 1)]


def build(cells: Iterable[Cell], basepoint: str, dim_cap: int, name: str = "") -> SimplicialSet:
    cells = tuple(cells)
    for c in cells:
        if c.dim > dim_cap:
            raise CapError(
                f"{name or 'object'}: cell {c.id!r} has dimension {c.dim} above dim_cap {dim_cap}",
                dim=c.dim, cap=dim_cap,
            )
    return SimplicialSet(cells=cells, basepoint=basepoint, dim_cap=dim_cap, name=name)


def default_cap(*dims: int) -> int:
    return max((config.DIM_CAP,) + dims)


# ---------- maps ----------


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    source: SimplicialSet
    target: SimplicialSet
    assignment: Mapping[str, Simplex]

    def apply(self, s: Simplex) -> Simplex:
        image = self.assignment[s.cell]
        if not s.degens:
            return image
        base_dim = self.target.cell(image.cell).dim
        return Simplex(normalize_word(s.degens + image.degens, base_dim), image.cell)

    @cached_property
    def key(self) -> Tuple[Simplex, ...]:
        return tuple(self.assignment[c.id] for c in self.source.cells)

    def is_injective(self) -> bool:
        images = list(self.assignment.values())
        return all(not s.degens for s in images) and len({s.cell for s in images}) == len(images)


def identity(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {c.id: Simplex((), c.id) for c in X.cells})


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """g after f"""
    if f.target is not g.source:
        raise StructuralError("maps are not composable")
    return SimplicialMap(f.source, g.target, {cid: g.apply(s) for cid, s in f.assignment.items()})


def constant_map(X: SimplicialSet, Y: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, Y, {c.id: Y.basepoint_simplex(c.dim) for c in X.cells})


def check_map(f: SimplicialMap) -> List[str]:
    """Violations of the simplicial-map axioms; empty when f is a pointed map"""
    problems = []
    X, Y = f.source, f.target
    for c in X.cells:
        image = f.assignment.get(c.id)
        if image is None:
            problems.append(f"cell {c.id}: unassigned")
            continue
        if image.cell not in Y.index:
            problems.append(f"cell {c.id}: target cell {image.cell!r} missing")
            continue
        if Y.dim(image) != c.dim:
            problems.append(f"cell {c.id}: dimension {c.dim} sent to dimension {Y.dim(image)}")
            continue
        for i, face in enumerate(c.faces):
            if f.apply(face) != Y.face(image, i):
                problems.append(f"cell {c.id}: f d_{i} != d_{i} f")
    if f.assignment.get(X.basepoint) != Simplex((), Y.basepoint):
        problems.append("basepoint not preserved")
    return problems


def maps_equal(f: SimplicialMap, g: SimplicialMap) -> bool:
    return f.source is g.source and all(f.assignment[c.id] == g.assignment[c.id] for c in f.source.cells)


def characteristic_map(X: SimplicialSet, s: Simplex) -> SimplicialMap:
    """The Yoneda map Delta[k] -> X picking out the k-simplex s"""
    delta = standard_simplex(X.dim(s))
    return SimplicialMap(delta, X, {c.id: X.act(vertices_of(c.id), s) for c in delta.cells})


# ---------- standard objects ----------


def vertices_of(cell_id: str) -> Tuple[int, ...]:
    return tuple(int(v) for v in cell_id.split("."))


def _simplex_id(vertices: Sequence[int]) -> str:
    return ".".join(str(v) for v in vertices)


_STANDARD: Dict[Tuple[int, int, bool], SimplicialSet] = {}


def _delta(n: int, with_top: bool, dim_cap: Optional[int]) -> SimplicialSet:
    cap = dim_cap if dim_cap is not None else default_cap(n)
    key = (n, cap, with_top)
    if key not in _STANDARD:
        cells = []
        for k in range(n + 1):
            if k == n and not with_top:
                continue
            for V in combinations(range(n + 1), k + 1):
                faces = tuple(Simplex((), _simplex_id(V[:i] + V[i + 1:])) for i in range(k + 1)) if k else ()
                cells.append(Cell(_simplex_id(V), k, faces))
        name = f"delta({n})" if with_top else f"boundary({n})"
        _STANDARD[key] = build(cells, "0", cap, name)
    return _STANDARD[key]


def standard_simplex(n: int, dim_cap: Optional[int] = None) -> SimplicialSet:
    if n < 0:
        raise StructuralError("standard simplex needs n >= 0")
    return _delta(n, True, dim_cap)


def boundary(n: int, dim_cap: Optional[int] = None) -> SimplicialSet:
    if n < 1:
        raise StructuralError("boundary needs n >= 1")
    return _delta(n, False, dim_cap)


def top_cell(n: int) -> str:
    return _simplex_id(range(n + 1))


def delta_simplex(theta: Sequence[int]) -> Simplex:
    """The simplex of Delta[n] given by an order-preserving map [m] -> [n]"""
    image = sorted(set(theta))
    pi = tuple(image.index(t) for t in theta)
    return Simplex(word_of(pi), _simplex_id(image))


def delta_vertices(s: Simplex) -> Tuple[int, ...]:
    """Inverse of delta_simplex"""
    V = vertices_of(s.cell)
    sigma = surjection_of(s.degens, len(V) - 1 + len(s.degens))
    return tuple(V[t] for t in sigma)


def point(dim_cap: Optional[int] = None) -> SimplicialSet:
    return _point(dim_cap if dim_cap is not None else default_cap())


@lru_cache(maxsize=None)
def _point(cap: int) -> SimplicialSet:
    return build([Cell(BASEPOINT, 0)], BASEPOINT, cap, "point")


def sphere(n: int, dim_cap: Optional[int] = None) -> SimplicialSet:
    """Delta[n]/boundary, written directly in normal form"""
    if n < 0:
        raise StructuralError("sphere needs n >= 0")
    return _sphere(n, dim_cap if dim_cap is not None else default_cap(n))


@lru_cache(maxsize=None)
def _sphere(n: int, cap: int) -> SimplicialSet:
    if n == 0:
        return build([Cell(BASEPOINT, 0), Cell("v", 0)], BASEPOINT, cap, "sphere(0)")
    top = Cell(f"e{n}", n, tuple(collapsed(n - 1, BASEPOINT) for _ in range(n + 1)))
    return build([Cell(BASEPOINT, 0), top], BASEPOINT, cap, f"sphere({n})")


# ---------- validation and invariants ----------


def validate(X: SimplicialSet) -> List[str]:
    """Every broken invariant of X, named; empty when X is a valid pointed simplicial set"""
    problems: List[str] = []
    if X.basepoint not in X.index:
        problems.append(f"basepoint {X.basepoint!r} is not a cell")
    elif X.index[X.basepoint].dim != 0:
        problems.append(f"basepoint {X.basepoint!r} is not a 0-cell")
    if len(X.index) != len(X.cells):
        problems.append("duplicate cell ids")
    structural_ok = True
    for c in X.cells:
        if c.dim > X.dim_cap:
            problems.append(f"cell {c.id}: dimension {c.dim} above dim_cap {X.dim_cap}")
        expected = c.dim + 1 if c.dim > 0 else 0
        if len(c.faces) != expected:
            problems.append(f"cell {c.id}: {len(c.faces)} faces, expected {expected}")
            structural_ok = False
            continue
        for i, f in enumerate(c.faces):
            if f.cell not in X.index:
                problems.append(f"cell {c.id}: d_{i} targets missing cell {f.cell!r}")
                structural_ok = False
                continue
            if not is_normal_word(f.degens):
                problems.append(f"cell {c.id}: d_{i} degeneracy word {list(f.degens)} not strictly decreasing")
                structural_ok = False
                continue
            tdim = X.index[f.cell].dim
            if tdim + len(f.degens) != c.dim - 1:
                problems.append(f"cell {c.id}: d_{i} has dimension {tdim + len(f.degens)}, expected {c.dim - 1}")
                structural_ok = False
                continue
            if f.degens and f.degens[0] > c.dim - 2:
                problems.append(f"cell {c.id}: d_{i} degeneracy index {f.degens[0]} out of range")
                structural_ok = False
    if not structural_ok:
        return problems
    for c in X.cells:
        if c.dim < 2:
            continue
        x = Simplex((), c.id)
        for j in range(c.dim + 1):
            for i in range(j):
                lhs = X.face(X.face(x, j), i)
                rhs = X.face(X.face(x, i), j - 1)
                if lhs != rhs:
                    problems.append(f"cell {c.id}: d_{i}d_{j} != d_{j - 1}d_{i} ({encode(lhs)} vs {encode(rhs)})")
    return problems


class _UnionFind:
    """Union-find whose root is always the earliest registered element"""

    def __init__(self):
        self.parent: Dict[object, object] = {}
        self.rank: Dict[object, int] = {}

    def add(self, x) -> None:
        if x not in self.parent:
            self.parent[x] = x
            self.rank[x] = len(self.rank)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[rb] < self.rank[ra]:
            ra, rb = rb, ra
        self.parent[rb] = ra

    def groups(self) -> Dict[object, List[object]]:
        out: Dict[object, List[object]] = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def pi0(X: SimplicialSet) -> List[frozenset]:
    """Vertex classes under the relation generated by 1-cells"""
    uf = _UnionFind()
    for v in X.cells_of_dim(0):
        uf.add(v.id)
    for e in X.cells_of_dim(1):
        uf.union(e.faces[0].cell, e.faces[1].cell)
    return [frozenset(members) for members in uf.groups().values()]


def canonical_form(X: SimplicialSet) -> Tuple:
    """
    Relabeling-invariant description of X.

    Cells are ordered by dimension, then by a refined face/coface fingerprint,
    then by insertion order; the form lists every cell's faces under that order.
    """
    colors: Dict[str, object] = {c.id: (c.dim, c.id == X.basepoint) for c in X.cells}
    cofaces: Dict[str, List[Tuple[str, int, Tuple[int, ...]]]] = {c.id: [] for c in X.cells}
    for c in X.cells:
        for i, f in enumerate(c.faces):
            cofaces[f.cell].append((c.id, i, f.degens))
    distinct = len(set(colors.values()))
    for _ in range(len(X.cells) + 1):
        refined = {}
        for c in X.cells:
            down = tuple((f.degens, colors[f.cell]) for f in c.faces)
            up = tuple(sorted(repr((colors[p], i, d)) for p, i, d in cofaces[c.id]))
            refined[c.id] = repr((colors[c.id], down, up))
        palette = {v: k for k, v in enumerate(sorted(set(refined.values())))}
        colors = {cid: (X.index[cid].dim, palette[v]) for cid, v in refined.items()}
        if len(set(colors.values())) == distinct:
            break
        distinct = len(set(colors.values()))
    ordered = sorted(X.cells, key=lambda c: (c.dim, colors[c.id], X.order[c.id]))
    label = {c.id: k for k, c in enumerate(ordered)}
    return (
        label[X.basepoint],
        tuple((c.dim, tuple((f.degens, label[f.cell]) for f in c.faces)) for c in ordered),
    )


def isomorphic(X: SimplicialSet, Y: SimplicialSet) -> bool:
    if X.cell_counts() != Y.cell_counts():
        return False
    return canonical_form(X) == canonical_form(Y)
