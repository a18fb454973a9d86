"""
Named spaces and the JSON interchange format.

A catalog expression is one of ``point``, ``s<n>`` / ``sphere(n)``, ``d<n>`` /
``delta(n)``, ``boundary(n)``, ``wedge(e, ...)``, ``product(e, e)``,
``susp(e, i)``, ``smash(e, e)``, ``halfsmash(e, e)`` or the path of an object
file. ``sphere 2`` is accepted for ``sphere(2)``.
"""
from __future__ import annotations

import logging
import re
from functools import lru_cache
from pathlib import Path
from typing import List, Union

from pydantic import ValidationError

from app import config
from app.api.models import AssignmentModel, CellModel, MapModel, ObjectModel, SimplexRef
from app.errors import ParseError
from app.services.constructions import half_smash_right, product, smash_left, suspension, wedge
from app.services.simplicial import (
    Cell,
    Simplex,
    SimplicialMap,
    SimplicialSet,
    boundary,
    build,
    point,
    sphere,
    standard_simplex,
    validate,
)

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+|[(),])")
_SHORT = re.compile(r"^(s|d)(\d+)$")


def _tokens(text: str) -> List[str]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError(f"unexpected input at offset {pos} in {text!r}")
        out.append(match.group(1))
        pos = match.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokens(text)
        self.cursor = 0

    def peek(self):
        return self.tokens[self.cursor] if self.cursor < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError(f"unexpected end of {self.text!r}")
        self.cursor += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.take()
        if got != tok:
            raise ParseError(f"expected {tok!r} but found {got!r} in {self.text!r}")

    def number(self) -> int:
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected a number but found {tok!r} in {self.text!r}")
        return int(tok)

    def args(self) -> List:
        self.expect("(")
        items = []
        if self.peek() == ")":
            self.take()
            return items
        while True:
            items.append(self.number() if (self.peek() or "").isdigit() else self.expr())
            if self.peek() == ",":
                self.take()
                continue
            self.expect(")")
            return items

    def expr(self) -> SimplicialSet:
        name = self.take()
        short = _SHORT.match(name)
        if short:
            n = int(short.group(2))
            return sphere(n) if short.group(1) == "s" else standard_simplex(n)
        if name == "point":
            return point()
        if self.peek() is not None and self.peek().isdigit():
            items = [self.number()]
        elif self.peek() == "(":
            items = self.args()
        else:
            raise ParseError(f"unknown catalog name {name!r} in {self.text!r}")
        return _construct(name, items, self.text)


def _construct(name: str, items: List, text: str) -> SimplicialSet:
    def want(kinds: str) -> None:
        shape = "".join("n" if isinstance(x, int) else "o" for x in items)
        if shape != kinds:
            raise ParseError(f"{name} takes ({', '.join('int' if k == 'n' else 'object' for k in kinds)}) in {text!r}")

    if name == "sphere":
        want("n")
        return sphere(items[0])
    if name == "delta":
        want("n")
        return standard_simplex(items[0])
    if name == "boundary":
        want("n")
        return boundary(items[0])
    if name == "wedge":
        if any(isinstance(x, int) for x in items):
            raise ParseError(f"wedge takes objects in {text!r}")
        return wedge(items).result
    if name == "product":
        want("oo")
        return product(*items)
    if name == "smash":
        want("oo")
        return smash_left(*items)
    if name == "halfsmash":
        want("oo")
        return half_smash_right(*items)
    if name == "susp":
        want("on")
        return suspension(*items)
    raise ParseError(f"unknown catalog name {name!r} in {text!r}")


def parse_object(text: str) -> SimplicialSet:
    """A catalog expression or an object file; equal text under equal caps gives the same object"""
    return _parse_object(text, config.DIM_CAP)


@lru_cache(maxsize=None)
def _parse_object(text: str, dim_cap: int) -> SimplicialSet:
    path = Path(text)
    if path.suffix == ".json" or path.is_file():
        return load_object(path)
    parser = _Parser(text.strip())
    X = parser.expr()
    if parser.peek() is not None:
        raise ParseError(f"trailing input {parser.peek()!r} in {text!r}")
    return X


# ---------- interchange ----------


def _ref(s: Simplex) -> SimplexRef:
    return SimplexRef(degens=list(s.degens), target=s.cell)


def to_model(X: SimplicialSet) -> ObjectModel:
    return ObjectModel(
        name=X.name or None,
        dim_cap=X.dim_cap,
        basepoint=X.basepoint,
        cells=[CellModel(id=c.id, dim=c.dim, faces=[_ref(f) for f in c.faces]) for c in X.cells],
    )


def from_model(model: ObjectModel) -> SimplicialSet:
    cells = [
        Cell(c.id, c.dim, tuple(Simplex(tuple(f.degens), f.target) for f in c.faces))
        for c in model.cells
    ]
    X = build(cells, model.basepoint, model.dim_cap, model.name or "")
    problems = validate(X)
    if problems:
        raise ParseError(f"object {model.name or '?'} is not a pointed simplicial set: {problems[0]}")
    return X


def emit_object(X: SimplicialSet) -> str:
    return to_model(X).model_dump_json(indent=2)


def read_object(text: str) -> SimplicialSet:
    try:
        model = ObjectModel.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"invalid object file: {e.errors()[0]['msg']}") from e
    return from_model(model)


def load_object(path: Union[str, Path]) -> SimplicialSet:
    path = Path(path)
    if not path.is_file():
        raise ParseError(f"object file {path} not found")
    logger.debug(f"loading object: path={path}")
    return read_object(path.read_text())


def map_to_model(f: SimplicialMap) -> MapModel:
    return MapModel(
        source=f.source.name,
        target=f.target.name,
        assign=[
            AssignmentModel(cell=c.id, degens=list(f.assignment[c.id].degens), target=f.assignment[c.id].cell)
            for c in f.source.cells
        ],
    )


def emit_map(f: SimplicialMap) -> str:
    return map_to_model(f).model_dump_json(indent=2)


def read_map(text: str, source: SimplicialSet, target: SimplicialSet) -> SimplicialMap:
    try:
        model = MapModel.model_validate_json(text)
    except ValidationError as e:
        raise ParseError(f"invalid map file: {e.errors()[0]['msg']}") from e
    assignment = {a.cell: Simplex(tuple(a.degens), a.target) for a in model.assign}
    missing = [c.id for c in source.cells if c.id not in assignment]
    if missing:
        raise ParseError(f"map file does not assign cell {missing[0]!r}")
    return SimplicialMap(source, target, assignment)
