"""JSON input documents: algebras, subalgebra pairs, automorphisms, complexes.

One document carries five optional sections, each a list of named entries:

    lie_algebras   name, dim, brackets as triples [i, j, coefficients]
    subalgebras    name, parent, basis vectors in the parent's coordinates
    automorphisms  name, algebra, square matrix (columns = images)
    complexes      name, dims, differentials, optional filtration weights
    actions        name, complex, one square matrix per degree

Rational entries are JSON integers or strings "p/q"; floats are rejected
because they are not exact.  Canonical serialization renders a rational as
an integer when the denominator is 1 and as "p/q" otherwise, sorts entries
by name, and sorts object keys, so serialize(parse(text)) is a fixed point.

Malformed structure, bad rationals, and unresolved references raise
DocumentError.  Mathematical validation (Jacobi, closure of a subalgebra,
the automorphism property, d^2 = 0) is left to the engine constructors,
which raise ValueError; the command line maps the two kinds to different
exit codes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cohomology import GradedComplex
from .liealg import LieAlgebra, LieAutomorphism, Subalgebra
from .linalg import RationalMatrix
from .obstructions import CupForm
from .spectral import FilteredComplex

__all__ = [
    "ActionEntry",
    "ComplexEntry",
    "DocumentError",
    "InputDocument",
    "cup_to_dict",
    "document_to_dict",
    "parse_cup_document",
    "parse_document",
    "parse_rational",
    "render_rational",
    "serialize_document",
]


class DocumentError(ValueError):
    """The document text or structure is malformed, or a reference dangles."""


_RATIONAL = re.compile(r"-?\d+(/\d+)?\Z")


def parse_rational(value, where: str) -> Fraction:
    """JSON integer or "p/q" string; anything else (floats, decimal strings,
    booleans) is rejected because the format is exact by contract."""
    if isinstance(value, bool):
        raise DocumentError(f"{where}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.match(value):
        try:
            return Fraction(value)
        except ZeroDivisionError:
            raise DocumentError(f"{where}: {value!r} divides by zero") from None
    if isinstance(value, str):
        raise DocumentError(f"{where}: {value!r} is not a rational p/q")
    raise DocumentError(f"{where}: expected an integer or 'p/q' string, got {type(value).__name__}")


def render_rational(x: Fraction):
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise DocumentError(message)


def _expect_list(value, where: str) -> list:
    _expect(isinstance(value, list), f"{where}: expected a list")
    return value


def _expect_int(value, where: str) -> int:
    _expect(isinstance(value, int) and not isinstance(value, bool), f"{where}: expected an integer")
    return value


def _expect_name(entry: dict, where: str) -> str:
    _expect(isinstance(entry, dict), f"{where}: expected an object")
    name = entry.get("name")
    _expect(isinstance(name, str) and name != "", f"{where}: missing nonempty 'name'")
    return name


def _fields(entry: dict, required: Sequence[str], optional: Sequence[str], where: str) -> None:
    for key in required:
        _expect(key in entry, f"{where}: missing field '{key}'")
    allowed = set(required) | set(optional)
    for key in entry:
        _expect(key in allowed, f"{where}: unknown field '{key}'")


def _parse_vector(value, length: int, where: str) -> tuple[Fraction, ...]:
    row = _expect_list(value, where)
    _expect(len(row) == length, f"{where}: expected {length} entries, got {len(row)}")
    return tuple(parse_rational(v, f"{where}[{k}]") for k, v in enumerate(row))


def _parse_matrix(value, nrows: int, ncols: int, where: str) -> RationalMatrix:
    rows = _expect_list(value, where)
    _expect(len(rows) == nrows, f"{where}: expected {nrows} rows, got {len(rows)}")
    parsed = [_parse_vector(r, ncols, f"{where}[{k}]") for k, r in enumerate(rows)]
    return RationalMatrix.from_rows(parsed, ncols)


def _matrix_rows(m: RationalMatrix) -> list:
    return [[render_rational(x) for x in row] for row in m.rows]


@dataclass(frozen=True)
class ComplexEntry:
    """A named cochain complex, optionally carrying filtration weights."""

    name: str
    complex: GradedComplex
    weights: tuple[tuple[int, ...], ...] | None = None

    def filtered(self) -> FilteredComplex:
        if self.weights is None:
            raise ValueError(f"complex '{self.name}' has no filtration")
        return FilteredComplex.create(self.complex, self.weights)


@dataclass(frozen=True)
class ActionEntry:
    """Per-degree square matrices on a named complex (chain-map checks are
    left to the consumer)."""

    name: str
    complex_name: str
    maps: tuple[RationalMatrix, ...]


@dataclass(frozen=True)
class InputDocument:
    algebras: dict[str, LieAlgebra]
    subalgebras: dict[str, Subalgebra]
    automorphisms: dict[str, LieAutomorphism]
    complexes: dict[str, ComplexEntry]
    actions: dict[str, ActionEntry]

    def _lookup(self, table: dict, kind: str, name: str):
        if name not in table:
            known = ", ".join(sorted(table)) or "none"
            raise DocumentError(f"no {kind} named '{name}' in the document (available: {known})")
        return table[name]

    def algebra(self, name: str) -> LieAlgebra:
        return self._lookup(self.algebras, "lie algebra", name)

    def subalgebra(self, name: str) -> Subalgebra:
        return self._lookup(self.subalgebras, "subalgebra", name)

    def automorphism(self, name: str) -> LieAutomorphism:
        return self._lookup(self.automorphisms, "automorphism", name)

    def complex_entry(self, name: str) -> ComplexEntry:
        return self._lookup(self.complexes, "complex", name)

    def action(self, name: str) -> ActionEntry:
        return self._lookup(self.actions, "action", name)


_SECTIONS = ("lie_algebras", "subalgebras", "automorphisms", "complexes", "actions")


def _entries(data: dict, section: str) -> list:
    return _expect_list(data.get(section, []), section)


def _register(table: dict, name: str, value, where: str) -> None:
    _expect(name not in table, f"{where}: duplicate name '{name}'")
    table[name] = value


def parse_document(text: str) -> InputDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None
    _expect(isinstance(data, dict), "top level must be a JSON object")
    for key in data:
        _expect(key in _SECTIONS, f"unknown section '{key}'")

    algebras: dict[str, LieAlgebra] = {}
    for k, entry in enumerate(_entries(data, "lie_algebras")):
        where = f"lie_algebras[{k}]"
        name = _expect_name(entry, where)
        _fields(entry, ("name", "dim", "brackets"), (), where)
        dim = _expect_int(entry["dim"], f"{where}.dim")
        _expect(dim >= 1, f"{where}.dim: must be at least 1")
        table = []
        for t, item in enumerate(_expect_list(entry["brackets"], f"{where}.brackets")):
            w = f"{where}.brackets[{t}]"
            trip = _expect_list(item, w)
            _expect(len(trip) == 3, f"{w}: expected [i, j, coefficients]")
            i = _expect_int(trip[0], f"{w}[0]")
            j = _expect_int(trip[1], f"{w}[1]")
            table.append(((i, j), _parse_vector(trip[2], dim, f"{w}[2]")))
        try:
            g = LieAlgebra.from_brackets(name, dim, table)
        except ValueError as e:
            raise DocumentError(f"{where}: {e}") from None
        _register(algebras, name, g, where)

    subalgebras: dict[str, Subalgebra] = {}
    for k, entry in enumerate(_entries(data, "subalgebras")):
        where = f"subalgebras[{k}]"
        name = _expect_name(entry, where)
        _fields(entry, ("name", "parent", "basis"), (), where)
        parent = entry["parent"]
        _expect(parent in algebras, f"{where}: parent algebra '{parent}' not in the document")
        g = algebras[parent]
        vecs = [
            _parse_vector(v, g.dim, f"{where}.basis[{t}]")
            for t, v in enumerate(_expect_list(entry["basis"], f"{where}.basis"))
        ]
        # closure under the bracket is mathematical validation, not parsing
        _register(subalgebras, name, Subalgebra.span(g, vecs, name), where)

    automorphisms: dict[str, LieAutomorphism] = {}
    for k, entry in enumerate(_entries(data, "automorphisms")):
        where = f"automorphisms[{k}]"
        name = _expect_name(entry, where)
        _fields(entry, ("name", "algebra", "matrix"), (), where)
        target = entry["algebra"]
        _expect(target in algebras, f"{where}: algebra '{target}' not in the document")
        g = algebras[target]
        m = _parse_matrix(entry["matrix"], g.dim, g.dim, f"{where}.matrix")
        _register(automorphisms, name, LieAutomorphism.create(g, m, name), where)

    complexes: dict[str, ComplexEntry] = {}
    for k, entry in enumerate(_entries(data, "complexes")):
        where = f"complexes[{k}]"
        name = _expect_name(entry, where)
        _fields(entry, ("name", "dims", "differentials"), ("filtration",), where)
        dims = [
            _expect_int(d, f"{where}.dims[{t}]")
            for t, d in enumerate(_expect_list(entry["dims"], f"{where}.dims"))
        ]
        _expect(bool(dims), f"{where}.dims: must be nonempty")
        _expect(all(d >= 0 for d in dims), f"{where}.dims: dimensions must be nonnegative")
        raw = _expect_list(entry["differentials"], f"{where}.differentials")
        _expect(
            len(raw) == len(dims) - 1,
            f"{where}.differentials: expected {len(dims) - 1} matrices, got {len(raw)}",
        )
        diffs = [
            _parse_matrix(m, dims[t + 1], dims[t], f"{where}.differentials[{t}]")
            for t, m in enumerate(raw)
        ]
        weights = None
        if "filtration" in entry:
            wlists = _expect_list(entry["filtration"], f"{where}.filtration")
            _expect(
                len(wlists) == len(dims),
                f"{where}.filtration: expected {len(dims)} weight lists",
            )
            weights = []
            for n, wl in enumerate(wlists):
                wn = f"{where}.filtration[{n}]"
                lst = _expect_list(wl, wn)
                _expect(len(lst) == dims[n], f"{wn}: expected {dims[n]} weights")
                vals = tuple(_expect_int(w, f"{wn}[{t}]") for t, w in enumerate(lst))
                _expect(all(w >= 0 for w in vals), f"{wn}: weights must be nonnegative")
                weights.append(vals)
            weights = tuple(weights)
        cx = GradedComplex.create(dims, diffs)  # d^2 = 0 checked by the engine
        _register(complexes, name, ComplexEntry(name, cx, weights), where)

    actions: dict[str, ActionEntry] = {}
    for k, entry in enumerate(_entries(data, "actions")):
        where = f"actions[{k}]"
        name = _expect_name(entry, where)
        _fields(entry, ("name", "complex", "maps"), (), where)
        target = entry["complex"]
        _expect(target in complexes, f"{where}: complex '{target}' not in the document")
        cx = complexes[target].complex
        raw = _expect_list(entry["maps"], f"{where}.maps")
        _expect(
            len(raw) == cx.top + 1,
            f"{where}.maps: expected {cx.top + 1} matrices, got {len(raw)}",
        )
        maps = tuple(
            _parse_matrix(m, cx.dims[t], cx.dims[t], f"{where}.maps[{t}]")
            for t, m in enumerate(raw)
        )
        _register(actions, name, ActionEntry(name, target, maps), where)

    return InputDocument(algebras, subalgebras, automorphisms, complexes, actions)


def document_to_dict(doc: InputDocument) -> dict:
    """Plain-data form with sorted entries and canonical rationals."""
    payload: dict = {section: [] for section in _SECTIONS}
    for name in sorted(doc.algebras):
        g = doc.algebras[name]
        payload["lie_algebras"].append(
            {
                "name": name,
                "dim": g.dim,
                "brackets": [
                    [i, j, [render_rational(c) for c in coeffs]]
                    for (i, j), coeffs in g.brackets
                ],
            }
        )
    for name in sorted(doc.subalgebras):
        h = doc.subalgebras[name]
        payload["subalgebras"].append(
            {
                "name": name,
                "parent": h.algebra.name,
                "basis": [[render_rational(c) for c in v] for v in h.basis.vectors],
            }
        )
    for name in sorted(doc.automorphisms):
        a = doc.automorphisms[name]
        payload["automorphisms"].append(
            {"name": name, "algebra": a.algebra.name, "matrix": _matrix_rows(a.matrix)}
        )
    for name in sorted(doc.complexes):
        entry = doc.complexes[name]
        item = {
            "name": name,
            "dims": list(entry.complex.dims),
            "differentials": [_matrix_rows(m) for m in entry.complex.differentials],
        }
        if entry.weights is not None:
            item["filtration"] = [list(w) for w in entry.weights]
        payload["complexes"].append(item)
    for name in sorted(doc.actions):
        act = doc.actions[name]
        payload["actions"].append(
            {
                "name": name,
                "complex": act.complex_name,
                "maps": [_matrix_rows(m) for m in act.maps],
            }
        )
    return payload


def serialize_document(doc: InputDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# cup-form documents (used by the 5-manifold obstruction)


def parse_cup_document(text: str) -> CupForm:
    """{"b2": int, "matrices": [b2 x b2 symmetric matrices...]}"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"invalid JSON: {e}") from None
    _expect(isinstance(data, dict), "top level must be a JSON object")
    _fields(data, ("b2", "matrices"), (), "cup document")
    b2 = _expect_int(data["b2"], "b2")
    _expect(b2 >= 0, "b2 must be nonnegative")
    mats = [
        _parse_matrix(m, b2, b2, f"matrices[{k}]")
        for k, m in enumerate(_expect_list(data["matrices"], "matrices"))
    ]
    return CupForm.create(b2, mats)  # symmetry checked by the engine


def cup_to_dict(cup: CupForm) -> dict:
    return {"b2": cup.b2, "matrices": [_matrix_rows(m) for m in cup.matrices]}
