"""JSON documents for systems, relations and automata.

Scalars are read exactly: JSON numbers go straight to ``Fraction`` (so
``0.3`` is 3/10, never a binary float) and strings may hold ``"3/10"``.
They are written as fraction strings, or as terminating decimals when
requested and possible, so every emitted document re-reads to equal values.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from weaklin.errors import LatticeMismatchError, WeaklinError
from weaklin.lattice import ResiduatedLattice, parse_lattice, truth
from weaklin.relation import FuzzyRelation
from weaklin.solver import SystemKind, WeaklyLinearSystem


class DocumentError(WeaklinError, ValueError):
    """Unreadable or malformed input document."""


# -- scalars ------------------------------------------------------------------

def _terminating_digits(v: Fraction) -> Optional[int]:
    d, k = v.denominator, 0
    while d % 10 == 0:
        d //= 10
        k += 1
    while d % 2 == 0:
        d //= 2
        k += 1
    while d % 5 == 0:
        d //= 5
        k += 1
    return k if d == 1 else None


def format_scalar(v: Fraction, decimal: bool = False) -> str:
    if decimal:
        k = _terminating_digits(v)
        if k is not None:
            if k == 0:
                return str(v.numerator)
            scaled = v.numerator * 10 ** k // v.denominator
            sign = "-" if scaled < 0 else ""
            digits = str(abs(scaled)).rjust(k + 1, "0")
            return f"{sign}{digits[:-k]}.{digits[-k:]}".rstrip("0").rstrip(".")
    return str(v)


def parse_scalar(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction, str)):
        raise DocumentError(f"{where}: expected a number or a fraction string, got {x!r}")
    try:
        return truth(x)
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"{where}: {exc}") from None


# -- documents ----------------------------------------------------------------

def loads(text: str, source: str = "<input>") -> Any:
    try:
        return json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def load(path) -> Any:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror or exc}") from None
    return loads(text, str(path))


def _scalar_json(o) -> str:
    return json.dumps(str(o) if isinstance(o, Fraction) else o)


def _dump(o, indent: int) -> str:
    pad, inner = " " * indent, " " * (indent + 2)
    if isinstance(o, dict):
        if not o:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {_dump(v, indent + 2)}" for k, v in o.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(o, (list, tuple)):
        if all(not isinstance(x, (dict, list, tuple)) for x in o):
            # scalar rows stay on one line so matrices read as matrices
            return "[" + ", ".join(_scalar_json(x) for x in o) + "]"
        return "[\n" + ",\n".join(inner + _dump(x, indent + 2) for x in o) + "\n" + pad + "]"
    return _scalar_json(o)


def dumps(doc: Any) -> str:
    """Deterministic JSON text with one matrix row per line."""
    return _dump(doc, 0) + "\n"


def _field(doc: dict, key: str, where: str, required: bool = True):
    if not isinstance(doc, dict):
        raise DocumentError(f"{where or 'document'}: expected an object")
    if key not in doc:
        if required:
            raise DocumentError(f"{where + '.' if where else ''}{key}: missing field")
        return None
    return doc[key]


def parse_matrix(obj: Any, where: str) -> tuple:
    if not isinstance(obj, list) or not obj:
        raise DocumentError(f"{where}: expected a non-empty list of rows")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or not row:
            raise DocumentError(f"{where}[{i}]: expected a non-empty list of scalars")
        rows.append(tuple(parse_scalar(x, f"{where}[{i}][{j}]") for j, x in enumerate(row)))
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DocumentError(f"{where}[{i}]: row has {len(row)} entries, row 0 has {width}")
    return tuple(rows)


def parse_vector(obj: Any, where: str) -> tuple:
    if not isinstance(obj, list) or not obj:
        raise DocumentError(f"{where}: expected a non-empty list of scalars")
    return tuple(parse_scalar(x, f"{where}[{j}]") for j, x in enumerate(obj))


def _labels(doc: dict, key: str, n: int) -> tuple:
    raw = doc.get(key)
    if raw is None:
        return tuple(str(k) for k in range(1, n + 1))
    if not isinstance(raw, list) or not all(isinstance(x, (str, int)) for x in raw):
        raise DocumentError(f"{key}: expected a list of labels")
    labels = tuple(str(x) for x in raw)
    if len(set(labels)) != len(labels):
        raise DocumentError(f"{key}: duplicate labels")
    return labels


def parse_lattice_field(doc: dict) -> ResiduatedLattice:
    name = _field(doc, "lattice", "")
    if not isinstance(name, str):
        raise DocumentError("lattice: expected a string such as 'godel' or 'chain:4'")
    try:
        return parse_lattice(name)
    except ValueError as exc:
        raise DocumentError(f"lattice: {exc}") from None


def _relation(rows, lattice, dom, cod, where) -> FuzzyRelation:
    # lattice membership problems are document errors; shape ones keep their type
    try:
        return FuzzyRelation(rows, lattice, dom, cod)
    except LatticeMismatchError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def parse_kind(text: Any, where: str = "variant") -> SystemKind:
    if not isinstance(text, str):
        raise DocumentError(f"{where}: expected a string like 'wl2-3'")
    try:
        return SystemKind.parse(text)
    except ValueError as exc:
        raise DocumentError(f"{where}: {exc}") from None


def system_from_document(doc: dict, kind: Optional[SystemKind] = None) -> WeaklyLinearSystem:
    """Build a system from an instance document.

    Heterogeneous documents list ``pairs`` of ``{"V": ..., "W": ...}`` and an
    optional ``Z``; homogeneous ones list ``relations`` and an optional
    bound ``W``.  Labels come from ``A`` and ``B`` and default to ``"1"..``.
    """
    lattice = parse_lattice_field(doc)
    if kind is None:
        kind = parse_kind(_field(doc, "variant", ""))
    if kind.homogeneous:
        mats = _field(doc, "relations", "")
        if not isinstance(mats, list) or not mats:
            raise DocumentError("relations: expected a non-empty list of matrices")
        V_rows = [parse_matrix(m, f"relations[{i}]") for i, m in enumerate(mats)]
        A = _labels(doc, "A", len(V_rows[0]))
        V = [_relation(r, lattice, A, A, f"relations[{i}]") for i, r in enumerate(V_rows)]
        bound = doc.get("W")
        W = None if bound is None else _relation(parse_matrix(bound, "W"), lattice, A, A, "W")
        return WeaklyLinearSystem.homogeneous(kind.variant, V, W)
    pairs = _field(doc, "pairs", "")
    if not isinstance(pairs, list):
        raise DocumentError("pairs: expected a list of {V, W} objects")
    V_rows, W_rows = [], []
    for i, p in enumerate(pairs):
        V_rows.append(parse_matrix(_field(p, "V", f"pairs[{i}]"), f"pairs[{i}].V"))
        W_rows.append(parse_matrix(_field(p, "W", f"pairs[{i}]"), f"pairs[{i}].W"))
    Z_raw = doc.get("Z")
    Z_rows = None if Z_raw is None else parse_matrix(Z_raw, "Z")
    if V_rows:
        n, m = len(V_rows[0]), len(W_rows[0])
    elif Z_rows is not None:
        n, m = len(Z_rows), len(Z_rows[0])
    else:
        raise DocumentError("pairs: empty index set needs an explicit Z")
    A, B = _labels(doc, "A", n), _labels(doc, "B", m)
    V = [_relation(r, lattice, A, A, f"pairs[{i}].V") for i, r in enumerate(V_rows)]
    W = [_relation(r, lattice, B, B, f"pairs[{i}].W") for i, r in enumerate(W_rows)]
    Z = None if Z_rows is None else _relation(Z_rows, lattice, A, B, "Z")
    return WeaklyLinearSystem.heterogeneous(kind.variant, V, W, Z)


def relation_from_document(doc: Any, lattice: ResiduatedLattice, domain, codomain,
                           keys=("solution", "relation")) -> FuzzyRelation:
    """A relation given as a bare matrix or under one of ``keys``."""
    where = "relation"
    if isinstance(doc, dict):
        for k in keys:
            if k in doc:
                doc, where = doc[k], k
                break
        else:
            raise DocumentError(f"expected a matrix or one of the fields {list(keys)}")
    return _relation(parse_matrix(doc, where), lattice, domain, codomain, where)


def matrix_to_json(R: FuzzyRelation, decimal: bool = False) -> list:
    return [[format_scalar(v, decimal) for v in row] for row in R.rows]


def labels_to_json(labels) -> list:
    return [str(x) for x in labels]


def system_to_document(system: WeaklyLinearSystem, decimal: bool = False) -> dict:
    doc = {"lattice": system.lattice.name, "variant": str(system.kind),
           "A": labels_to_json(system.A)}
    if system.kind.homogeneous:
        doc["relations"] = [matrix_to_json(v, decimal) for v in system.V]
        doc["W"] = matrix_to_json(system.bound, decimal)
    else:
        doc["B"] = labels_to_json(system.B)
        doc["pairs"] = [{"V": matrix_to_json(v, decimal), "W": matrix_to_json(w, decimal)}
                        for v, w in zip(system.V, system.W)]
        doc["Z"] = matrix_to_json(system.bound, decimal)
    return doc


def automaton_from_document(doc: dict):
    from weaklin.automata import FuzzyAutomaton

    lattice = parse_lattice_field(doc)
    trans = _field(doc, "transitions", "")
    if not isinstance(trans, dict) or not trans:
        raise DocumentError("transitions: expected an object mapping letters to matrices")
    alphabet = doc.get("alphabet", list(trans))
    if not isinstance(alphabet, list) or set(map(str, alphabet)) != set(trans):
        raise DocumentError("alphabet: must list exactly the letters of transitions")
    rows = {str(x): parse_matrix(trans[str(x)], f"transitions.{x}") for x in alphabet}
    n = len(next(iter(rows.values())))
    states = _labels(doc, "states", n)
    deltas = {x: _relation(r, lattice, states, states, f"transitions.{x}") for x, r in rows.items()}
    initial = parse_vector(_field(doc, "initial", ""), "initial")
    terminal = parse_vector(_field(doc, "terminal", ""), "terminal")
    try:
        return FuzzyAutomaton(deltas, initial, terminal)
    except LatticeMismatchError as exc:
        raise DocumentError(str(exc)) from None


def automaton_to_document(M, decimal: bool = False) -> dict:
    return {
        "lattice": M.lattice.name,
        "states": labels_to_json(M.states),
        "alphabet": [str(x) for x in M.alphabet],
        "transitions": {str(x): matrix_to_json(M.transitions[x], decimal) for x in M.alphabet},
        "initial": [format_scalar(v, decimal) for v in M.initial],
        "terminal": [format_scalar(v, decimal) for v in M.terminal],
    }
