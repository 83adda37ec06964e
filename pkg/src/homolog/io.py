"""Text format for algebras and modules, and canonical JSON reports.

Grammar (one directive per line, ``#`` starts a comment)::

    document  := header* quiver relations? module*
    header    := "field" ("F" PRIME | "Q") | "name" WORD | "max_length" INT | "meta" WORD VALUE*
    quiver    := "quiver" NL ("vertex" ID NL | "arrow" NAME ID ID NL)*
    relations := "relations" NL (term (("+" | "-") term)* NL)*
    term      := [COEFF "*"] NAME ("." NAME)*
    module    := "module" NAME NL ("dim" (ID "=" INT)* NL | "map" NAME MATRIX NL)*
    MATRIX    := "[" [row ("," row)*] "]"      row := "[" [entry ("," entry)*] "]"
    COEFF, entry := ["-"] INT ["/" INT]

A matrix for an arrow ``i -> j`` has one row per basis vector at ``j`` and one
column per basis vector at ``i``.  Vertices missing from ``dim`` have
dimension zero, and a missing ``map`` line means the zero matrix.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .algebra import BoundQuiverAlgebra, Quiver, build_algebra, relation_from_words
from .errors import (BadMatrixShape, DuplicateName, FieldMismatch, InputError, NonComposablePath, ParseSyntaxError,
                     UnknownArrow)
from .field import Field, field_from_spec
from .modules import Representation


@dataclass
class ModuleSpec:
    name: str
    dims: dict[str, int] = field(default_factory=dict)
    maps: dict[str, list[list[Fraction]]] = field(default_factory=dict)
    line: int = 0

    def __eq__(self, other):
        return (isinstance(other, ModuleSpec) and self.name == other.name and self.dims == other.dims
                and self.maps == other.maps)


@dataclass
class Document:
    field_kind: str = "F"              # "F" or "Q"
    p: int | None = None
    name: str | None = None
    max_length: int | None = None
    meta: dict[str, list[str]] = field(default_factory=dict)
    vertices: list[str] = field(default_factory=list)
    arrows: list[tuple[str, str, str]] = field(default_factory=list)
    relations: list[list[tuple[Fraction, tuple[str, ...]]]] = field(default_factory=list)
    modules: list[ModuleSpec] = field(default_factory=list)

    def structure(self) -> tuple:
        """Everything except source positions, for round-trip comparisons."""
        return (self.field_kind, self.p, self.name, self.max_length, sorted(self.meta.items()),
                self.vertices, self.arrows, self.relations,
                [(m.name, sorted(m.dims.items()), sorted(m.maps.items())) for m in self.modules])

    # -- conversion ----------------------------------------------------
    def make_field(self) -> Field:
        return field_from_spec(self.field_kind, self.p)

    def quiver(self) -> Quiver:
        return Quiver(tuple(self.vertices), tuple(self.arrows))

    def algebra(self) -> BoundQuiverAlgebra:
        Q = self.quiver()
        rels = [relation_from_words(Q, [(c, ".".join(word)) for c, word in terms]) for terms in self.relations]
        return build_algebra(Q, rels, self.make_field(), self.max_length or 64, self.name)

    def module_spec(self, name: str) -> ModuleSpec:
        for m in self.modules:
            if m.name == name:
                return m
        raise InputError(f"no module named {name!r}")

    def module(self, name: str, A: BoundQuiverAlgebra | None = None) -> Representation:
        return module_from_spec(A if A is not None else self.algebra(), self.module_spec(name))


def module_from_spec(A: BoundQuiverAlgebra, spec: ModuleSpec) -> Representation:
    F, Q = A.field, A.quiver
    dims = [spec.dims.get(v, 0) for v in Q.vertices]
    mats = []
    for a, (name, s, t) in enumerate(Q.arrows):
        rows = spec.maps.get(name)
        shape = (dims[Q.tgt[a]], dims[Q.src[a]])
        if rows is None:
            mats.append(F.zeros(*shape))
        else:
            mats.append(F.array(rows).reshape(shape))
    return Representation(A, dims, mats)


# --------------------------------------------------------------------------
# parsing

_NUM = r"-?\d+(?:/\d+)?"
_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?([A-Za-z_][\w']*(?:\.[A-Za-z_][\w']*)*)\s*")
_NAME = re.compile(r"[A-Za-z_][\w']*$")
_ID = re.compile(r"[\w']+$")


def _number(tok: str, line: int, col: int, doc: Document) -> Fraction:
    if not re.fullmatch(_NUM, tok):
        raise ParseSyntaxError(f"expected a number, got {tok!r}", line, col)
    val = Fraction(tok)
    if doc.field_kind == "F" and val.denominator % doc.p == 0:
        raise FieldMismatch(f"{tok} has a denominator divisible by {doc.p}", line, col)
    return val


def _split_words(text: str) -> list[tuple[str, int]]:
    """Whitespace separated words with 1-based columns."""
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", text)]


def _parse_matrix(text: str, line: int, col0: int, doc: Document) -> list[list[Fraction]]:
    pos = 0
    n = len(text)

    def err(msg):
        raise ParseSyntaxError(msg, line, col0 + pos)

    def skip():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def expect(ch):
        nonlocal pos
        skip()
        if pos >= n or text[pos] != ch:
            err(f"expected {ch!r}")
        pos += 1

    def peek():
        skip()
        return text[pos] if pos < n else ""

    rows: list[list[Fraction]] = []
    expect("[")
    if peek() == "]":
        pos += 1
    else:
        while True:
            expect("[")
            row: list[Fraction] = []
            if peek() == "]":
                pos += 1
            else:
                while True:
                    skip()
                    m = re.compile(_NUM).match(text, pos)
                    if not m:
                        err("expected a matrix entry")
                    row.append(_number(m.group(0), line, col0 + pos, doc))
                    pos = m.end()
                    c = peek()
                    if c == ",":
                        pos += 1
                        continue
                    expect("]")
                    break
            rows.append(row)
            c = peek()
            if c == ",":
                pos += 1
                continue
            expect("]")
            break
    if peek():
        err("unexpected text after matrix")
    return rows


def _parse_relation(text: str, line: int, col0: int, doc: Document, arrows: dict[str, tuple[str, str, str]]
                    ) -> list[tuple[Fraction, tuple[str, ...]]]:
    terms = []
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseSyntaxError("malformed relation term", line, col0 + pos)
        sign, coeff, word = m.group(1), m.group(2), m.group(3)
        if sign is None and not first:
            raise ParseSyntaxError("terms must be joined by + or -", line, col0 + m.start(3))
        c = _number(coeff, line, col0 + m.start(2), doc) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        names = tuple(word.split("."))
        wcol = col0 + m.start(3)
        prev = None
        for k, a in enumerate(names):
            if a not in arrows:
                raise UnknownArrow(f"unknown arrow {a!r}", line, wcol)
            if prev is not None and arrows[prev][2] != arrows[a][1]:
                raise NonComposablePath(f"{prev} ends at {arrows[prev][2]} but {a} starts at {arrows[a][1]}",
                                        line, wcol)
            prev = a
            wcol += len(a) + 1
        terms.append((c, names))
        pos = m.end()
        first = False
    if not terms:
        raise ParseSyntaxError("empty relation", line, col0)
    return terms


def parse_document(text: str) -> Document:
    """Parse a document; every error carries a line and column."""
    doc = Document(field_kind="", p=None)
    section = None
    current: ModuleSpec | None = None
    arrows: dict[str, tuple[str, str, str]] = {}
    vertices: set[str] = set()
    seen_field = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        words = _split_words(body)
        if not words:
            continue
        key, kcol = words[0]
        if key == "field":
            if seen_field:
                raise DuplicateName("field declared twice", lineno, kcol)
            if len(words) == 2 and words[1][0] == "Q":
                doc.field_kind = "Q"
            elif len(words) == 3 and words[1][0] == "F" and words[2][0].isdigit():
                doc.field_kind, doc.p = "F", int(words[2][0])
                try:
                    field_from_spec("F", doc.p)
                except InputError as e:
                    raise FieldMismatch(str(e), lineno, words[2][1]) from None
            else:
                raise ParseSyntaxError("expected 'field F <p>' or 'field Q'", lineno, kcol)
            seen_field = True
            continue
        if not seen_field:
            raise ParseSyntaxError("the document must start with a field declaration", lineno, kcol)
        if key == "name" and section is None:
            if len(words) != 2:
                raise ParseSyntaxError("expected 'name <word>'", lineno, kcol)
            doc.name = words[1][0]
        elif key == "max_length" and section is None:
            if len(words) != 2 or not words[1][0].isdigit():
                raise ParseSyntaxError("expected 'max_length <int>'", lineno, kcol)
            doc.max_length = int(words[1][0])
        elif key == "meta" and section is None:
            if len(words) < 2:
                raise ParseSyntaxError("expected 'meta <key> <values...>'", lineno, kcol)
            if words[1][0] in doc.meta:
                raise DuplicateName(f"meta key {words[1][0]!r} repeated", lineno, words[1][1])
            doc.meta[words[1][0]] = [w for w, _ in words[2:]]
        elif key == "quiver":
            if section is not None or len(words) != 1:
                raise ParseSyntaxError("misplaced 'quiver'", lineno, kcol)
            section = "quiver"
        elif key == "relations":
            if section != "quiver" or len(words) != 1:
                raise ParseSyntaxError("'relations' must follow the quiver block", lineno, kcol)
            section = "relations"
        elif key == "module":
            if section is None or len(words) != 2 or not _NAME.match(words[1][0]):
                raise ParseSyntaxError("expected 'module <name>' after the quiver", lineno, kcol)
            if any(m.name == words[1][0] for m in doc.modules):
                raise DuplicateName(f"module {words[1][0]!r} defined twice", lineno, words[1][1])
            current = ModuleSpec(words[1][0], line=lineno)
            doc.modules.append(current)
            section = "module"
        elif section == "quiver" and key == "vertex":
            if len(words) != 2 or not _ID.match(words[1][0]):
                raise ParseSyntaxError("expected 'vertex <id>'", lineno, kcol)
            v = words[1][0]
            if v in vertices:
                raise DuplicateName(f"vertex {v!r} declared twice", lineno, words[1][1])
            vertices.add(v)
            doc.vertices.append(v)
        elif section == "quiver" and key == "arrow":
            if len(words) != 4 or not _NAME.match(words[1][0]):
                raise ParseSyntaxError("expected 'arrow <name> <source> <target>'", lineno, kcol)
            name = words[1][0]
            if name in arrows:
                raise DuplicateName(f"arrow {name!r} declared twice", lineno, words[1][1])
            for w, c in words[2:]:
                if w not in vertices:
                    raise ParseSyntaxError(f"unknown vertex {w!r}", lineno, c)
            arrows[name] = (name, words[2][0], words[3][0])
            doc.arrows.append(arrows[name])
        elif section == "relations":
            doc.relations.append(_parse_relation(body[kcol - 1:].rstrip(), lineno, kcol, doc, arrows))
        elif section == "module" and key == "dim":
            for w, c in words[1:]:
                m = re.fullmatch(r"([\w']+)=(\d+)", w)
                if not m:
                    raise ParseSyntaxError("expected <vertex>=<dimension>", lineno, c)
                if m.group(1) not in vertices:
                    raise ParseSyntaxError(f"unknown vertex {m.group(1)!r}", lineno, c)
                if m.group(1) in current.dims:
                    raise DuplicateName(f"dimension of {m.group(1)!r} given twice", lineno, c)
                current.dims[m.group(1)] = int(m.group(2))
        elif section == "module" and key == "map":
            if len(words) < 3:
                raise ParseSyntaxError("expected 'map <arrow> <matrix>'", lineno, kcol)
            a, acol = words[1]
            if a not in arrows:
                raise UnknownArrow(f"unknown arrow {a!r}", lineno, acol)
            if a in current.maps:
                raise DuplicateName(f"map for {a!r} given twice", lineno, acol)
            mcol = words[2][1]
            rows = _parse_matrix(body[mcol - 1:].rstrip(), lineno, mcol, doc)
            _, s, t = arrows[a]
            ds, dt = current.dims.get(s, 0), current.dims.get(t, 0)
            if len(rows) != dt or any(len(r) != ds for r in rows):
                raise BadMatrixShape(f"map {a} must be {dt} x {ds}", lineno, mcol)
            current.maps[a] = rows
        else:
            raise ParseSyntaxError(f"unexpected {key!r} here", lineno, kcol)
    if not seen_field:
        raise ParseSyntaxError("missing field declaration", 1, 1)
    if section is None:
        raise ParseSyntaxError("missing quiver block", max(1, len(text.splitlines())), 1)
    # dims declared after a map are checked again here
    for m in doc.modules:
        for a, rows in m.maps.items():
            _, s, t = arrows[a]
            if len(rows) != m.dims.get(t, 0) or any(len(r) != m.dims.get(s, 0) for r in rows):
                raise BadMatrixShape(f"map {a} of module {m.name} does not match its dimensions", m.line, 1)
    return doc


def parse_file(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


# --------------------------------------------------------------------------
# serialization


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def serialize_document(doc: Document) -> str:
    out = ["field Q" if doc.field_kind == "Q" else f"field F {doc.p}"]
    if doc.name:
        out.append(f"name {doc.name}")
    if doc.max_length:
        out.append(f"max_length {doc.max_length}")
    for k, vals in doc.meta.items():
        out.append(" ".join(["meta", k, *vals]))
    out.append("quiver")
    out += [f"  vertex {v}" for v in doc.vertices]
    out += [f"  arrow {n} {s} {t}" for n, s, t in doc.arrows]
    if doc.relations:
        out.append("relations")
        for terms in doc.relations:
            parts = []
            for k, (c, word) in enumerate(terms):
                sign = "-" if c < 0 else "+"
                body = f"{_fmt(abs(c))}*{'.'.join(word)}"
                parts.append(body if k == 0 and sign == "+" else f"{sign} {body}")
            out.append("  " + " ".join(parts))
    for m in doc.modules:
        out.append(f"module {m.name}")
        dims = " ".join(f"{v}={m.dims[v]}" for v in doc.vertices if v in m.dims)
        out.append(f"  dim {dims}".rstrip())
        for a, rows in m.maps.items():
            mat = "[" + ",".join("[" + ",".join(_fmt(x) for x in r) + "]" for r in rows) + "]"
            out.append(f"  map {a} {mat}")
    return "\n".join(out) + "\n"


def document_from_algebra(A: BoundQuiverAlgebra, modules: dict[str, Representation] | None = None) -> Document:
    F, Q = A.field, A.quiver
    doc = Document(field_kind="F" if F.is_prime else "Q", p=F.p if F.is_prime else None, name=A.name,
                   max_length=A.max_length if A.max_length != 64 else None)
    doc.vertices = list(Q.vertices)
    doc.arrows = list(Q.arrows)
    for r in A.relations:
        doc.relations.append([(Fraction(F.to_python(c)), tuple(Q.arrows[a][0] for a in p.arrows))
                              for c, p in r.terms])
    for name, M in (modules or {}).items():
        spec = ModuleSpec(name, {v: d for v, d in zip(Q.vertices, M.dims) if d})
        for a, (an, _, _) in enumerate(Q.arrows):
            if M.mats[a].size and not F.is_zero(M.mats[a]):
                spec.maps[an] = [[Fraction(F.to_python(x)) for x in row] for row in M.mats[a]]
        doc.modules.append(spec)
    return doc


# --------------------------------------------------------------------------
# reports


@dataclass
class InvariantReport:
    name: str | None
    dimension: int
    field: str
    invariants: dict[str, Any] = field(default_factory=dict)
    bounds: dict[str, Any] | None = None
    timing: dict[str, Any] | None = None

    def as_json(self) -> dict:
        out: dict[str, Any] = {"algebra": {"name": self.name, "dimension": self.dimension, "field": self.field}}
        out.update(self.invariants)
        if self.bounds is not None:
            out["bounds"] = self.bounds
        if self.timing is not None:
            out["timing"] = self.timing
        return out


def _jsonable(x):
    from .syzygy import Beyond
    if isinstance(x, Beyond):
        return str(x)
    if isinstance(x, Fraction):
        return _fmt(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, float):
        raise TypeError("reports never carry floating point values")
    if hasattr(x, "item"):
        return x.item()
    return x


def emit_report(report: InvariantReport | dict) -> str:
    """Canonical JSON: insertion-ordered keys, two-space indent, trailing newline."""
    data = report.as_json() if isinstance(report, InvariantReport) else report
    return json.dumps(_jsonable(data), indent=2, ensure_ascii=False) + "\n"


def field_label(F: Field) -> str:
    return f"F_{F.p}" if F.is_prime else "Q"
