"""Text definition files for rings, endomorphisms and modules.

Grammar (one directive per line, ``#`` starts a comment, element 0 is zero)::

    ring <name> <size>
    labels <label_0> ... <label_{size-1}>      # optional
    add
    <size rows of size indices>
    mul
    <size rows of size indices>
    one <index>

    endo <name> <ringname>
    <one row of size indices>

    module <name> over <ringname> <size>
    add
    <size rows of size indices>
    action
    <size rows of ring-size indices>

    module regular over <ringname>

Every ring also gets the identity endomorphism ``id`` and the regular module
``regular`` when the file does not declare them.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .catalog import CatalogEntry
from .errors import DefinitionError, EndomorphismViolation, MalformedInput
from .finmod import ModuleTable, regular_module, verify_module_axioms
from .finring import Endomorphism, RingTable, identity_endomorphism, verify_endomorphism, verify_ring_axioms

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.-]*\Z")


@dataclass(frozen=True)
class _Token:
    text: str
    line: int
    column: int


class _Lines:
    def __init__(self, text: str, source: str):
        self.source = source
        self.rows: list[list[_Token]] = []
        for n, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0]
            toks = [_Token(m.group(), n, m.start() + 1) for m in re.finditer(r"\S+", body)]
            if toks:
                self.rows.append(toks)
        self.pos = 0
        self.last_line = len(text.splitlines())

    def error(self, message: str, tok: _Token | None = None) -> DefinitionError:
        if tok is None:
            return DefinitionError(message, self.last_line, None, self.source)
        return DefinitionError(message, tok.line, tok.column, self.source)

    def done(self) -> bool:
        return self.pos >= len(self.rows)

    def next(self, expected: str) -> list[_Token]:
        if self.done():
            raise self.error(f"unexpected end of file, expected {expected}")
        row = self.rows[self.pos]
        self.pos += 1
        return row

    def peek(self) -> list[_Token] | None:
        return None if self.done() else self.rows[self.pos]

    def keyword(self, word: str) -> list[_Token]:
        row = self.next(f"'{word}'")
        if row[0].text != word:
            raise self.error(f"expected '{word}', found '{row[0].text}'", row[0])
        return row

    def int_token(self, tok: _Token, low: int, high: int, what: str) -> int:
        try:
            value = int(tok.text)
        except ValueError:
            raise self.error(f"expected {what}, found '{tok.text}'", tok) from None
        if not low <= value <= high:
            raise self.error(f"{what} {value} outside {low}..{high}", tok)
        return value

    def name_token(self, tok: _Token) -> str:
        if not _NAME.match(tok.text):
            raise self.error(f"expected an identifier, found '{tok.text}'", tok)
        return tok.text

    def arity(self, row: list[_Token], n: int, shape: str) -> None:
        if len(row) < n:
            raise self.error(f"expected {shape}, line ends after {len(row)} tokens", row[-1])
        if len(row) > n:
            raise self.error(f"expected {shape}, found extra token '{row[n].text}'", row[n])

    def block(self, rows: int, cols: int, values: int, what: str) -> list[list[int]]:
        out = []
        for r in range(rows):
            row = self.next(f"row {r} of the {what} table")
            self.arity(row, cols, f"{cols} indices in row {r} of the {what} table")
            out.append([self.int_token(t, 0, values - 1, "element index") for t in row])
        return out


@dataclass
class _PendingRing:
    name: str
    line: int
    ring: RingTable
    endos: list[Endomorphism]
    modules: list[ModuleTable]
    endo_lines: dict[str, int]
    module_lines: dict[str, int]


def _witness_text(witness) -> str:
    return "(" + ", ".join(str(v) for v in witness) + ")" if witness is not None else "()"


def _parse_ring(lines: _Lines, head: list[_Token]) -> tuple[str, RingTable]:
    lines.arity(head, 3, "'ring <name> <size>'")
    name = lines.name_token(head[1])
    size = lines.int_token(head[2], 1, 10**6, "ring size")
    labels = None
    nxt = lines.peek()
    if nxt is not None and nxt[0].text == "labels":
        row = lines.next("labels")
        lines.arity(row, size + 1, f"{size} labels")
        labels = tuple(t.text for t in row[1:])
    lines.keyword("add")
    add = lines.block(size, size, size, "add")
    lines.keyword("mul")
    mul = lines.block(size, size, size, "mul")
    row = lines.keyword("one")
    lines.arity(row, 2, "'one <index>'")
    one = lines.int_token(row[1], 0, size - 1, "element index")
    ring = RingTable(add, mul, one, 0, name=name, labels=labels)
    verdict = verify_ring_axioms(ring)
    if not verdict:
        raise lines.error(
            f"ring {name}: {verdict.axiom} fails at {_witness_text(verdict.witness)} ({verdict.detail})", head[0]
        )
    return name, ring


def _ring_for(lines: _Lines, rings: dict[str, _PendingRing], tok: _Token) -> _PendingRing:
    name = lines.name_token(tok)
    if name not in rings:
        raise lines.error(f"unknown ring '{name}' (rings must be defined before use)", tok)
    return rings[name]


def _parse_endo(lines: _Lines, head: list[_Token], rings: dict[str, _PendingRing]) -> None:
    lines.arity(head, 3, "'endo <name> <ringname>'")
    name = lines.name_token(head[1])
    pending = _ring_for(lines, rings, head[2])
    if name in pending.endo_lines:
        raise lines.error(
            f"duplicate endomorphism '{name}' on ring {pending.name} (lines {pending.endo_lines[name]} and {head[0].line})",
            head[1],
        )
    size = pending.ring.size
    row = lines.next("the endomorphism map row")
    lines.arity(row, size, f"{size} indices in the map row")
    mapping = [lines.int_token(t, 0, size - 1, "element index") for t in row]
    try:
        sigma = verify_endomorphism(pending.ring, mapping, name)
    except EndomorphismViolation as exc:
        raise lines.error(f"endomorphism {name}: not {exc.law}, witness {_witness_text(exc.witness)}", head[0]) from None
    pending.endo_lines[name] = head[0].line
    pending.endos.append(sigma)


def _parse_module(lines: _Lines, head: list[_Token], rings: dict[str, _PendingRing]) -> None:
    if len(head) < 4 or head[2].text != "over":
        bad = head[2] if len(head) > 2 else head[-1]
        raise lines.error("expected 'module <name> over <ringname> [<size>]'", bad)
    name = lines.name_token(head[1])
    pending = _ring_for(lines, rings, head[3])
    if name in pending.module_lines:
        raise lines.error(
            f"duplicate module '{name}' on ring {pending.name} (lines {pending.module_lines[name]} and {head[0].line})",
            head[1],
        )
    if name == "regular" and len(head) == 4:
        module = regular_module(pending.ring)
    else:
        lines.arity(head, 5, "'module <name> over <ringname> <size>'")
        size = lines.int_token(head[4], 1, 10**6, "module size")
        lines.keyword("add")
        add = lines.block(size, size, size, "add")
        lines.keyword("action")
        action = lines.block(size, pending.ring.size, size, "action")
        module = ModuleTable(pending.ring, add, action, 0, name=name)
        try:
            verdict = verify_module_axioms(module)
        except MalformedInput as exc:
            raise lines.error(f"module {name}: {exc}", head[0]) from None
        if not verdict:
            raise lines.error(
                f"module {name}: {verdict.axiom} fails at {_witness_text(verdict.witness)} ({verdict.detail})", head[0]
            )
    pending.module_lines[name] = head[0].line
    pending.modules.append(module)


def parse_definitions(text: str, source: str = "<defs>") -> list[CatalogEntry]:
    lines = _Lines(text, source)
    rings: dict[str, _PendingRing] = {}
    while not lines.done():
        head = lines.next("a directive")
        word = head[0].text
        if word == "ring":
            name, ring = _parse_ring(lines, head)
            if name in rings:
                raise lines.error(f"duplicate ring '{name}' (lines {rings[name].line} and {head[0].line})", head[1])
            rings[name] = _PendingRing(name, head[0].line, ring, [], [], {}, {})
        elif word == "endo":
            _parse_endo(lines, head, rings)
        elif word == "module":
            _parse_module(lines, head, rings)
        else:
            raise lines.error(f"expected 'ring', 'endo' or 'module', found '{word}'", head[0])

    entries = []
    for p in rings.values():
        endos = list(p.endos)
        if "id" not in p.endo_lines:
            endos.insert(0, identity_endomorphism(p.ring))
        modules = list(p.modules)
        if "regular" not in p.module_lines:
            modules.insert(0, regular_module(p.ring))
        entries.append(CatalogEntry(p.name, p.ring, tuple(endos), tuple(modules), "file"))
    return entries


def load_definitions(path: str | Path) -> list[CatalogEntry]:
    path = Path(path)
    return parse_definitions(path.read_text(), str(path))


def _rows(table: np.ndarray) -> list[str]:
    return [" ".join(str(int(v)) for v in row) for row in table]


def dump_entry(entry: CatalogEntry) -> str:
    """A definition file that loads back to the same tables, maps and names."""
    ring = entry.ring
    if ring.zero != 0:
        raise MalformedInput(f"{entry.id}: definition files need zero at index 0")
    out = [f"# {entry.id} ({entry.provenance})", f"ring {entry.id} {ring.size}"]
    if ring.labels:
        out.append("labels " + " ".join(ring.labels))
    out += ["add", *_rows(ring.add), "mul", *_rows(ring.mul), f"one {ring.one}"]
    for sigma in entry.endomorphisms:
        out += ["", f"endo {sigma.name} {entry.id}", " ".join(str(int(v)) for v in sigma.map)]
    for mod in entry.modules:
        out.append("")
        if mod.name == "regular" and mod.is_regular():
            out.append(f"module regular over {entry.id}")
            continue
        if mod.zero != 0:
            raise MalformedInput(f"{entry.id}/{mod.name}: definition files need zero at index 0")
        out += [f"module {mod.name} over {entry.id} {mod.size}", "add", *_rows(mod.add), "action", *_rows(mod.action)]
    return "\n".join(out) + "\n"
