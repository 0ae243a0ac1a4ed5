"""Symbols, values and relations gathered from the inputs of one invocation."""

import sys
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Union

from ..logging import LOGGER
from ..utils.exceptions import DuplicateSymbol, MalformedWitness, ParseError, UsageError
from ..utils.formatters import Document, Value, Word, parse_document
from .actions import MarkedAction
from .gn import GnElement, to_iet
from .iet import Iet
from .scalar import SymbolTable

log = LOGGER(__name__)

_LITERALS = ("iet ", "iet\t", "gn ", "gn\t")


@dataclass
class Workspace:
    table: SymbolTable = field(default_factory=SymbolTable)
    bindings: Dict[str, Union[Value, MarkedAction]] = field(default_factory=dict)
    relations: List[Word] = field(default_factory=list)

    @classmethod
    def from_declarations(cls, declarations: Iterable[str]) -> "Workspace":
        workspace = cls()
        for item in declarations:
            name, sep, witness = item.partition("=")
            if not sep:
                raise UsageError(f"--symbol expects NAME=WITNESS, got {item!r}")
            workspace.declare(name.strip(), witness.strip())
        return workspace

    def declare(self, name: str, witness: str, precision: Optional[int] = None, line: Optional[int] = None):
        try:
            fresh = SymbolTable().register(name, witness, precision).symbol(name)
        except MalformedWitness as err:
            if line is None:
                raise
            raise ParseError(str(err), line, 1)
        if name in self.table:
            # the same declaration in two inputs is harmless
            if self.table.symbol(name) == fresh:
                return
            where = f" (line {line})" if line is not None else ""
            raise DuplicateSymbol(f"symbol {name!r} is declared twice with different witnesses{where}")
        self.table = self.table.register(fresh.name, fresh.witness, fresh.precision)
        log.debug(f"declared symbol {name}")

    def read(self, source: str) -> str:
        if source == "-":
            return sys.stdin.read()
        if source.startswith(_LITERALS):
            return source
        try:
            with open(source, encoding="utf8") as handle:
                return handle.read()
        except OSError as err:
            raise UsageError(f"cannot read {source}: {err.strerror}")

    def load(self, source: str) -> Document:
        doc = parse_document(self.read(source), self.declare, lambda: self.table)
        self.bindings.update(doc.bindings)
        self.relations.extend(doc.relations)
        return doc

    def value(self, source: str) -> Value:
        doc = self.load(source)
        if "main" in doc.bindings:
            return doc.bindings["main"]
        if len(doc.bindings) == 1:
            return next(iter(doc.bindings.values()))
        if not doc.bindings:
            raise UsageError(f"{source} holds no value")
        raise UsageError(f"{source} binds {', '.join(doc.bindings)}; expected one value or a 'main' binding")

    def iet(self, source: str) -> Iet:
        value = self.value(source)
        return to_iet(value) if isinstance(value, GnElement) else value

    def gn(self, source: str) -> GnElement:
        value = self.value(source)
        if not isinstance(value, GnElement):
            raise UsageError(f"{source} holds an iet; this command needs a 'gn' value")
        return value

    def action(self, source: str, checked: bool = False) -> MarkedAction:
        doc = self.load(source)
        if not doc.bindings:
            raise UsageError(f"{source} binds no generators")
        if all(isinstance(v, GnElement) for v in doc.bindings.values()):
            return MarkedAction.from_gn(doc.bindings, doc.relations, checked)
        generators = {
            name: to_iet(v) if isinstance(v, GnElement) else v for name, v in doc.bindings.items()
        }
        return MarkedAction.build(generators, doc.relations, checked=checked)
