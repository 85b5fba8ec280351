"""Finite Kripke structures with per-letter edge relations."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import FormatError, UnknownLetterError

WorldRelation = frozenset  # of (world, world) pairs


@dataclass(frozen=True, eq=False)
class KripkeStructure:
    """Worlds, letters, labelled edges ``(source, letter, target)`` and a
    valuation.  The letter set is declared, not inferred from the edges."""

    worlds: tuple[str, ...]
    letters: tuple[str, ...]
    edges: frozenset
    valuation: Mapping[str, frozenset] = field(default_factory=dict)

    def __post_init__(self):
        worlds = tuple(self.worlds)
        if len(set(worlds)) != len(worlds):
            raise FormatError("duplicate world id", "worlds")
        letters = tuple(self.letters)
        if len(set(letters)) != len(letters):
            raise FormatError("duplicate letter", "letters")
        wset, lset = set(worlds), set(letters)
        edges = frozenset(tuple(e) for e in self.edges)
        for src, a, dst in edges:
            if src not in wset:
                raise FormatError(f"unknown source world {src!r}", "edges")
            if dst not in wset:
                raise FormatError(f"unknown target world {dst!r}", "edges")
            if a not in lset:
                raise FormatError(f"undeclared letter {a!r}", "edges")
        for x in self.valuation:
            if x not in wset:
                raise FormatError(f"valuation of unknown world {x!r}", "worlds")
        valuation = {x: frozenset(self.valuation.get(x, ())) for x in worlds}
        object.__setattr__(self, "worlds", worlds)
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "valuation", valuation)
        succ = {a: defaultdict(list) for a in letters}
        pred = {a: defaultdict(list) for a in letters}
        for src, a, dst in sorted(edges):
            succ[a][src].append(dst)
            pred[a][dst].append(src)
        object.__setattr__(self, "_succ", succ)
        object.__setattr__(self, "_pred", pred)

    @classmethod
    def build(cls, worlds: Iterable, letters: Iterable, edges: Iterable,
              valuation: Mapping | None = None) -> "KripkeStructure":
        return cls(tuple(worlds), tuple(letters), frozenset(edges),
                   dict(valuation or {}))

    def __eq__(self, other):
        if not isinstance(other, KripkeStructure):
            return NotImplemented
        return (set(self.worlds) == set(other.worlds)
                and set(self.letters) == set(other.letters)
                and self.edges == other.edges
                and self.valuation == other.valuation)

    __hash__ = None

    def _check_letter(self, a):
        if a not in self._succ:
            raise UnknownLetterError(a, "the structure's letters")

    def successors(self, a: str, x: str) -> list[str]:
        self._check_letter(a)
        return self._succ[a].get(x, [])

    def predecessors(self, a: str, y: str) -> list[str]:
        self._check_letter(a)
        return self._pred[a].get(y, [])

    def relation(self, a: str) -> WorldRelation:
        self._check_letter(a)
        return frozenset((x, y) for x, ys in self._succ[a].items() for y in ys)

    def props(self, x: str) -> frozenset:
        return self.valuation[x]

    def identity(self) -> WorldRelation:
        return frozenset((x, x) for x in self.worlds)
