"""Evaluation of PDL formulas and programs on finite Kripke structures.

Regular programs are evaluated exactly through the product of a Thompson
automaton with the structure.  Automaton (MVPA) programs are evaluated by a
breadth-first search over (configuration, world) pairs that only considers
witness words of length at most ``bound``; the resulting diamonds are
under-approximations and the boxes over-approximations, and every result
that used such a search is tagged with the bound.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .alphabet import CALL, INTERNAL, RETURN
from .errors import (BoundRequiredError, DomainError, KindError,
                     UnknownLetterError)
from .formula import (Alt, Atom, Automaton, Cat, Diamond, Eps, Formula, Not,
                      Or, Program, Star, Sym, Test, Top, automata_in)
from .kripke import KripkeStructure, WorldRelation
from .mvpa import BOTTOM


class Verdict(enum.Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    BOUNDED_HOLDS = "BoundedHolds"
    BOUNDED_FAILS = "BoundedFails"

    @property
    def holds(self) -> bool:
        return self in (Verdict.HOLDS, Verdict.BOUNDED_HOLDS)

    @property
    def exact(self) -> bool:
        return self in (Verdict.HOLDS, Verdict.FAILS)

    @classmethod
    def of(cls, holds: bool, bound: Optional[int]) -> "Verdict":
        if bound is None:
            return cls.HOLDS if holds else cls.FAILS
        return cls.BOUNDED_HOLDS if holds else cls.BOUNDED_FAILS

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class Evaluation:
    """Set of worlds; ``bound`` is ``None`` for an exact result."""

    worlds: frozenset
    bound: Optional[int] = None

    @property
    def exact(self) -> bool:
        return self.bound is None


@dataclass(frozen=True)
class ProgramEvaluation:
    relation: WorldRelation
    bound: Optional[int] = None

    @property
    def exact(self) -> bool:
        return self.bound is None


# -- Thompson construction ---------------------------------------------------

class _Nfa:
    def __init__(self):
        self.eps: list[list[int]] = []
        self.moves: list[list[tuple]] = []  # (letter or Test, target)

    def state(self) -> int:
        self.eps.append([])
        self.moves.append([])
        return len(self.eps) - 1

    def build(self, r) -> tuple[int, int]:
        if isinstance(r, Eps):
            s = self.state()
            return s, s
        if isinstance(r, (Sym, Test)):
            s, t = self.state(), self.state()
            self.moves[s].append((r.letter if isinstance(r, Sym) else r, t))
            return s, t
        if isinstance(r, Cat):
            s1, t1 = self.build(r.left)
            s2, t2 = self.build(r.right)
            self.eps[t1].append(s2)
            return s1, t2
        if isinstance(r, Alt):
            s, t = self.state(), self.state()
            for part in (r.left, r.right):
                s1, t1 = self.build(part)
                self.eps[s].append(s1)
                self.eps[t1].append(t)
            return s, t
        if isinstance(r, Star):
            s, t = self.state(), self.state()
            s1, t1 = self.build(r.inner)
            self.eps[s] += [s1, t]
            self.eps[t1] += [s1, t]
            return s, t
        raise TypeError(f"not a regular expression: {r!r}")

    def reversed(self):
        rev_eps = [[] for _ in self.eps]
        rev_moves = [[] for _ in self.moves]
        for q, targets in enumerate(self.eps):
            for q2 in targets:
                rev_eps[q2].append(q)
        for q, moves in enumerate(self.moves):
            for tok, q2 in moves:
                rev_moves[q2].append((tok, q))
        return rev_eps, rev_moves


class _Compiled:
    def __init__(self, regex):
        self.nfa = _Nfa()
        self.start, self.accept = self.nfa.build(regex)
        self.rev_eps, self.rev_moves = self.nfa.reversed()


def _token_name(tok) -> str:
    if isinstance(tok, str):
        return tok
    from .formula import format_formula
    return f"{format_formula(tok.formula)}?"


# -- evaluator ---------------------------------------------------------------

class _Evaluator:
    """Memo tables for one evaluation call."""

    def __init__(self, K: KripkeStructure, bound: Optional[int]):
        if bound is not None and (not isinstance(bound, int) or bound < 0):
            raise ValueError(f"bound must be a non-negative integer, got {bound!r}")
        self.K = K
        self.bound = bound
        self.all = frozenset(K.worlds)
        self._formulas: dict = {}
        self._relations: dict = {}
        self._regexes: dict = {}
        self._machines: dict = {}

    # formulas
    def worlds(self, f: Formula) -> frozenset:
        hit = self._formulas.get(f)
        if hit is not None:
            return hit
        if isinstance(f, Top):
            res = self.all
        elif isinstance(f, Atom):
            res = frozenset(x for x in self.K.worlds if f.name in self.K.props(x))
        elif isinstance(f, Or):
            res = self.worlds(f.left) | self.worlds(f.right)
        elif isinstance(f, Not):
            res = self.all - self.worlds(f.arg)
        elif isinstance(f, Diamond):
            res = self.diamond(f.program, self.worlds(f.arg))
        else:
            raise TypeError(f"not a formula: {f!r}")
        self._formulas[f] = res
        return res

    def diamond(self, prog: Program, targets: frozenset) -> frozenset:
        if isinstance(prog, Automaton):
            return frozenset(x for x, y in self.relation(prog) if y in targets)
        c = self._compiled(prog)
        K = self.K
        seen = {(c.accept, y) for y in targets}
        todo = list(seen)
        while todo:
            q, y = todo.pop()
            nxt = [(p, y) for p in c.rev_eps[q]]
            for tok, p in c.rev_moves[q]:
                if isinstance(tok, str):
                    nxt.extend((p, x) for x in K.predecessors(tok, y))
                elif y in self.worlds(tok.formula):
                    nxt.append((p, y))
            for item in nxt:
                if item not in seen:
                    seen.add(item)
                    todo.append(item)
        return frozenset(x for q, x in seen if q == c.start)

    # programs
    def relation(self, prog: Program) -> frozenset:
        hit = self._relations.get(prog)
        if hit is not None:
            return hit
        if isinstance(prog, Automaton):
            pairs = set()
            for x in self.K.worlds:
                pairs.update((x, y) for y in self._automaton_reach(prog, x))
        else:
            c = self._compiled(prog)
            pairs = set()
            for x in self.K.worlds:
                pairs.update((x, y) for y in self._regex_reach(c, x))
        res = frozenset(pairs)
        self._relations[prog] = res
        return res

    def _compiled(self, regex) -> _Compiled:
        c = self._regexes.get(regex)
        if c is None:
            c = _Compiled(regex)
            for moves in c.nfa.moves:
                for tok, _ in moves:
                    if isinstance(tok, str) and tok not in self.K._succ:
                        raise UnknownLetterError(tok, "the structure's letters")
            self._regexes[regex] = c
        return c

    def _regex_step(self, c: _Compiled, q: int, w: str):
        for q2 in c.nfa.eps[q]:
            yield None, (q2, w)
        for tok, q2 in c.nfa.moves[q]:
            if isinstance(tok, str):
                for y in self.K.successors(tok, w):
                    yield tok, (q2, y)
            elif w in self.worlds(tok.formula):
                yield tok, (q2, w)

    def _regex_reach(self, c: _Compiled, x: str) -> set:
        seen = {(c.start, x)}
        todo = [(c.start, x)]
        while todo:
            q, w = todo.pop()
            for _, item in self._regex_step(c, q, w):
                if item not in seen:
                    seen.add(item)
                    todo.append(item)
        return {w for q, w in seen if q == c.accept}

    def regex_witness(self, regex, x: str, targets: frozenset):
        c = self._compiled(regex)
        start = (c.start, x)
        parent = {start: None}
        queue = deque([start])
        while queue:
            node = queue.popleft()
            if node[0] == c.accept and node[1] in targets:
                return _unwind(parent, node)
            for tok, item in self._regex_step(c, *node):
                if item not in parent:
                    parent[item] = (node, tok)
                    queue.append(item)
        return None

    # automaton programs
    def _machine_index(self, prog: Automaton):
        hit = self._machines.get(prog)
        if hit is not None:
            return hit
        M = prog.machine
        tests = prog.test_map
        for a in tests:
            if a not in M.alphabet or M.alphabet.kind(a).sort != INTERNAL:
                raise KindError(f"test letter {a!r} must be an internal letter")
        for a in M.alphabet.letters:
            if a not in tests and a not in self.K._succ:
                raise UnknownLetterError(a, "the structure's letters")
        out = {q: [] for q in M.states}
        for q, a, q2, push in M.call_trans:
            out[q].append((CALL, a, M.alphabet.kind(a).stack - 1, push, q2))
        for q, a, pop, q2 in M.ret_trans:
            out[q].append((RETURN, a, M.alphabet.kind(a).stack - 1, pop, q2))
        for q, a, q2 in M.int_trans:
            out[q].append((INTERNAL, a, None, None, q2))
        for q in out:
            out[q].sort(key=repr)
        self._machines[prog] = (out, tests)
        return out, tests

    def _automaton_step(self, prog: Automaton, node):
        out, tests = self._machine_index(prog)
        q, stacks, w, phases, committed = node
        k = prog.machine.k
        for sort, a, i, sym, q2 in out[q]:
            ph, com = max(phases, 1), committed
            if sort == RETURN:
                if com is None:
                    com = i
                elif com != i:
                    ph, com = ph + 1, i
                if ph > k:
                    continue
                top = stacks[i][0]
                if top != sym:
                    continue
                new = stacks
                if top != BOTTOM:
                    new = stacks[:i] + (stacks[i][1:],) + stacks[i + 1:]
            elif sort == CALL:
                new = stacks[:i] + ((sym,) + stacks[i],) + stacks[i + 1:]
            else:
                new = stacks
            if a in tests:
                if w in self.worlds(tests[a]):
                    yield a, (q2, new, w, ph, com)
            else:
                for y in self.K.successors(a, w):
                    yield a, (q2, new, y, ph, com)

    def _automaton_starts(self, prog: Automaton, x: str):
        M = prog.machine
        empty = tuple((BOTTOM,) for _ in range(M.n))
        return [(q, empty, x, 0, None) for q in sorted(M.initial, key=str)]

    def _need_bound(self) -> int:
        if self.bound is None:
            raise BoundRequiredError(
                "automaton programs need a bound on the witness length"
            )
        return self.bound

    def _automaton_reach(self, prog: Automaton, x: str) -> set:
        bound = self._need_bound()
        finals = prog.machine.finals
        layer = self._automaton_starts(prog, x)
        seen = set(layer)
        reached = set()
        for depth in range(bound + 1):
            reached.update(n[2] for n in layer if n[0] in finals)
            if depth == bound:
                break
            nxt = []
            for node in layer:
                for _, item in self._automaton_step(prog, node):
                    if item not in seen:
                        seen.add(item)
                        nxt.append(item)
            layer = nxt
            if not layer:
                break
        return reached

    def automaton_witness(self, prog: Automaton, x: str, targets: frozenset):
        bound = self._need_bound()
        finals = prog.machine.finals
        starts = self._automaton_starts(prog, x)
        parent = {s: None for s in starts}
        layer = starts
        for depth in range(bound + 1):
            for node in layer:
                if node[0] in finals and node[2] in targets:
                    return [(tok, n[2]) for tok, n in _unwind(parent, node)]
            if depth == bound:
                break
            nxt = []
            for node in layer:
                for tok, item in self._automaton_step(prog, node):
                    if item not in parent:
                        parent[item] = (node, tok)
                        nxt.append(item)
            layer = nxt
        return None


def _unwind(parent, node):
    steps = []
    while parent[node] is not None:
        prev, tok = parent[node]
        if tok is not None:
            steps.append((tok, node))
        node = prev
    steps.reverse()
    return [(tok, n) for tok, n in steps]


def _tag(obj, bound) -> Optional[int]:
    return bound if automata_in(obj) else None


# -- public API --------------------------------------------------------------

Token = Union[str, Test]


def eval_word(K: KripkeStructure, w: Sequence[Token],
              bound: Optional[int] = None) -> WorldRelation:
    """The relation of a single word over letters and tests."""
    ev = _Evaluator(K, bound)
    rel = K.identity()
    for tok in w:
        if isinstance(tok, Test):
            holds = ev.worlds(tok.formula)
            rel = frozenset((x, y) for x, y in rel if y in holds)
        else:
            K._check_letter(tok)
            rel = frozenset((x, z) for x, y in rel for z in K.successors(tok, y))
    return rel


def eval_formula(K: KripkeStructure, phi: Formula,
                 bound: Optional[int] = None) -> Evaluation:
    ev = _Evaluator(K, bound)
    return Evaluation(ev.worlds(phi), _tag(phi, bound))


def eval_program(K: KripkeStructure, prog: Program,
                 bound: Optional[int] = None) -> ProgramEvaluation:
    ev = _Evaluator(K, bound)
    return ProgramEvaluation(ev.relation(prog), _tag(prog, bound))


def satisfies(K: KripkeStructure, x: str, phi: Formula,
              bound: Optional[int] = None) -> Verdict:
    if x not in K.valuation:
        raise DomainError(f"unknown world {x!r}")
    ev = eval_formula(K, phi, bound)
    return Verdict.of(x in ev.worlds, ev.bound)


def image(K: KripkeStructure, x: str, prog: Program,
          bound: Optional[int] = None) -> ProgramEvaluation:
    """Pairs ``(x, y)`` of the program relation that start at ``x``."""
    ev = _Evaluator(K, bound)
    if isinstance(prog, Automaton):
        ys = ev._automaton_reach(prog, x)
    else:
        ys = ev._regex_reach(ev._compiled(prog), x)
    return ProgramEvaluation(frozenset((x, y) for y in ys), _tag(prog, bound))


def witness(K: KripkeStructure, x: str, phi: Diamond,
            bound: Optional[int] = None) -> Optional[list[tuple[str, str]]]:
    """A path ``[(token, world), ...]`` from ``x`` proving a diamond."""
    if not isinstance(phi, Diamond):
        raise TypeError("witness paths exist only for diamonds")
    ev = _Evaluator(K, bound)
    targets = ev.worlds(phi.arg)
    if isinstance(phi.program, Automaton):
        path = ev.automaton_witness(phi.program, x, targets)
    else:
        path = ev.regex_witness(phi.program, x, targets)
    if path is None:
        return None
    return [(_token_name(tok), node[1] if isinstance(node, tuple) else node)
            for tok, node in path]


def evaluate_many(K: KripkeStructure, formulas: Iterable[Formula],
                  bound: Optional[int] = None) -> list[Evaluation]:
    """Evaluate several formulas sharing one memo table."""
    ev = _Evaluator(K, bound)
    return [Evaluation(ev.worlds(f), _tag(f, bound)) for f in formulas]
