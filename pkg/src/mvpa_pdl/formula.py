"""PDL formulas and programs.

Core formulas are :class:`Top`, :class:`Atom`, :class:`Or`, :class:`Not` and
:class:`Diamond`; ``false``, conjunction, implication and boxes are built
from them by the helper functions below.  Programs are regular expressions
over letters and tests (:class:`Eps`, :class:`Sym`, :class:`Test`,
:class:`Cat`, :class:`Alt`, :class:`Star`) or automata (:class:`Automaton`).

Text syntax (parenthesised prefix form)::

    true | (prop NAME) | (not F) | (or F F) | (and F F)
    (dia PROG F) | (box PROG F)
    PROG := (re "REGEX") | (mvpa NAME)

Inside ``REGEX`` letters are juxtaposed or joined by ``.``; ``|`` is union,
postfix ``*`` is Kleene star, ``(? F)`` is a test and ``()`` the empty word.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Callable, Iterable, Optional, Union

from .errors import FormatError
from .mvpa import Mvpa


# -- formulas ---------------------------------------------------------------

@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Not:
    arg: "Formula"


@dataclass(frozen=True)
class Diamond:
    program: "Program"
    arg: "Formula"


Formula = Union[Top, Atom, Or, Not, Diamond]

TRUE = Top()
FALSE = Not(TRUE)


def And(left: Formula, right: Formula) -> Formula:
    return Not(Or(Not(left), Not(right)))


def Implies(left: Formula, right: Formula) -> Formula:
    return Or(Not(left), right)


def Box(program: "Program", arg: Formula) -> Formula:
    return Not(Diamond(program, Not(arg)))


def conj(*parts: Formula) -> Formula:
    """Left-folded conjunction; ``true`` operands are dropped."""
    parts = [p for p in parts if p != TRUE]
    if not parts:
        return TRUE
    return reduce(And, parts)


def disj(*parts: Formula) -> Formula:
    """Left-folded disjunction; ``false`` operands are dropped."""
    parts = [p for p in parts if p != FALSE]
    if not parts:
        return FALSE
    return reduce(Or, parts)


def match_and(f: Formula) -> Optional[tuple[Formula, Formula]]:
    if (isinstance(f, Not) and isinstance(f.arg, Or)
            and isinstance(f.arg.left, Not) and isinstance(f.arg.right, Not)):
        return f.arg.left.arg, f.arg.right.arg
    return None


def match_box(f: Formula) -> Optional[tuple["Program", Formula]]:
    if (isinstance(f, Not) and isinstance(f.arg, Diamond)
            and isinstance(f.arg.arg, Not)):
        return f.arg.program, f.arg.arg.arg
    return None


def conjuncts(f: Formula) -> list[Formula]:
    """Flatten nested conjunctions into a list."""
    pair = match_and(f)
    if pair is None:
        return [f]
    return conjuncts(pair[0]) + conjuncts(pair[1])


# -- programs ---------------------------------------------------------------

@dataclass(frozen=True)
class Eps:
    pass


@dataclass(frozen=True)
class Sym:
    letter: str


@dataclass(frozen=True)
class Test:
    formula: Formula


@dataclass(frozen=True)
class Cat:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Alt:
    left: "Regex"
    right: "Regex"


@dataclass(frozen=True)
class Star:
    inner: "Regex"


Regex = Union[Eps, Sym, Test, Cat, Alt, Star]


@dataclass(frozen=True)
class Automaton:
    """An MVPA used as a program.

    ``tests`` pairs internal letters of the machine with test formulas; such
    a letter moves nowhere and is readable only where its formula holds.
    ``name`` is how the program is written in text form.
    """

    machine: Mvpa
    name: Optional[str] = None
    tests: tuple[tuple[str, Formula], ...] = ()

    @property
    def test_map(self) -> dict[str, Formula]:
        return dict(self.tests)


Program = Union[Eps, Sym, Test, Cat, Alt, Star, Automaton]

EPS = Eps()


def _as_regex(part) -> Regex:
    if isinstance(part, str):
        return Sym(part)
    return part


def seq(*parts) -> Regex:
    """Concatenation; strings are letters.  ``seq()`` is the empty word."""
    parts = [_as_regex(p) for p in parts]
    if not parts:
        return EPS
    return reduce(Cat, parts)


def alt(*parts) -> Regex:
    parts = [_as_regex(p) for p in parts]
    if not parts:
        raise ValueError("alt() needs at least one alternative")
    return reduce(Alt, parts)


def star(part) -> Regex:
    return Star(_as_regex(part))


def plus(part) -> Regex:
    part = _as_regex(part)
    return Cat(part, Star(part))


def power(part, n: int) -> Regex:
    return seq(*([_as_regex(part)] * n))


def sigma_star(letters: Iterable[str]) -> Regex:
    return Star(alt(*sorted(letters)))


def automata_in(f) -> list[Automaton]:
    """All automaton programs occurring in a formula or program."""
    out = []

    def walk(node):
        if isinstance(node, Automaton):
            out.append(node)
            for _, t in node.tests:
                walk(t)
        elif isinstance(node, (Or, Cat, Alt)):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Not):
            walk(node.arg)
        elif isinstance(node, Diamond):
            walk(node.program)
            walk(node.arg)
        elif isinstance(node, Test):
            walk(node.formula)
        elif isinstance(node, Star):
            walk(node.inner)

    walk(f)
    return out


def max_phase_bound(f) -> Optional[int]:
    """Largest phase bound k of the automaton programs in ``f``."""
    ks = [a.machine.k for a in automata_in(f)]
    return max(ks) if ks else None


# -- printing ----------------------------------------------------------------

def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def format_regex(r: Regex) -> str:
    if isinstance(r, Eps):
        return "()"
    if isinstance(r, Sym):
        return r.letter
    if isinstance(r, Test):
        return f"(? {format_formula(r.formula)})"
    if isinstance(r, Star):
        inner = format_regex(r.inner)
        if isinstance(r.inner, (Cat, Alt)):
            inner = f"({inner})"
        return inner + "*"
    if isinstance(r, Cat):
        left = format_regex(r.left)
        right = format_regex(r.right)
        if isinstance(r.left, Alt):
            left = f"({left})"
        if isinstance(r.right, (Alt, Cat)):
            right = f"({right})"
        return f"{left} {right}"
    if isinstance(r, Alt):
        right = format_regex(r.right)
        if isinstance(r.right, Alt):
            right = f"({right})"
        return f"{format_regex(r.left)} | {right}"
    raise TypeError(f"not a regular expression: {r!r}")


def format_program(p: Program) -> str:
    if isinstance(p, Automaton):
        if p.name is None:
            raise FormatError("automaton program has no name", "mvpa")
        if p.tests:
            raise FormatError("automaton programs with tests have no text form",
                              "mvpa")
        name = p.name
        if any(ch.isspace() or ch in '()"\\' for ch in name):
            name = _quote(name)
        return f"(mvpa {name})"
    return f"(re {_quote(format_regex(p))})"


def format_formula(f: Formula) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Atom):
        return f"(prop {f.name})"
    pair = match_and(f)
    if pair is not None:
        return f"(and {format_formula(pair[0])} {format_formula(pair[1])})"
    boxed = match_box(f)
    if boxed is not None:
        return f"(box {format_program(boxed[0])} {format_formula(boxed[1])})"
    if isinstance(f, Not):
        return f"(not {format_formula(f.arg)})"
    if isinstance(f, Or):
        return f"(or {format_formula(f.left)} {format_formula(f.right)})"
    if isinstance(f, Diamond):
        return f"(dia {format_program(f.program)} {format_formula(f.arg)})"
    raise TypeError(f"not a formula: {f!r}")


# -- parsing -----------------------------------------------------------------

_SPECIAL = set('()"')
_REGEX_SPECIAL = set('().|*"')

Resolver = Callable[[str], Mvpa]


class _Reader:
    def __init__(self, text: str, what: str):
        self.text = text
        self.pos = 0
        self.what = what

    def error(self, msg):
        return FormatError(f"{msg} at offset {self.pos} in {self.text!r}", self.what)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def symbol(self, special=_SPECIAL) -> str:
        self.skip()
        start = self.pos
        while (self.pos < len(self.text) and not self.text[self.pos].isspace()
               and self.text[self.pos] not in special):
            self.pos += 1
        if start == self.pos:
            raise self.error("expected a name")
        return self.text[start:self.pos]

    def string(self) -> str:
        self.expect('"')
        out = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated string")
            ch = self.text[self.pos]
            self.pos += 1
            if ch == "\\":
                if self.pos >= len(self.text):
                    raise self.error("dangling escape")
                out.append(self.text[self.pos])
                self.pos += 1
            elif ch == '"':
                return "".join(out)
            else:
                out.append(ch)

    def at_end(self) -> bool:
        self.skip()
        return self.pos >= len(self.text)


def _parse_formula(rd: _Reader, resolve: Resolver) -> Formula:
    if rd.peek() != "(":
        word = rd.symbol()
        if word == "true":
            return TRUE
        raise rd.error(f"unexpected {word!r}")
    rd.expect("(")
    head = rd.symbol()
    if head == "prop":
        result = Atom(rd.symbol())
    elif head == "not":
        result = Not(_parse_formula(rd, resolve))
    elif head in ("or", "and"):
        left = _parse_formula(rd, resolve)
        right = _parse_formula(rd, resolve)
        result = Or(left, right) if head == "or" else And(left, right)
    elif head in ("dia", "box"):
        prog = _parse_program(rd, resolve)
        arg = _parse_formula(rd, resolve)
        result = Diamond(prog, arg) if head == "dia" else Box(prog, arg)
    else:
        raise rd.error(f"unknown operator {head!r}")
    rd.expect(")")
    return result


def _parse_program(rd: _Reader, resolve: Resolver) -> Program:
    rd.expect("(")
    head = rd.symbol()
    if head == "re":
        prog = parse_regex(rd.string(), resolve)
    elif head == "mvpa":
        name = rd.string() if rd.peek() == '"' else rd.symbol()
        prog = Automaton(resolve(name), name)
    else:
        raise rd.error(f"unknown program form {head!r}")
    rd.expect(")")
    return prog


def _regex_alt(rd, resolve):
    node = _regex_cat(rd, resolve)
    while rd.peek() == "|":
        rd.pos += 1
        node = Alt(node, _regex_cat(rd, resolve))
    return node


def _starts_primary(ch):
    return ch == "(" or (ch and ch not in _REGEX_SPECIAL)


def _regex_cat(rd, resolve):
    node = _regex_post(rd, resolve)
    while True:
        ch = rd.peek()
        if ch == ".":
            rd.pos += 1
        elif not _starts_primary(ch):
            return node
        node = Cat(node, _regex_post(rd, resolve))


def _regex_post(rd, resolve):
    node = _regex_primary(rd, resolve)
    while rd.peek() == "*":
        rd.pos += 1
        node = Star(node)
    return node


def _regex_primary(rd, resolve):
    ch = rd.peek()
    if ch == "(":
        rd.pos += 1
        nxt = rd.peek()
        if nxt == ")":
            rd.pos += 1
            return EPS
        if nxt == "?":
            rd.pos += 1
            node = Test(_parse_formula(rd, resolve))
        else:
            node = _regex_alt(rd, resolve)
        rd.expect(")")
        return node
    if not _starts_primary(ch):
        raise rd.error("expected a letter, test or group")
    return Sym(rd.symbol(_REGEX_SPECIAL))


def parse_regex(text: str, resolve: Optional[Resolver] = None) -> Regex:
    rd = _Reader(text, "re")
    node = _regex_alt(rd, resolve or default_resolver)
    if not rd.at_end():
        raise rd.error("trailing input")
    return node


def default_resolver(name: str) -> Mvpa:
    from .languages import LanguageId, build_automaton

    try:
        lang = LanguageId.parse(name)
    except ValueError:
        from .io import load_mvpa

        return load_mvpa(name)
    return build_automaton(lang)


def parse_formula(text: str, resolve: Optional[Resolver] = None) -> Formula:
    rd = _Reader(text, "formula")
    f = _parse_formula(rd, resolve or default_resolver)
    if not rd.at_end():
        raise rd.error("trailing input")
    return f
