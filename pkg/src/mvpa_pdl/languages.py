"""The six two-stack languages used by the tiling reduction.

Over the alphabet with calls ``a1``/``a2``, returns ``b1``/``b2`` and
internals ``c``/``d``, with ``w0 = a1 b2``, ``w1 = a2 b1``, ``e0 = d`` and
``e1 = c``::

    L_l    = { w_l^i e_l w_(1-l)^j e_(1-l)  |  j != i + 1 }
    L_l_h  = { w_l^i e_l w_(1-l)^(i+l+1) }
    L_l_v  = { w_l^i e_l w_(1-l)^(i-l+2) }

Each language has an explicit deterministic 2-phase automaton.  The l=0
machines are transcribed edge for edge from hand-drawn diagrams; the l=1
machines are letter renamings of them.  Note that renaming the l=0
horizontal machine yields the l=1 *vertical* language and vice versa, so the
renamed machines are cross-assigned.
"""

from __future__ import annotations

import enum
from functools import lru_cache
from typing import Sequence

from .alphabet import CallReturnAlphabet
from .mvpa import BOTTOM, Mvpa, rename

PLAIN = "plain"
HORIZONTAL = "horizontal"
VERTICAL = "vertical"

ALPHABET = CallReturnAlphabet.build(
    calls=[{"a1"}, {"a2"}], returns=[{"b1"}, {"b2"}], internals={"c", "d"}
)
LETTERS = ("a1", "a2", "b1", "b2", "c", "d")

W = {0: ("a1", "b2"), 1: ("a2", "b1")}
E = {0: "d", 1: "c"}

#: the substitution turning each l=0 machine into an l=1 machine
SWAP = {"a1": "a2", "b2": "b1", "c": "d", "d": "c", "a2": "a1", "b1": "b2"}


class LanguageId(enum.Enum):
    L0 = (PLAIN, 0)
    L1 = (PLAIN, 1)
    L0_h = (HORIZONTAL, 0)
    L1_h = (HORIZONTAL, 1)
    L0_v = (VERTICAL, 0)
    L1_v = (VERTICAL, 1)

    @property
    def family(self) -> str:
        return self.value[0]

    @property
    def ell(self) -> int:
        return self.value[1]

    @classmethod
    def parse(cls, name: str) -> "LanguageId":
        try:
            return cls[name]
        except KeyError:
            raise ValueError(
                f"unknown language {name!r}; expected one of "
                + ", ".join(m.name for m in cls)
            ) from None


def _machine(states, edges, finals=("p",)) -> Mvpa:
    call, ret, internal = [], [], []
    for q, label, q2 in edges:
        letter, _, stack = label.partition("/")
        if letter.startswith("a"):
            call.append((q, letter, q2, stack))
        elif letter.startswith("b"):
            ret.append((q, letter, BOTTOM if stack == "bot" else stack, q2))
        else:
            internal.append((q, letter, q2))
    return Mvpa(
        alphabet=ALPHABET,
        states=frozenset(states),
        initial=frozenset({"q0"}),
        stack_alphabet=frozenset({"x", BOTTOM}),
        call_trans=frozenset(call),
        ret_trans=frozenset(ret),
        int_trans=frozenset(internal),
        finals=frozenset(finals),
        k=2,
    )


def _plain0() -> Mvpa:
    return _machine(
        ["q0", "q1", "q2", "q3", "q4", "q5", "q6", "p"],
        [
            ("q0", "a1/x", "q1"),
            ("q1", "b2/bot", "q0"),
            ("q0", "d", "q2"),
            ("q2", "a2/x", "q3"),
            ("q3", "b1/x", "q2"),
            ("q3", "b1/bot", "q4"),
            ("q4", "a2/x", "q6"),
            ("q5", "a2/x", "q6"),
            ("q6", "b1/bot", "q5"),
            ("q5", "c", "p"),
            ("q2", "c", "p"),
        ],
    )


def _horizontal0() -> Mvpa:
    return _machine(
        ["q0", "q1", "q2", "q3", "p"],
        [
            ("q0", "d", "q2"),
            ("q0", "a1/x", "q1"),
            ("q1", "b2/bot", "q0"),
            ("q2", "a2/x", "q3"),
            ("q3", "b1/x", "q2"),
            ("q3", "b1/bot", "p"),
        ],
    )


def _vertical0() -> Mvpa:
    return _machine(
        ["q0", "q1", "q2", "q3", "q4", "q5", "p"],
        [
            ("q0", "d", "q2"),
            ("q0", "a1/x", "q1"),
            ("q1", "b2/bot", "q0"),
            ("q2", "a2/x", "q3"),
            ("q3", "b1/x", "q2"),
            ("q3", "b1/bot", "q4"),
            ("q4", "a2/x", "q5"),
            ("q5", "b1/bot", "p"),
        ],
    )


_BASE = {PLAIN: _plain0, HORIZONTAL: _horizontal0, VERTICAL: _vertical0}
# source machine of each l=1 language, before renaming
_RENAMED_FROM = {PLAIN: PLAIN, HORIZONTAL: VERTICAL, VERTICAL: HORIZONTAL}


@lru_cache(maxsize=None)
def build_automaton(lang: LanguageId) -> Mvpa:
    if isinstance(lang, str):
        lang = LanguageId.parse(lang)
    if lang.ell == 0:
        return _BASE[lang.family]()
    return rename(_BASE[_RENAMED_FROM[lang.family]](), SWAP)


def _target_exponent(lang: LanguageId, i: int, j: int) -> bool:
    if lang.family == PLAIN:
        return j != i + 1
    if lang.family == HORIZONTAL:
        return j == i + lang.ell + 1
    return j == i - lang.ell + 2


def oracle_member(lang: LanguageId, w: Sequence[str]) -> bool:
    """Decide membership straight from the set-builder definition."""
    if isinstance(lang, str):
        lang = LanguageId.parse(lang)
    ell = lang.ell
    first, second = W[ell], W[1 - ell]
    w = tuple(w)
    n = len(w)
    pos = 0
    i = 0
    while pos + 1 < n and w[pos] == first[0] and w[pos + 1] == first[1]:
        pos += 2
        i += 1
    if pos >= n or w[pos] != E[ell]:
        return False
    pos += 1
    j = 0
    while pos + 1 < n and w[pos] == second[0] and w[pos + 1] == second[1]:
        pos += 2
        j += 1
    if lang.family == PLAIN:
        if pos != n - 1 or w[pos] != E[1 - ell]:
            return False
    elif pos != n:
        return False
    return _target_exponent(lang, i, j)


def _word(lang: LanguageId, i: int, j: int) -> tuple[str, ...]:
    ell = lang.ell
    w = W[ell] * i + (E[ell],) + W[1 - ell] * j
    if lang.family == PLAIN:
        w += (E[1 - ell],)
    return w


def enumerate_members(lang: LanguageId, max_exponent: int) -> list[tuple[str, ...]]:
    """Members with exponents up to ``max_exponent``, in (i, j) order.

    For the horizontal and vertical families only the free exponent ``i``
    is bounded; the second exponent follows from it.
    """
    if isinstance(lang, str):
        lang = LanguageId.parse(lang)
    if max_exponent < 0:
        return []
    out = []
    for i in range(max_exponent + 1):
        if lang.family == PLAIN:
            out.extend(_word(lang, i, j) for j in range(max_exponent + 1)
                       if j != i + 1)
        elif lang.family == HORIZONTAL:
            out.append(_word(lang, i, i + lang.ell + 1))
        else:
            out.append(_word(lang, i, i - lang.ell + 2))
    return out
