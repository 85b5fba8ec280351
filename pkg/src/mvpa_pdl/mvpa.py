"""Multi-stack visibly pushdown automata: runs, phases, determinism, renaming.

Stacks are tuples with the top at index 0 and the bottom symbol
:data:`BOTTOM` stored explicitly as the last element.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from . import kernels
from .alphabet import CALL, INTERNAL, RETURN, CallReturnAlphabet
from .errors import AlphabetError, KindError, UnknownLetterError

BOTTOM = "_bot"

State = Hashable
Stack = tuple


class Configuration(NamedTuple):
    state: State
    stacks: tuple[Stack, ...]

    def is_well_formed(self) -> bool:
        return all(
            s and s[-1] == BOTTOM and BOTTOM not in s[:-1] for s in self.stacks
        )


@dataclass(frozen=True)
class Run:
    input: tuple[str, ...]
    configurations: tuple[Configuration, ...]
    accepted: bool


@dataclass(frozen=True)
class Mvpa:
    """A k-phase multi-stack visibly pushdown automaton.

    Transitions are kept in three sets of tuples:

    * ``call_trans``: ``(q, a, q2, push)``
    * ``ret_trans``: ``(q, a, pop, q2)`` where ``pop`` may be :data:`BOTTOM`
    * ``int_trans``: ``(q, a, q2)``
    """

    alphabet: CallReturnAlphabet
    states: frozenset
    initial: frozenset
    stack_alphabet: frozenset
    call_trans: frozenset
    ret_trans: frozenset
    int_trans: frozenset
    finals: frozenset
    k: int = 1

    def __post_init__(self):
        for name in ("states", "initial", "stack_alphabet", "call_trans",
                     "ret_trans", "int_trans", "finals"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        self._validate()

    def _validate(self):
        sigma = self.alphabet
        if BOTTOM not in self.stack_alphabet:
            raise AlphabetError("stack_alphabet must contain the bottom symbol")
        if BOTTOM in sigma:
            raise AlphabetError("the bottom symbol may not be an input letter")
        if not isinstance(self.k, int) or self.k < 1:
            raise AlphabetError(f"k must be a positive integer, got {self.k!r}")
        if not self.initial <= self.states:
            raise AlphabetError("initial states must be states")
        if not self.finals <= self.states:
            raise AlphabetError("final states must be states")

        def check_state(q, what):
            if q not in self.states:
                raise AlphabetError(f"{what} transition uses unknown state {q!r}")

        def check_letter(a, sort, what):
            if a not in sigma:
                raise AlphabetError(f"{what} transition uses unknown letter {a!r}")
            if sigma.kind(a).sort != sort:
                raise AlphabetError(
                    f"{what} transition on {a!r}, which is {sigma.kind(a)}"
                )

        for q, a, q2, push in self.call_trans:
            check_state(q, "call"), check_state(q2, "call")
            check_letter(a, CALL, "call")
            if push == BOTTOM:
                raise AlphabetError(f"call transition on {a!r} pushes bottom")
            if push not in self.stack_alphabet:
                raise AlphabetError(f"call transition pushes unknown symbol {push!r}")
        for q, a, pop, q2 in self.ret_trans:
            check_state(q, "return"), check_state(q2, "return")
            check_letter(a, RETURN, "return")
            if pop not in self.stack_alphabet:
                raise AlphabetError(f"return transition pops unknown symbol {pop!r}")
        for q, a, q2 in self.int_trans:
            check_state(q, "internal"), check_state(q2, "internal")
            check_letter(a, INTERNAL, "internal")

    @cached_property
    def _call_index(self):
        idx = defaultdict(list)
        for q, a, q2, push in self.call_trans:
            idx[q, a].append((q2, push))
        return idx

    @cached_property
    def _ret_index(self):
        idx = defaultdict(list)
        for q, a, pop, q2 in self.ret_trans:
            idx[q, a, pop].append(q2)
        return idx

    @cached_property
    def _int_index(self):
        idx = defaultdict(list)
        for q, a, q2 in self.int_trans:
            idx[q, a].append(q2)
        return idx

    @property
    def n(self) -> int:
        return self.alphabet.n

    def initial_configurations(self) -> list[Configuration]:
        empty = tuple((BOTTOM,) for _ in range(self.n))
        return [Configuration(q, empty) for q in sorted(self.initial, key=str)]

    @cached_property
    def tables(self) -> "Tables":
        return Tables.from_mvpa(self)


def step(M: Mvpa, c: Configuration, a: str) -> frozenset[Configuration]:
    """All configurations reachable from ``c`` by reading ``a``."""
    kind = M.alphabet.kind(a)
    out = set()
    if kind.sort == CALL:
        i = kind.stack - 1
        for q2, push in M._call_index.get((c.state, a), ()):
            stacks = list(c.stacks)
            stacks[i] = (push,) + stacks[i]
            out.add(Configuration(q2, tuple(stacks)))
    elif kind.sort == RETURN:
        i = kind.stack - 1
        top = c.stacks[i][0]
        popped = c.stacks[i] if top == BOTTOM else c.stacks[i][1:]
        stacks = list(c.stacks)
        stacks[i] = popped
        stacks = tuple(stacks)
        for q2 in M._ret_index.get((c.state, a, top), ()):
            out.add(Configuration(q2, stacks))
    else:
        for q2 in M._int_index.get((c.state, a), ()):
            out.add(Configuration(q2, c.stacks))
    return frozenset(out)


def _check_word(alphabet: CallReturnAlphabet, w: Sequence[str]):
    for a in w:
        if a not in alphabet:
            raise UnknownLetterError(a, "the automaton's alphabet")


def _search(M: Mvpa, w: Sequence[str]):
    """Breadth-first configuration search; returns the list of layers.

    Each layer maps a configuration to its predecessor in the previous layer.
    """
    layer = {c: None for c in M.initial_configurations()}
    layers = [layer]
    for a in w:
        nxt = {}
        for c in layer:
            for c2 in step(M, c, a):
                nxt.setdefault(c2, c)
        layers.append(nxt)
        layer = nxt
        if not layer:
            break
    return layers


def accepts_unrestricted(M: Mvpa, w: Sequence[str]) -> bool:
    """True iff some run on ``w`` ends in a final state, ignoring phases."""
    w = tuple(w)
    _check_word(M.alphabet, w)
    layers = _search(M, w)
    if len(layers) != len(w) + 1:
        return False
    return any(c.state in M.finals for c in layers[-1])


def accepting_run(M: Mvpa, w: Sequence[str]) -> Optional[Run]:
    """An accepting run witnessing ``w`` in L(M), or ``None``."""
    w = tuple(w)
    _check_word(M.alphabet, w)
    if min_phases(M.alphabet, w) > M.k:
        return None
    layers = _search(M, w)
    if len(layers) != len(w) + 1:
        return None
    finals = sorted((c for c in layers[-1] if c.state in M.finals), key=repr)
    if not finals:
        return None
    path = [finals[0]]
    for layer in reversed(layers[1:]):
        path.append(layer[path[-1]])
    return Run(w, tuple(reversed(path)), True)


def membership(M: Mvpa, w: Sequence[str]) -> bool:
    """Is ``w`` a k-phase word with an accepting run of ``M``?"""
    return accepting_run(M, w) is not None


def min_phases(alphabet: CallReturnAlphabet, w: Sequence[str]) -> int:
    """Fewest phases whose concatenation is ``w`` (greedy, lazy commitment)."""
    phases = 0
    committed = None
    for a in w:
        kind = alphabet.kind(a)
        if phases == 0:
            phases = 1
        if kind.sort == RETURN:
            if committed is None:
                committed = kind.stack
            elif committed != kind.stack:
                phases += 1
                committed = kind.stack
    return phases


def is_deterministic(M: Mvpa) -> bool:
    if len(M.initial) != 1:
        return False
    if any(len(v) > 1 for v in M._call_index.values()):
        return False
    if any(len(v) > 1 for v in M._ret_index.values()):
        return False
    return all(len(v) <= 1 for v in M._int_index.values())


def rename(
    M: Mvpa,
    sigma: Mapping[str, str],
    alphabet: Optional[CallReturnAlphabet] = None,
) -> Mvpa:
    """Substitute letters of ``M`` by ``sigma``.

    ``sigma`` is completed with the identity on letters it does not mention
    and must then be a bijection on the letters.  Kinds of the renamed
    letters are taken from ``alphabet`` (default: ``M.alphabet``); a letter
    may change stacks but never its sort.
    """
    target = alphabet if alphabet is not None else M.alphabet
    source = M.alphabet
    for a in sigma:
        if a not in source:
            raise UnknownLetterError(a, "the source alphabet")
    full = {a: sigma.get(a, a) for a in source.letters}
    if len(set(full.values())) != len(full):
        raise KindError("renaming is not injective")
    if set(full.values()) != set(target.letters):
        raise KindError("renaming is not onto the target alphabet")
    for a, b in full.items():
        if source.kind(a).sort != target.kind(b).sort:
            raise KindError(
                f"{a!r} ({source.kind(a)}) renamed to {b!r} ({target.kind(b)})"
            )
    return Mvpa(
        alphabet=target,
        states=M.states,
        initial=M.initial,
        stack_alphabet=M.stack_alphabet,
        call_trans=frozenset((q, full[a], q2, g) for q, a, q2, g in M.call_trans),
        ret_trans=frozenset((q, full[a], g, q2) for q, a, g, q2 in M.ret_trans),
        int_trans=frozenset((q, full[a], q2) for q, a, q2 in M.int_trans),
        finals=M.finals,
        k=M.k,
    )


# -- array encoding for the batch kernels ----------------------------------

_KIND_CODE = {CALL: 0, RETURN: 1, INTERNAL: 2}


@dataclass(frozen=True)
class LetterCodes:
    letters: tuple[str, ...]
    kinds: np.ndarray
    stack_of: np.ndarray

    @classmethod
    def from_alphabet(cls, alphabet: CallReturnAlphabet) -> "LetterCodes":
        letters = tuple(alphabet.sorted_letters())
        kinds = np.array(
            [_KIND_CODE[alphabet.kind(a).sort] for a in letters], dtype=np.int8
        )
        stack_of = np.array(
            [(alphabet.kind(a).stack or 0) - 1 for a in letters], dtype=np.int32
        )
        return cls(letters, kinds, stack_of)

    @cached_property
    def index(self) -> dict[str, int]:
        return {a: i for i, a in enumerate(self.letters)}

    def encode(self, words: Iterable[Sequence[str]]) -> tuple[np.ndarray, np.ndarray]:
        """Pack words into a padded ``(N, L)`` int32 array plus lengths."""
        words = [tuple(w) for w in words]
        width = max((len(w) for w in words), default=0)
        out = np.full((len(words), max(width, 1)), -1, dtype=np.int32)
        lengths = np.zeros(len(words), dtype=np.int32)
        idx = self.index
        for r, w in enumerate(words):
            try:
                out[r, : len(w)] = [idx[a] for a in w]
            except KeyError as exc:
                raise UnknownLetterError(exc.args[0]) from None
            lengths[r] = len(w)
        return out, lengths


@dataclass(frozen=True)
class Tables:
    """Dense transition tables of a deterministic MVPA (-1 = no move)."""

    codes: LetterCodes
    states: tuple
    call_next: np.ndarray
    call_push: np.ndarray
    ret_next: np.ndarray
    int_next: np.ndarray
    initial: int
    finals: np.ndarray

    @classmethod
    def from_mvpa(cls, M: Mvpa) -> "Tables":
        codes = LetterCodes.from_alphabet(M.alphabet)
        states = tuple(sorted(M.states, key=str))
        qi = {q: i for i, q in enumerate(states)}
        gammas = [BOTTOM] + sorted(M.stack_alphabet - {BOTTOM}, key=str)
        gi = {g: i for i, g in enumerate(gammas)}
        nq, na, ng = len(states), len(codes.letters), len(gammas)
        call_next = np.full((nq, na), -1, dtype=np.int32)
        call_push = np.zeros((nq, na), dtype=np.int32)
        ret_next = np.full((nq, na, ng), -1, dtype=np.int32)
        int_next = np.full((nq, na), -1, dtype=np.int32)
        ai = codes.index
        for q, a, q2, g in M.call_trans:
            call_next[qi[q], ai[a]] = qi[q2]
            call_push[qi[q], ai[a]] = gi[g]
        for q, a, g, q2 in M.ret_trans:
            ret_next[qi[q], ai[a], gi[g]] = qi[q2]
        for q, a, q2 in M.int_trans:
            int_next[qi[q], ai[a]] = qi[q2]
        finals = np.array([q in M.finals for q in states], dtype=np.uint8)
        initial = qi[next(iter(M.initial))] if M.initial else -1
        return cls(codes, states, call_next, call_push, ret_next, int_next,
                   initial, finals)


def membership_batch(
    M: Mvpa,
    words: Iterable[Sequence[str]] | None = None,
    *,
    encoded: tuple[np.ndarray, np.ndarray] | None = None,
) -> np.ndarray:
    """Vectorised :func:`membership` over many words.

    Deterministic machines go through the compiled kernel (or its Python
    fallback); others are decided word by word.  ``encoded`` accepts a
    pre-packed ``(words, lengths)`` pair from :meth:`LetterCodes.encode`
    built for ``M.alphabet``.
    """
    if encoded is None:
        encoded = LetterCodes.from_alphabet(M.alphabet).encode(words)
    arr, lengths = encoded
    if not is_deterministic(M):
        letters = LetterCodes.from_alphabet(M.alphabet).letters
        return np.array(
            [membership(M, [letters[c] for c in row[:n]])
             for row, n in zip(arr, lengths)],
            dtype=bool,
        )
    t = M.tables
    res = kernels.run_deterministic(
        t.call_next, t.call_push, t.ret_next, t.int_next,
        t.codes.kinds, t.codes.stack_of, M.n, t.initial, t.finals, M.k,
        np.ascontiguousarray(arr, dtype=np.int32),
        np.ascontiguousarray(lengths, dtype=np.int32),
    )
    return np.asarray(res, dtype=bool)


def min_phases_batch(
    alphabet: CallReturnAlphabet,
    words: Iterable[Sequence[str]] | None = None,
    *,
    encoded: tuple[np.ndarray, np.ndarray] | None = None,
) -> np.ndarray:
    codes = LetterCodes.from_alphabet(alphabet)
    if encoded is None:
        encoded = codes.encode(words)
    arr, lengths = encoded
    return np.asarray(kernels.min_phases_batch(
        codes.kinds, codes.stack_of,
        np.ascontiguousarray(arr, dtype=np.int32),
        np.ascontiguousarray(lengths, dtype=np.int32),
    ))
