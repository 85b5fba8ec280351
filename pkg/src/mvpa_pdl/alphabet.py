"""Call-return alphabets for multi-stack visibly pushdown automata."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

from .errors import AlphabetError, UnknownLetterError

CALL = "call"
RETURN = "return"
INTERNAL = "internal"


class Kind(NamedTuple):
    """Sort of a letter.  ``stack`` is 1-based and ``None`` for internals."""

    sort: str
    stack: Optional[int] = None

    def __str__(self):
        if self.sort == INTERNAL:
            return "Internal"
        return f"{self.sort.capitalize()}({self.stack})"


def Call(i: int) -> Kind:
    return Kind(CALL, i)


def Return(i: int) -> Kind:
    return Kind(RETURN, i)


Internal = Kind(INTERNAL)


@dataclass(frozen=True)
class CallReturnAlphabet:
    """An n-stack call-return alphabet.

    ``calls[i - 1]`` and ``returns[i - 1]`` hold the call and return letters
    of stack ``i``.  All 2n+1 component sets must be pairwise disjoint.
    """

    calls: tuple[frozenset[str], ...]
    returns: tuple[frozenset[str], ...]
    internals: frozenset[str]
    _kinds: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        calls = tuple(frozenset(c) for c in self.calls)
        returns = tuple(frozenset(r) for r in self.returns)
        object.__setattr__(self, "calls", calls)
        object.__setattr__(self, "returns", returns)
        object.__setattr__(self, "internals", frozenset(self.internals))
        if len(calls) != len(returns):
            raise AlphabetError(
                f"calls has {len(calls)} stacks but returns has {len(returns)}"
            )
        kinds = {}
        components = [(Call(i + 1), c) for i, c in enumerate(calls)]
        components += [(Return(i + 1), r) for i, r in enumerate(returns)]
        components.append((Internal, self.internals))
        for kind, letters in components:
            for a in letters:
                if not isinstance(a, str) or not a or any(ch.isspace() for ch in a):
                    raise AlphabetError(f"invalid letter {a!r}")
                if a in kinds:
                    raise AlphabetError(
                        f"letter {a!r} is both {kinds[a]} and {kind}"
                    )
                kinds[a] = kind
        object.__setattr__(self, "_kinds", kinds)

    @classmethod
    def build(
        cls,
        calls: Iterable[Iterable[str]],
        returns: Iterable[Iterable[str]],
        internals: Iterable[str] = (),
    ) -> "CallReturnAlphabet":
        return cls(
            tuple(frozenset(c) for c in calls),
            tuple(frozenset(r) for r in returns),
            frozenset(internals),
        )

    @property
    def n(self) -> int:
        return len(self.calls)

    @property
    def call_letters(self) -> frozenset[str]:
        return frozenset().union(*self.calls)

    @property
    def return_letters(self) -> frozenset[str]:
        return frozenset().union(*self.returns)

    @property
    def letters(self) -> frozenset[str]:
        return frozenset(self._kinds)

    def __contains__(self, a) -> bool:
        return a in self._kinds

    def kind(self, a: str) -> Kind:
        try:
            return self._kinds[a]
        except (KeyError, TypeError):
            raise UnknownLetterError(a) from None

    def sorted_letters(self) -> list[str]:
        return sorted(self._kinds)


def classify_letter(alphabet: CallReturnAlphabet, a: str) -> Kind:
    """Return ``Call(i)``, ``Return(i)`` or ``Internal`` for letter ``a``."""
    return alphabet.kind(a)
