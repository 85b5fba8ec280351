import pytest
from hypothesis import given, strategies as st

from mvpa_pdl.alphabet import (Call, CallReturnAlphabet, Internal, Return,
                               classify_letter)
from mvpa_pdl.errors import AlphabetError, UnknownLetterError
from mvpa_pdl.languages import ALPHABET


@pytest.mark.parametrize("letter, kind", [
    ("a1", Call(1)), ("a2", Call(2)),
    ("b1", Return(1)), ("b2", Return(2)),
    ("c", Internal), ("d", Internal),
])
def test_classify_reduction_letters(letter, kind):
    assert classify_letter(ALPHABET, letter) == kind


def test_unknown_letter():
    with pytest.raises(UnknownLetterError):
        classify_letter(ALPHABET, "e")


def test_components_must_be_disjoint():
    with pytest.raises(AlphabetError):
        CallReturnAlphabet.build([{"a"}], [{"a"}], set())
    with pytest.raises(AlphabetError):
        CallReturnAlphabet.build([{"a"}, {"b"}], [{"r"}, {"s"}], {"b"})


def test_stack_counts_must_agree():
    with pytest.raises(AlphabetError):
        CallReturnAlphabet.build([{"a"}, {"b"}], [{"r"}], set())


def test_letters_without_whitespace():
    with pytest.raises(AlphabetError):
        CallReturnAlphabet.build([{"a 1"}], [{"b"}], set())


def test_kind_str():
    assert str(Call(2)) == "Call(2)"
    assert str(Return(1)) == "Return(1)"
    assert str(Internal) == "Internal"


@given(st.lists(st.sets(st.text("abcxyz", min_size=1, max_size=3), max_size=3),
                min_size=3, max_size=5))
def test_kind_lookup_is_total_and_unique(parts):
    # components built from possibly overlapping sets; reject overlaps
    n = (len(parts) - 1) // 2
    calls, returns, internals = parts[:n], parts[n:2 * n], parts[-1]
    all_letters = [a for p in parts[:2 * n] + [internals] for a in p]
    if len(set(all_letters)) != len(all_letters):
        with pytest.raises(AlphabetError):
            CallReturnAlphabet.build(calls, returns, internals)
        return
    A = CallReturnAlphabet.build(calls, returns, internals)
    for i, c in enumerate(calls):
        for a in c:
            assert A.kind(a) == Call(i + 1)
    for i, r in enumerate(returns):
        for a in r:
            assert A.kind(a) == Return(i + 1)
    for a in internals:
        assert A.kind(a) == Internal
    assert A.letters == frozenset(all_letters)
