import dataclasses
import os
import subprocess
import sys
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mvpa_pdl import kernels
from mvpa_pdl.errors import AlphabetError, KindError, UnknownLetterError
from mvpa_pdl.languages import ALPHABET, LETTERS, SWAP, LanguageId, build_automaton
from mvpa_pdl.mvpa import (BOTTOM, Configuration, LetterCodes, Mvpa,
                           accepting_run, accepts_unrestricted, is_deterministic,
                           membership, membership_batch, min_phases,
                           min_phases_batch, rename, step)

from generators import (INTERNAL_SWAP, SMALL, SMALL_LETTERS, STACK_SWAP, mvpas,
                        words)
from oracles import phases_dp

L0 = build_automaton(LanguageId.L0)
EMPTY = (BOTTOM,)


def conf(q, s1=EMPTY, s2=EMPTY):
    return Configuration(q, (tuple(s1), tuple(s2)))


# -- step ------------------------------------------------------------------------

def test_step_call_pushes():
    assert step(L0, conf("q0"), "a1") == {conf("q1", ("x", BOTTOM))}


def test_step_return_on_bottom_keeps_bottom():
    assert step(L0, conf("q3"), "b1") == {conf("q4")}


def test_step_return_pops():
    assert step(L0, conf("q3", ("x", BOTTOM)), "b1") == {conf("q2")}


def test_step_from_final_is_stuck():
    for a in LETTERS:
        assert step(L0, conf("p"), a) == frozenset()


def test_step_internal_keeps_stacks():
    c = conf("q0", EMPTY, ("x", BOTTOM))
    assert step(L0, c, "d") == {conf("q2", EMPTY, ("x", BOTTOM))}


# -- membership -----------------------------------------------------------------

def test_membership_examples():
    assert membership(L0, ["d", "c"])
    assert not membership(L0, ["d", "a2", "b1", "c"])
    assert membership(build_automaton(LanguageId.L0_h), ["d", "a2", "b1"])


def test_run_of_d_c():
    run = accepting_run(L0, ["d", "c"])
    assert [c.state for c in run.configurations] == ["q0", "q2", "p"]
    assert run.accepted and run.input == ("d", "c")


def test_run_is_consistent():
    w = ["a1", "b2", "d", "a2", "b1", "c"]
    run = accepting_run(L0, w)
    first = run.configurations[0]
    assert first.state in L0.initial and first.stacks == (EMPTY, EMPTY)
    for c, a, c2 in zip(run.configurations, w, run.configurations[1:]):
        assert c2 in step(L0, c, a)


def test_empty_word():
    M = dataclasses.replace(L0, finals=frozenset({"q0"}))
    assert membership(M, [])
    assert not membership(L0, [])


def test_alphabet_mismatch():
    with pytest.raises(UnknownLetterError):
        membership(L0, ["d", "z"])


# -- phases ------------------------------------------------------------------------

@pytest.mark.parametrize("w, expected", [
    ([], 0),
    (["a1", "b2", "d", "a2", "b1", "a2", "b1", "c"], 2),
    (["b1", "b2", "b1"], 3),
    (["a1", "a2", "c", "d"], 1),
])
def test_min_phases_examples(w, expected):
    assert min_phases(ALPHABET, w) == expected
    assert phases_dp(ALPHABET, w) == expected


@settings(max_examples=300)
@given(words(LETTERS, max_size=14))
def test_min_phases_matches_dp(w):
    assert min_phases(ALPHABET, w) == phases_dp(ALPHABET, w)


def test_min_phases_long_random_words():
    rng = random.Random(7)
    ws = [[rng.choice(LETTERS) for _ in range(rng.randint(13, 40))]
          for _ in range(10_000)]
    batch = min_phases_batch(ALPHABET, ws)
    for w, got in zip(ws[:1000], batch[:1000]):
        assert got == phases_dp(ALPHABET, w)
    assert list(batch) == [min_phases(ALPHABET, w) for w in ws]


# -- invariants on random machines -----------------------------------------------------

@settings(max_examples=200)
@given(mvpas(), words())
def test_bottom_occurs_once_at_bottom(M, w):
    frontier = set(M.initial_configurations())
    for a in w:
        for c in frontier:
            assert c.is_well_formed()
        frontier = {c2 for c in frontier for c2 in step(M, c, a)}
    assert all(c.is_well_formed() for c in frontier)


@settings(max_examples=200)
@given(mvpas(deterministic=True), words())
def test_deterministic_frontier_is_singleton(M, w):
    assert is_deterministic(M)
    frontier = set(M.initial_configurations())
    for a in w:
        assert len(frontier) <= 1
        frontier = {c2 for c in frontier for c2 in step(M, c, a)}
    assert len(frontier) <= 1


@settings(max_examples=200)
@given(mvpas(), words(max_size=10), st.integers(0, 4))
def test_membership_decomposes(M, w, k):
    M = dataclasses.replace(M, k=max(k, 1))
    expected = min_phases(SMALL, w) <= M.k and accepts_unrestricted(M, w)
    assert membership(M, w) == expected


@settings(max_examples=150)
@given(mvpas(), words(max_size=10), st.booleans(), st.booleans())
def test_rename_preserves_membership(M, w, swap_stacks, swap_internals):
    sigma = {}
    if swap_stacks:
        sigma.update(STACK_SWAP)
    if swap_internals:
        sigma.update(INTERNAL_SWAP)
    full = {a: sigma.get(a, a) for a in SMALL_LETTERS}
    assert membership(rename(M, sigma), [full[a] for a in w]) == membership(M, w)


# -- determinism ------------------------------------------------------------------------

def test_reduction_machines_are_deterministic():
    for lang in LanguageId:
        assert is_deterministic(build_automaton(lang))


def test_duplicate_call_edge_breaks_determinism():
    M = dataclasses.replace(
        L0, stack_alphabet=L0.stack_alphabet | {"y"},
        call_trans=L0.call_trans | {("q0", "a1", "q1", "y")})
    assert not is_deterministic(M)


def test_no_initial_state_is_not_deterministic():
    assert not is_deterministic(dataclasses.replace(L0, initial=frozenset()))


# -- rename -------------------------------------------------------------------------------

def test_rename_identity():
    assert rename(L0, {}) == L0


def test_rename_involution():
    assert rename(rename(L0, SWAP), SWAP) == L0


def test_rename_to_l1():
    assert rename(L0, SWAP) == build_automaton(LanguageId.L1)


def test_rename_sort_violation():
    with pytest.raises(KindError):
        rename(L0, {"a1": "c", "c": "a1"})


def test_rename_not_bijective():
    with pytest.raises(KindError):
        rename(L0, {"a1": "a2"})


# -- automaton invariants ----------------------------------------------------------------------

def test_call_may_not_push_bottom():
    with pytest.raises(AlphabetError):
        dataclasses.replace(L0, call_trans=L0.call_trans | {("q0", "a1", "q1", BOTTOM)})


def test_bottom_required():
    with pytest.raises(AlphabetError):
        dataclasses.replace(L0, stack_alphabet=frozenset({"x"}))


def test_transition_sort_checked():
    with pytest.raises(AlphabetError):
        dataclasses.replace(L0, int_trans=L0.int_trans | {("q0", "a1", "q1")})


def test_phase_bound_positive():
    with pytest.raises(AlphabetError):
        dataclasses.replace(L0, k=0)


# -- batch kernels --------------------------------------------------------------------------------

@settings(max_examples=100)
@given(mvpas(deterministic=True), st.lists(words(), min_size=1, max_size=20))
def test_batch_membership_matches_search(M, ws):
    assert list(membership_batch(M, ws)) == [membership(M, w) for w in ws]


@settings(max_examples=50)
@given(mvpas(), st.lists(words(max_size=8), min_size=1, max_size=10))
def test_batch_membership_nondeterministic(M, ws):
    assert list(membership_batch(M, ws)) == [membership(M, w) for w in ws]


@pytest.mark.skipif(kernels.compiled is None, reason="extension not built")
def test_compiled_and_fallback_agree():
    rng = np.random.default_rng(3)
    codes = LetterCodes.from_alphabet(ALPHABET)
    lengths = rng.integers(0, 25, size=3000).astype(np.int32)
    arr = rng.integers(0, 6, size=(3000, 25)).astype(np.int32)
    arr[np.arange(25)[None, :] >= lengths[:, None]] = -1
    phase_args = (codes.kinds, codes.stack_of, arr, lengths)
    assert np.array_equal(np.asarray(kernels.compiled.min_phases_batch(*phase_args)),
                          np.asarray(kernels.fallback.min_phases_batch(*phase_args)))
    for lang in LanguageId:
        M = build_automaton(lang)
        t = M.tables
        args = (t.call_next, t.call_push, t.ret_next, t.int_next, t.codes.kinds,
                t.codes.stack_of, M.n, t.initial, t.finals, M.k, arr, lengths)
        assert np.array_equal(np.asarray(kernels.compiled.run_deterministic(*args)),
                              np.asarray(kernels.fallback.run_deterministic(*args)))


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_environment_forces_fallback():
    code = ("from mvpa_pdl import kernels, membership, build_automaton, LanguageId;"
            "print(kernels.BACKEND, membership(build_automaton(LanguageId.L0), ['d', 'c']))")
    env = dict(os.environ, MVPA_PDL_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split()
    assert out == ["python", "True"]
