"""Random instances for property tests (hypothesis) and seeded suites."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from mvpa_pdl.alphabet import CallReturnAlphabet
from mvpa_pdl.formula import (TRUE, Alt, Atom, Box, Cat, Diamond, Eps, Not,
                              Or, Star, Sym, Test)
from mvpa_pdl.kripke import KripkeStructure
from mvpa_pdl.mvpa import BOTTOM, Mvpa
from mvpa_pdl.tiling import SolutionGrid, TilingSystem, triangle

SMALL = CallReturnAlphabet.build([{"a1"}, {"a2"}], [{"b1"}, {"b2"}], {"c", "d"})
SMALL_LETTERS = sorted(SMALL.letters)
STATES = ["q0", "q1", "q2", "q3"]
GAMMA = ["x", "y"]
PROPS = ["p", "q"]

# stack-consistent renamings of SMALL: swap the stacks and/or the internals
STACK_SWAP = {"a1": "a2", "a2": "a1", "b1": "b2", "b2": "b1"}
INTERNAL_SWAP = {"c": "d", "d": "c"}


# -- automata -----------------------------------------------------------------

@st.composite
def mvpas(draw, deterministic=False):
    state = st.sampled_from(STATES)
    calls = [a for a in SMALL_LETTERS if a.startswith("a")]
    rets = [a for a in SMALL_LETTERS if a.startswith("b")]
    ints = sorted(SMALL.internals)
    if deterministic:
        call = draw(st.dictionaries(st.tuples(state, st.sampled_from(calls)),
                                    st.tuples(state, st.sampled_from(GAMMA)),
                                    max_size=8))
        ret = draw(st.dictionaries(
            st.tuples(state, st.sampled_from(rets), st.sampled_from(GAMMA + [BOTTOM])),
            state, max_size=10))
        internal = draw(st.dictionaries(st.tuples(state, st.sampled_from(ints)),
                                        state, max_size=6))
        call_trans = {(q, a, q2, g) for (q, a), (q2, g) in call.items()}
        ret_trans = {(q, a, g, q2) for (q, a, g), q2 in ret.items()}
        int_trans = {(q, a, q2) for (q, a), q2 in internal.items()}
        initial = {draw(state)}
    else:
        call_trans = draw(st.sets(st.tuples(state, st.sampled_from(calls), state,
                                            st.sampled_from(GAMMA)), max_size=10))
        ret_trans = draw(st.sets(st.tuples(state, st.sampled_from(rets),
                                           st.sampled_from(GAMMA + [BOTTOM]), state),
                                 max_size=12))
        int_trans = draw(st.sets(st.tuples(state, st.sampled_from(ints), state),
                                 max_size=6))
        initial = draw(st.sets(state, max_size=2))
    return Mvpa(
        alphabet=SMALL,
        states=frozenset(STATES),
        initial=frozenset(initial),
        stack_alphabet=frozenset(GAMMA + [BOTTOM]),
        call_trans=frozenset(call_trans),
        ret_trans=frozenset(ret_trans),
        int_trans=frozenset(int_trans),
        finals=frozenset(draw(st.sets(state, min_size=1, max_size=2))),
        k=draw(st.integers(1, 3)),
    )


def words(letters=SMALL_LETTERS, max_size=12):
    return st.lists(st.sampled_from(list(letters)), max_size=max_size)


# -- formulas and programs ------------------------------------------------------

def literal_tests():
    atoms = st.sampled_from([Atom(p) for p in PROPS])
    return st.one_of(st.just(TRUE), atoms, atoms.map(Not)).map(Test)


def regexes(letters, tests=True, max_leaves=8):
    base = [st.sampled_from([Sym(a) for a in letters]), st.just(Eps())]
    if tests:
        base.append(literal_tests())
    return st.recursive(
        st.one_of(*base),
        lambda inner: st.one_of(
            st.builds(Cat, inner, inner),
            st.builds(Alt, inner, inner),
            st.builds(Star, inner),
        ),
        max_leaves=max_leaves,
    )


def formulas(letters, max_leaves=6):
    base = st.one_of(st.just(TRUE), st.sampled_from([Atom(p) for p in PROPS]))
    return st.recursive(
        base,
        lambda inner: st.one_of(
            st.builds(Or, inner, inner),
            st.builds(Not, inner),
            st.builds(Diamond, regexes(letters, max_leaves=4), inner),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def kripkes(draw, letters=("a", "b", "c"), max_worlds=5):
    n = draw(st.integers(0, max_worlds))
    worlds = [f"w{i}" for i in range(n)]
    letters = list(letters)
    edges = set()
    if worlds:
        edges = draw(st.sets(st.tuples(st.sampled_from(worlds), st.sampled_from(letters),
                                       st.sampled_from(worlds)), max_size=3 * n))
    valuation = {w: draw(st.frozensets(st.sampled_from(PROPS))) for w in worlds}
    return KripkeStructure.build(worlds, letters, edges, valuation)


@st.composite
def tilings(draw):
    n = draw(st.integers(1, 3))
    tiles = [f"t{i}" for i in range(n)]
    pairs = st.tuples(st.sampled_from(tiles), st.sampled_from(tiles))
    return TilingSystem(tuple(tiles), frozenset(draw(st.sets(pairs))),
                        frozenset(draw(st.sets(pairs))), draw(st.sampled_from(tiles)))


@st.composite
def grids(draw, tiles=("t0", "t1", "t2"), max_R=6):
    R = draw(st.integers(0, max_R))
    return SolutionGrid(R, {c: draw(st.sampled_from(tiles)) for c in triangle(R)})


# -- seeded generators (no hypothesis) --------------------------------------------

def random_kripke(rng: random.Random, max_worlds=5, max_letters=3) -> KripkeStructure:
    n = rng.randint(1, max_worlds)
    worlds = [f"w{i}" for i in range(n)]
    letters = ["a", "b", "c"][:rng.randint(1, max_letters)]
    density = rng.uniform(0.1, 0.5)
    edges = [(x, a, y) for x in worlds for a in letters for y in worlds
             if rng.random() < density]
    valuation = {w: frozenset(p for p in PROPS if rng.random() < 0.5) for w in worlds}
    return KripkeStructure.build(worlds, letters, edges, valuation)


def random_regex(rng: random.Random, letters, depth=3, star_height=2):
    """Random expression with at most ``star_height`` nested stars."""
    if depth == 0 or rng.random() < 0.25:
        roll = rng.random()
        if roll < 0.75:
            return Sym(rng.choice(letters))
        if roll < 0.85:
            return Eps()
        f = rng.choice([TRUE, Atom(rng.choice(PROPS)), Not(Atom(rng.choice(PROPS)))])
        return Test(f)
    ops = ["cat", "alt"] + (["star"] if star_height > 0 else [])
    op = rng.choice(ops)
    if op == "star":
        return Star(random_regex(rng, letters, depth - 1, star_height - 1))
    left = random_regex(rng, letters, depth - 1, star_height)
    right = random_regex(rng, letters, depth - 1, star_height)
    return Cat(left, right) if op == "cat" else Alt(left, right)


def random_mvpa(rng: random.Random) -> Mvpa:
    def pick(seq):
        return rng.choice(seq)
    calls = ["a1", "a2"]
    rets = ["b1", "b2"]
    ints = ["c", "d"]
    return Mvpa(
        alphabet=SMALL,
        states=frozenset(STATES),
        initial=frozenset(rng.sample(STATES, rng.randint(0, 2))),
        stack_alphabet=frozenset(GAMMA + [BOTTOM]),
        call_trans=frozenset((pick(STATES), pick(calls), pick(STATES), pick(GAMMA))
                             for _ in range(rng.randint(0, 8))),
        ret_trans=frozenset((pick(STATES), pick(rets), pick(GAMMA + [BOTTOM]),
                             pick(STATES)) for _ in range(rng.randint(0, 10))),
        int_trans=frozenset((pick(STATES), pick(ints), pick(STATES))
                            for _ in range(rng.randint(0, 5))),
        finals=frozenset(rng.sample(STATES, rng.randint(0, 2))),
        k=rng.randint(1, 3),
    )


def random_tiling(rng: random.Random) -> TilingSystem:
    tiles = tuple(f"t{i}" for i in range(rng.randint(1, 4)))
    pairs = [(t, u) for t in tiles for u in tiles]
    h = frozenset(p for p in pairs if rng.random() < 0.5)
    v = frozenset(p for p in pairs if rng.random() < 0.5)
    return TilingSystem(tiles, h, v, rng.choice(tiles))


def random_grid(rng: random.Random, tiles, max_R=8) -> SolutionGrid:
    R = rng.randint(0, max_R)
    return SolutionGrid(R, {c: rng.choice(tiles) for c in triangle(R)})


def random_formula(rng: random.Random, letters, depth=3, automata=()):
    """Random formula; ``automata`` is a list of named automaton programs."""
    if depth == 0 or rng.random() < 0.2:
        return rng.choice([TRUE, Atom(rng.choice(PROPS))])
    roll = rng.random()
    sub = random_formula(rng, letters, depth - 1, automata)
    if roll < 0.25:
        return Or(sub, random_formula(rng, letters, depth - 1, automata))
    if roll < 0.45:
        return Not(sub)
    if automata and roll < 0.6:
        prog = rng.choice(automata)
    else:
        prog = random_regex(rng, letters, depth=2)
    return Diamond(prog, sub) if rng.random() < 0.5 else Box(prog, sub)
