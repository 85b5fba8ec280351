"""Recurring tiling systems and their encoding into PDL(2,2).

A quarter-plane cell ``(n, m)`` is represented by the world ``x_i_j`` with
``(i, j) = pi(n, m) = (n + m, m)``.  The snake model threads all cells of
one anti-diagonal ``i`` on a single path: even diagonals are walked with
``a1 b2`` steps from ``x_i_i`` down to ``x_i_0``, odd diagonals with
``a2 b1`` steps from ``x_i_0`` up to ``x_i_i``.  Diagonals are linked by
``d a2 b1`` (even to odd) and ``c a1 b2`` (odd to even), and the root ``x``
enters with ``c a1 b2``.

Because a truncated model stops after diagonal ``R``, its path is labelled
by ``snake_prefix(R + 1)``: block ``r`` of the snake ends in diagonal
``r - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple, Optional

from .errors import DomainError, FormatError, IncompleteGridError
from .formula import (FALSE, TRUE, Atom, Automaton, Box, Diamond, Formula, Implies,
                      Not, Test, alt, conj, conjuncts, disj, match_box, plus,
                      power, seq, sigma_star, star)
from .kripke import KripkeStructure
from .languages import LETTERS, LanguageId, build_automaton
from .semantics import Verdict, _Evaluator, _tag

ROOT = "x"


@dataclass(frozen=True)
class TilingSystem:
    tiles: tuple[str, ...]
    h: frozenset
    v: frozenset
    t0: str

    def __post_init__(self):
        tiles = tuple(self.tiles)
        object.__setattr__(self, "tiles", tiles)
        object.__setattr__(self, "h", frozenset(tuple(p) for p in self.h))
        object.__setattr__(self, "v", frozenset(tuple(p) for p in self.v))
        if not tiles:
            raise FormatError("a tiling system needs at least one tile", "tiles")
        if len(set(tiles)) != len(tiles):
            raise FormatError("duplicate tile", "tiles")
        if self.t0 not in tiles:
            raise FormatError(f"{self.t0!r} is not a tile", "t0")
        for name, rel in (("h", self.h), ("v", self.v)):
            for t, t2 in rel:
                if t not in tiles or t2 not in tiles:
                    raise FormatError(f"pair ({t!r}, {t2!r}) uses unknown tiles",
                                      name)


@dataclass(frozen=True, eq=False)
class SolutionGrid:
    """Tiles on the triangle ``n + m <= R``."""

    R: int
    cells: Mapping[tuple[int, int], str] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.R, int) or self.R < 0:
            raise FormatError(f"R must be a non-negative integer, got {self.R!r}",
                              "R")
        cells = {(int(n), int(m)): t for (n, m), t in self.cells.items()}
        missing = [(n, m) for n, m in triangle(self.R) if (n, m) not in cells]
        if missing:
            raise IncompleteGridError(f"grid has no tile at {missing[0]}")
        extra = [c for c in cells if c[0] < 0 or c[1] < 0 or sum(c) > self.R]
        if extra:
            raise FormatError(f"cell {extra[0]} lies outside the triangle", "cells")
        object.__setattr__(self, "cells", cells)

    def __getitem__(self, cell) -> str:
        return self.cells[cell]

    def __eq__(self, other):
        if not isinstance(other, SolutionGrid):
            return NotImplemented
        return self.R == other.R and self.cells == other.cells

    __hash__ = None

    @classmethod
    def uniform(cls, R: int, tile: str) -> "SolutionGrid":
        return cls(R, {c: tile for c in triangle(R)})


def triangle(R: int):
    """Cells ``(n, m)`` with ``n + m <= R`` in diagonal order."""
    for i in range(R + 1):
        for m in range(i + 1):
            yield i - m, m


def pi(n: int, m: int) -> tuple[int, int]:
    if n < 0 or m < 0:
        raise DomainError(f"({n}, {m}) is not a pair of naturals")
    return n + m, m


def pi_inv(i: int, j: int) -> tuple[int, int]:
    if not 0 <= j <= i:
        raise DomainError(f"({i}, {j}) is outside the triangle 0 <= j <= i")
    return i - j, j


def world_name(i: int, j: int) -> str:
    return f"x_{i}_{j}"


def parse_world_name(name: str) -> Optional[tuple[int, int]]:
    parts = name.split("_")
    if len(parts) == 3 and parts[0] == "x" and parts[1].isdigit() and parts[2].isdigit():
        return int(parts[1]), int(parts[2])
    return None


# -- the formula --------------------------------------------------------------

def _mvpa(name: str) -> Automaton:
    return Automaton(build_automaton(LanguageId[name]), name)


PAIR0 = seq("a1", "b2")
PAIR1 = seq("a2", "b1")


def snake_formula(plus_variant: bool = False) -> Formula:
    sigma = sigma_star(LETTERS)
    pairs0 = plus(PAIR0) if plus_variant else star(PAIR0)
    pairs1 = plus(PAIR1) if plus_variant else star(PAIR1)
    return conj(
        Diamond(seq("c", PAIR0, "d", power(PAIR1, 2), "c"), TRUE),
        Box(seq(sigma, "c"),
            conj(Diamond(seq(pairs0, "d"), TRUE), Box(_mvpa("L0"), FALSE))),
        Box(seq(sigma, "d"),
            conj(Diamond(seq(pairs1, "c"), TRUE), Box(_mvpa("L1"), FALSE))),
    )


def diagonal_step() -> "Regex":
    """One even and one odd diagonal: ``(a1 b2)* d (a2 b1)* c``."""
    return seq(star(PAIR0), "d", star(PAIR1), "c")


def recur_formula(T: TilingSystem) -> Formula:
    t0 = Test(_atom(T.t0))
    step = diagonal_step()
    beta = seq(
        star(step),
        alt(seq(PAIR0, t0, step),
            seq(star(PAIR0), "d", star(PAIR1), t0, "c")),
    )
    return Box(seq(sigma_star(LETTERS), "c"), Diamond(beta, TRUE))


def _atom(t: str) -> Atom:
    return Atom(t)


def tile_formula(T: TilingSystem) -> Formula:
    one_tile = disj(*(
        conj(_atom(t), *(Not(conj(_atom(t), _atom(u))) for u in T.tiles if u != t))
        for t in T.tiles
    ))
    return Box(sigma_star(LETTERS), one_tile)


def _successors(rel, t, tiles):
    return disj(*(_atom(u) for u in tiles if (t, u) in rel))


def matching_formula(T: TilingSystem, ell: int) -> Formula:
    """The inner constraint checked at worlds of diagonals of parity ``ell``."""
    horiz, vert = _mvpa(f"L{ell}_h"), _mvpa(f"L{ell}_v")
    return conj(*(
        Implies(_atom(t), conj(Box(horiz, _successors(T.h, t, T.tiles)),
                               Box(vert, _successors(T.v, t, T.tiles))))
        for t in T.tiles
    ))


def hv_formula(T: TilingSystem) -> Formula:
    sigma = sigma_star(LETTERS)
    return conj(
        Box(seq(sigma, "c", plus(PAIR0)), matching_formula(T, 0)),
        Box(seq(sigma, "d", plus(PAIR1)), matching_formula(T, 1)),
    )


def compile_parts(T: TilingSystem, plus_variant: bool = False) -> dict[str, Formula]:
    return {
        "snake": snake_formula(plus_variant),
        "recur": recur_formula(T),
        "tile": tile_formula(T),
        "hv": hv_formula(T),
    }


def compile_tiling(T: TilingSystem, plus_variant: bool = False) -> Formula:
    """The PDL(2,2) formula that is satisfiable iff ``T`` has a solution."""
    parts = compile_parts(T, plus_variant)
    return conj(parts["snake"], parts["recur"], parts["tile"], parts["hv"])


# -- snake words and models ---------------------------------------------------

def snake_block(r: int) -> tuple[str, ...]:
    """Block ``r >= 1``: ``c (a1 b2)^r`` for odd ``r``, ``d (a2 b1)^r`` for even."""
    if r % 2:
        return ("c",) + ("a1", "b2") * r
    return ("d",) + ("a2", "b1") * r


def snake_prefix(segments: int) -> tuple[str, ...]:
    word = ()
    for r in range(1, segments + 1):
        word += snake_block(r)
    return word


def diagonal_cells(i: int) -> list[tuple[int, int]]:
    """Named worlds ``(i, j)`` of diagonal ``i`` in path order."""
    js = range(i, -1, -1) if i % 2 == 0 else range(i + 1)
    return [(i, j) for j in js]


def build_model(T: TilingSystem, grid: SolutionGrid) -> tuple[KripkeStructure, str]:
    """Truncated snake model of a (partial) solution, and its root world."""
    R = grid.R
    for cell in triangle(R):
        if grid.cells.get(cell) not in T.tiles:
            raise IncompleteGridError(f"cell {cell} has no tile of the system")
    path = [ROOT]
    labels = []

    def walk(letters, target):
        for a in letters[:-1]:
            labels.append(a)
            path.append(f"b_{len(path)}")
        labels.append(letters[-1])
        path.append(target)

    prev = None
    for i in range(R + 1):
        for (ii, j) in diagonal_cells(i):
            name = world_name(ii, j)
            if prev is None:
                walk(("c", "a1", "b2"), name)
            elif prev[0] != ii:
                walk(("d", "a2", "b1") if ii % 2 else ("c", "a1", "b2"), name)
            else:
                walk(("a2", "b1") if ii % 2 else ("a1", "b2"), name)
            prev = (ii, j)
    edges = frozenset(zip(path, labels, path[1:]))
    valuation = {}
    for w in path:
        ij = parse_world_name(w)
        valuation[w] = frozenset({grid[pi_inv(*ij)] if ij else T.t0})
    return KripkeStructure(tuple(path), LETTERS, edges, valuation), ROOT


def snake_path(K: KripkeStructure, root: str = ROOT) -> tuple[list[str], list[str]]:
    """Worlds and labels of the maximal path from ``root``.

    Raises ``ValueError`` if the path branches.
    """
    succ = {}
    for x, a, y in K.edges:
        if x in succ:
            raise ValueError(f"world {x!r} has more than one successor")
        succ[x] = (a, y)
    worlds, labels = [root], []
    while worlds[-1] in succ:
        a, y = succ[worlds[-1]]
        if y in worlds:
            raise ValueError("snake path is cyclic")
        labels.append(a)
        worlds.append(y)
    return worlds, labels


def first_column_worlds(K: KripkeStructure, root: str = ROOT) -> set[str]:
    """Worlds entered by ``c a1 b2`` or left by ``c`` along the snake path.

    The root itself is left by ``c`` but precedes the first block, so it is
    not counted.  On a model truncated after an odd diagonal ``R`` the world
    ``x_R_R`` has neither pattern and is missed as well.
    """
    worlds, labels = snake_path(K, root)
    out = set()
    for p in range(len(labels)):
        if labels[p:p + 3] == ["c", "a1", "b2"]:
            out.add(worlds[p + 3])
        if labels[p] == "c" and p > 0:
            out.add(worlds[p])
    return out


def world_diagonals(K: KripkeStructure, root: str = ROOT) -> dict[str, int]:
    """Diagonal of each path world: that of the next named world at or after it.

    Worlds after the last named world get diagonal ``R + 1``.
    """
    worlds, _ = snake_path(K, root)
    out = {}
    pending = []
    last = -1
    for w in worlds:
        pending.append(w)
        ij = parse_world_name(w)
        if ij is not None:
            last = ij[0]
            for p in pending:
                out[p] = last
            pending = []
    for p in pending:
        out[p] = last + 1
    return out


def interior_worlds(K: KripkeStructure, R: int, margin: int = 2,
                    root: str = ROOT) -> frozenset[str]:
    """Worlds at least ``margin`` diagonals away from the truncation."""
    return frozenset(w for w, i in world_diagonals(K, root).items()
                     if i <= R - margin)


def satisfies_interior(K: KripkeStructure, x: str, phi: Formula,
                       interior: Iterable[str], bound: Optional[int] = None,
                       ) -> Verdict:
    """``satisfies`` with every top-level box relativised to ``interior``.

    Each top-level conjunct ``[P] psi`` is checked only at the ``P``-successors
    of ``x`` inside ``interior``; other conjuncts are checked at ``x``.
    """
    details = interior_report(K, x, phi, interior, bound)
    holds = all(not d["failures"] for d in details)
    return Verdict.of(holds, _tag(phi, bound))


def interior_report(K, x, phi, interior, bound=None) -> list[dict]:
    """Per-conjunct breakdown behind :func:`satisfies_interior`."""
    interior = frozenset(interior)
    ev = _Evaluator(K, bound)
    report = []
    for part in conjuncts(phi):
        boxed = match_box(part)
        if boxed is None:
            failures = [] if x in ev.worlds(part) else [x]
            checked = [x]
        else:
            prog, inner = boxed
            targets = sorted(y for (_, y) in _image(ev, x, prog) if y in interior)
            good = ev.worlds(inner)
            failures = [y for y in targets if y not in good]
            checked = targets
        report.append({"formula": part, "checked": checked, "failures": failures,
                       "bound": _tag(part, bound)})
    return report


def _image(ev: _Evaluator, x, prog):
    if isinstance(prog, Automaton):
        return {(x, y) for y in ev._automaton_reach(prog, x)}
    return {(x, y) for y in ev._regex_reach(ev._compiled(prog), x)}


# -- grids ---------------------------------------------------------------------

class Violation(NamedTuple):
    n: int
    m: int
    direction: str  # "horizontal" or "vertical"
    tile: str
    neighbour: str


def check_grid(T: TilingSystem, grid: SolutionGrid) -> list[Violation]:
    """Matching violations between cells that both lie in the triangle."""
    out = []
    for n, m in triangle(grid.R):
        t = grid[n, m]
        if n + m + 1 <= grid.R:
            right, up = grid[n + 1, m], grid[n, m + 1]
            if (t, right) not in T.h:
                out.append(Violation(n, m, "horizontal", t, right))
            if (t, up) not in T.v:
                out.append(Violation(n, m, "vertical", t, up))
    return out


def column_zero_count(T: TilingSystem, grid: SolutionGrid) -> int:
    """How many cells ``(0, m)`` carry ``t0`` (the recurrence proxy)."""
    return sum(grid[0, m] == T.t0 for m in range(grid.R + 1))


def bounded_tiler(T: TilingSystem, R: int,
                  force_column_zero: bool = False) -> Optional[SolutionGrid]:
    """Backtracking search for a valid triangle of size ``R``; ``None`` if none."""
    if R < 0:
        raise DomainError("R must be non-negative")
    cells = list(triangle(R))
    assignment: dict[tuple[int, int], str] = {}

    def candidates(n, m):
        for t in T.tiles:
            if force_column_zero and n == 0 and t != T.t0:
                continue
            if n > 0 and (assignment[n - 1, m], t) not in T.h:
                continue
            if m > 0 and (assignment[n, m - 1], t) not in T.v:
                continue
            yield t

    stack = [candidates(*cells[0])]
    while stack:
        pos = len(stack) - 1
        t = next(stack[-1], None)
        if t is None:
            stack.pop()
            continue
        assignment[cells[pos]] = t
        if pos + 1 == len(cells):
            return SolutionGrid(R, dict(assignment))
        stack.append(candidates(*cells[pos + 1]))
    return None
