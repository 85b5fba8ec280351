"""JSON file formats for automata, Kripke structures, tilings and grids."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .alphabet import CallReturnAlphabet
from .errors import FormatError, MvpaPdlError
from .kripke import KripkeStructure
from .mvpa import BOTTOM, Mvpa
from .tiling import SolutionGrid, TilingSystem


def _get(d: dict, key: str, kind=None, where=""):
    field = f"{where}{key}"
    if not isinstance(d, dict):
        raise FormatError("expected an object", where.rstrip(".") or None)
    if key not in d:
        raise FormatError("missing field", field)
    value = d[key]
    if kind is not None and not isinstance(value, kind):
        raise FormatError(f"expected {_kind_name(kind)}, got {type(value).__name__}",
                          field)
    return value


def _kind_name(kind):
    names = {list: "an array", str: "a string", int: "an integer", dict: "an object"}
    return names.get(kind, getattr(kind, "__name__", str(kind)))


def _strings(values, field) -> list[str]:
    if not isinstance(values, list) or not all(isinstance(v, str) for v in values):
        raise FormatError("expected an array of strings", field)
    return values


def _wrap(fn, field):
    try:
        return fn()
    except FormatError:
        raise
    except MvpaPdlError as exc:
        raise FormatError(str(exc), field) from None


# -- automata -------------------------------------------------------------------

def mvpa_to_dict(M: Mvpa) -> dict[str, Any]:
    A = M.alphabet
    return {
        "stacks": A.n,
        "calls": [sorted(c) for c in A.calls],
        "returns": [sorted(r) for r in A.returns],
        "internals": sorted(A.internals),
        "states": sorted(M.states),
        "initial": sorted(M.initial),
        "finals": sorted(M.finals),
        "stack_alphabet": sorted(M.stack_alphabet),
        "k": M.k,
        "transitions": {
            "call": [{"from": q, "letter": a, "to": q2, "push": g}
                     for q, a, q2, g in sorted(M.call_trans)],
            "ret": [{"from": q, "letter": a, "pop": g, "to": q2}
                    for q, a, g, q2 in sorted(M.ret_trans)],
            "int": [{"from": q, "letter": a, "to": q2}
                    for q, a, q2 in sorted(M.int_trans)],
        },
    }


def mvpa_from_dict(d: dict) -> Mvpa:
    n = _get(d, "stacks", int)
    calls = _get(d, "calls", list)
    returns = _get(d, "returns", list)
    if len(calls) != n:
        raise FormatError(f"expected {n} arrays", "calls")
    if len(returns) != n:
        raise FormatError(f"expected {n} arrays", "returns")
    calls = [_strings(c, f"calls[{i}]") for i, c in enumerate(calls)]
    returns = [_strings(r, f"returns[{i}]") for i, r in enumerate(returns)]
    internals = _strings(_get(d, "internals", list), "internals")
    alphabet = _wrap(lambda: CallReturnAlphabet.build(calls, returns, internals),
                     "calls")
    states = _strings(_get(d, "states", list), "states")
    initial = _strings(_get(d, "initial", list), "initial")
    finals = _strings(_get(d, "finals", list), "finals")
    gamma = _strings(_get(d, "stack_alphabet", list), "stack_alphabet")
    if BOTTOM not in gamma:
        raise FormatError(f"must include {BOTTOM!r}", "stack_alphabet")
    k = _get(d, "k", int)
    trans = _get(d, "transitions", dict)
    tables = {}
    for key, fields in (("call", ("from", "letter", "to", "push")),
                        ("ret", ("from", "letter", "pop", "to")),
                        ("int", ("from", "letter", "to"))):
        rows = trans.get(key, [])
        if not isinstance(rows, list):
            raise FormatError("expected an array", f"transitions.{key}")
        tables[key] = frozenset(
            tuple(_get(row, f, str, f"transitions.{key}[{i}].") for f in fields)
            for i, row in enumerate(rows)
        )
    return _wrap(lambda: Mvpa(alphabet, frozenset(states), frozenset(initial),
                              frozenset(gamma), tables["call"], tables["ret"],
                              tables["int"], frozenset(finals), k),
                 "transitions")


# -- Kripke structures -------------------------------------------------------------

def kripke_to_dict(K: KripkeStructure) -> dict[str, Any]:
    return {
        "worlds": [{"id": x, "props": sorted(K.props(x))} for x in K.worlds],
        "letters": list(K.letters),
        "edges": [{"from": x, "letter": a, "to": y} for x, a, y in sorted(K.edges)],
    }


def kripke_from_dict(d: dict) -> KripkeStructure:
    worlds = _get(d, "worlds", list)
    ids, valuation = [], {}
    for i, w in enumerate(worlds):
        x = _get(w, "id", str, f"worlds[{i}].")
        props = w.get("props", [])
        valuation[x] = frozenset(_strings(props, f"worlds[{i}].props"))
        ids.append(x)
    letters = _strings(_get(d, "letters", list), "letters")
    edges = [
        tuple(_get(e, f, str, f"edges[{i}].") for f in ("from", "letter", "to"))
        for i, e in enumerate(_get(d, "edges", list))
    ]
    return KripkeStructure(tuple(ids), tuple(letters), frozenset(edges), valuation)


# -- tilings and grids -------------------------------------------------------------

def tiling_to_dict(T: TilingSystem) -> dict[str, Any]:
    return {
        "tiles": list(T.tiles),
        "h": [list(p) for p in sorted(T.h)],
        "v": [list(p) for p in sorted(T.v)],
        "t0": T.t0,
    }


def tiling_from_dict(d: dict) -> TilingSystem:
    tiles = _strings(_get(d, "tiles", list), "tiles")
    rels = {}
    for key in ("h", "v"):
        pairs = _get(d, key, list)
        for i, p in enumerate(pairs):
            if (not isinstance(p, list) or len(p) != 2
                    or not all(isinstance(t, str) for t in p)):
                raise FormatError("expected a pair of tile names", f"{key}[{i}]")
        rels[key] = frozenset(tuple(p) for p in pairs)
    t0 = _get(d, "t0", str)
    return TilingSystem(tuple(tiles), rels["h"], rels["v"], t0)


def grid_to_dict(grid: SolutionGrid) -> dict[str, Any]:
    return {
        "R": grid.R,
        "cells": [{"n": n, "m": m, "tile": grid[n, m]}
                  for n, m in sorted(grid.cells, key=lambda c: (c[0] + c[1], c[1]))],
    }


def grid_from_dict(d: dict) -> SolutionGrid:
    R = _get(d, "R", int)
    cells = {}
    for i, c in enumerate(_get(d, "cells", list)):
        n = _get(c, "n", int, f"cells[{i}].")
        m = _get(c, "m", int, f"cells[{i}].")
        cells[n, m] = _get(c, "tile", str, f"cells[{i}].")
    return SolutionGrid(R, cells)


# -- files -------------------------------------------------------------------------

def read_json(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def write_json(path, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n", encoding="utf-8")


def load_mvpa(path) -> Mvpa:
    return mvpa_from_dict(read_json(path))


def load_kripke(path) -> KripkeStructure:
    return kripke_from_dict(read_json(path))


def load_tiling(path) -> TilingSystem:
    return tiling_from_dict(read_json(path))


def load_grid(path) -> SolutionGrid:
    return grid_from_dict(read_json(path))
