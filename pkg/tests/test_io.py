import json

import pytest
from hypothesis import given, settings

from mvpa_pdl import io
from mvpa_pdl.errors import FormatError
from mvpa_pdl.languages import LanguageId, build_automaton

from generators import grids, kripkes, mvpas, tilings


def through_json(d):
    return json.loads(json.dumps(d))


@settings(max_examples=200)
@given(mvpas())
def test_mvpa_round_trip(M):
    assert io.mvpa_from_dict(through_json(io.mvpa_to_dict(M))) == M


def test_builtin_machines_round_trip():
    for lang in LanguageId:
        M = build_automaton(lang)
        assert io.mvpa_from_dict(through_json(io.mvpa_to_dict(M))) == M


@settings(max_examples=200)
@given(kripkes())
def test_kripke_round_trip(K):
    assert io.kripke_from_dict(through_json(io.kripke_to_dict(K))) == K


@settings(max_examples=200)
@given(tilings())
def test_tiling_round_trip(T):
    assert io.tiling_from_dict(through_json(io.tiling_to_dict(T))) == T


@settings(max_examples=100)
@given(grids())
def test_grid_round_trip(g):
    assert io.grid_from_dict(through_json(io.grid_to_dict(g))) == g


def test_files(tmp_path):
    M = build_automaton(LanguageId.L0_v)
    io.write_json(tmp_path / "m.json", io.mvpa_to_dict(M))
    assert io.load_mvpa(tmp_path / "m.json") == M


def _field(fn, d):
    with pytest.raises(FormatError) as info:
        fn(d)
    return info.value.field


def test_errors_name_the_field(tmp_path):
    d = io.mvpa_to_dict(build_automaton(LanguageId.L0))
    del d["finals"]
    assert _field(io.mvpa_from_dict, d) == "finals"
    d = io.mvpa_to_dict(build_automaton(LanguageId.L0))
    d["stack_alphabet"] = ["x"]
    assert _field(io.mvpa_from_dict, d) == "stack_alphabet"
    d = io.mvpa_to_dict(build_automaton(LanguageId.L0))
    d["transitions"]["call"][0]["push"] = 3
    assert _field(io.mvpa_from_dict, d) == "transitions.call[0].push"
    assert _field(io.kripke_from_dict,
                  {"worlds": [{"id": "x"}], "letters": ["a"],
                   "edges": [{"from": "x", "letter": "a", "to": "y"}]}) == "edges"
    assert _field(io.tiling_from_dict,
                  {"tiles": ["t"], "h": [["t"]], "v": [], "t0": "t"}) == "h[0]"
    assert _field(io.grid_from_dict, {"R": 0, "cells": [{"n": 0, "m": 0}]}) == "cells[0].tile"
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    with pytest.raises(FormatError):
        io.load_kripke(bad)
    with pytest.raises(FormatError):
        io.load_kripke(tmp_path / "missing.json")
