"""Graphviz DOT rendering of automata and Kripke structures.

Output is byte-stable: nodes and edges are emitted in sorted order.
"""

from __future__ import annotations

from .kripke import KripkeStructure
from .mvpa import BOTTOM, Mvpa


def _quote(s) -> str:
    return '"{}"'.format(str(s).replace('"', r"\""))


def _sym(g) -> str:
    return "⊥" if g == BOTTOM else str(g)


def mvpa_dot(M: Mvpa, name: str = "mvpa") -> str:
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;"]
    for q in sorted(M.states, key=str):
        attrs = ["shape=doublecircle" if q in M.finals else "shape=circle"]
        if q in M.initial:
            attrs.append("style=bold")
        lines.append(f"  {_quote(q)} [{', '.join(attrs)}];")
    edges = [(q, f"{a}/{_sym(g)}", q2) for q, a, q2, g in M.call_trans]
    edges += [(q, f"{a}/{_sym(g)}", q2) for q, a, g, q2 in M.ret_trans]
    edges += [(q, a, q2) for q, a, q2 in M.int_trans]
    for q, label, q2 in sorted(edges, key=lambda e: tuple(map(str, e))):
        lines.append(f"  {_quote(q)} -> {_quote(q2)} [label={_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def kripke_dot(K: KripkeStructure, name: str = "kripke") -> str:
    lines = [f"digraph {_quote(name)} {{"]
    for x in sorted(K.worlds):
        props = ",".join(sorted(K.props(x)))
        label = f"{x}\\n{{{props}}}" if props else x
        lines.append(f"  {_quote(x)} [label={_quote(label)}];")
    for x, a, y in sorted(K.edges):
        lines.append(f"  {_quote(x)} -> {_quote(y)} [label={_quote(a)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(obj, name: str | None = None) -> str:
    if isinstance(obj, Mvpa):
        return mvpa_dot(obj, name or "mvpa")
    if isinstance(obj, KripkeStructure):
        return kripke_dot(obj, name or "kripke")
    raise TypeError(f"cannot render {type(obj).__name__} as DOT")
