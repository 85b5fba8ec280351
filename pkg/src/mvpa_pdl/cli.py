"""Command-line interface: ``mvpa-pdl <command> ...``.

Every command prints one JSON object on standard output.  Exit status is 0
on success, 1 on domain errors (bad files, invariant violations) and 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io
from .dot import export_dot
from .errors import FormatError, MvpaPdlError
from .formula import Diamond, format_formula, parse_formula
from .languages import ALPHABET, LanguageId, build_automaton, enumerate_members
from .mvpa import accepting_run, is_deterministic, membership, min_phases
from .semantics import satisfies, witness
from .tiling import (bounded_tiler, build_model, check_grid, column_zero_count,
                     compile_parts, compile_tiling, interior_worlds,
                     satisfies_interior)

BOUND_ENV = "MVPA_PDL_BOUND"


def load_automaton(ref: str):
    """A built-in language name (``L0``, ``L1_h``, ...) or an automaton file."""
    try:
        return build_automaton(LanguageId.parse(ref))
    except ValueError:
        pass
    return io.load_mvpa(ref)


def _word(text: str) -> list[str]:
    return text.split()


def _formula_resolver(base: Path):
    def resolve(name):
        try:
            return build_automaton(LanguageId.parse(name))
        except ValueError:
            path = Path(name)
            if not path.is_absolute():
                path = base / path
            return io.load_mvpa(path)
    return resolve


def _read_formula(arg: str):
    path = Path(arg)
    if path.is_file():
        return parse_formula(path.read_text(encoding="utf-8"),
                             _formula_resolver(path.parent))
    return parse_formula(arg, _formula_resolver(Path.cwd()))


def _bound(args):
    if args.bound is not None:
        return args.bound
    env = os.environ.get(BOUND_ENV)
    if env is None or env == "":
        return None
    try:
        value = int(env)
    except ValueError:
        raise FormatError(f"not an integer: {env!r}", BOUND_ENV) from None
    if value < 0:
        raise FormatError("must be non-negative", BOUND_ENV)
    return value


# -- commands ------------------------------------------------------------------

def cmd_run(args):
    M = load_automaton(args.automaton)
    w = _word(args.word)
    run = accepting_run(M, w)
    out = {"accepted": run is not None, "phases": min_phases(M.alphabet, w)}
    if run is not None:
        out["run"] = [{"state": c.state, "stacks": [list(s) for s in c.stacks]}
                      for c in run.configurations]
    return out


def cmd_phases(args):
    alphabet = load_automaton(args.automaton).alphabet if args.automaton else ALPHABET
    return {"phases": min_phases(alphabet, _word(args.word))}


def cmd_member(args):
    return {"member": membership(load_automaton(args.automaton), _word(args.word))}


def cmd_deterministic(args):
    return {"deterministic": is_deterministic(load_automaton(args.automaton))}


def cmd_languages(args):
    lang = LanguageId.parse(args.id)
    if args.action == "emit":
        return io.mvpa_to_dict(build_automaton(lang))
    if args.max_exponent is None:
        raise FormatError("enumerate needs a maximal exponent", "max_exponent")
    words = enumerate_members(lang, args.max_exponent)
    return {"language": lang.name, "words": [" ".join(w) for w in words]}


def cmd_compile(args):
    T = io.load_tiling(args.tiling)
    phi = compile_tiling(T, args.plus_variant)
    text = format_formula(phi)
    out = {"conjuncts": len(compile_parts(T)),
           "parts": {k: format_formula(v)
                     for k, v in compile_parts(T, args.plus_variant).items()}}
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
        out["written"] = args.output
    else:
        out["formula"] = text
    return out


def cmd_build_model(args):
    T = io.load_tiling(args.tiling)
    grid = io.load_grid(args.grid)
    if args.R is not None:
        if args.R > grid.R:
            raise FormatError(f"grid only covers R={grid.R}", "R")
        grid = type(grid)(args.R, {c: t for c, t in grid.cells.items()
                                   if sum(c) <= args.R})
    K, root = build_model(T, grid)
    out = {"root": root}
    out.update(io.kripke_to_dict(K))
    return out


def cmd_check(args):
    K = io.load_kripke(args.model)
    phi = _read_formula(args.formula)
    bound = _bound(args)
    world = args.world
    if world is None:
        world = K.worlds[0] if K.worlds else None
    if world is None:
        raise FormatError("the model has no worlds", "worlds")
    if args.interior is not None:
        verdict = satisfies_interior(K, world, phi,
                                     interior_worlds(K, args.R, args.interior, world),
                                     bound)
    else:
        verdict = satisfies(K, world, phi, bound)
    out = {"verdict": verdict.value, "world": world, "bound": bound}
    if isinstance(phi, Diamond) and verdict.holds:
        path = witness(K, world, phi, bound)
        out["witness"] = [{"token": tok, "world": w} for tok, w in path]
    return out


def cmd_tile(args):
    T = io.load_tiling(args.tiling)
    grid = bounded_tiler(T, args.R, args.force_column_zero)
    if grid is None:
        return {"solution": None}
    return {"solution": io.grid_to_dict(grid),
            "violations": len(check_grid(T, grid)),
            "t0_in_column_zero": column_zero_count(T, grid)}


def cmd_dot(args):
    if args.kind == "mvpa":
        obj = load_automaton(args.input)
    else:
        obj = io.load_kripke(args.input)
    text = export_dot(obj)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        return {"written": args.output}
    return {"dot": text}


# -- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mvpa-pdl", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("run", help="show an accepting run of an automaton")
    s.add_argument("-a", "--automaton", required=True)
    s.add_argument("-w", "--word", required=True)
    s.set_defaults(func=cmd_run)

    s = sub.add_parser("phases", help="minimal number of phases of a word")
    s.add_argument("-w", "--word", required=True)
    s.add_argument("-a", "--automaton", help="take the alphabet from this automaton")
    s.set_defaults(func=cmd_phases)

    s = sub.add_parser("member", help="k-phase membership of a word")
    s.add_argument("-a", "--automaton", required=True)
    s.add_argument("-w", "--word", required=True)
    s.set_defaults(func=cmd_member)

    s = sub.add_parser("deterministic", help="check the determinism condition")
    s.add_argument("-a", "--automaton", required=True)
    s.set_defaults(func=cmd_deterministic)

    s = sub.add_parser("languages", help="the six reduction languages")
    s.add_argument("-i", "--id", required=True,
                   choices=[m.name for m in LanguageId])
    s.add_argument("action", choices=["emit", "enumerate"])
    s.add_argument("max_exponent", nargs="?", type=int)
    s.set_defaults(func=cmd_languages)

    s = sub.add_parser("compile", help="compile a tiling system to a formula")
    s.add_argument("-t", "--tiling", required=True)
    s.add_argument("--plus-variant", action="store_true",
                   help="use (a1 b2)+ d / (a2 b1)+ c inside the snake conjunct")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_compile)

    s = sub.add_parser("build-model", help="truncated snake model of a grid")
    s.add_argument("-t", "--tiling", required=True)
    s.add_argument("-g", "--grid", required=True)
    s.add_argument("-R", type=int)
    s.set_defaults(func=cmd_build_model)

    s = sub.add_parser("check", help="evaluate a formula at a world")
    s.add_argument("-m", "--model", required=True)
    s.add_argument("-f", "--formula", required=True, help="formula file or text")
    s.add_argument("-b", "--bound", type=int,
                   help=f"witness-length bound (default ${BOUND_ENV})")
    s.add_argument("-x", "--world")
    s.add_argument("--interior", type=int, metavar="MARGIN",
                   help="relativise top-level boxes to worlds MARGIN diagonals "
                        "inside a truncated snake model (needs -R)")
    s.add_argument("-R", type=int, help="truncation of the snake model")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("tile", help="bounded backtracking tiler")
    s.add_argument("-t", "--tiling", required=True)
    s.add_argument("-R", type=int, required=True)
    s.add_argument("--force-column-zero", action="store_true")
    s.set_defaults(func=cmd_tile)

    s = sub.add_parser("dot", help="render an automaton or Kripke structure")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("--kind", choices=["mvpa", "kripke"], default="mvpa")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "interior", None) is not None and args.R is None:
        parser.error("--interior needs -R")
    if getattr(args, "R", None) is not None and args.R < 0:
        parser.error("-R must be non-negative")
    try:
        result = args.func(args)
    except (MvpaPdlError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 1
    json.dump(result, sys.stdout)
    sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
