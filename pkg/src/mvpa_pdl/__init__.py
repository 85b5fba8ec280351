"""k-phase multi-stack visibly pushdown automata, PDL over finite Kripke
structures, and the encoding of recurring tiling systems into PDL(2,2)."""

from .alphabet import (Call, CallReturnAlphabet, Internal, Kind, Return,
                       classify_letter)
from .formula import (FALSE, TRUE, Alt, And, Atom, Automaton, Box, Cat,
                      Diamond, Eps, Implies, Not, Or, Star, Sym, Test, Top,
                      format_formula, parse_formula, parse_regex)
from .kernels import BACKEND
from .kripke import KripkeStructure
from .languages import (LanguageId, build_automaton, enumerate_members,
                        oracle_member)
from .mvpa import (BOTTOM, Configuration, Mvpa, Run, accepting_run,
                   is_deterministic, membership, min_phases, rename, step)
from .semantics import (Evaluation, ProgramEvaluation, Verdict, eval_formula,
                        eval_program, eval_word, satisfies, witness)
from .tiling import (SolutionGrid, TilingSystem, bounded_tiler, build_model,
                     check_grid, compile_tiling, pi, pi_inv, snake_prefix)

__version__ = "0.1.0"
