"""Compare the compiled batch kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--words N] [--length L] [--repeat R]
"""

import argparse
import time

import numpy as np

from mvpa_pdl import kernels
from mvpa_pdl.languages import ALPHABET, LanguageId, build_automaton
from mvpa_pdl.mvpa import LetterCodes


def random_words(n, max_len, seed):
    rng = np.random.default_rng(seed)
    lengths = rng.integers(0, max_len + 1, size=n).astype(np.int32)
    arr = rng.integers(0, 6, size=(n, max_len)).astype(np.int32)
    arr[np.arange(max_len)[None, :] >= lengths[:, None]] = -1
    return arr, lengths


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), np.asarray(result)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--words", type=int, default=200_000)
    ap.add_argument("--length", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    impls = {"python": kernels.fallback}
    if kernels.compiled is not None:
        impls["cython"] = kernels.compiled
    else:
        print("compiled extension not available; timing the fallback only")

    arr, lengths = random_words(args.words, args.length, args.seed)
    codes = LetterCodes.from_alphabet(ALPHABET)
    rows = []

    timings = {}
    for name, impl in impls.items():
        timings[name] = best_of(
            lambda: impl.min_phases_batch(codes.kinds, codes.stack_of, arr, lengths),
            args.repeat)
    rows.append(("min_phases", timings))

    for lang in (LanguageId.L0, LanguageId.L0_v):
        M = build_automaton(lang)
        t = M.tables
        call = (t.call_next, t.call_push, t.ret_next, t.int_next, t.codes.kinds,
                t.codes.stack_of, M.n, t.initial, t.finals, M.k, arr, lengths)
        timings = {}
        for name, impl in impls.items():
            timings[name] = best_of(lambda: impl.run_deterministic(*call), args.repeat)
        rows.append((f"membership {lang.name}", timings))

    print(f"{args.words} words, length <= {args.length}, best of {args.repeat}")
    print(f"{'kernel':<18}{'python s':>10}{'cython s':>10}{'speed-up':>10}  agree")
    for label, timings in rows:
        py_t, py_r = timings["python"]
        if "cython" in timings:
            cy_t, cy_r = timings["cython"]
            agree = np.array_equal(py_r, cy_r)
            print(f"{label:<18}{py_t:>10.3f}{cy_t:>10.4f}{py_t / cy_t:>9.0f}x  {agree}")
        else:
            print(f"{label:<18}{py_t:>10.3f}{'-':>10}{'-':>10}  -")


if __name__ == "__main__":
    main()
