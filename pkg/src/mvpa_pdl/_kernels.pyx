# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch kernels.  Keep in sync with ``_kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def run_deterministic(const int[:, ::1] call_next,
                      const int[:, ::1] call_push,
                      const int[:, :, ::1] ret_next,
                      const int[:, ::1] int_next,
                      const signed char[::1] kinds,
                      const int[::1] stack_of,
                      int n_stacks,
                      int initial,
                      const unsigned char[::1] finals,
                      int k,
                      const int[:, ::1] words,
                      const int[::1] lengths):
    cdef Py_ssize_t n_words = words.shape[0]
    cdef Py_ssize_t width = words.shape[1]
    cdef Py_ssize_t r, j
    cdef int q, a, s, top, nxt, phases, committed, h
    cdef bint ok
    out = np.zeros(n_words, dtype=np.uint8)
    cdef unsigned char[::1] res = out
    stack_buf = np.zeros((max(n_stacks, 1), width + 1), dtype=np.int32)
    height_buf = np.zeros(max(n_stacks, 1), dtype=np.int32)
    cdef int[:, ::1] stacks = stack_buf
    cdef int[::1] heights = height_buf

    if initial < 0:
        return out
    for r in range(n_words):
        for s in range(n_stacks):
            heights[s] = 0
        q = initial
        phases = 0
        committed = -1
        ok = True
        for j in range(lengths[r]):
            a = words[r, j]
            if phases == 0:
                phases = 1
            if kinds[a] == 0:
                nxt = call_next[q, a]
                if nxt < 0:
                    ok = False
                    break
                s = stack_of[a]
                stacks[s, heights[s]] = call_push[q, a]
                heights[s] += 1
                q = nxt
            elif kinds[a] == 1:
                s = stack_of[a]
                if committed < 0:
                    committed = s
                elif committed != s:
                    phases += 1
                    committed = s
                    if phases > k:
                        ok = False
                        break
                h = heights[s]
                top = stacks[s, h - 1] if h > 0 else 0
                nxt = ret_next[q, a, top]
                if nxt < 0:
                    ok = False
                    break
                if top != 0:
                    heights[s] = h - 1
                q = nxt
            else:
                nxt = int_next[q, a]
                if nxt < 0:
                    ok = False
                    break
                q = nxt
        if ok and finals[q] and phases <= k:
            res[r] = 1
    return out


def min_phases_batch(const signed char[::1] kinds,
                     const int[::1] stack_of,
                     const int[:, ::1] words,
                     const int[::1] lengths):
    cdef Py_ssize_t n_words = words.shape[0]
    cdef Py_ssize_t r, j
    cdef int a, phases, committed
    out = np.zeros(n_words, dtype=np.int32)
    cdef int[::1] res = out
    for r in range(n_words):
        phases = 0
        committed = -1
        for j in range(lengths[r]):
            a = words[r, j]
            if phases == 0:
                phases = 1
            if kinds[a] == 1:
                if committed < 0:
                    committed = stack_of[a]
                elif committed != stack_of[a]:
                    phases += 1
                    committed = stack_of[a]
        res[r] = phases
    return out
