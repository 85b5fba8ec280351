"""Pure-Python versions of the batch kernels in ``_kernels.pyx``."""

import numpy as np


def run_deterministic(call_next, call_push, ret_next, int_next, kinds, stack_of,
                      n_stacks, initial, finals, k, words, lengths):
    call_next = np.asarray(call_next).tolist()
    call_push = np.asarray(call_push).tolist()
    ret_next = np.asarray(ret_next).tolist()
    int_next = np.asarray(int_next).tolist()
    kinds = np.asarray(kinds).tolist()
    stack_of = np.asarray(stack_of).tolist()
    finals = np.asarray(finals).tolist()
    out = np.zeros(len(lengths), dtype=np.uint8)
    if initial < 0:
        return out
    for r, (row, n) in enumerate(zip(np.asarray(words).tolist(),
                                     np.asarray(lengths).tolist())):
        stacks = [[] for _ in range(n_stacks)]
        q = initial
        phases = 0
        committed = -1
        for a in row[:n]:
            if phases == 0:
                phases = 1
            kind = kinds[a]
            if kind == 0:
                nxt = call_next[q][a]
                if nxt < 0:
                    break
                stacks[stack_of[a]].append(call_push[q][a])
            elif kind == 1:
                s = stack_of[a]
                if committed < 0:
                    committed = s
                elif committed != s:
                    phases += 1
                    committed = s
                    if phases > k:
                        break
                top = stacks[s][-1] if stacks[s] else 0
                nxt = ret_next[q][a][top]
                if nxt < 0:
                    break
                if top:
                    stacks[s].pop()
            else:
                nxt = int_next[q][a]
                if nxt < 0:
                    break
            q = nxt
        else:
            if finals[q] and phases <= k:
                out[r] = 1
    return out


def min_phases_batch(kinds, stack_of, words, lengths):
    kinds = np.asarray(kinds).tolist()
    stack_of = np.asarray(stack_of).tolist()
    out = np.zeros(len(lengths), dtype=np.int32)
    for r, (row, n) in enumerate(zip(np.asarray(words).tolist(),
                                     np.asarray(lengths).tolist())):
        phases = 0
        committed = -1
        for a in row[:n]:
            if phases == 0:
                phases = 1
            if kinds[a] == 1:
                s = stack_of[a]
                if committed < 0:
                    committed = s
                elif committed != s:
                    phases += 1
                    committed = s
        out[r] = phases
    return out
