"""Pure-Python kernels; the reference the compiled kernels must agree with.

Tables are lists of lists. Words are lists of syllable codes (see ``words``).
In a product table ``-1`` means the identity; in a transition table ``-1``
means the transition is undefined.
"""


def prepare_table(array):
    return [list(map(int, row)) for row in array]


def reduce_codes(word, prod, nA):
    out = []
    for c in word:
        if out and (out[-1] >= nA) == (c >= nA):
            r = prod[out.pop()][c]
            if r >= 0:
                out.append(r)
        else:
            out.append(c)
    return out


def walk(trans, start, word):
    v = start
    for c in word:
        v = trans[v][c]
        if v < 0:
            return -1
    return v


def endpoints(trans, word):
    return [walk(trans, v, word) for v in range(len(trans))]


def rank(trans, word):
    n = 0
    for v in range(len(trans)):
        if walk(trans, v, word) >= 0:
            n += 1
    return n
