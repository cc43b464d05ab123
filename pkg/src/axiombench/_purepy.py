"""Pure-Python kernels; reference behaviour for the compiled ``_speedups`` module.

Both modules expose the same four functions with identical results for
identical arguments, so the backend choice never changes a verdict.
"""


def sample_channels(u, probs, first_prob, cyclic):
    """Turn a ``(length, width)`` block of uniforms into admissible inputs.

    ``probs[r]`` is the probability that a free channel fires when ``r``
    positions remain in its segment; ``first_prob`` is the probability that a
    cyclic channel fires at position 0.
    """
    length = len(u)
    width = len(u[0]) if length else 0
    items = [0] * length
    for c in range(width):
        bit = 1 << c
        if cyclic:
            if length == 1:
                continue
            if u[0][c] < first_prob:
                items[0] |= bit
                start, stop, seg_end = 2, length - 1, length - 1
            else:
                start, stop, seg_end = 1, length, length
        else:
            start, stop, seg_end = 0, length, length
        prev = 0
        for j in range(start, stop):
            if prev:
                prev = 0
            elif u[j][c] < probs[seg_end - j]:
                items[j] |= bit
                prev = 1
    return items


def admissible(items, cyclic):
    n = len(items)
    for i in range(n - 1):
        if items[i] & items[i + 1]:
            return False
    if cyclic and n and items[-1] & items[0]:
        return False
    return True


def match_count(a, b, mask):
    total = 0
    for x, y in zip(a, b):
        total += (~(x ^ y) & mask).bit_count()
    return total


def signed_rank(diffs):
    """Wilcoxon signed-rank ingredients for a sample of differences.

    Zeros are discarded. Returns ``(n, w_plus, tie_sum)`` where ``w_plus`` is
    the sum of average ranks of positive differences and ``tie_sum`` is
    ``sum(t**3 - t)`` over groups of tied absolute values.
    """
    vals = sorted((abs(d), d > 0) for d in diffs if d != 0)
    n = len(vals)
    w_plus = 0.0
    tie_sum = 0
    i = 0
    while i < n:
        j = i
        while j + 1 < n and vals[j + 1][0] == vals[i][0]:
            j += 1
        t = j - i + 1
        rank = (i + j + 2) / 2.0
        for k in range(i, j + 1):
            if vals[k][1]:
                w_plus += rank
        if t > 1:
            tie_sum += t * t * t - t
        i = j + 1
    return n, w_plus, tie_sum
