"""Pure-Python lattice point kernels (reference and fallback backend).

Input format shared with the compiled kernel: ``rows`` is a list of integer
rows ``(a_1, ..., a_n, b)`` meaning ``a . x <= b``; the rows of level ``j``
(``starts[j] <= r < starts[j+1]``) only involve ``x_1..x_{j+1}`` and have a
nonzero coefficient on ``x_{j+1}``.  Level ``j`` must bound ``x_{j+1}`` from
both sides for every admissible prefix.
"""


def _range(rows, lo_r, hi_r, j, x):
    lo = hi = None
    for r in range(lo_r, hi_r):
        row = rows[r]
        rem = row[-1]
        for i in range(j):
            rem -= row[i] * x[i]
        a = row[j]
        if a > 0:
            t = rem // a
            if hi is None or t < hi:
                hi = t
        else:
            t = -((-rem) // a)  # ceil(rem / a) for a < 0
            if lo is None or t > lo:
                lo = t
    if lo is None or hi is None:
        raise ValueError(f"level {j} is unbounded")
    return lo, hi


def count_moment(rows, starts, n):
    """Number of lattice points and their coordinate sum."""
    x = [0] * n
    mom = [0] * n
    cnt = 0

    def rec(j):
        nonlocal cnt
        lo, hi = _range(rows, starts[j], starts[j + 1], j, x)
        if lo > hi:
            return
        if j == n - 1:
            c = hi - lo + 1
            cnt += c
            for i in range(j):
                mom[i] += x[i] * c
            mom[j] += (lo + hi) * c // 2
            return
        for t in range(lo, hi + 1):
            x[j] = t
            rec(j + 1)

    rec(0)
    return cnt, mom


def lattice_points(rows, starts, n):
    """All lattice points, in lexicographic order."""
    x = [0] * n

    def rec(j):
        lo, hi = _range(rows, starts[j], starts[j + 1], j, x)
        for t in range(lo, hi + 1):
            x[j] = t
            if j == n - 1:
                yield tuple(x)
            else:
                yield from rec(j + 1)

    return list(rec(0))
