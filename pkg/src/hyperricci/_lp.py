"""Small dense simplex over Fractions for ``max c.x  s.t.  A x <= b, x >= 0`` with ``b >= 0``.

Only used where the problem is tiny; Bland's rule keeps it finite under
degeneracy.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction


class Unbounded(ArithmeticError):
    pass


def maximize(
    c: Sequence[Fraction], A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
) -> tuple[Fraction, list[Fraction]]:
    m, n = len(A), len(c)
    if any(bi < 0 for bi in b):
        raise ValueError("right-hand side must be nonnegative (origin must be feasible)")
    # tableau rows: [A | I | b]; basis starts on the slacks
    rows = [[Fraction(x) for x in A[i]] + [Fraction(int(i == k)) for k in range(m)] + [Fraction(b[i])] for i in range(m)]
    obj = [-Fraction(x) for x in c] + [Fraction(0)] * m + [Fraction(0)]
    basis = list(range(n, n + m))
    while True:
        entering = next((j for j in range(n + m) if obj[j] < 0), None)
        if entering is None:
            break
        best = None
        for i in range(m):
            a = rows[i][entering]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            raise Unbounded("objective is unbounded")
        r = best[1]
        piv = rows[r][entering]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][entering]:
                f = rows[i][entering]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        f = obj[entering]
        obj = [x - f * y for x, y in zip(obj, rows[r])]
        basis[r] = entering
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = rows[i][-1]
    return obj[-1], x
