"""Dense exact linear algebra on lists of rows.

Entries may be ints, Fractions or :class:`~symdeg.oracle.field.QuadElem`;
the only requirements are field operations and a truthiness test for zero.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]


def shape(a: Matrix, cols: int | None = None) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else (cols or 0))


def transpose(a: Matrix, rows_if_empty: int = 0) -> Matrix:
    if not a:
        return [[] for _ in range(rows_if_empty)]
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix, inner: int | None = None, cols: int | None = None) -> Matrix:
    """a @ b.  ``cols`` fixes the width when b has no rows."""
    width = len(b[0]) if b else (cols or 0)
    out = []
    for row in a:
        acc = [Fraction(0)] * width
        for k, x in enumerate(row):
            if x:
                bk = b[k]
                for c in range(width):
                    y = bk[c]
                    if y:
                        acc[c] = acc[c] + x * y
        out.append(acc)
    return out


def hstack(*blocks: Matrix) -> Matrix:
    rows = max(len(b) for b in blocks)
    return [sum((list(b[r]) for b in blocks if b), []) for r in range(rows)]


def columns(a: Matrix) -> list[list]:
    return transpose(a)


def from_columns(cols: Sequence[Sequence], rows: int) -> Matrix:
    return [[c[r] for c in cols] for r in range(rows)]


def _reciprocal(x):
    return Fraction(1, x) if isinstance(x, int) else 1 / x


def rref(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(row) for row in a]
    if not m:
        return m, []
    rows, cols = len(m), len(m[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((k for k in range(r, rows) if m[k][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = _reciprocal(m[r][c])
        m[r] = [x * inv if x else x for x in m[r]]
        for k in range(rows):
            if k != r and m[k][c]:
                f = m[k][c]
                rk, rr = m[k], m[r]
                m[k] = [x - f * y if y else x for x, y in zip(rk, rr)]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(a: Matrix) -> int:
    return len(rref(a)[1])


def nullspace(a: Matrix, cols: int | None = None) -> list[list]:
    """Basis of {x : a x = 0} as a list of column vectors."""
    ncols = len(a[0]) if a else (cols or 0)
    if not a:
        return [[Fraction(int(r == c)) for r in range(ncols)] for c in range(ncols)]
    r, pivots = rref(a)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in enumerate(pivots):
            v[p] = -r[row][f]
        basis.append(v)
    return basis


def solve(a: Matrix, b: Sequence) -> Optional[list]:
    """Some x with a x = b, or None."""
    aug = [list(row) + [b[k]] for k, row in enumerate(a)]
    r, pivots = rref(aug)
    ncols = len(a[0]) if a else 0
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, p in enumerate(pivots):
        x[p] = r[row][ncols]
    return x


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(row) + [Fraction(int(r == c)) for c in range(n)] for r, row in enumerate(a)]
    r, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in r]


def extend_basis(vectors: Sequence[Sequence], within: Sequence[Sequence], dim: int) -> list[list]:
    """Vectors from ``within`` completing the independent list ``vectors`` to a basis of span(vectors + within)."""
    chosen = [list(v) for v in vectors]
    extra = []
    current = rank(chosen) if chosen else 0
    for w in within:
        trial = chosen + [list(w)]
        k = rank(trial)
        if k > current:
            chosen = trial
            extra.append(list(w))
            current = k
    return extra


def standard_basis(dim: int) -> list[list]:
    return [[Fraction(int(r == c)) for r in range(dim)] for c in range(dim)]
