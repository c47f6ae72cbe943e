"""Small dense matrices over CycNum, stored as tuples of row tuples."""

from __future__ import annotations

from typing import Sequence

from .cyclotomic import CycNum

Matrix = tuple[tuple[CycNum, ...], ...]

ZERO = CycNum(0)
ONE = CycNum(1)


def mat(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(CycNum.coerce(x) for x in r) for r in rows)


def identity(n: int) -> Matrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def zeros(r: int, c: int) -> Matrix:
    return tuple(tuple(ZERO for _ in range(c)) for _ in range(r))


def shape(a: Matrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return ()
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [ZERO] * cols
        for k in range(inner):
            x = row[k]
            if x.is_zero():
                continue
            bk = b[k]
            for j in range(cols):
                y = bk[j]
                if not y.is_zero():
                    acc[j] = acc[j] + x * y
        out.append(tuple(acc))
    return tuple(out)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(a, b))


def scale(c, a: Matrix) -> Matrix:
    c = CycNum.coerce(c)
    return tuple(tuple(c * x for x in r) for r in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a)) if a else ()


def conj(a: Matrix) -> Matrix:
    return tuple(tuple(x.conj() for x in r) for r in a)


def trace(a: Matrix) -> CycNum:
    t = ZERO
    for i in range(len(a)):
        t = t + a[i][i]
    return t


def is_zero(a: Matrix) -> bool:
    return all(x.is_zero() for r in a for x in r)


def galois(a: Matrix, j: int) -> Matrix:
    return tuple(tuple(x.galois(j) for x in r) for r in a)


def det(a: Matrix) -> CycNum:
    """Determinant by exact Gaussian elimination."""
    n = len(a)
    m = [list(r) for r in a]
    d = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if not m[r][c].is_zero()), None)
        if p is None:
            return ZERO
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        piv = m[c][c]
        d = d * piv
        inv = piv.inverse()
        for r in range(c + 1, n):
            if not m[r][c].is_zero():
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def nullspace(a: Sequence[Sequence[CycNum]], ncols: int) -> list[list[CycNum]]:
    """Basis of {x : a x = 0} by reduced row echelon form."""
    rows = [list(r) for r in a]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if not rows[i][c].is_zero()), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][f]
        basis.append(v)
    return basis
