"""Matrices over Q[X]: products, characteristic polynomials, Hermite form.

A matrix is a list of rows, each a list of :class:`~hypdet.poly.UniPoly`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .poly import BiPoly, UniPoly, det_poly, poly_xgcd, to_fraction

PolyMatrix = list[list[UniPoly]]

ZERO = UniPoly((), "X")
ONE = UniPoly.const(1, "X")


def as_poly(v) -> UniPoly:
    if isinstance(v, UniPoly):
        return v if v.var == "X" else v.with_var("X")
    return UniPoly.const(v, "X")


def pmat(rows: Sequence[Sequence]) -> PolyMatrix:
    return [[as_poly(v) for v in row] for row in rows]


def identity(n: int) -> PolyMatrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(n: int, m: int | None = None) -> PolyMatrix:
    return [[ZERO] * (n if m is None else m) for _ in range(n)]


def diag(entries: Sequence) -> PolyMatrix:
    n = len(entries)
    return [[as_poly(entries[i]) if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(a: PolyMatrix) -> PolyMatrix:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    bt = transpose(b)
    out = []
    for row in a:
        new = []
        for col in bt:
            acc = ZERO
            for x, y in zip(row, col):
                if x and y:
                    acc = acc + x * y
            new.append(acc)
        out.append(new)
    return out


def madd(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mscale(a: PolyMatrix, c) -> PolyMatrix:
    return [[x * c for x in row] for row in a]


def trace(a: PolyMatrix) -> UniPoly:
    acc = ZERO
    for i in range(len(a)):
        acc = acc + a[i][i]
    return acc


def is_symmetric(a: PolyMatrix) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))


def det(a: PolyMatrix) -> UniPoly:
    return det_poly(a, "X")


def evaluate(a: PolyMatrix, x) -> list[list[Fraction]]:
    x = to_fraction(x)
    return [[p(x) for p in row] for row in a]


def max_degree(a: PolyMatrix) -> int:
    return max((p.degree for row in a for p in row), default=-1)


def charpoly(a: PolyMatrix) -> BiPoly:
    """``det(T*I - A)`` by the Faddeev-LeVerrier recursion (exact over Q[X])."""
    n = len(a)
    if n == 0:
        return BiPoly([1])
    coeffs = [ZERO] * (n + 1)
    coeffs[n] = ONE
    m = identity(n)
    for k in range(1, n + 1):
        am = matmul(a, m)
        c = trace(am) * Fraction(-1, k)
        coeffs[n - k] = c
        m = [[am[i][j] + (c if i == j else ZERO) for j in range(n)] for i in range(n)]
    return BiPoly(coeffs)


def block_diag(blocks: Sequence[PolyMatrix]) -> PolyMatrix:
    n = sum(len(b) for b in blocks)
    out = zeros(n)
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, v in enumerate(row):
                out[off + i][off + j] = v
        off += len(b)
    return out


# --------------------------------------------------------------------------
# Hermite normal form over Q[X]


def hermite_columns(cols: Sequence[Sequence[UniPoly]], nrows: int) -> list[tuple[int, list[UniPoly]]]:
    """Column Hermite form of the Q[X]-module spanned by ``cols``.

    Returns ``[(pivot_row, column), ...]`` sorted by pivot row.  Each column is
    zero below its pivot row, the pivot is monic, and every entry sitting in
    another column's pivot row has degree below that pivot.  The output only
    depends on the module, not on the generating set.
    """
    active = [[as_poly(v) for v in c] for c in cols if any(as_poly(v) for v in c)]
    pivots: dict[int, list[UniPoly]] = {}
    for r in range(nrows - 1, -1, -1):
        nz = [c for c in active if c[r]]
        rest = [c for c in active if not c[r]]
        if not nz:
            active = rest
            continue
        # Euclid across columns until a single column carries row r
        while len(nz) > 1:
            nz.sort(key=lambda c: c[r].degree)
            piv = nz[0]
            new = [piv]
            for c in nz[1:]:
                q = c[r] // piv[r]
                c2 = [ci - q * pi for ci, pi in zip(c, piv)]
                if c2[r]:
                    new.append(c2)
                elif any(c2):
                    rest.append(c2)
            nz = new
        piv = nz[0]
        inv = 1 / piv[r].lc()
        pivots[r] = [v * inv for v in piv]
        active = rest
    rows = sorted(pivots)
    for idx, j in enumerate(rows):
        col = pivots[j]
        for i in reversed(rows[:idx]):
            pc = pivots[i]
            if col[i].degree >= pc[i].degree:
                q = col[i] // pc[i]
                col = [a - q * b for a, b in zip(col, pc)]
        pivots[j] = col
    return [(r, pivots[r]) for r in rows]


def solve_unimodular_row(row: Sequence[UniPoly]) -> list[UniPoly]:
    """Find ``w`` with ``sum(row[i] * w[i]) == 1``; raises if the row is not primitive."""
    row = [as_poly(v) for v in row]
    n = len(row)
    g = ZERO
    w = [ZERO] * n
    for i, a in enumerate(row):
        if a.is_zero():
            continue
        if g.is_zero():
            g = a.monic()
            w = [ZERO] * n
            w[i] = UniPoly.const(1 / a.lc())
            continue
        g2, s, t = poly_xgcd(g, a)
        w = [wi * s for wi in w]
        w[i] = w[i] + t
        g = g2
    if g.degree != 0:
        raise ArithmeticError("row entries are not coprime")
    return w
