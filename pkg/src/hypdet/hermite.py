"""Hermite matrix of a monic polynomial in ``T`` over Q[X] and its definiteness on R."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional

from . import matrix as pm
from .poly import BiPoly, UniPoly
from .univariate import positive_on_line


@dataclass(frozen=True)
class SymMatrixPoly:
    """Symmetric d x d matrix with entries in Q[X]."""

    entries: tuple

    def __init__(self, entries):
        rows = tuple(tuple(pm.as_poly(v) for v in row) for row in entries)
        object.__setattr__(self, "entries", rows)
        if not pm.is_symmetric([list(r) for r in rows]):
            raise ValueError("matrix is not symmetric")

    @property
    def d(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[UniPoly]]:
        return [list(r) for r in self.entries]

    def at(self, x) -> list[list[Fraction]]:
        return pm.evaluate(self.rows(), x)

    def minor(self, idx) -> UniPoly:
        return pm.det([[self.entries[i][j] for j in idx] for i in idx])

    def leading_minors(self) -> list[UniPoly]:
        return [self.minor(range(k)) for k in range(1, self.d + 1)]

    def principal_minors(self) -> list[tuple[tuple[int, ...], UniPoly]]:
        return [(idx, self.minor(idx)) for k in range(1, self.d + 1)
                for idx in combinations(range(self.d), k)]


def power_sums(f: BiPoly, count: int) -> list[UniPoly]:
    """Power sums ``p_0 .. p_{count-1}`` of the T-roots of a monic ``f`` (Newton's identities)."""
    if not f.is_monic_t():
        raise ValueError("power sums need a polynomial monic in T")
    d = f.degree_t
    # e_i-style coefficients: f = T^d + c_{d-1} T^{d-1} + ... ; write a_j = coefficient of T^(d-j)
    a = [f.coeff_t(d - j) for j in range(d + 1)]
    p = [UniPoly.const(d)]
    for m in range(1, count):
        acc = a[m] * (-m) if m <= d else UniPoly(())
        for j in range(1, min(m - 1, d) + 1):
            acc = acc - a[j] * p[m - j]
        p.append(acc)
    return p[:count]


def hermite_matrix(f: BiPoly) -> SymMatrixPoly:
    """Entry ``(i, j)`` is the power sum ``p_{i+j}`` of the roots of ``f`` (0-based)."""
    if not f.is_monic_t():
        raise ValueError("Hermite matrix needs a polynomial monic in T")
    d = f.degree_t
    p = power_sums(f, max(2 * d - 1, 1))
    return SymMatrixPoly([[p[i + j] for j in range(d)] for i in range(d)])


def pd_on_line(H: SymMatrixPoly) -> bool:
    """True iff every leading principal minor of ``H`` is positive on all of R."""
    return pd_on_line_witness(H)[0]


def pd_on_line_witness(H: SymMatrixPoly) -> tuple[bool, Optional[dict]]:
    for k, m in enumerate(H.leading_minors(), start=1):
        ok, wit = positive_on_line(m)
        if not ok:
            return False, {"minor": k, "poly": m, **wit}
    return True, None
