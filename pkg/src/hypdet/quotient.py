"""Arithmetic in ``L = Q(X)[T]/(f)``: products, traces, the trace forms and the dual basis."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from . import matrix as pm
from .hermite import power_sums
from .poly import BiPoly, RatFunc, UniPoly, resultant_t


class ModulusMismatch(ValueError):
    pass


class NotSeparable(ValueError):
    pass


class NotWellDefined(ArithmeticError):
    """A trace-form entry left Q[X]: the ideal witness condition fails."""


@lru_cache(maxsize=256)
def _power_sums(f: BiPoly) -> tuple:
    return tuple(RatFunc(p) for p in power_sums(f, 2 * f.degree_t))


@lru_cache(maxsize=256)
def is_separable(f: BiPoly) -> bool:
    if f.degree_t <= 1:
        return True
    return not resultant_t(f, f.deriv_t()).is_zero()


class QuotElem:
    """Element of ``L`` in the basis ``1, alpha, ..., alpha^(d-1)`` with ``alpha = T mod f``."""

    __slots__ = ("coords", "modulus")

    def __init__(self, coords: Sequence, modulus: BiPoly):
        if not modulus.is_monic_t():
            raise ValueError("modulus must be monic in T")
        d = modulus.degree_t
        cs = [c if isinstance(c, RatFunc) else RatFunc(c) for c in coords]
        if len(cs) > d:
            cs = _reduce(cs, modulus)
        cs = cs + [RatFunc(0)] * (d - len(cs))
        object.__setattr__(self, "coords", tuple(cs))
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("QuotElem is immutable")

    @classmethod
    def from_poly(cls, g: BiPoly, modulus: BiPoly) -> "QuotElem":
        """Image of a polynomial in ``X, T``."""
        return cls([RatFunc(c) for c in g.coeffs], modulus)

    @classmethod
    def alpha(cls, modulus: BiPoly, power: int = 1) -> "QuotElem":
        return cls.from_poly(BiPoly([0] * power + [1]), modulus)

    @classmethod
    def one(cls, modulus: BiPoly) -> "QuotElem":
        return cls([RatFunc(1)], modulus)

    @property
    def d(self) -> int:
        return len(self.coords)

    def _check(self, other: "QuotElem") -> None:
        if self.modulus != other.modulus:
            raise ModulusMismatch("elements live in different quotient algebras")

    def _coerce(self, other) -> "QuotElem":
        if isinstance(other, QuotElem):
            self._check(other)
            return other
        return QuotElem([other if isinstance(other, RatFunc) else RatFunc(other)], self.modulus)

    def __add__(self, other) -> "QuotElem":
        o = self._coerce(other)
        return QuotElem([a + b for a, b in zip(self.coords, o.coords)], self.modulus)

    __radd__ = __add__

    def __neg__(self) -> "QuotElem":
        return QuotElem([-a for a in self.coords], self.modulus)

    def __sub__(self, other) -> "QuotElem":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QuotElem":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QuotElem":
        if not isinstance(other, QuotElem):
            r = other if isinstance(other, RatFunc) else RatFunc(other)
            return QuotElem([a * r for a in self.coords], self.modulus)
        return mul_mod(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QuotElem":
        out = QuotElem.one(self.modulus)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, QuotElem):
            return self.modulus == other.modulus and self.coords == other.coords
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coords, self.modulus))

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def is_polynomial(self) -> bool:
        return all(c.is_poly() for c in self.coords)

    def inverse(self) -> "QuotElem":
        """Solve ``self * y = 1`` through the multiplication matrix."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in L")
        d = self.d
        cols = [(self * QuotElem.alpha(self.modulus, j)).coords for j in range(d)]
        a = [[cols[j][i] for j in range(d)] for i in range(d)]
        rhs = [RatFunc(1)] + [RatFunc(0)] * (d - 1)
        return QuotElem(solve_ratfunc(a, rhs), self.modulus)

    def __truediv__(self, other) -> "QuotElem":
        if isinstance(other, QuotElem):
            self._check(other)
            return self * other.inverse()
        r = other if isinstance(other, RatFunc) else RatFunc(other)
        return self * r.inverse()

    def __repr__(self) -> str:
        return f"QuotElem([{', '.join(map(str, self.coords))}] mod {self.modulus})"


def _reduce(coeffs: list, f: BiPoly) -> list:
    d = f.degree_t
    cs = list(coeffs)
    low = [RatFunc(c) for c in f.coeffs[:d]]
    for m in range(len(cs) - 1, d - 1, -1):
        c = cs[m]
        if c.is_zero():
            continue
        for i in range(d):
            if not low[i].is_zero():
                cs[m - d + i] = cs[m - d + i] - c * low[i]
    return cs[:d]


def mul_mod(a: QuotElem, b: QuotElem) -> QuotElem:
    """Product in ``L``, reduced modulo ``f``."""
    if a.modulus != b.modulus:
        raise ModulusMismatch("elements live in different quotient algebras")
    d = a.d
    prod = [RatFunc(0)] * (2 * d - 1)
    for i, x in enumerate(a.coords):
        if x.is_zero():
            continue
        for j, y in enumerate(b.coords):
            if not y.is_zero():
                prod[i + j] = prod[i + j] + x * y
    return QuotElem(_reduce(prod, a.modulus), a.modulus)


def solve_ratfunc(a: list[list[RatFunc]], b: list[RatFunc]) -> list[RatFunc]:
    """Gaussian elimination over Q(X); raises on singular systems."""
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular system over Q(X)")
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col].inverse()
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and not m[r][col].is_zero():
                fac = m[r][col]
                m[r] = [v - fac * w for v, w in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def trace(a: QuotElem) -> RatFunc:
    """``Tr_{L/K}(a) = sum_j a_j * p_j`` with ``p_j`` the power sums of the roots."""
    ps = _power_sums(a.modulus)
    acc = RatFunc(0)
    for j, c in enumerate(a.coords):
        if not c.is_zero():
            acc = acc + c * ps[j]
    return acc


def _require_separable(f: BiPoly) -> None:
    if not is_separable(f):
        raise NotSeparable(f"{f} is not separable in T")


def sigma_form(a: QuotElem, b: QuotElem) -> RatFunc:
    """``Tr(ab / f'(alpha))``, read off as the coefficient of ``alpha^(d-1)`` in ``ab``."""
    _require_separable(a.modulus)
    return mul_mod(a, b).coords[-1]


def derivative_element(f: BiPoly) -> QuotElem:
    """``f'(alpha)``."""
    return QuotElem.from_poly(f.deriv_t(), f)


def dual_basis(f: BiPoly) -> list[QuotElem]:
    """Coefficients in ``Y`` of ``(f(U) - f(Y)) / (U - Y)`` evaluated at ``U = alpha``."""
    if not f.is_monic_t():
        raise ValueError("dual basis needs a monic modulus")
    _require_separable(f)
    d = f.degree_t
    # beta_k(U) = sum_{m > k} a_m U^(m-1-k)
    return [QuotElem([RatFunc(f.coeff_t(i + k + 1)) for i in range(d - k)], f) for k in range(d)]


@dataclass(frozen=True)
class GramForm:
    gram: tuple
    labels: tuple = ()

    @property
    def d(self) -> int:
        return len(self.gram)

    def rows(self) -> list[list[UniPoly]]:
        return [list(r) for r in self.gram]

    @property
    def det(self) -> UniPoly:
        return pm.det(self.rows())

    @property
    def unimodular(self) -> bool:
        return self.det.degree == 0

    @classmethod
    def from_rows(cls, rows, labels=()) -> "GramForm":
        rows = tuple(tuple(pm.as_poly(v) for v in r) for r in rows)
        if not pm.is_symmetric([list(r) for r in rows]):
            raise ValueError("Gram matrix must be symmetric")
        return cls(rows, tuple(labels))


def beta_gram(basis: Sequence[QuotElem], c: QuotElem) -> GramForm:
    """Gram matrix of ``(a, b) -> Tr(ab / c)`` on ``basis``; every entry must lie in Q[X]."""
    if c.is_zero():
        raise ZeroDivisionError("c must be nonzero")
    cinv = c.inverse()
    n = len(basis)
    rows = [[None] * n for _ in range(n)]
    scaled = [b * cinv for b in basis]
    for i in range(n):
        for j in range(i, n):
            v = trace(mul_mod(scaled[i], basis[j]))
            if not v.is_poly():
                raise NotWellDefined(f"Tr(b{i} b{j} / c) = {v} is not a polynomial")
            rows[i][j] = rows[j][i] = v.as_poly()
    return GramForm.from_rows(rows, labels=[f"b{i}" for i in range(n)])


def trace_gram(basis: Sequence[QuotElem], weight: QuotElem | None = None) -> list[list[RatFunc]]:
    """``Tr(w * b_i * b_j)``; with ``weight=None`` and the standard basis this is the Hermite matrix."""
    n = len(basis)
    out = [[None] * n for _ in range(n)]
    for i in range(n):
        left = basis[i] if weight is None else basis[i] * weight
        for j in range(i, n):
            out[i][j] = out[j][i] = trace(mul_mod(left, basis[j]))
    return out


def mult_matrix(a: QuotElem, basis: Sequence[QuotElem]) -> list[list[RatFunc]]:
    """Matrix ``M`` over Q(X) with ``a * basis[j] = sum_i M[i][j] * basis[i]``."""
    d = len(basis)
    b = [[basis[j].coords[i] for j in range(d)] for i in range(d)]
    cols = [solve_ratfunc(b, list((a * e).coords)) for e in basis]
    return [[cols[j][i] for j in range(d)] for i in range(d)]


def std_basis(f: BiPoly) -> list[QuotElem]:
    return [QuotElem.alpha(f, j) for j in range(f.degree_t)]
