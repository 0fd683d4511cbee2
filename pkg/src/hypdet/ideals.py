"""Fractional ideals of ``S = Q[X,T]/(f)`` as free Q[X]-modules of rank d inside ``L``.

A module is stored as ``(den, H)``: the columns of ``H`` (coordinates in the
basis ``1, alpha, ..., alpha^(d-1)``) divided by the monic polynomial ``den``.
``H`` is in column Hermite form with monic pivots and ``gcd(den, H) = 1``, so
two modules are equal exactly when their stored data agree.
"""

from __future__ import annotations

from dataclasses import dataclass
import random
from functools import reduce
from itertools import product
from typing import Sequence

from . import matrix as pm
from .poly import BiPoly, RatFunc, UniPoly, poly_gcd, poly_lcm, resultant_t
from .quotient import (ModulusMismatch, NotSeparable, QuotElem, derivative_element, is_separable,
                       mul_mod, mult_matrix)


class RankError(ValueError):
    pass


class NotSModule(ValueError):
    """The Q[X]-module is not stable under multiplication by alpha."""


@dataclass(frozen=True)
class Module:
    modulus: BiPoly
    den: UniPoly
    columns: tuple  # d columns, each a tuple of d UniPoly

    @property
    def d(self) -> int:
        return self.modulus.degree_t

    def basis(self) -> list[QuotElem]:
        inv = RatFunc(1, self.den)
        return [QuotElem([RatFunc(v) * inv for v in col], self.modulus) for col in self.columns]

    def matrix(self) -> list[list[UniPoly]]:
        """Numerator matrix with the basis vectors as columns."""
        return [[col[i] for col in self.columns] for i in range(self.d)]

    def is_integral(self) -> bool:
        return self.den.degree == 0

    def norm_degree(self) -> int:
        """Degree of ``det(H) / den^d`` (index of the module relative to S, in X-degree)."""
        return pm.det(self.matrix()).degree - self.d * self.den.degree

    def __mul__(self, other: "Module") -> "Module":
        return ideal_mul(self, other)


def _coords_matrix(gens: Sequence[QuotElem]) -> tuple[UniPoly, list[list[UniPoly]]]:
    den = reduce(poly_lcm, (c.den for g in gens for c in g.coords), UniPoly.const(1))
    cols = []
    for g in gens:
        cols.append([(c.num * den.exact_div(c.den)) for c in g.coords])
    return den, cols


def module_of(gens: Sequence[QuotElem], ideal: bool = False) -> Module:
    """Canonical form of the Q[X]-module generated by ``gens``.

    With ``ideal=True`` the generators are first multiplied by ``1, alpha, ...,
    alpha^(d-1)``, i.e. ``gens`` generate an S-ideal.
    """
    if not gens:
        raise RankError("no generators")
    f = gens[0].modulus
    if any(g.modulus != f for g in gens):
        raise ModulusMismatch("generators live in different quotient algebras")
    d = f.degree_t
    if ideal:
        alpha = QuotElem.alpha(f)
        expanded = []
        for g in gens:
            cur = g
            for _ in range(d):
                expanded.append(cur)
                cur = mul_mod(cur, alpha)
        gens = expanded
    den, cols = _coords_matrix(gens)
    hnf = pm.hermite_columns(cols, d)
    if len(hnf) < d:
        raise RankError(f"generators span a module of rank {len(hnf)} < {d}")
    columns = [col for _, col in hnf]
    g = den.monic()
    for col in columns:
        for v in col:
            if g.degree <= 0:
                break
            g = poly_gcd(g, v)
    if g.degree > 0:
        den = den.exact_div(g)
        columns = [[v.exact_div(g) for v in col] for col in columns]
    den_lc = den.lc()
    den = den.monic()
    # dividing the numerators by the same constant keeps pivots monic after renormalising
    columns = [[v * (1 / den_lc) for v in col] for col in columns]
    columns = _renormalise(columns)
    return Module(f, den, tuple(tuple(col) for col in columns))


def module_canonical(gens: Sequence[QuotElem], ideal: bool = False) -> list[QuotElem]:
    """Canonical triangular basis (d elements) of the module generated by ``gens``."""
    return module_of(gens, ideal).basis()


def _renormalise(columns):
    out = []
    for col in columns:
        piv = next(v for v in reversed(col) if v)
        out.append([v * (1 / piv.lc()) for v in col])
    return out


def unit_ideal(f: BiPoly) -> Module:
    return module_of([QuotElem.one(f)], ideal=True)


def principal(g: QuotElem) -> Module:
    if g.is_zero():
        raise RankError("the zero element generates the zero module")
    return module_of([g], ideal=True)


def ideal_mul(I: Module, J: Module) -> Module:
    if I.modulus != J.modulus:
        raise ModulusMismatch("ideals of different rings")
    prods = [mul_mod(a, b) for a in I.basis() for b in J.basis()]
    return module_of(prods)


def is_s_module(I: Module) -> bool:
    try:
        mult_alpha_matrix(I.basis())
    except NotSModule:
        return False
    return True


def mult_alpha_matrix(basis: Sequence[QuotElem]) -> list[list[UniPoly]]:
    """Matrix over Q[X] of ``x -> alpha*x`` in ``basis`` (column j = image of basis[j])."""
    if not basis:
        raise RankError("empty basis")
    f = basis[0].modulus
    try:
        m = mult_matrix(QuotElem.alpha(f), basis)
    except ZeroDivisionError as exc:
        raise RankError("basis is not of full rank") from exc
    out = []
    for row in m:
        if not all(v.is_poly() for v in row):
            raise NotSModule("alpha * I is not contained in I")
        out.append([v.as_poly() for v in row])
    return out


@dataclass(frozen=True)
class IdealWitness:
    """An S-ideal ``I`` (by a Q[X]-basis) and ``c`` with ``I^2 = (c / f'(alpha))``."""

    modulus: BiPoly
    basis: tuple
    c: QuotElem

    def __post_init__(self):
        if self.c.is_zero():
            raise ValueError("c must be nonzero")
        if len(self.basis) != self.modulus.degree_t:
            raise RankError("witness basis must have d elements")
        if any(b.modulus != self.modulus for b in self.basis) or self.c.modulus != self.modulus:
            raise ModulusMismatch("witness elements use a different modulus")

    @classmethod
    def from_module(cls, I: Module, c: QuotElem) -> "IdealWitness":
        return cls(I.modulus, tuple(I.basis()), c)

    def module(self) -> Module:
        return module_of(list(self.basis))


def verify_square(w: IdealWitness) -> bool:
    """``I*I == (c / f'(alpha))`` with canonical bases compared exactly."""
    f = w.modulus
    if not is_separable(f):
        raise NotSeparable("f'(alpha) = 0 in L")
    I = w.module()
    if not is_s_module(I):
        return False
    target = principal(w.c / derivative_element(f))
    return ideal_mul(I, I) == target


# --------------------------------------------------------------------------
# bounded witness enumeration


def _small_polys(degree_bound: int, coeff_bound: int):
    """Polynomials of degree <= bound with integer coefficients in [-B, B], by height then degree."""
    rng = range(-coeff_bound, coeff_bound + 1)
    out = [UniPoly(list(cs)) for cs in product(rng, repeat=degree_bound + 1)]
    out.sort(key=lambda p: (max((abs(c) for c in p.coeffs), default=0), p.degree, tuple(p.coeffs)))
    return out


def candidate_ideals(f: BiPoly, degree_bound: int = 1, coeff_bound: int = 1):
    """Integral S-ideals ``S`` and ``(p(X), alpha - r(X))``, deduplicated, in a fixed order."""
    seen = set()
    unit = unit_ideal(f)
    seen.add(unit)
    yield unit
    alpha = QuotElem.alpha(f)
    for p in _small_polys(degree_bound, coeff_bound):
        if p.degree < 1 or p.lc() != 1:
            continue
        for r in _small_polys(degree_bound, coeff_bound):
            # (p, alpha - r) is proper only when p divides f(X, r(X))
            if not p.divides(f.subs_t(BiPoly([r])).coeff_t(0)):
                continue
            gen = alpha - QuotElem([RatFunc(r)], f)
            I = module_of([QuotElem([RatFunc(p)], f), gen], ideal=True)
            if I not in seen:
                seen.add(I)
                yield I


def _as_bipoly(v: QuotElem) -> BiPoly:
    return BiPoly([c.as_poly() for c in v.coords])


def witness_candidates(f: BiPoly, degree_bound: int = 1, coeff_bound: int = 1,
                       order_seed: int | None = None):
    """Yield ``IdealWitness`` objects passing ``verify_square``.

    For each candidate ideal ``I`` the element ``c`` runs over ``f'(alpha) * v``
    with ``v = sum mu_i b_i`` for the canonical basis ``b`` of ``I^2`` and
    ``mu_i`` small polynomials.  Such ``c`` generates ``f'(alpha) I^2`` exactly
    when ``N(v)`` and ``N(I^2)`` agree up to a constant, which is tested first.
    ``order_seed`` shuffles the coefficient enumeration reproducibly.
    """
    if not is_separable(f):
        raise NotSeparable("f'(alpha) = 0 in L")
    d = f.degree_t
    fprime = derivative_element(f)
    mus = _small_polys(degree_bound, coeff_bound)
    combos = list(product(range(len(mus)), repeat=d))
    combos.sort(key=lambda idx: (sum(idx), idx))
    if order_seed is not None:
        random.Random(order_seed).shuffle(combos)
    for I in candidate_ideals(f, degree_bound, coeff_bound):
        sq = ideal_mul(I, I)
        if not sq.is_integral():
            continue
        basis = sq.basis()
        norm_sq = pm.det(sq.matrix())
        for idx in combos:
            v = QuotElem.one(f) * 0
            for i, b in zip(idx, basis):
                if not mus[i].is_zero():
                    v = v + b * RatFunc(mus[i])
            if v.is_zero():
                continue
            nv = resultant_t(f, _as_bipoly(v))
            if nv.is_zero() or nv.degree != norm_sq.degree:
                continue
            q, r = divmod(nv, norm_sq)
            if not r.is_zero() or q.degree != 0:
                continue
            w = IdealWitness.from_module(I, mul_mod(fprime, v))
            if verify_square(w):
                yield w
