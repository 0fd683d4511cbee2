"""Exact polynomial arithmetic over Q.

Univariate polynomials (:class:`UniPoly`), polynomials in ``X`` and ``T``
stored as a list of ``X``-coefficients of powers of ``T`` (:class:`BiPoly`),
rational functions in ``X`` (:class:`RatFunc`) and homogeneous ternary forms
(:class:`TernaryForm`).  All coefficients are :class:`fractions.Fraction`;
every value is immutable.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Iterable, Sequence

import sympy


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact coefficients")
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    return Fraction(value)


def _strip(coeffs: Iterable) -> tuple:
    c = [to_fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UniPoly:
    """Dense univariate polynomial, lowest degree first."""

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs: Iterable = (), var: str = "X"):
        object.__setattr__(self, "coeffs", _strip(coeffs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    # construction helpers
    @classmethod
    def const(cls, c, var: str = "X") -> "UniPoly":
        return cls([c], var)

    @classmethod
    def gen(cls, var: str = "X") -> "UniPoly":
        return cls([0, 1], var)

    @classmethod
    def monomial(cls, c, n: int, var: str = "X") -> "UniPoly":
        return cls([0] * n + [c], var)

    @classmethod
    def from_roots(cls, roots: Iterable, var: str = "X") -> "UniPoly":
        p = cls.const(1, var)
        for r in roots:
            p = p * cls([-to_fraction(r), 1], var)
        return p

    # basic queries
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_const(self) -> bool:
        return len(self.coeffs) <= 1

    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def const_value(self) -> Fraction:
        if self.degree > 0:
            raise ValueError(f"{self} is not constant")
        return self.coeff(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _strip([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("UniPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            mono = "" if i == 0 else (self.var if i == 1 else f"{self.var}^{i}")
            if mono and abs(c) == 1:
                s = mono
            elif mono:
                s = f"{abs(c)}*{mono}"
            else:
                s = str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, s))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, s in parts[1:]:
            out += f" {sign} {s}"
        return out

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly.const(other, self.var)

    # ring operations
    def __add__(self, other) -> "UniPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = to_fraction(other)
            return UniPoly([c * x for x in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly((), self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UniPoly":
        result = UniPoly.const(1, self.var)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs) + 1
        if dq <= 0:
            return UniPoly((), self.var), self
        quo = [Fraction(0)] * dq
        inv = 1 / other.lc()
        m = len(other.coeffs) - 1
        for k in range(dq - 1, -1, -1):
            q = rem[k + m] * inv
            quo[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= q * b
        return UniPoly(quo, self.var), UniPoly(rem[:m], self.var)

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "UniPoly":
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError(f"{other} does not divide {self}")
        return q

    def divides(self, other: "UniPoly") -> bool:
        """True iff ``self`` divides ``other``."""
        if self.is_zero():
            return other.is_zero()
        return (other % self).is_zero()

    # calculus and evaluation
    def deriv(self) -> "UniPoly":
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose(self, other: "UniPoly") -> "UniPoly":
        acc = UniPoly((), other.var)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def shift(self, a) -> "UniPoly":
        """p(var + a)."""
        return self.compose(UniPoly([a, 1], self.var))

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            return self
        return self * (1 / self.lc())

    def with_var(self, var: str) -> "UniPoly":
        return UniPoly(self.coeffs, var)

    def reverse(self, n: int | None = None) -> "UniPoly":
        """``var**n * p(1/var)``."""
        n = self.degree if n is None else n
        if self.degree > n:
            raise ValueError("reversal degree smaller than degree")
        c = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return UniPoly(reversed(c), self.var)

    def content_denominator(self) -> int:
        """Least common multiple of coefficient denominators."""
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        return den


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def _int_coeffs(p: UniPoly) -> list[int]:
    """Coprime integer coefficients of a positive rational multiple of ``p``."""
    den = p.content_denominator()
    ints = [int(c * den) for c in p.coeffs]
    g = reduce(math.gcd, ints, 0)
    return [v // g for v in ints] if g else ints


def _int_prem(a: list[int], b: list[int]) -> list[int]:
    """Primitive pseudo-remainder of integer coefficient lists.

    The result is a positive multiple of the true remainder ``a mod b``.
    """
    r = list(a)
    lb, m = b[-1], len(b) - 1
    sign = 1 if lb > 0 else -1
    while len(r) > m and r:
        lr, shift = r[-1], len(r) - 1 - m
        r = [v * lb * sign for v in r]
        for j, bv in enumerate(b):
            r[shift + j] -= lr * bv * sign
        r.pop()
        while r and r[-1] == 0:
            r.pop()
        g = reduce(math.gcd, r, 0)
        if g > 1:
            r = [v // g for v in r]
    return r


def primitive(p: UniPoly) -> UniPoly:
    """Positive rational multiple of ``p`` with coprime integer coefficients.

    The sign is kept, so Sturm sequences may use it in place of ``p``.
    """
    return UniPoly(_int_coeffs(p), p.var) if p.coeffs else p


def primitive_rem(a: UniPoly, b: UniPoly) -> UniPoly:
    """Positive multiple of ``a % b`` computed in integer arithmetic."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    if not a.coeffs:
        return a
    return UniPoly(_int_prem(_int_coeffs(a), _int_coeffs(b)), a.var)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd (zero if both are zero).

    The Euclidean steps run on primitive integer remainders to stop coefficient growth.
    """
    var = a.var
    a, b = _int_coeffs(a), _int_coeffs(b)
    while b:
        a, b = b, _int_prem(a, b)
    return UniPoly(a, var).monic()


def poly_xgcd(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly, UniPoly]:
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    var = a.var
    r0, r1 = a, b
    s0, s1 = UniPoly.const(1, var), UniPoly((), var)
    t0, t1 = UniPoly((), var), UniPoly.const(1, var)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = 1 / r0.lc()
    return r0 * inv, s0 * inv, t0 * inv


def poly_lcm(a: UniPoly, b: UniPoly) -> UniPoly:
    if a.is_zero() or b.is_zero():
        return UniPoly((), a.var)
    return (a * b).exact_div(poly_gcd(a, b)).monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic ``[(a_i, i)]`` with ``p = lc * prod a_i**i``."""
    if p.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    out = []
    a = p.monic()
    b = a.deriv()
    c = poly_gcd(a, b)
    w = a.exact_div(c)
    y = b.exact_div(c)
    i = 1
    while w.degree > 0:
        z = y - w.deriv()
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, i))
        w = w.exact_div(g)
        y = z.exact_div(g)
        i += 1
    return out


def squarefree_uni(p: UniPoly) -> UniPoly:
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.degree <= 0:
        return UniPoly.const(1, p.var)
    return p.exact_div(poly_gcd(p, p.deriv())).monic()


# --------------------------------------------------------------------------
# bivariate


class BiPoly:
    """Polynomial in ``X`` and ``T``: ``sum_i coeffs[i](X) * T**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = []
        for c in coeffs:
            if not isinstance(c, UniPoly):
                c = UniPoly.const(c, "X")
            elif c.var != "X":
                c = c.with_var("X")
            cs.append(c)
        while cs and cs[-1].is_zero():
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("BiPoly is immutable")

    @classmethod
    def from_dict(cls, terms: dict) -> "BiPoly":
        """Build from ``{(i, j): c}`` meaning ``c * X**i * T**j``."""
        if not terms:
            return cls()
        d = max(j for (_, j) in terms) + 1
        cols = [dict() for _ in range(d)]
        for (i, j), c in terms.items():
            cols[j][i] = cols[j].get(i, 0) + to_fraction(c)
        out = []
        for col in cols:
            n = max(col) + 1 if col else 0
            out.append(UniPoly([col.get(i, 0) for i in range(n)], "X"))
        return cls(out)

    @classmethod
    def from_uni_t(cls, p: UniPoly) -> "BiPoly":
        return cls([UniPoly.const(c) for c in p.coeffs])

    @classmethod
    def from_uni_x(cls, p: UniPoly) -> "BiPoly":
        return cls([p.with_var("X")])

    @classmethod
    def T(cls) -> "BiPoly":
        return cls([0, 1])

    @classmethod
    def X(cls) -> "BiPoly":
        return cls([UniPoly.gen("X")])

    @classmethod
    def parse(cls, text: str) -> "BiPoly":
        """Parse an expression in ``X`` and ``T`` with exact rationals."""
        x, t = sympy.symbols("X T")
        expr = sympy.sympify(text.replace("^", "**"), locals={"X": x, "T": t}, rational=True)
        return from_sympy(sympy.Poly(expr, x, t, domain="QQ"))

    def to_dict(self) -> dict:
        return {(i, j): c for j, p in enumerate(self.coeffs) for i, c in enumerate(p.coeffs) if c}

    @property
    def degree_t(self) -> int:
        return len(self.coeffs) - 1

    @property
    def degree_x(self) -> int:
        return max((p.degree for p in self.coeffs), default=-1)

    def coeff_t(self, i: int) -> UniPoly:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else UniPoly((), "X")

    def lc_t(self) -> UniPoly:
        return self.coeffs[-1] if self.coeffs else UniPoly((), "X")

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_monic_t(self) -> bool:
        return bool(self.coeffs) and self.lc_t() == 1

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == BiPoly([other])
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("BiPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"BiPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return str(to_sympy(self).as_expr()).replace("**", "^")

    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        if isinstance(other, UniPoly):
            if other.var == "T":
                return BiPoly.from_uni_t(other)
            return BiPoly([other])
        return BiPoly([other])

    def __add__(self, other) -> "BiPoly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return BiPoly([self.coeff_t(i) + other.coeff_t(i) for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "BiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BiPoly":
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return BiPoly()
        out = [UniPoly((), "X")] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        result = BiPoly([1])
        for _ in range(n):
            result = result * self
        return result

    def divmod_t(self, other: "BiPoly") -> tuple["BiPoly", "BiPoly"]:
        """Division by a polynomial that is monic in ``T``."""
        if not other.is_monic_t():
            raise ValueError("divisor must be monic in T")
        rem = list(self.coeffs)
        m = other.degree_t
        dq = len(rem) - m
        if dq <= 0:
            return BiPoly(), self
        quo = [UniPoly((), "X")] * dq
        for k in range(dq - 1, -1, -1):
            q = rem[k + m]
            quo[k] = q
            if q:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - q * b
        return BiPoly(quo), BiPoly(rem[:m])

    def deriv_t(self) -> "BiPoly":
        return BiPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def deriv_x(self) -> "BiPoly":
        return BiPoly([c.deriv() for c in self.coeffs])

    def eval_x(self, x) -> UniPoly:
        """Specialise ``X = x``: a polynomial in ``T``."""
        return UniPoly([c(to_fraction(x)) for c in self.coeffs], "T")

    def __call__(self, x, t):
        return self.eval_x(x)(t)

    def subs_t(self, g: "BiPoly") -> "BiPoly":
        """``f(X, g(X, T))``."""
        acc = BiPoly()
        for c in reversed(self.coeffs):
            acc = acc * g + BiPoly([c])
        return acc

    def map_coeffs(self, fn) -> "BiPoly":
        return BiPoly([fn(c) for c in self.coeffs])

    def shift_x(self, a) -> "BiPoly":
        return self.map_coeffs(lambda c: c.shift(a))

    def monic_t(self) -> "BiPoly":
        lc = self.lc_t()
        if lc.degree != 0:
            raise ValueError("leading T-coefficient is not a constant")
        return self * (1 / lc.coeff(0))


def to_sympy(f: BiPoly) -> sympy.Poly:
    x, t = sympy.symbols("X T")
    terms = {(i, j): sympy.Rational(c.numerator, c.denominator) for (i, j), c in f.to_dict().items()}
    if not terms:
        return sympy.Poly(0, x, t, domain="QQ")
    return sympy.Poly.from_dict(terms, x, t, domain="QQ")


def from_sympy(p: sympy.Poly) -> BiPoly:
    gens = [str(g) for g in p.gens]
    terms = {}
    for monom, c in p.terms():
        e = dict(zip(gens, monom))
        terms[(e.get("X", 0), e.get("T", 0))] = to_fraction(sympy.Rational(c))
    return BiPoly.from_dict(terms)


def uni_to_sympy(p: UniPoly) -> sympy.Poly:
    v = sympy.Symbol(p.var)
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p.coeffs)] or [0], v, domain="QQ")


def uni_from_sympy(p: sympy.Poly, var: str = "X") -> UniPoly:
    return UniPoly([to_fraction(sympy.Rational(c)) for c in reversed(p.all_coeffs())], var)


# --------------------------------------------------------------------------
# grading, resultants, factoring


def grading_member(f: BiPoly, k: int, d: int) -> bool:
    """``deg_T f <= d`` and ``deg a_i <= k*(d-i)`` for every T-coefficient."""
    if f.degree_t > d:
        return False
    return all(a.degree <= k * (d - i) for i, a in enumerate(f.coeffs))


def det_poly(rows: Sequence[Sequence[UniPoly]], var: str = "X") -> UniPoly:
    """Fraction-free (Bareiss) determinant of a square matrix over Q[var]."""
    n = len(rows)
    if n == 0:
        return UniPoly.const(1, var)
    m = [list(r) for r in rows]
    sign = 1
    prev = UniPoly.const(1, var)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return UniPoly((), var)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev)
        prev = m[k][k]
    return m[n - 1][n - 1] * sign


def sylvester_t(f: BiPoly, g: BiPoly) -> list[list[UniPoly]]:
    m, n = f.degree_t, g.degree_t
    size = m + n
    zero = UniPoly((), "X")
    rows = []
    for r in range(n):
        row = [zero] * size
        for i in range(m + 1):
            row[r + i] = f.coeff_t(m - i)
        rows.append(row)
    for r in range(m):
        row = [zero] * size
        for i in range(n + 1):
            row[r + i] = g.coeff_t(n - i)
        rows.append(row)
    return rows


def resultant_t(f: BiPoly, g: BiPoly) -> UniPoly:
    """Resultant with respect to ``T`` (Sylvester determinant)."""
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if f.degree_t == 0 and g.degree_t == 0:
        return UniPoly.const(1)
    if f.degree_t == 0:
        return f.coeff_t(0) ** g.degree_t
    if g.degree_t == 0:
        return g.coeff_t(0) ** f.degree_t
    return det_poly(sylvester_t(f, g))


def factor_irreducible(f: BiPoly) -> list[tuple[BiPoly, int]]:
    """Irreducible factors over Q, each monic in ``T``, sorted canonically."""
    if not f.is_monic_t():
        raise ValueError("factor_irreducible requires a polynomial monic in T")
    _, factors = to_sympy(f).factor_list()
    out = []
    for fac, mult in factors:
        g = from_sympy(fac)
        if g.degree_t == 0:
            # content in X alone cannot occur for monic f
            raise ArithmeticError(f"unexpected T-free factor {g}")
        out.append((g.monic_t(), mult))
    out.sort(key=lambda fm: (fm[0].degree_t, _canon_key(fm[0]), fm[1]))
    check = reduce(lambda acc, fm: acc * fm[0] ** fm[1], out, BiPoly([1]))
    if check != f:
        raise ArithmeticError("factorisation does not reproduce the input")
    return out


def _canon_key(f: BiPoly) -> tuple:
    return tuple(sorted(((j, i), c) for (i, j), c in f.to_dict().items()))


def squarefree_part(p):
    """Monic product of the distinct irreducible factors."""
    if isinstance(p, UniPoly):
        return squarefree_uni(p)
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    sp = to_sympy(p)
    _, factors = sp.factor_list()
    out = BiPoly([1])
    for fac, _ in factors:
        out = out * from_sympy(fac)
    if out.lc_t().degree == 0:
        return out.monic_t()
    lead = out.lc_t().lc()
    return out * (1 / lead)


def factor_uni(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Monic irreducible factors over Q."""
    if p.degree <= 0:
        return []
    _, factors = uni_to_sympy(p).factor_list()
    out = [(uni_from_sympy(fac, p.var).monic(), m) for fac, m in factors]
    out.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return out


# --------------------------------------------------------------------------
# rational functions in X


class RatFunc:
    """Reduced fraction ``num/den`` of polynomials in ``X``; ``den`` monic."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, UniPoly):
            num = UniPoly.const(num)
        if den is None:
            den = UniPoly.const(1)
        elif not isinstance(den, UniPoly):
            den = UniPoly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = UniPoly(()), UniPoly.const(1)
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num.exact_div(g), den.exact_div(g)
        lc = den.lc()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RatFunc is immutable")

    def is_poly(self) -> bool:
        return self.den.degree == 0

    def as_poly(self) -> UniPoly:
        if not self.is_poly():
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def _coerce(self, other) -> "RatFunc":
        return other if isinstance(other, RatFunc) else RatFunc(other)

    def __add__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = self._coerce(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self._coerce(other) * self.inverse()

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (UniPoly, int, Fraction)):
            return self == RatFunc(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("RatFunc", self.num, self.den))

    def __call__(self, x):
        return self.num(x) / self.den(x)

    def __str__(self) -> str:
        if self.is_poly():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


# --------------------------------------------------------------------------
# ternary forms


def _monomials(d: int):
    for i in range(d + 1):
        for j in range(d + 1 - i):
            yield (i, j, d - i - j)


class TernaryForm:
    """Polynomial in ``X, Y, Z`` stored sparsely as ``{(i, j, k): c}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        clean = {}
        for e, c in (terms or {}).items():
            c = to_fraction(c)
            if c:
                clean[tuple(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TernaryForm is immutable")

    @classmethod
    def parse(cls, text: str) -> "TernaryForm":
        x, y, z = sympy.symbols("X Y Z")
        expr = sympy.sympify(text.replace("^", "**"), locals={"X": x, "Y": y, "Z": z}, rational=True)
        p = sympy.Poly(expr, x, y, z, domain="QQ")
        return cls({m: to_fraction(sympy.Rational(c)) for m, c in p.terms()})

    @classmethod
    def linear(cls, a, b, c) -> "TernaryForm":
        return cls({(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    @property
    def degree(self) -> int:
        return max(self.degrees(), default=-1)

    def __call__(self, x, y, z):
        x, y, z = (to_fraction(v) if not isinstance(v, float) else v for v in (x, y, z))
        return sum(c * x ** i * y ** j * z ** k for (i, j, k), c in self.terms.items())

    def __eq__(self, other) -> bool:
        if isinstance(other, TernaryForm):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return TernaryForm(out)

    def __neg__(self) -> "TernaryForm":
        return TernaryForm({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "TernaryForm") -> "TernaryForm":
        return self + (-other)

    def __mul__(self, other) -> "TernaryForm":
        if not isinstance(other, TernaryForm):
            c = to_fraction(other)
            return TernaryForm({e: c * v for e, v in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                out[e] = out.get(e, 0) + c1 * c2
        return TernaryForm(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TernaryForm":
        out = TernaryForm({(0, 0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def linear_change(self, V: Sequence[Sequence]) -> "TernaryForm":
        """``F(V u)`` as a form in ``u = (X, Y, Z)``."""
        lins = [TernaryForm.linear(*row) for row in V]
        out = TernaryForm()
        cache = [dict() for _ in range(3)]

        def power(idx, n):
            if n not in cache[idx]:
                cache[idx][n] = lins[idx] ** n
            return cache[idx][n]

        for (i, j, k), c in self.terms.items():
            out = out + power(0, i) * power(1, j) * power(2, k) * c
        return out

    def dehomogenize(self, x_val=None, y_val=None) -> BiPoly:
        """Set one of ``X``/``Y`` to a constant; the other becomes ``X``, ``Z`` becomes ``T``."""
        terms: dict = {}
        for (i, j, k), c in self.terms.items():
            if y_val is not None:
                key, val = (i, k), c * to_fraction(y_val) ** j
            else:
                key, val = (j, k), c * to_fraction(x_val) ** i
            terms[key] = terms.get(key, 0) + val
        return BiPoly.from_dict(terms)

    def __str__(self) -> str:
        x, y, z = sympy.symbols("X Y Z")
        expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** i * y ** j * z ** k
                   for (i, j, k), c in self.terms.items())
        return str(sympy.expand(expr)).replace("**", "^")

    def __repr__(self) -> str:
        return f"TernaryForm({self})"


def rational_points(bound: int) -> list[Fraction]:
    """Small rationals ordered by height, used for deterministic sampling."""
    seen = {Fraction(0)}
    pts = [Fraction(0)]
    for h in range(1, bound + 1):
        for num, den in product(range(-h, h + 1), range(1, h + 1)):
            q = Fraction(num, den)
            if q not in seen:
                seen.add(q)
                pts.append(q)
    return pts
