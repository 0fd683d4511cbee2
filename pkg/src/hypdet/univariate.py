"""Sturm sequences, root isolation and global sign tests for univariate polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .poly import UniPoly, factor_uni, primitive_rem, squarefree_decomposition, squarefree_uni, to_fraction

INF = float("inf")


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.deriv()]
    while seq[-1]:
        seq.append(-primitive_rem(seq[-2], seq[-1]))
    return seq[:-1]


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def _sign_at(p: UniPoly, x) -> int:
    if x == INF:
        return _sign(p.lc())
    if x == -INF:
        return _sign(p.lc()) * (-1) ** (p.degree % 2)
    return _sign(p(x))


def _variations(seq: list[UniPoly], x) -> int:
    signs = [s for s in (_sign_at(q, x) for q in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: UniPoly, a=-INF, b=INF) -> int:
    """Number of distinct real roots of ``p`` in ``(a, b]``."""
    if p.is_zero():
        raise ValueError("sturm_count of the zero polynomial")
    a = a if a in (-INF, INF) else to_fraction(a)
    b = b if b in (-INF, INF) else to_fraction(b)
    for e in (a, b):
        if e not in (-INF, INF) and p(e) == 0:
            raise ValueError(f"endpoint {e} is a root of {p}")
    if p.degree <= 0:
        return 0
    seq = sturm_sequence(squarefree_uni(p))
    return _variations(seq, a) - _variations(seq, b)


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every complex root has modulus below it."""
    lc = abs(p.lc())
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def isolate_real_roots(p: UniPoly, width: Optional[Fraction] = None) -> list[tuple[Fraction, Fraction]]:
    """Disjoint intervals ``(lo, hi]`` each holding exactly one distinct real root.

    Endpoints are never roots.  Rational roots are returned as degenerate
    intervals ``(r, r)``.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    q = squarefree_uni(p)
    if q.degree <= 0:
        return []
    rational = {r for r in _rational_roots(q)}
    for r in rational:
        q = q.exact_div(UniPoly([-r, 1], q.var))
    out = [(r, r) for r in rational]
    if q.degree > 0:
        seq = sturm_sequence(q)
        bound = root_bound(p)
        stack = [(-bound, bound)]
        while stack:
            lo, hi = stack.pop()
            n = _variations(seq, lo) - _variations(seq, hi)
            if n == 0:
                continue
            clean = not any(lo < r < hi for r in rational)
            if n == 1 and clean and (width is None or hi - lo <= width):
                out.append((lo, hi))
                continue
            mid = (lo + hi) / 2
            while p(mid) == 0:
                mid += (hi - lo) / 7
            stack.append((lo, mid))
            stack.append((mid, hi))
    out.sort()
    return out


def _rational_roots(p: UniPoly) -> list[Fraction]:
    return [-f.coeff(0) for f, _ in factor_uni(p) if f.degree == 1]


def sample_points(p: UniPoly) -> list[Fraction]:
    """One rational point in each open interval cut out by the real roots of ``p``."""
    if p.is_zero() or p.degree <= 0:
        return [Fraction(0)]
    ivs = isolate_real_roots(p)
    if not ivs:
        return [Fraction(0)]
    bound = root_bound(p)
    pts = [-bound]
    for (lo1, hi1), (lo2, hi2) in zip(ivs, ivs[1:]):
        if lo1 != hi1:
            pts.append(hi1)
        elif lo2 != hi2:
            pts.append(lo2)
        else:
            pts.append((hi1 + lo2) / 2)
    pts.append(bound)
    return pts


def nonnegative_on_line(p: UniPoly) -> tuple[bool, Optional[Fraction]]:
    """Decide ``p(x) >= 0`` for all real ``x``; on failure return a rational with ``p(x) < 0``."""
    if p.is_zero():
        return True, None
    odd = UniPoly.const(1, p.var)
    for a, mult in squarefree_decomposition(p):
        if mult % 2:
            odd = odd * a
    if odd.degree > 0 and sturm_count(odd) > 0:
        # sample between all real roots of p, so even factors cannot mask the sign
        for x in sample_points(squarefree_uni(p)):
            if p(x) < 0:
                return False, x
        raise ArithmeticError("sign change detected but no negative sample found")
    if p.lc() > 0:
        return True, None
    x = Fraction(0)
    while p(x) == 0:
        x += 1
    return False, x


def positive_on_line(p: UniPoly) -> tuple[bool, Optional[dict]]:
    """Decide ``p(x) > 0`` for all real ``x``.

    The failure witness is ``{"x": r}`` for a rational ``r`` with ``p(r) <= 0``
    or ``{"root_of": q, "interval": (lo, hi)}`` naming an irrational real zero.
    """
    if p.is_zero():
        return False, {"x": Fraction(0)}
    if p.degree <= 0:
        return (True, None) if p.coeff(0) > 0 else (False, {"x": Fraction(0)})
    ok, x = nonnegative_on_line(p)
    if not ok:
        return False, {"x": x}
    if sturm_count(p) == 0:
        return True, None
    for f, _ in factor_uni(p):
        if f.degree == 1:
            return False, {"x": -f.coeff(0)}
    for f, _ in factor_uni(p):
        ivs = isolate_real_roots(f)
        if ivs:
            return False, {"root_of": f, "interval": ivs[0]}
    raise ArithmeticError("real root reported but not isolated")


def real_roots_float(p: UniPoly, tol: Fraction = Fraction(1, 10 ** 12)) -> list[float]:
    """Distinct real roots to about ``tol``, sorted (for plotting and spot checks)."""
    out = []
    for lo, hi in isolate_real_roots(p, width=tol):
        out.append(float((lo + hi) / 2))
    return sorted(out)
