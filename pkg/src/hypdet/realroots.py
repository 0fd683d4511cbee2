"""Certificates for (strict) T-real-rootedness, roots at infinity, smoothness, hyperbolicity."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .hermite import hermite_matrix, pd_on_line_witness
from .poly import (BiPoly, TernaryForm, UniPoly, factor_uni, grading_member,
                   poly_xgcd, resultant_t, squarefree_part, to_fraction)
from .univariate import nonnegative_on_line, sturm_count

REAL_ROOTED = "real_rooted"
STRICTLY_REAL_ROOTED = "strictly_real_rooted"
REJECTED = "rejected"


class NotMonicError(ValueError):
    pass


@dataclass
class RootCertificate:
    verdict: str
    witnesses: list = field(default_factory=list)
    counterexample: Optional[Fraction] = None
    irrational_witness: Optional[dict] = None

    @property
    def accepted(self) -> bool:
        return self.verdict != REJECTED

    def to_json(self) -> dict:
        from .formats import uni_to_json

        def enc(w):
            out = {}
            for key, val in w.items():
                if isinstance(val, UniPoly):
                    out[key] = uni_to_json(val)
                elif isinstance(val, Fraction):
                    out[key] = str(val)
                elif isinstance(val, tuple):
                    out[key] = [str(v) if isinstance(v, Fraction) else v for v in val]
                else:
                    out[key] = val
            return out

        doc = {"verdict": self.verdict, "witnesses": [enc(w) for w in self.witnesses]}
        if self.counterexample is not None:
            doc["counterexample"] = str(self.counterexample)
        if self.irrational_witness is not None:
            doc["irrational_witness"] = enc(self.irrational_witness)
        return doc


def _require_monic(f: BiPoly) -> None:
    if not f.is_monic_t():
        raise NotMonicError(f"{f} is not monic in T")


def distinct_root_count(p: UniPoly) -> int:
    return squarefree_part(p).degree


def count_real_roots(p: UniPoly) -> int:
    return sturm_count(p) if p.degree > 0 else 0


def certify_real_rooted(f: BiPoly) -> RootCertificate:
    """Real-rootedness of ``f(x, T)`` for every real ``x`` via all principal minors of H(f)."""
    _require_monic(f)
    H = hermite_matrix(f)
    witnesses = []
    for idx, m in H.principal_minors():
        ok, x = nonnegative_on_line(m)
        if not ok:
            fx = f.eval_x(x)
            assert count_real_roots(fx) < distinct_root_count(fx)
            return RootCertificate(REJECTED, [{"minor": list(idx), "poly": m, "negative_at": x}], x)
        witnesses.append({"minor": list(idx), "poly": m,
                          "evidence": "zero" if m.is_zero() else "nonnegative"})
    return RootCertificate(REAL_ROOTED, witnesses)


def certify_strictly_real_rooted(f: BiPoly) -> RootCertificate:
    """Strict real-rootedness via positivity of the leading principal minors of H(f)."""
    _require_monic(f)
    H = hermite_matrix(f)
    ok, wit = pd_on_line_witness(H)
    if ok:
        witnesses = [{"minor": list(range(k)), "poly": m, "evidence": "positive"}
                     for k, m in enumerate(H.leading_minors(), start=1)]
        return RootCertificate(STRICTLY_REAL_ROOTED, witnesses)
    w = {"minor": list(range(wit["minor"])), "poly": wit["poly"]}
    if "x" in wit:
        w["nonpositive_at"] = wit["x"]
        return RootCertificate(REJECTED, [w], wit["x"])
    w["root_of"] = wit["root_of"]
    w["interval"] = wit["interval"]
    return RootCertificate(REJECTED, [w], None, {"root_of": wit["root_of"], "interval": wit["interval"]})


def verify_certificate(f: BiPoly, cert: RootCertificate) -> bool:
    """Replay a certificate against ``f``."""
    if cert.verdict == REJECTED:
        if cert.counterexample is not None:
            fx = f.eval_x(cert.counterexample)
            bad = count_real_roots(fx) < distinct_root_count(fx)
            multiple = distinct_root_count(fx) < fx.degree
            return bad or multiple
        w = cert.irrational_witness
        q, (lo, hi) = w["root_of"], w["interval"]
        return q.degree > 0 and q(lo) * q(hi) < 0 and (w.get("poly") is None or q.divides(w["poly"]))
    redo = (certify_strictly_real_rooted(f) if cert.verdict == STRICTLY_REAL_ROOTED
            else certify_real_rooted(f))
    return redo.accepted and len(redo.witnesses) == len(cert.witnesses) and all(
        a["poly"] == b["poly"] for a, b in zip(redo.witnesses, cert.witnesses))


def is_real_rooted(f: BiPoly) -> bool:
    return certify_real_rooted(f).accepted


def is_strictly_real_rooted(f: BiPoly) -> bool:
    return certify_strictly_real_rooted(f).accepted


def roots_at_infinity(f: BiPoly, k: int, d: int) -> UniPoly:
    """``(Q_{d,X^k} f)(infinity, T)``: the top allowed X-coefficient of each ``a_i``."""
    if not grading_member(f, k, d):
        raise ValueError(f"{f} is not in the (k={k}, d={d}) grading")
    if f.degree_t != d or not f.is_monic_t():
        raise ValueError("roots at infinity need f monic of T-degree d")
    return UniPoly([f.coeff_t(i).coeff(k * (d - i)) for i in range(d + 1)], "T")


# --------------------------------------------------------------------------
# smoothness


class _Residue:
    """Arithmetic in Q[X]/(h) for irreducible ``h``."""

    def __init__(self, h: UniPoly):
        self.h = h

    def red(self, a: UniPoly) -> UniPoly:
        return a % self.h

    def inv(self, a: UniPoly) -> UniPoly:
        g, s, _ = poly_xgcd(a, self.h)
        if g.degree != 0:
            raise ZeroDivisionError("non-invertible residue")
        return self.red(s)

    def gcd_degree(self, polys: Sequence[list[UniPoly]]) -> int:
        """Degree of the gcd in F[T] of polynomials given as X-coefficient lists."""
        cur = None
        for p in polys:
            p = self._strip([self.red(c) for c in p])
            cur = p if cur is None else self._gcd(cur, p)
        return len(cur) - 1 if cur else -1

    @staticmethod
    def _strip(p):
        while p and p[-1].is_zero():
            p.pop()
        return p

    def _rem(self, a, b):
        a = list(a)
        inv = self.inv(b[-1])
        while len(a) >= len(b):
            q = self.red(a[-1] * inv)
            shift = len(a) - len(b)
            for i, c in enumerate(b):
                a[shift + i] = self.red(a[shift + i] - q * c)
            a = self._strip(a)
            if not a:
                break
        return a

    def _gcd(self, a, b):
        while b:
            a, b = b, self._rem(a, b)
        return a


def singular_x_candidates(f: BiPoly) -> UniPoly:
    return resultant_t(f, f.deriv_t())


def smoothness_check(f: BiPoly) -> bool:
    """True iff the squarefree core of ``f`` has no singular point in C^2."""
    if f.is_zero():
        raise ValueError("smoothness of the zero polynomial")
    g = squarefree_part(f)
    if g.degree_t <= 0:
        # a curve defined by a polynomial in X alone: lines x = const, all smooth
        return True
    if not g.is_monic_t():
        raise NotMonicError("smoothness check expects a polynomial monic in T")
    gt, gx = g.deriv_t(), g.deriv_x()
    r1 = resultant_t(g, gt)
    if r1.is_zero():
        return False
    if r1.degree <= 0:
        return True
    for h, _ in factor_uni(r1):
        field = _Residue(h)
        polys = [list(g.coeffs), list(gt.coeffs)]
        if gx:
            polys.append(list(gx.coeffs))
        if field.gcd_degree(polys) > 0:
            return False
    return True


def partials_coprime(f: BiPoly) -> bool:
    """``df/dX`` and ``df/dT`` have no common factor (``f`` monic in T)."""
    fx, ft = f.deriv_x(), f.deriv_t()
    if fx.is_zero():
        return ft.degree_t <= 0
    if ft.degree_t <= 0:
        return True
    return not resultant_t(fx, ft).is_zero()


# --------------------------------------------------------------------------
# hyperbolicity of ternary forms


def completing_frame(e: Sequence) -> list[list[Fraction]]:
    """Invertible 3x3 rational matrix whose third column is ``e``."""
    e = [to_fraction(v) for v in e]
    if all(v == 0 for v in e):
        raise ValueError("direction must be nonzero")
    pivot = next(i for i in range(3) if e[i] != 0)
    others = [i for i in range(3) if i != pivot]
    cols = []
    for i in others:
        cols.append([Fraction(int(i == r)) for r in range(3)])
    cols.append(e)
    return [[cols[c][r] for c in range(3)] for r in range(3)]


def normalized_charts(F: TernaryForm, e: Sequence) -> tuple[list, Fraction, TernaryForm]:
    """Move ``e`` to (0,0,1) and scale to monic in Z; returns ``(V, F(e), G)``."""
    if not F.is_homogeneous():
        raise ValueError("form is not homogeneous")
    Fe = F(*e)
    if Fe == 0:
        raise ValueError("F(e) = 0")
    V = completing_frame(e)
    G = F.linear_change(V) * (1 / Fe)
    return V, Fe, G


def is_hyperbolic(F: TernaryForm, e: Sequence) -> bool:
    """``F(e) > 0`` and every line through ``e`` meets ``F = 0`` in real points only."""
    V, Fe, G = normalized_charts(F, e)
    if Fe < 0:
        return False
    chart_y = G.dehomogenize(y_val=1)
    chart_x = G.dehomogenize(x_val=1)
    return is_real_rooted(chart_y) and is_real_rooted(chart_x)
