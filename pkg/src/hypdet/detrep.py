"""Symmetric T-spectral determinantal representations ``f = det(T*I - A)`` and definite pencils.

``represent`` factors ``f`` and builds one block per irreducible factor:

* degree 1, ``T + a0``: the 1x1 block ``[-a0]``;
* degree 2, ``T^2 + pT + q``: with ``p^2 - 4q = s^2 + t^2`` the block
  ``[[(-p+s)/2, t/2], [t/2, (-p-s)/2]]``;
* degree >= 3: an ideal witness ``(I, c)`` is turned into a D-symmetric
  block through the trace form ``Tr(ab/c)`` on ``I``.

Blocks are placed on the diagonal in the canonical factor order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np
import sympy
from sympy.solvers.diophantine.diophantine import sum_of_squares

from . import matrix as pm
from .diagonal import DSymCertificate, OrthoResult, orthogonal_basis, positivity_check
from .hermite import SymMatrixPoly
from .ideals import IdealWitness, mult_alpha_matrix, verify_square, witness_candidates
from .poly import (BiPoly, TernaryForm, UniPoly, factor_irreducible, grading_member,
                   squarefree_decomposition, to_fraction, uni_to_sympy)
from .quotient import NotWellDefined, beta_gram
from .realroots import certify_real_rooted, is_hyperbolic, normalized_charts
from .univariate import nonnegative_on_line

log = logging.getLogger(__name__)

EXACT = "exact_symmetric"
DSYM = "d_symmetric"
NUMERIC = "numeric_symmetric"


class NotConstructive(RuntimeError):
    """An irreducible factor of degree >= 3 has no usable ideal witness."""


class WitnessRejected(ValueError):
    pass


class NegativeSomewhere(ValueError):
    def __init__(self, x: Fraction):
        super().__init__(f"polynomial is negative at X = {x}")
        self.x = x


class NoExactSplit(ValueError):
    pass


class NotSymmetric(ValueError):
    pass


class NotHyperbolic(ValueError):
    pass


# --------------------------------------------------------------------------
# sums of two squares


def _as_rational_square(c: Fraction) -> Optional[Fraction]:
    c = to_fraction(c)
    if c < 0:
        return None
    n, m = sympy.integer_nthroot(c.numerator, 2), sympy.integer_nthroot(c.denominator, 2)
    if n[1] and m[1]:
        return Fraction(int(n[0]), int(m[0]))
    return None


def _constant_two_squares(c: Fraction) -> Optional[tuple[Fraction, Fraction]]:
    """``c = a^2 + b^2`` with rational ``a >= b >= 0``, or None."""
    c = to_fraction(c)
    if c < 0:
        return None
    if c == 0:
        return Fraction(0), Fraction(0)
    # c = n/m = (n*m) / m^2
    n = c.numerator * c.denominator
    for pair in sum_of_squares(n, 2, zeros=True):
        b, a = sorted(pair)
        return Fraction(a, c.denominator), Fraction(b, c.denominator)
    return None


def two_squares(p: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Exact ``p = s^2 + t^2`` over Q for a polynomial nonnegative on R.

    Uses the factorisation of ``p`` over Q(i): one factor from each conjugate
    pair, half of every real factor, and a two-squares split of the leading
    coefficient.  Raises ``NoExactSplit`` when that constant is not a sum of
    two rational squares (for instance ``X^2 + 2``).
    """
    p = p.with_var("X") if p.var != "X" else p
    ok, x = nonnegative_on_line(p) if p.degree > 0 else (p.const_value() >= 0, Fraction(0))
    if not ok:
        raise NegativeSomewhere(x)
    if p.is_zero():
        return UniPoly.const(0), UniPoly.const(0)
    parts = squarefree_decomposition(p)
    if all(m % 2 == 0 for _, m in parts):
        r = _as_rational_square(p.lc())
        if r is not None:
            root = UniPoly.const(r)
            for a, m in parts:
                root = root * a ** (m // 2)
            return root, UniPoly.const(0)
    ab = _constant_two_squares(p.lc())
    if ab is None:
        raise NoExactSplit(f"leading coefficient {p.lc()} is not a sum of two rational squares")
    xs = sympy.Symbol("X")
    i = sympy.I
    _, factors = sympy.factor_list(uni_to_sympy(p).as_expr(), xs, gaussian=True)
    g = sympy.Integer(1)
    for fac, mult in factors:
        fp = sympy.Poly(fac, xs, domain=sympy.QQ_I)
        fp = fp.monic()
        coeffs = fp.all_coeffs()
        has_imag = any(sympy.im(sympy.sympify(str(c))) != 0 for c in coeffs)
        if not has_imag:
            if mult % 2:
                # a self-conjugate prime of Q(i)[X] would have to split evenly between s+it and s-it
                raise NoExactSplit(f"factor {fac} is irreducible over Q(i) with odd multiplicity")
            g = g * fp.as_expr() ** (mult // 2)
            continue
        # keep the member of the conjugate pair whose lowest imaginary coefficient is positive
        ims = [sympy.im(sympy.sympify(str(c))) for c in reversed(coeffs)]
        first = next(v for v in ims if v != 0)
        if first > 0:
            g = g * fp.as_expr() ** mult
    g = sympy.expand((sympy.Rational(ab[0].numerator, ab[0].denominator)
                      + i * sympy.Rational(ab[1].numerator, ab[1].denominator)) * g)
    gc = [sympy.sympify(str(c)) for c in reversed(sympy.Poly(g, xs, domain=sympy.QQ_I).all_coeffs())]
    s = UniPoly([to_fraction(sympy.re(c)) for c in gc])
    t = UniPoly([to_fraction(sympy.im(c)) for c in gc])
    if s * s + t * t != p:
        raise AssertionError("two-squares reconstruction failed")
    return s, t


def two_squares_numeric(p: UniPoly) -> tuple[np.ndarray, np.ndarray, float]:
    """Floating-point ``s, t`` (coefficients, low degree first) and the max coefficient residual."""
    ok, x = nonnegative_on_line(p) if p.degree > 0 else (p.const_value() >= 0, Fraction(0))
    if not ok:
        raise NegativeSomewhere(x)
    coeffs = [float(c) for c in p.coeffs]
    if p.degree <= 0:
        s = np.array([np.sqrt(max(coeffs[0] if coeffs else 0.0, 0.0))])
        return s, np.zeros(1), 0.0
    roots = np.roots(list(reversed(coeffs)))
    upper = sorted((z for z in roots if z.imag > 1e-9), key=lambda z: (z.real, z.imag))
    real = sorted(z.real for z in roots if abs(z.imag) <= 1e-9)
    chosen = upper + [complex(r) for r in real[::2]]
    g = np.poly1d([np.sqrt(coeffs[-1])])
    for z in chosen:
        g = g * np.poly1d([1.0, -z])
    s = np.real(g.coeffs)[::-1].copy()
    t = np.imag(g.coeffs)[::-1].copy()
    recon = np.polyadd(np.polymul(s[::-1], s[::-1]), np.polymul(t[::-1], t[::-1]))[::-1]
    n = max(len(recon), len(coeffs))
    diff = np.zeros(n)
    diff[:len(recon)] += recon
    diff[:len(coeffs)] -= coeffs
    scale = max(1.0, max(abs(c) for c in coeffs))
    return s, t, float(np.max(np.abs(diff)) / scale)


# --------------------------------------------------------------------------
# representation objects


@dataclass
class Representation:
    """``kind`` is exact_symmetric (SymMatrixPoly), d_symmetric (DSymCertificate)
    or numeric_symmetric (float coefficient arrays, low degree first)."""

    kind: str
    payload: object
    provenance: dict = field(default_factory=dict)

    def matrix(self) -> list[list[UniPoly]]:
        if self.kind == EXACT:
            return self.payload.rows()
        if self.kind == DSYM:
            return self.payload.rows()
        raise TypeError("numeric representations have no exact matrix")

    @property
    def d(self) -> int:
        return len(self.payload.rows()) if self.kind != NUMERIC else len(self.payload)

    def max_entry_degree(self) -> int:
        if self.kind == NUMERIC:
            return max(len(np.trim_zeros(np.asarray(e), "b")) - 1 for row in self.payload for e in row)
        return pm.max_degree(self.matrix())


def _block_quadratic(p: UniPoly, q: UniPoly, numeric_ok: bool):
    disc = p * p - q * 4
    try:
        s, t = two_squares(disc)
    except NoExactSplit:
        if not numeric_ok:
            raise
        s, t, residual = two_squares_numeric(disc)
        pc = np.array([float(c) for c in p.coeffs] or [0.0])
        half = lambda a, b, sign: _padd(-a, sign * b) / 2
        block = [[half(pc, s, 1), t / 2], [t / 2, half(pc, s, -1)]]
        return block, {"method": "two_squares", "exact": False, "residual": residual}
    half = Fraction(1, 2)
    block = [[(s - p) * half, t * half], [t * half, (-p - s) * half]]
    return block, {"method": "two_squares", "exact": True}


def _padd(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = max(len(a), len(b))
    out = np.zeros(n)
    out[:len(a)] += a
    out[:len(b)] += b
    return out


def witness_block(w: IdealWitness) -> tuple[DSymCertificate, OrthoResult]:
    """Trace-form construction: orthogonal basis of ``Tr(ab/c)`` on ``I`` and alpha in that basis."""
    if not verify_square(w):
        raise WitnessRejected("I^2 != (c / f'(alpha))")
    try:
        gram = beta_gram(list(w.basis), w.c)
    except NotWellDefined as exc:
        raise WitnessRejected(str(exc)) from exc
    ortho = orthogonal_basis(gram)
    if not positivity_check(ortho):
        raise WitnessRejected(f"form values {[str(v) for v in ortho.diag]} are not all positive")
    m_basis = mult_alpha_matrix(list(w.basis))
    Q = ortho.rows()
    Qinv = inverse_unimodular(Q)
    M = pm.matmul(pm.matmul(Qinv, m_basis), Q)
    cert = DSymCertificate(tuple(tuple(r) for r in M), ortho.diag)
    if cert.charpoly() != w.modulus:
        raise AssertionError("characteristic polynomial of the witness block differs from f")
    return cert, ortho


def inverse_unimodular(Q: list[list[UniPoly]]) -> list[list[UniPoly]]:
    n = len(Q)
    dt = pm.det(Q)
    if dt.degree != 0:
        raise ValueError("transform is not unimodular")
    inv = 1 / dt.const_value()
    adj = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[Q[r][c] for c in range(n) if c != j] for r in range(n) if r != i]
            cof = pm.det(minor) if minor else UniPoly.const(1)
            adj[j][i] = cof * (inv * (-1) ** (i + j))
    return adj


def search_witness(f: BiPoly, degree_bound: int = 1, coeff_bound: int = 1,
                   max_candidates: int = 200, order_seed: Optional[int] = None) -> IdealWitness:
    """First witness from the bounded enumeration whose trace form is positive (``c`` or ``-c``)."""
    tried = 0
    for w in witness_candidates(f, degree_bound, coeff_bound, order_seed):
        for cand in (w, IdealWitness(w.modulus, w.basis, -w.c)):
            try:
                witness_block(cand)
                return cand
            except WitnessRejected:
                pass
        tried += 1
        if tried >= max_candidates:
            break
    raise NotConstructive(f"no positive witness for {f} within degree bound {degree_bound}, "
                          f"coefficient bound {coeff_bound}")


def represent(f: BiPoly, k: int, d: int, hint: Optional[IdealWitness] = None,
              search_bound: Optional[int] = None, numeric_ok: bool = True,
              order_seed: Optional[int] = None) -> Representation:
    """Symmetric representation of a T-real-rooted ``f`` in the ``(k, d)`` grading.

    Factors of degree >= 3 need ``hint`` (matching that factor) or a
    ``search_bound`` enabling the bounded witness search; otherwise
    ``NotConstructive`` is raised.
    """
    if f.degree_t != d or not f.is_monic_t():
        raise ValueError("f must be monic of T-degree d")
    if not grading_member(f, k, d):
        raise ValueError(f"f is not in the (k={k}, d={d}) grading")
    if not certify_real_rooted(f).accepted:
        raise ValueError("f is not T-real rooted")
    factors = factor_irreducible(f)
    blocks = []
    record = []
    for g, mult in factors:
        e = g.degree_t
        if e == 1:
            block, info = [[-g.coeff_t(0)]], {"method": "trivial", "exact": True}
        elif e == 2:
            block, info = _block_quadratic(g.coeff_t(1), g.coeff_t(0), numeric_ok)
        else:
            w = hint if hint is not None and hint.modulus == g else None
            if w is None and search_bound is not None:
                w = search_witness(g, degree_bound=search_bound, order_seed=order_seed)
            if w is None:
                raise NotConstructive(f"irreducible factor {g} of degree {e} needs an ideal witness")
            cert, ortho = witness_block(w)
            block, info = cert, {"method": "witness", "exact": True, "D": [str(v) for v in cert.D]}
        info = dict(info, factor=str(g), multiplicity=mult, degree=e)
        record.append(info)
        blocks.extend([block] * mult)
    rep = _assemble(blocks)
    rep.provenance = {"factors": record}
    if not verify_representation(f, rep, k, d):
        raise AssertionError("assembled representation does not verify")
    return rep


def _assemble(blocks) -> Representation:
    if any(isinstance(b, list) and b and isinstance(b[0][0], np.ndarray) for b in blocks):
        mats = [_to_numeric(b) for b in blocks]
        n = sum(len(m) for m in mats)
        out = [[np.zeros(1) for _ in range(n)] for _ in range(n)]
        off = 0
        for m in mats:
            for i, row in enumerate(m):
                for j, v in enumerate(row):
                    out[off + i][off + j] = v
            off += len(m)
        return Representation(NUMERIC, out)
    if any(isinstance(b, DSymCertificate) for b in blocks):
        mats, ds = [], []
        for b in blocks:
            if isinstance(b, DSymCertificate):
                mats.append(b.rows())
                ds.extend(b.D)
            else:
                mats.append(pm.pmat(b))
                ds.extend([Fraction(1)] * len(b))
        return Representation(DSYM, DSymCertificate(tuple(map(tuple, pm.block_diag(mats))), tuple(ds)))
    return Representation(EXACT, SymMatrixPoly(pm.block_diag([pm.pmat(b) for b in blocks])))


def _to_numeric(block) -> list[list[np.ndarray]]:
    if isinstance(block, DSymCertificate):
        return [[np.array(p.coeffs[::-1], dtype=float) for p in row] for row in block.numeric()]
    out = []
    for row in block:
        cur = []
        for v in row:
            if isinstance(v, np.ndarray):
                cur.append(v.astype(float))
            else:
                v = pm.as_poly(v)
                cur.append(np.array([float(c) for c in v.coeffs] or [0.0]))
        out.append(cur)
    return out


# --------------------------------------------------------------------------
# verification


def _coerce(rep) -> Representation:
    if isinstance(rep, Representation):
        return rep
    if isinstance(rep, (SymMatrixPoly, DSymCertificate)):
        return Representation(EXACT if isinstance(rep, SymMatrixPoly) else DSYM, rep)
    rows = pm.pmat(rep)
    if not pm.is_symmetric(rows):
        raise NotSymmetric("representation matrix is not symmetric")
    return Representation(EXACT, SymMatrixPoly(rows))


def _numeric_charpoly_ok(f: BiPoly, mat, tol: float) -> bool:
    n = len(mat)
    for x in np.linspace(-2.0, 2.0, 10):
        A = np.array([[np.polynomial.polynomial.polyval(x, e) for e in row] for row in mat])
        if not np.allclose(A, A.T, atol=1e-12 * max(1.0, np.abs(A).max())):
            return False
        got = np.poly(A)  # high degree first, monic
        want = np.array([float(f.coeff_t(n - i)(Fraction(x))) for i in range(n + 1)])
        scale = max(1.0, float(np.abs(want).max()))
        if np.abs(got - want).max() > tol * scale:
            return False
    return True


def verify_representation(f: BiPoly, rep, k: int, d: int, numeric_tol: float = 1e-10) -> bool:
    """Exact check of symmetry (or ``D M = M^T D``), ``det(T - A) = f`` and the degree law."""
    rep = _coerce(rep)
    if rep.kind == NUMERIC:
        if len(rep.payload) != d:
            return False
        return _numeric_charpoly_ok(f, rep.payload, numeric_tol) and (
            not grading_member(f, k, d) or rep.max_entry_degree() <= k)
    if rep.kind == EXACT:
        rows = rep.payload.rows()
        if not pm.is_symmetric(rows):
            raise NotSymmetric("representation matrix is not symmetric")
    elif rep.kind == DSYM:
        if not rep.payload.holds():
            raise NotSymmetric("D*M != M^T*D")
        rows = rep.payload.rows()
    else:
        raise ValueError(f"unknown representation kind {rep.kind!r}")
    if len(rows) != d:
        return False
    if pm.charpoly(rows) != f:
        return False
    if grading_member(f, k, d) and pm.max_degree(rows) > k:
        return False
    return True


# --------------------------------------------------------------------------
# definite pencils for hyperbolic ternary forms


@dataclass
class PencilRep:
    """``F = det(X*A + Y*B + Z*C)`` with ``e_x A + e_y B + e_z C`` positive definite."""

    A: list
    B: list
    C: list
    e: tuple
    exact: bool = True
    scale_note: str = ""

    def matrices(self) -> list:
        return [self.A, self.B, self.C]

    def at(self, point: Sequence) -> list:
        n = len(self.A)
        return [[sum(point[m] * self.matrices()[m][i][j] for m in range(3)) for j in range(n)]
                for i in range(n)]

    def determinant_form(self) -> TernaryForm:
        if not self.exact:
            raise TypeError("numeric pencil has no exact determinant")
        n = len(self.A)
        lin = [[TernaryForm.linear(self.A[i][j], self.B[i][j], self.C[i][j]) for j in range(n)]
               for i in range(n)]
        return _det_forms(lin)

    def pd_at_e(self) -> bool:
        m = self.at(self.e)
        if self.exact:
            return all(pm.det([[UniPoly.const(m[i][j]) for j in range(k)] for i in range(k)]).const_value() > 0
                       for k in range(1, len(m) + 1))
        return bool(np.all(np.linalg.eigvalsh(np.array(m, dtype=float)) > 0))


def _det_forms(m: list[list[TernaryForm]]) -> TernaryForm:
    n = len(m)
    if n == 0:
        return TernaryForm({(0, 0, 0): 1})
    if n == 1:
        return m[0][0]
    acc = TernaryForm()
    for j in range(n):
        if not m[0][j].terms:
            continue
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = m[0][j] * _det_forms(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def _frac_inverse3(V) -> list[list[Fraction]]:
    M = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in V]).inv()
    return [[to_fraction(M[i, j]) for j in range(3)] for i in range(3)]


def hv_represent(F: TernaryForm, e: Sequence, search_bound: Optional[int] = None,
                 hint: Optional[IdealWitness] = None) -> PencilRep:
    """Definite symmetric pencil for a form hyperbolic with respect to ``e``."""
    e = tuple(to_fraction(v) for v in e)
    if not F.is_homogeneous() or F.degree < 1:
        raise ValueError("F must be a nonconstant form")
    if F(*e) == 0 or not is_hyperbolic(F, e):
        raise NotHyperbolic(f"{F} is not hyperbolic with respect to {e}")
    d = F.degree
    V, Fe, G = normalized_charts(F, e)
    f = G.dehomogenize(y_val=1)
    rep = represent(f, 1, d, hint=hint, search_bound=search_bound)
    if rep.kind == NUMERIC:
        coef = lambda a, n: float(a[n]) if len(a) > n else 0.0
        A0 = [[coef(v, 0) for v in row] for row in rep.payload]
        A1 = [[coef(v, 1) for v in row] for row in rep.payload]
    else:
        rows = rep.matrix()
        A0 = [[v.coeff(0) for v in row] for row in rows]
        A1 = [[v.coeff(1) for v in row] for row in rows]
    Dw = [Fraction(1)] * d
    if rep.kind == DSYM:
        Dw = list(rep.payload.D)
    W = _frac_inverse3(V)
    # u = W w and G(u) = det(u3*I - u2*A0 - u1*A1); multiply rows by D to symmetrise
    pencil = []
    for m in range(3):
        P = [[Dw[i] * ((W[2][m] if i == j else 0) - W[1][m] * A0[i][j] - W[0][m] * A1[i][j])
              for j in range(d)] for i in range(d)]
        pencil.append(P)
    const = Fe
    for v in Dw:
        const /= v
    root = _as_rational_square(const)
    if root is not None and rep.kind != NUMERIC:
        # congruence by diag(root, 1, ..., 1) multiplies the determinant by const
        for P in pencil:
            for j in range(d):
                P[0][j] *= root
            for i in range(d):
                P[i][0] *= root
        return PencilRep(*pencil, e=e, exact=True)
    r = float(np.sqrt(float(const)))
    num = [[[float(v) for v in row] for row in P] for P in pencil]
    for P in num:
        for j in range(d):
            P[0][j] *= r
        for i in range(d):
            P[i][0] *= r
    if rep.kind == NUMERIC:
        note = "a quadratic factor has no rational two-squares split; entries are floats"
    else:
        note = f"first row and column scaled by sqrt({const}) numerically"
    return PencilRep(*num, e=e, exact=False, scale_note=note)


def verify_pencil(F: TernaryForm, pen: PencilRep, tol: float = 1e-10) -> bool:
    if pen.exact:
        for P in pen.matrices():
            if not all(P[i][j] == P[j][i] for i in range(len(P)) for j in range(len(P))):
                return False
        return pen.determinant_form() == F and pen.pd_at_e()
    rng = np.random.default_rng(0)
    for _ in range(10):
        w = rng.normal(size=3)
        got = np.linalg.det(np.array(pen.at(list(w)), dtype=float))
        want = float(F(*[float(v) for v in w]))
        if abs(got - want) > tol * max(1.0, abs(want)):
            return False
    return pen.pd_at_e()
