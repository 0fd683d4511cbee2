"""Orthogonal bases of unimodular symmetric forms over Q[X] and D-symmetric certificates.

``orthogonal_basis`` repeats three moves on the current Gram matrix ``G``:

* a diagonal entry that is a nonzero constant splits off a rank-one summand;
* a zero diagonal entry ``G[i][i]`` splits off a hyperbolic plane spanned by
  ``e_i`` and a vector ``w`` with ``G(e_i, w) = 1`` (rows of a unimodular form
  are primitive, so ``w`` exists);
* otherwise the degrees are lowered.  Shifts ``t`` with
  ``2 deg G[i][j] <= t[i] + t[j]`` are kept; the top coefficients form a
  constant matrix ``L`` whose determinant is the ``X^(sum t)`` coefficient of
  ``det G``.  While ``sum t > 0`` it is singular, and a kernel vector gives a
  unimodular change of basis lowering one shift.  When ``sum t == 0`` either
  every shift is zero (``G`` constant) or some ``G[i][i]`` vanishes, so one of
  the first two moves applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np
import sympy

from . import matrix as pm
from .poly import UniPoly, to_fraction
from .quotient import GramForm


class NotUnimodular(ValueError):
    pass


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class OrthoResult:
    """``Q^T G Q = diag(diag)``; the columns of ``Q`` are the orthogonal vectors."""

    Q: tuple
    diag: tuple

    def rows(self) -> list[list[UniPoly]]:
        return [list(r) for r in self.Q]

    def columns(self) -> list[list[UniPoly]]:
        return pm.transpose(self.rows())


def _gram_rows(G) -> list[list[UniPoly]]:
    if isinstance(G, GramForm):
        return G.rows()
    return pm.pmat(G)


def _bil(G, u, v) -> UniPoly:
    acc = UniPoly.const(0)
    for i, ui in enumerate(u):
        if ui.is_zero():
            continue
        row = G[i]
        for j, vj in enumerate(v):
            if not vj.is_zero() and not row[j].is_zero():
                acc = acc + ui * row[j] * vj
    return acc


def _lin(coeffs: Sequence[UniPoly], vecs: Sequence[Sequence[UniPoly]]) -> list[UniPoly]:
    n = len(vecs[0])
    out = [UniPoly.const(0)] * n
    for c, v in zip(coeffs, vecs):
        if c.is_zero():
            continue
        out = [a + c * b for a, b in zip(out, v)]
    return out


def _unit(n: int, i: int) -> list[UniPoly]:
    return [UniPoly.const(int(r == i)) for r in range(n)]


def _shifts(G) -> list[int]:
    return [max(v.degree for v in row) for row in G]


def _top_matrix(G, t) -> list[list[Fraction]]:
    n = len(G)
    out = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            s = t[i] + t[j]
            if s % 2 == 0 and s >= 0:
                out[i][j] = G[i][j].coeff(s // 2)
    return out


def _kernel_vector(L: list[list[Fraction]], idx: list[int]) -> list[Fraction] | None:
    sub = sympy.Matrix([[sympy.Rational(L[i][j].numerator, L[i][j].denominator) for j in idx] for i in idx])
    ns = sub.nullspace()
    if not ns:
        return None
    return [to_fraction(v) for v in ns[0]]


def _reduce_once(G, basis, t):
    """One degree-lowering step; returns the new ``(G, basis, t)``."""
    n = len(G)
    L = _top_matrix(G, t)
    for parity in (0, 1):
        idx = [i for i in range(n) if t[i] % 2 == parity]
        if not idx:
            continue
        u = _kernel_vector(L, idx)
        if u is None:
            continue
        supp = [(idx[k], u[k]) for k in range(len(idx)) if u[k] != 0]
        j = max(supp, key=lambda p: (t[p[0]], -p[0]))[0]
        coeffs = [UniPoly.const(0)] * n
        for i, ui in supp:
            coeffs[i] = UniPoly.monomial(ui, (t[j] - t[i]) // 2)
        new_basis = list(basis)
        new_basis[j] = _lin(coeffs, basis)
        local = [_unit(n, i) for i in range(n)]
        local[j] = coeffs
        G2 = [[_bil(G, local[a], local[b]) for b in range(n)] for a in range(n)]
        t2 = list(t)
        t2[j] -= 1
        return G2, new_basis, t2
    raise NotUnimodular("top-degree form is nonsingular although the shift sum is positive")


def _project_out(G, i):
    """Vectors (local coordinates) spanning the orthogonal complement of ``e_i`` with ``G[i][i]`` constant."""
    n = len(G)
    lam = G[i][i].const_value()
    out = []
    for k in range(n):
        if k == i:
            continue
        v = _unit(n, k)
        v[i] = v[i] - G[i][k] * (1 / lam)
        out.append(v)
    return out


def _restrict(G, vecs):
    return [[_bil(G, a, b) for b in vecs] for a in vecs]


def _hyperbolic(G, i):
    """Split the plane through ``e_i`` (isotropic); returns (pair of vectors, complement vectors)."""
    n = len(G)
    try:
        w = pm.solve_unimodular_row(G[i])
    except ValueError as exc:
        raise NotUnimodular(f"row {i} of the Gram matrix is not primitive") from exc
    ei = _unit(n, i)
    ww = _bil(G, w, w)
    wp = [a - ww * Fraction(1, 2) * b for a, b in zip(w, ei)]
    plus = [a + b for a, b in zip(ei, wp)]
    minus = [a - b for a, b in zip(ei, wp)]
    projected = []
    for k in range(n):
        v = _unit(n, k)
        bw, be = _bil(G, v, wp), _bil(G, v, ei)
        projected.append([a - bw * b - be * c for a, b, c in zip(v, ei, wp)])
    comp = [col for _, col in pm.hermite_columns(projected, n)]
    if len(comp) != n - 2:
        raise NotUnimodular("hyperbolic complement has the wrong rank")
    return (plus, minus), comp


def orthogonal_basis(G) -> OrthoResult:
    """Exact orthogonal basis with constant nonzero values for a unimodular Gram matrix."""
    rows = _gram_rows(G)
    n = len(rows)
    if not pm.is_symmetric(rows):
        raise ValueError("Gram matrix must be symmetric")
    dt = pm.det(rows) if n else UniPoly.const(1)
    if dt.degree != 0:
        raise NotUnimodular(f"det G = {dt} is not a nonzero constant")
    found_vecs: list[list[UniPoly]] = []
    found_vals: list[Fraction] = []
    cur = rows
    basis = [_unit(n, i) for i in range(n)]  # current basis in original coordinates
    t = None
    while cur:
        m = len(cur)
        const_i = next((i for i in range(m) if cur[i][i].degree == 0), None)
        if const_i is not None:
            found_vecs.append(basis[const_i])
            found_vals.append(cur[const_i][const_i].const_value())
            local = _project_out(cur, const_i)
            basis = [_lin(v, basis) for v in local]
            cur = _restrict(cur, local)
            t = None
            continue
        zero_i = next((i for i in range(m) if cur[i][i].is_zero()), None)
        if zero_i is not None:
            (plus, minus), local = _hyperbolic(cur, zero_i)
            found_vecs += [_lin(plus, basis), _lin(minus, basis)]
            found_vals += [Fraction(2), Fraction(-2)]
            basis = [_lin(v, basis) for v in local]
            cur = _restrict(cur, local)
            t = None
            continue
        if t is None:
            t = _shifts(cur)
        cur, basis, t = _reduce_once(cur, basis, t)
    Q = pm.transpose(found_vecs) if found_vecs else []
    result = OrthoResult(tuple(tuple(r) for r in Q), tuple(found_vals))
    check = pm.matmul(pm.matmul(pm.transpose(Q), rows), Q) if n else []
    if check != pm.diag(found_vals):
        raise AssertionError("internal error: Q^T G Q is not the computed diagonal")
    return result


def positivity_check(r: OrthoResult) -> bool:
    return all(v > 0 for v in r.diag)


@dataclass(frozen=True)
class DSymCertificate:
    """``D M = M^T D`` with ``D`` a positive diagonal: ``M`` is similar to a symmetric matrix."""

    M: tuple
    D: tuple

    def __post_init__(self):
        M = pm.pmat(self.M)
        D = [to_fraction(v) for v in self.D]
        object.__setattr__(self, "M", tuple(tuple(r) for r in M))
        object.__setattr__(self, "D", tuple(D))
        if len(M) != len(D) or any(len(r) != len(D) for r in M):
            raise CertificateError("shape mismatch between M and D")
        if any(v <= 0 for v in D):
            raise CertificateError("D must be positive")
        if not self.holds():
            raise CertificateError("D*M != M^T*D")

    def rows(self) -> list[list[UniPoly]]:
        return [list(r) for r in self.M]

    def holds(self) -> bool:
        n = len(self.D)
        return all(self.M[i][j] * self.D[i] == self.M[j][i] * self.D[j]
                   for i in range(n) for j in range(i + 1, n))

    def charpoly(self):
        return pm.charpoly(self.rows())

    def numeric(self) -> list[list[np.poly1d]]:
        """``D^(1/2) M D^(-1/2)`` with each entry a float polynomial in X."""
        s = [np.sqrt(float(v)) for v in self.D]
        n = len(s)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                c = [float(v) * s[i] / s[j] for v in self.M[i][j].coeffs]
                row.append(np.poly1d(list(reversed(c)) or [0.0]))
            out.append(row)
        return out

    def numeric_at(self, x: float) -> np.ndarray:
        return np.array([[p(x) for p in row] for row in self.numeric()], dtype=float)


def symmetrize(M, D) -> tuple[DSymCertificate, list[list[np.poly1d]]]:
    cert = DSymCertificate(tuple(tuple(r) for r in pm.pmat(M)), tuple(D))
    return cert, cert.numeric()
