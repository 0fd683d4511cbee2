"""Multiplicity-reducing perturbations ``g -> g + a*g'`` and the smoothing pipeline.

``smooth_approximate`` walks a real-rooted ``f`` through four stages, each
one adding a property while keeping the earlier ones:

=====  ===========================  =====================================
stage  operator                     property gained
=====  ===========================  =====================================
M1     ``P_eps`` applied d-1 times  ``f(0, T)`` has simple real roots
M2     ``P_{eps X^k}`` d-1 times    strict real roots, also at infinity
M3     ``f + eps*T``                ``f_X`` and ``f_T`` coprime
M4     ``f + eps``                  the curve ``f = 0`` is smooth
=====  ===========================  =====================================

Every acceptance is re-verified exactly; ``eps`` is halved on failure.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .poly import BiPoly, UniPoly, grading_member, squarefree_decomposition, to_fraction
from .realroots import (certify_real_rooted, is_strictly_real_rooted, partials_coprime,
                        roots_at_infinity, smoothness_check)
from .univariate import isolate_real_roots, sturm_count

log = logging.getLogger(__name__)

DEFAULT_EPSILON = Fraction(1, 64)
DEFAULT_BUDGET = 30


class LaurentPoly:
    """Polynomial in ``X, X^{-1}, T``: ``{(i, j): c}`` for ``c * X**i * T**j``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[dict] = None):
        object.__setattr__(self, "terms", {e: to_fraction(c) for e, c in (terms or {}).items() if c})

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def from_bipoly(cls, f: BiPoly) -> "LaurentPoly":
        return cls(f.to_dict())

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                e = (i1 + i2, j1 + j2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    def deriv_t(self) -> "LaurentPoly":
        return LaurentPoly({(i, j - 1): c * j for (i, j), c in self.terms.items() if j})

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def in_inverse_x(self) -> Optional[BiPoly]:
        """Rewrite as a polynomial in ``Y = X^{-1}`` and ``T`` when possible (``Y`` stored as X)."""
        if any(i > 0 for (i, _) in self.terms):
            return None
        return BiPoly.from_dict({(-i, j): c for (i, j), c in self.terms.items()})

    def at_infinity(self) -> UniPoly:
        """Set ``X^{-1} = 0``; requires no positive powers of ``X``."""
        if any(i > 0 for (i, _) in self.terms):
            raise ValueError("positive powers of X present")
        d = max((j for (_, j) in self.terms), default=-1)
        coeffs = [Fraction(0)] * (d + 1)
        for (i, j), c in self.terms.items():
            if i == 0:
                coeffs[j] += c
        return UniPoly(coeffs, "T")

    def __repr__(self) -> str:
        return f"LaurentPoly({sorted(self.terms.items())})"


Perturbable = Union[BiPoly, UniPoly, LaurentPoly]


def apply_P(g: Perturbable, a) -> Perturbable:
    """``g + a * dg/dT``; ``a`` is a rational or a polynomial in ``X``."""
    if isinstance(g, UniPoly):
        return g + g.deriv() * to_fraction(a)
    if isinstance(g, LaurentPoly):
        if isinstance(a, UniPoly):
            a = LaurentPoly({(i, 0): c for i, c in enumerate(a.coeffs)})
        elif not isinstance(a, LaurentPoly):
            a = LaurentPoly({(0, 0): a})
        return g + a * g.deriv_t()
    if not isinstance(a, UniPoly):
        a = UniPoly.const(a)
    return g + g.deriv_t() * BiPoly([a])


def apply_P_power(g: Perturbable, a, times: int) -> Perturbable:
    for _ in range(times):
        g = apply_P(g, a)
    return g


def apply_Q(g, k: int, d: int) -> LaurentPoly:
    """Scaling ``X^{-kd} g(X, X^k T)``."""
    terms = g.terms if isinstance(g, LaurentPoly) else g.to_dict()
    if any(j > d for (_, j) in terms):
        raise ValueError("T-degree exceeds d")
    return LaurentPoly({(i + k * j - k * d, j): c for (i, j), c in terms.items()})


# --------------------------------------------------------------------------


def multiplicity_profile(p: UniPoly) -> list[tuple[tuple[Fraction, Fraction], int]]:
    """Isolating intervals of the distinct real roots of ``p`` with multiplicities."""
    if p.degree <= 0:
        return []
    parts = squarefree_decomposition(p)
    if sum(a.degree for a, _ in parts) != sum(sturm_count(a) for a, _ in parts):
        raise ValueError(f"{p} is not real rooted")
    out = []
    for a, mult in parts:
        for iv in isolate_real_roots(a):
            out.append((iv, mult))
    out.sort()
    return out


def univariate_strictly_real_rooted(p: UniPoly) -> bool:
    if p.degree <= 0:
        return True
    # distinct real roots == degree forces all roots real and simple
    return sturm_count(p) == p.degree


def _in_m1(f: BiPoly, k: int, d: int) -> bool:
    return univariate_strictly_real_rooted(f.eval_x(0))


def _in_m2(f: BiPoly, k: int, d: int) -> bool:
    return (_in_m1(f, k, d) and is_strictly_real_rooted(f)
            and univariate_strictly_real_rooted(roots_at_infinity(f, k, d)))


def _in_m3(f: BiPoly, k: int, d: int) -> bool:
    return _in_m2(f, k, d) and partials_coprime(f)


def _in_m4(f: BiPoly, k: int, d: int) -> bool:
    return _in_m3(f, k, d) and smoothness_check(f)


STAGE_PREDICATES = {"M1": _in_m1, "M2": _in_m2, "M3": _in_m3, "M4": _in_m4}


def _stage_operator(name: str, f: BiPoly, eps: Fraction, k: int, d: int) -> BiPoly:
    if name == "M1":
        return apply_P_power(f, eps, d - 1)
    if name == "M2":
        return apply_P_power(f, UniPoly.monomial(eps, k), d - 1)
    if name == "M3":
        return f + BiPoly.T() * eps
    if name == "M4":
        return f + eps
    raise KeyError(name)


OPERATOR_LABELS = {
    "M1": "P_eps^(d-1)",
    "M2": "P_(eps*X^k)^(d-1)",
    "M3": "f + eps*T",
    "M4": "f + eps",
}


class BudgetExhausted(RuntimeError):
    def __init__(self, message: str, transcript: "PerturbTranscript"):
        super().__init__(message)
        self.transcript = transcript


@dataclass
class PerturbTranscript:
    input: BiPoly
    k: int
    d: int
    stages: list = field(default_factory=list)
    output: Optional[BiPoly] = None
    distance: Optional[Fraction] = None

    def replay(self) -> BiPoly:
        f = self.input
        for st in self.stages:
            if st["epsilon"] != 0:
                f = _stage_operator(st["name"], f, st["epsilon"], self.k, self.d)
        return f

    def reverify(self) -> bool:
        f = self.input
        for st in self.stages:
            if st["epsilon"] != 0:
                f = _stage_operator(st["name"], f, st["epsilon"], self.k, self.d)
            if not STAGE_PREDICATES[st["name"]](f, self.k, self.d):
                return False
        return f == self.output

    def to_json(self) -> dict:
        from .formats import poly_to_json
        return {
            "input": poly_to_json(self.input),
            "k": self.k,
            "d": self.d,
            "stages": [{"name": s["name"], "operator": s["operator"], "epsilon": str(s["epsilon"]),
                        "attempts": [str(a) for a in s["attempts"]], "verified": s["verified"]}
                       for s in self.stages],
            "output": poly_to_json(self.output) if self.output is not None else None,
            "distance": str(self.distance) if self.distance is not None else None,
        }


def coefficient_distance(f: BiPoly, g: BiPoly) -> Fraction:
    df, dg = f.to_dict(), g.to_dict()
    return max((abs(df.get(e, 0) - dg.get(e, 0)) for e in set(df) | set(dg)), default=Fraction(0))


def smooth_approximate(f: BiPoly, k: int, d: int, epsilon=DEFAULT_EPSILON,
                       budget: int = DEFAULT_BUDGET) -> tuple[BiPoly, PerturbTranscript]:
    """Perturb a real-rooted ``f`` in the ``(k, d)`` grading into a strictly real-rooted smooth one."""
    epsilon = to_fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not f.is_monic_t() or f.degree_t != d:
        raise ValueError("f must be monic of T-degree d")
    if not grading_member(f, k, d):
        raise ValueError(f"f is not in the (k={k}, d={d}) grading")
    if not certify_real_rooted(f).accepted:
        raise ValueError("f is not T-real rooted")
    transcript = PerturbTranscript(f, k, d)
    cur = f
    for name in ("M1", "M2", "M3", "M4"):
        pred = STAGE_PREDICATES[name]
        record = {"name": name, "operator": OPERATOR_LABELS[name], "epsilon": Fraction(0),
                  "attempts": [], "verified": True}
        if d <= 1 or pred(cur, k, d):
            transcript.stages.append(record)
            continue
        eps = epsilon
        for _ in range(budget):
            cand = _stage_operator(name, cur, eps, k, d)
            record["attempts"].append(eps)
            if grading_member(cand, k, d) and pred(cand, k, d):
                cur = cand
                record["epsilon"] = eps
                break
            log.debug("stage %s rejected eps=%s", name, eps)
            eps /= 2
        else:
            record["verified"] = False
            transcript.stages.append(record)
            raise BudgetExhausted(f"stage {name} failed after {budget} attempts", transcript)
        transcript.stages.append(record)
    transcript.output = cur
    transcript.distance = coefficient_distance(f, cur)
    return cur, transcript
