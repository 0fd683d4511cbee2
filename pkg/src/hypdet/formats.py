"""Canonical JSON documents for polynomials, matrices, witnesses and certificates.

A polynomial document looks like::

    {"vars": ["X", "T"], "terms": [{"c": "-1", "e": [2, 0]}, {"c": "1", "e": [0, 2]}]}

Terms are sorted by exponent vector and coefficients are written in lowest
terms, so equal polynomials always serialise to identical bytes.
"""

from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from typing import Any

from .poly import BiPoly, RatFunc, TernaryForm, UniPoly, to_fraction


class FormatError(ValueError):
    pass


def _terms(items) -> list[dict]:
    return [{"c": str(c), "e": list(e)} for e, c in sorted(items) if c]


def poly_to_json(f: BiPoly) -> dict:
    return {"vars": ["X", "T"], "terms": _terms(f.to_dict().items())}


def uni_to_json(p: UniPoly) -> dict:
    return {"vars": [p.var], "terms": _terms(((i,), c) for i, c in enumerate(p.coeffs))}


def ternary_to_json(F: TernaryForm) -> dict:
    return {"vars": ["X", "Y", "Z"], "terms": _terms(F.terms.items())}


def any_poly_from_json(doc: dict):
    """Decode a polynomial document into UniPoly, BiPoly or TernaryForm by its ``vars``."""
    try:
        vars_ = list(doc["vars"])
        terms = doc["terms"]
        parsed = []
        for t in terms:
            e = [int(v) for v in t["e"]]
            if len(e) != len(vars_) or any(v < 0 for v in e):
                raise FormatError(f"bad exponent vector {e} for vars {vars_}")
            parsed.append((tuple(e), Fraction(str(t["c"]))))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed polynomial document: {exc}") from exc
    if len(vars_) == 1:
        n = max((e[0] for e, _ in parsed), default=-1) + 1
        coeffs = [Fraction(0)] * n
        for e, c in parsed:
            coeffs[e[0]] += c
        return UniPoly(coeffs, vars_[0])
    if vars_ == ["X", "T"]:
        out: dict = {}
        for e, c in parsed:
            out[e] = out.get(e, 0) + c
        return BiPoly.from_dict(out)
    if vars_ == ["X", "Y", "Z"]:
        out = {}
        for e, c in parsed:
            out[e] = out.get(e, 0) + c
        return TernaryForm(out)
    raise FormatError(f"unsupported variable list {vars_}")


def poly_from_json(doc: dict) -> BiPoly:
    p = any_poly_from_json(doc)
    if isinstance(p, UniPoly):
        return BiPoly.from_uni_t(p) if p.var == "T" else BiPoly([p.with_var("X")])
    if not isinstance(p, BiPoly):
        raise FormatError("expected a polynomial in X and T")
    return p


def uni_from_json(doc: dict) -> UniPoly:
    p = any_poly_from_json(doc)
    if isinstance(p, BiPoly):
        if p.degree_t > 0:
            raise FormatError("expected a univariate polynomial in X")
        return p.coeff_t(0)
    if not isinstance(p, UniPoly):
        raise FormatError("expected a univariate polynomial")
    return p.with_var("X")


def matrix_to_json(rows) -> dict:
    from .matrix import as_poly
    return {"d": len(rows), "entries": [[uni_to_json(as_poly(v)) for v in row] for row in rows]}


def matrix_from_json(doc: dict) -> list[list[UniPoly]]:
    try:
        d = int(doc["d"])
        rows = [[uni_from_json(v) for v in row] for row in doc["entries"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed matrix document: {exc}") from exc
    if len(rows) != d or any(len(r) != d for r in rows):
        raise FormatError("matrix entries do not match d")
    return rows


def ratfunc_to_str(r: RatFunc) -> str:
    if r.is_poly():
        return str(r.num)
    return f"({r.num})/({r.den})"


def ratfunc_from_str(text: str) -> RatFunc:
    import sympy
    x = sympy.Symbol("X")
    try:
        expr = sympy.sympify(text.replace("^", "**"), locals={"X": x}, rational=True)
        num, den = sympy.fraction(sympy.together(expr))
        pn = sympy.Poly(num, x, domain="QQ")
        pd = sympy.Poly(den, x, domain="QQ")
    except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
        raise FormatError(f"cannot parse rational function {text!r}") from exc
    to = lambda p: UniPoly([to_fraction(sympy.Rational(c)) for c in reversed(p.all_coeffs())], "X")
    return RatFunc(to(pn), to(pd))


def dump(doc: Any, path: str | None) -> str:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if path is None:
        return text
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".json")
    with os.fdopen(fd, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)
    return text


def load(path: str) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc})") from exc


# --------------------------------------------------------------------------
# witnesses, certificates, representations, pencils


def quot_to_json(v) -> list[str]:
    return [ratfunc_to_str(c) for c in v.coords]


def quot_from_json(doc, modulus: BiPoly):
    from .quotient import QuotElem
    if not isinstance(doc, list):
        raise FormatError("an element of L is a list of coordinate strings")
    return QuotElem([ratfunc_from_str(str(s)) for s in doc], modulus)


def witness_to_json(w) -> dict:
    return {"modulus": poly_to_json(w.modulus), "basis": [quot_to_json(b) for b in w.basis],
            "c": quot_to_json(w.c)}


def witness_from_json(doc: dict):
    from .ideals import IdealWitness, RankError
    from .quotient import ModulusMismatch
    try:
        f = poly_from_json(doc["modulus"])
        basis = tuple(quot_from_json(b, f) for b in doc["basis"])
        c = quot_from_json(doc["c"], f)
        return IdealWitness(f, basis, c)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed witness document: {exc}") from exc
    except (RankError, ModulusMismatch) as exc:
        raise FormatError(f"invalid witness: {exc}") from exc


def _float_matrix(rows) -> list:
    return [[[float(c) for c in e] for e in row] for row in rows]


def dsym_to_json(cert, with_numeric: bool = True) -> dict:
    doc = {"M": matrix_to_json(cert.rows()), "D": [str(v) for v in cert.D]}
    if with_numeric:
        num = [[list(p.coeffs[::-1]) for p in row] for row in cert.numeric()]
        doc["numeric"] = {"precision": "float64", "order": "low_degree_first",
                          "entries": _float_matrix(num)}
    return doc


def dsym_from_json(doc: dict):
    from .diagonal import CertificateError, DSymCertificate
    try:
        M = matrix_from_json(doc["M"])
        D = tuple(Fraction(str(v)) for v in doc["D"])
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed D-symmetric certificate: {exc}") from exc
    try:
        return DSymCertificate(tuple(map(tuple, M)), D)
    except CertificateError as exc:
        raise FormatError(str(exc)) from exc


def representation_to_json(rep) -> dict:
    from .detrep import DSYM, EXACT
    doc = {"kind": rep.kind, "provenance": rep.provenance}
    if rep.kind == EXACT:
        doc["matrix"] = matrix_to_json(rep.payload.rows())
    elif rep.kind == DSYM:
        doc["certificate"] = dsym_to_json(rep.payload)
    else:
        doc["numeric"] = {"precision": "float64", "order": "low_degree_first",
                          "entries": _float_matrix(rep.payload)}
    return doc


def representation_from_json(doc: dict):
    """Accepts a representation document or a bare matrix document (treated as exact)."""
    import numpy as np
    from .detrep import DSYM, EXACT, NUMERIC, NotSymmetric, Representation
    from .hermite import SymMatrixPoly
    if "entries" in doc and "kind" not in doc:
        rows = matrix_from_json(doc)
        try:
            return Representation(EXACT, SymMatrixPoly(rows))
        except ValueError as exc:
            raise NotSymmetric(str(exc)) from exc
    kind = doc.get("kind")
    prov = doc.get("provenance", {})
    if kind == EXACT:
        rows = matrix_from_json(doc["matrix"])
        try:
            return Representation(EXACT, SymMatrixPoly(rows), prov)
        except ValueError as exc:
            raise NotSymmetric(str(exc)) from exc
    if kind == DSYM:
        return Representation(DSYM, dsym_from_json(doc["certificate"]), prov)
    if kind == NUMERIC:
        ents = doc["numeric"]["entries"]
        return Representation(NUMERIC, [[np.array(e, dtype=float) for e in row] for row in ents], prov)
    raise FormatError(f"unknown representation kind {kind!r}")


def pencil_to_json(pen) -> dict:
    enc = (lambda v: str(v)) if pen.exact else (lambda v: float(v))
    doc = {"exact": pen.exact, "e": [str(v) for v in pen.e]}
    for name, P in zip("ABC", pen.matrices()):
        doc[name] = [[enc(v) for v in row] for row in P]
    if pen.scale_note:
        doc["note"] = pen.scale_note
    return doc


def certificate_to_json(cert) -> dict:
    return cert.to_json()
