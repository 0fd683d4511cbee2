"""``hypdet`` command line.

Exit codes: 0 verified/true, 1 property false (a witness is printed),
2 not constructive or verification error, 3 parse/format error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import formats
from .detrep import (NotConstructive, NotHyperbolic, NotSymmetric, WitnessRejected, hv_represent,
                     represent, verify_pencil, verify_representation)
from .formats import FormatError
from .hermite import hermite_matrix, pd_on_line
from .nuij import DEFAULT_BUDGET, DEFAULT_EPSILON, BudgetExhausted, smooth_approximate
from .poly import BiPoly, TernaryForm
from .realroots import (NotMonicError, certify_real_rooted, certify_strictly_real_rooted,
                        is_hyperbolic)

EXIT_OK, EXIT_FALSE, EXIT_ERROR, EXIT_FORMAT = 0, 1, 2, 3

log = logging.getLogger("hypdet")


def minimal_k(f: BiPoly) -> int:
    """Smallest ``k >= 0`` with ``f`` in the ``(k, d)`` grading."""
    d = f.degree_t
    k = 0
    for i in range(d):
        deg = f.coeff_t(i).degree
        if deg > 0:
            k = max(k, -(-deg // (d - i)))
    return k


def _load_bipoly(path: str) -> BiPoly:
    f = formats.poly_from_json(formats.load(path))
    if f.is_zero():
        raise FormatError("zero polynomial")
    return f


def _emit(doc, out: Optional[str]) -> None:
    text = formats.dump(doc, out)
    if out is None:
        sys.stdout.write(text)


def _seed() -> Optional[int]:
    raw = os.environ.get("HYPDET_SEED")
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError as exc:
        raise FormatError(f"HYPDET_SEED must be an integer, got {raw!r}") from exc


def plot_data(f: BiPoly, samples: int = 201, radius: float = 3.0) -> dict:
    """Sorted real parts of the roots of ``f(x, T)`` on a grid of ``x`` values."""
    xs = np.linspace(-radius, radius, samples)
    rows = []
    d = f.degree_t
    for x in xs:
        coeffs = [float(f.coeff_t(d - i)(Fraction(float(x)))) for i in range(d + 1)]
        roots = np.roots(coeffs) if d > 0 else np.array([])
        rows.append(sorted(float(r.real) for r in roots))
    return {"x": [float(x) for x in xs], "roots": rows}


# --------------------------------------------------------------------------
# commands


def cmd_certify(args) -> int:
    f = _load_bipoly(args.input)
    strict = certify_strictly_real_rooted(f)
    cert = strict if strict.accepted else certify_real_rooted(f)
    doc = cert.to_json()
    if args.plot_data:
        formats.dump(plot_data(f), args.plot_data)
    _emit(doc, args.out)
    if not cert.accepted:
        x = cert.counterexample
        where = f"x={x}" if x is not None else "an irrational x (see witness)"
        print(f"not real rooted: witness at {where}", file=sys.stderr)
        return EXIT_FALSE
    return EXIT_OK


def cmd_perturb(args) -> int:
    f = _load_bipoly(args.input)
    d = f.degree_t
    k = args.k if args.k is not None else minimal_k(f)
    if not certify_real_rooted(f).accepted:
        print("input is not T-real rooted", file=sys.stderr)
        return EXIT_FALSE
    try:
        g, transcript = smooth_approximate(f, k, d, epsilon=Fraction(args.epsilon), budget=args.budget)
    except BudgetExhausted as exc:
        _emit(exc.transcript.to_json(), args.out)
        print(str(exc), file=sys.stderr)
        return EXIT_ERROR
    if args.plot_data:
        formats.dump({"input": plot_data(f), "output": plot_data(g)}, args.plot_data)
    _emit(transcript.to_json(), args.out)
    return EXIT_OK


def cmd_hermite(args) -> int:
    f = _load_bipoly(args.input)
    H = hermite_matrix(f)
    doc = {"hermite": formats.matrix_to_json(H.rows()), "positive_definite_on_R": pd_on_line(H)}
    _emit(doc, args.out)
    return EXIT_OK


def cmd_represent(args) -> int:
    f = _load_bipoly(args.input)
    d = f.degree_t
    k = args.k if args.k is not None else minimal_k(f)
    hint = formats.witness_from_json(formats.load(args.hint)) if args.hint else None
    if not certify_real_rooted(f).accepted:
        print("input is not T-real rooted", file=sys.stderr)
        return EXIT_FALSE
    try:
        rep = represent(f, k, d, hint=hint, search_bound=args.search_bound, order_seed=_seed())
    except NotConstructive as exc:
        print(f"NotConstructive: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except WitnessRejected as exc:
        print(f"witness rejected: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit(formats.representation_to_json(rep), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    f = _load_bipoly(args.poly)
    rep = formats.representation_from_json(formats.load(args.rep))
    d = f.degree_t
    k = args.k if args.k is not None else minimal_k(f)
    ok = verify_representation(f, rep, k, d, numeric_tol=args.numeric_tol)
    _emit({"verified": ok, "k": k, "d": d}, args.out)
    return EXIT_OK if ok else EXIT_FALSE


def _parse_direction(text: str) -> tuple:
    try:
        parts = [Fraction(p) for p in text.split(",")]
    except ValueError as exc:
        raise FormatError(f"bad direction {text!r}") from exc
    if len(parts) != 3:
        raise FormatError("direction needs three comma-separated rationals")
    return tuple(parts)


def cmd_hv(args) -> int:
    F = formats.any_poly_from_json(formats.load(args.input))
    if not isinstance(F, TernaryForm):
        raise FormatError("hv expects a form in X, Y, Z")
    e = _parse_direction(args.e)
    if F(*e) == 0 or not is_hyperbolic(F, e):
        print(f"not hyperbolic with respect to {args.e}", file=sys.stderr)
        return EXIT_FALSE
    try:
        pen = hv_represent(F, e, search_bound=args.search_bound,
                           hint=formats.witness_from_json(formats.load(args.hint)) if args.hint else None)
    except NotConstructive as exc:
        print(f"NotConstructive: {exc}", file=sys.stderr)
        return EXIT_ERROR
    doc = formats.pencil_to_json(pen)
    doc["verified"] = verify_pencil(F, pen, tol=args.numeric_tol)
    _emit(doc, args.out)
    return EXIT_OK if doc["verified"] else EXIT_ERROR


def _run_job(argv: list) -> int:
    return main(argv)


def cmd_batch(args) -> int:
    """Run a manifest ``{"jobs": [[argv...], ...]}``; the exit code is the worst job's code."""
    manifest = formats.load(args.manifest)
    try:
        jobs = [list(map(str, j)) for j in manifest["jobs"]]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed manifest: {exc}") from exc
    if any(j and j[0] == "batch" for j in jobs):
        raise FormatError("nested batch jobs are not allowed")
    if args.jobs <= 1:
        codes = [_run_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            codes = list(pool.map(_run_job, jobs))
    _emit({"jobs": [{"argv": j, "exit": c} for j, c in zip(jobs, codes)]}, args.out)
    return max(codes, default=EXIT_OK)


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hypdet", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("--input", required=True, help="polynomial JSON file")
        sp.add_argument("--out", help="write the JSON result here instead of stdout")
        return sp

    sp = common(sub.add_parser("certify", help="certify T-real-rootedness"))
    sp.add_argument("--plot-data", help="write sampled root trajectories to this file")
    sp.set_defaults(func=cmd_certify)

    sp = common(sub.add_parser("perturb", help="smooth strictly real-rooted approximation"))
    sp.add_argument("--k", type=int)
    sp.add_argument("--epsilon", default=str(DEFAULT_EPSILON))
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--plot-data")
    sp.set_defaults(func=cmd_perturb)

    sp = common(sub.add_parser("hermite", help="Hermite matrix of f"))
    sp.set_defaults(func=cmd_hermite)

    sp = common(sub.add_parser("represent", help="symmetric determinantal representation"))
    sp.add_argument("--k", type=int)
    sp.add_argument("--hint", help="ideal witness JSON for a factor of degree >= 3")
    sp.add_argument("--search-bound", type=int, help="enable the bounded witness search")
    sp.set_defaults(func=cmd_represent)

    sp = common(sub.add_parser("verify", help="check f = det(T*I - A)"), needs_input=False)
    sp.add_argument("--poly", "--input", dest="poly", required=True)
    sp.add_argument("--rep", required=True)
    sp.add_argument("--k", type=int)
    sp.add_argument("--numeric-tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_verify)

    sp = common(sub.add_parser("hv", help="definite pencil for a hyperbolic ternary form"))
    sp.add_argument("--e", default="0,0,1", help="direction as x,y,z")
    sp.add_argument("--hint")
    sp.add_argument("--search-bound", type=int)
    sp.add_argument("--numeric-tol", type=float, default=1e-10)
    sp.set_defaults(func=cmd_hv)

    sp = common(sub.add_parser("batch", help="run a manifest of jobs"), needs_input=False)
    sp.add_argument("--manifest", required=True)
    sp.add_argument("--jobs", type=int, default=1)
    sp.set_defaults(func=cmd_batch)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_FORMAT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    try:
        return args.func(args)
    except (FormatError, json.JSONDecodeError, FileNotFoundError, NotMonicError) as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except NotSymmetric as exc:
        print(f"verification error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (NotHyperbolic, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
