import json
import random

import numpy as np
import pytest

from _gen import X, rand_symmetric, rand_uni
from hypdet import formats
from hypdet import matrix as pm
from hypdet.detrep import (DSYM, EXACT, NUMERIC, NegativeSomewhere, NoExactSplit, NotConstructive,
                           NotHyperbolic, NotSymmetric, WitnessRejected, hv_represent, represent,
                           search_witness, two_squares, two_squares_numeric, verify_pencil,
                           verify_representation, witness_block)
from hypdet.ideals import IdealWitness, unit_ideal
from hypdet.poly import BiPoly, TernaryForm, UniPoly, grading_member
from hypdet.quotient import QuotElem

T = BiPoly.T()
BX = BiPoly.X()
CUBIC = T ** 3 - BX * T ** 2 - 2 * T + BX


class TestTwoSquares:
    def test_examples(self):
        assert two_squares(X ** 2 * 4 + 4) == (X * 2, UniPoly.const(2))
        assert two_squares(X ** 4 + X ** 2 * 2 + 1) == (X ** 2 + 1, UniPoly.const(0))
        assert two_squares(UniPoly.const(2)) == (UniPoly.const(1), UniPoly.const(1))

    def test_negative_somewhere(self):
        with pytest.raises(NegativeSomewhere) as info:
            two_squares(X ** 2 - 1)
        assert (X ** 2 - 1)(info.value.x) < 0

    def test_no_rational_split(self):
        with pytest.raises(NoExactSplit):
            two_squares(X ** 2 + 2)
        with pytest.raises(NoExactSplit):
            two_squares(UniPoly.const(3))
        s, t, residual = two_squares_numeric(X ** 2 + 2)
        assert residual < 1e-12

    def test_random_sums_of_squares(self):
        rng = random.Random(70)
        for _ in range(30):
            a, b = rand_uni(rng, rng.randint(0, 3), 4), rand_uni(rng, rng.randint(0, 3), 4)
            p = a * a + b * b
            s, t = two_squares(p)
            assert s * s + t * t == p


class TestRepresent:
    def test_linear_factor(self):
        g = X ** 2 - 3
        rep = represent(T - BiPoly([g]), 2, 1)
        assert rep.matrix() == [[g]]

    def test_conic(self):
        rep = represent(T ** 2 - BX ** 2 - 1, 1, 2)
        assert rep.kind == EXACT
        assert rep.matrix() == pm.pmat([[X, 1], [1, -X]])

    def test_reducible_cubic(self):
        f = T * (T ** 2 - BX ** 2 - 1)
        rep = represent(f, 1, 3)
        assert verify_representation(f, rep, 1, 3)
        assert sorted(str(b["factor"]) for b in rep.provenance["factors"]) == sorted(
            [str(T), str(T ** 2 - BX ** 2 - 1)])
        assert pm.charpoly(rep.matrix()) == f

    def test_irreducible_cubic_without_hint(self):
        with pytest.raises(NotConstructive):
            represent(CUBIC, 1, 3)

    def test_irreducible_cubic_by_search(self):
        rep = represent(CUBIC, 1, 3, search_bound=1)
        assert rep.kind == DSYM
        assert rep.payload.holds() and all(v > 0 for v in rep.payload.D)
        assert verify_representation(CUBIC, rep, 1, 3)
        assert rep.max_entry_degree() <= 1

    def test_hint_round_trips_through_json(self):
        w = search_witness(CUBIC)
        doc = json.loads(json.dumps(formats.witness_to_json(w)))
        hint = formats.witness_from_json(doc)
        rep = represent(CUBIC, 1, 3, hint=hint)
        assert verify_representation(CUBIC, rep, 1, 3)

    def test_bad_witness_rejected(self):
        w = IdealWitness.from_module(unit_ideal(CUBIC), QuotElem.one(CUBIC))
        with pytest.raises(WitnessRejected):
            witness_block(w)

    def test_numeric_fallback(self):
        f = T ** 2 - BX ** 2 - 2
        rep = represent(f, 1, 2)
        assert rep.kind == NUMERIC
        assert rep.provenance["factors"][0]["exact"] is False
        assert verify_representation(f, rep, 1, 2)
        with pytest.raises(NoExactSplit):
            represent(f, 1, 2, numeric_ok=False)

    def test_preconditions(self):
        with pytest.raises(ValueError):
            represent(T ** 2 + BX ** 2 + 1, 1, 2)
        with pytest.raises(ValueError):
            represent(T ** 2 - BX ** 3, 1, 2)

    def test_round_trip_on_random_products(self):
        rng = random.Random(71)
        done = 0
        while done < 20:
            k = rng.randint(1, 2)
            blocks = [rand_symmetric(rng, rng.randint(1, 2), k, 3) for _ in range(rng.randint(1, 2))]
            f = pm.charpoly(pm.block_diag(blocks))
            d = f.degree_t
            rep = represent(f, k, d)
            assert verify_representation(f, rep, k, d)
            if rep.kind != NUMERIC:
                assert pm.max_degree(rep.matrix()) <= k
            done += 1


class TestVerify:
    def test_examples(self):
        f = T ** 2 - BX ** 2 - 1
        assert verify_representation(f, [[X, 1], [1, -X]], 1, 2)
        with pytest.raises(NotSymmetric):
            verify_representation(f, [[X, 1], [0, -X]], 1, 2)
        assert not verify_representation(T ** 2 - BX ** 2, [[X, 1], [1, -X]], 1, 2)


class TestDegreeLaw:
    def test_easy_inclusion(self):
        rng = random.Random(72)
        for _ in range(50):
            d, k = rng.randint(1, 5), rng.randint(0, 3)
            A = rand_symmetric(rng, d, k, 3)
            assert grading_member(pm.charpoly(A), k, d)

    def test_converse_fails_for_a_high_degree_entry(self):
        rng = random.Random(73)
        failures = 0
        for _ in range(50):
            d, k = rng.randint(1, 4), rng.randint(0, 2)
            A = rand_symmetric(rng, d, k, 3)
            i, j = rng.randrange(d), rng.randrange(d)
            bump = X ** (k + 1) * rng.choice([-2, -1, 1, 2])
            A[i][j] = A[i][j] + bump
            A[j][i] = A[i][j]
            if not grading_member(pm.charpoly(A), k, d):
                failures += 1
        assert failures > 0

    def test_block_charpoly_is_product(self):
        rng = random.Random(74)
        for _ in range(20):
            blocks = [rand_symmetric(rng, rng.randint(1, 3), 2, 3) for _ in range(rng.randint(1, 3))]
            prod = BiPoly([UniPoly.const(1)])
            for b in blocks:
                prod = prod * pm.charpoly(b)
            assert pm.charpoly(pm.block_diag(blocks)) == prod


class TestPencils:
    def test_lorentz_cone(self):
        F = TernaryForm.parse("Z^2 - X^2 - Y^2")
        pen = hv_represent(F, (0, 0, 1))
        assert pen.exact
        assert pen.determinant_form() == F
        assert pen.pd_at_e() and verify_pencil(F, pen)

    def test_product_of_coordinates(self):
        F = TernaryForm.parse("X*Y*Z")
        pen = hv_represent(F, (1, 1, 1))
        assert verify_pencil(F, pen)

    def test_cubic_form_by_search(self):
        F = TernaryForm.parse("Z^3 - X*Z^2 - 2*Y^2*Z + X*Y^2")
        pen = hv_represent(F, (0, 0, 1), search_bound=1)
        assert verify_pencil(F, pen)

    def test_not_hyperbolic(self):
        with pytest.raises(NotHyperbolic):
            hv_represent(TernaryForm.parse("X^2 + Y^2 + Z^2"), (0, 0, 1))

    def test_pencil_restricted_to_lines_is_real_rooted(self):
        rng = np.random.default_rng(75)
        for text, e in [("Z^2 - X^2 - Y^2", (0, 0, 1)), ("X*Y*Z", (1, 1, 1)),
                        ("(X + 2*Y + Z) * (X - Y + 3*Z) * (2*X + Y + Z)", (1, 1, 1)),
                        ("Z^2 - 3*X^2 - Y^2", (0, 0, 1))]:
            F = TernaryForm.parse(text)
            pen = hv_represent(F, e)
            assert verify_pencil(F, pen)
            Ae = np.array(pen.at(e), dtype=float)
            for _ in range(10):
                Aw = np.array(pen.at(list(rng.normal(size=3))), dtype=float)
                lam = np.linalg.eigvals(np.linalg.solve(Ae, Aw))
                assert np.max(np.abs(lam.imag)) < 1e-8
