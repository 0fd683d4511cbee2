import random

import pytest

from _gen import X, elementary_unimodular, rand_monic, rand_uni
from hypdet import matrix as pm
from hypdet.poly import BiPoly, RatFunc
from hypdet.ideals import (IdealWitness, NotSModule, RankError, candidate_ideals, ideal_mul,
                           module_canonical, module_of, mult_alpha_matrix, principal, unit_ideal,
                           verify_square, witness_candidates)
from hypdet.quotient import QuotElem, beta_gram, derivative_element, is_separable, std_basis

T = BiPoly.T()
BX = BiPoly.X()
F = T ** 2 - BX


def el(f, *coords):
    return QuotElem(list(coords), f)


def _rand_elem(rng, f, deg=1, height=3):
    while True:
        g = el(f, *[rand_uni(rng, rng.randint(0, deg), height) for _ in range(f.degree_t)])
        if not g.is_zero():
            return g


def _rand_ideal(rng, f):
    gens = [_rand_elem(rng, f) for _ in range(rng.randint(1, 2))]
    return module_of(gens, ideal=True)


def _random_field(rng, max_d=3):
    """Random monic f with L a field (irreducible), so random elements are invertible."""
    from hypdet.poly import factor_irreducible
    while True:
        f = rand_monic(rng, rng.randint(2, max_d), 1, 4)
        if factor_irreducible(f) == [(f, 1)]:
            return f


class TestCanonicalForm:
    def test_examples(self):
        a = QuotElem.alpha(F)
        one = QuotElem.one(F)
        assert module_canonical([one, a, el(F, 2)]) == [one, a]
        got = module_canonical([el(F, X), a, el(F, 0, X)])
        assert module_of(got) == module_of([el(F, X), a])
        g = el(F, X + 1, 1)
        assert module_of([g], ideal=True) == module_of([g, g * a])

    def test_idempotent(self):
        rng = random.Random(50)
        for _ in range(15):
            f = _random_field(rng)
            I = _rand_ideal(rng, f)
            assert module_of(I.basis()) == I
            assert module_canonical(module_canonical(I.basis())) == module_canonical(I.basis())

    def test_basis_independent(self):
        rng = random.Random(51)
        for _ in range(15):
            f = _random_field(rng)
            I = _rand_ideal(rng, f)
            B = I.basis()
            P = elementary_unimodular(rng, len(B), 2)
            recombined = [sum((B[i] * RatFunc(P[i][j]) for i in range(len(B))), QuotElem.one(f) * 0)
                          for j in range(len(B))]
            assert module_of(recombined) == I

    def test_rank_deficient(self):
        with pytest.raises(RankError):
            module_of([QuotElem.one(F)])


class TestProducts:
    def test_examples(self):
        a = QuotElem.alpha(F)
        I = module_of([el(F, X), a], ideal=True)
        assert ideal_mul(unit_ideal(F), I) == I
        assert principal(a) * principal(a) == principal(el(F, X))
        assert I * I == principal(el(F, X))
        assert I == principal(a)

    def test_commutative_and_associative(self):
        rng = random.Random(52)
        for _ in range(10):
            f = _random_field(rng)
            I, J, K = (_rand_ideal(rng, f) for _ in range(3))
            assert I * J == J * I
            assert (I * J) * K == I * (J * K)

    def test_principal_products(self):
        rng = random.Random(53)
        for _ in range(15):
            f = _random_field(rng)
            g, h = _rand_elem(rng, f), _rand_elem(rng, f)
            assert principal(g) * principal(h) == principal(g * h)

    def test_fractional_principal(self):
        a = QuotElem.alpha(F)
        inv = principal(a.inverse())
        assert not inv.is_integral()
        assert inv * principal(a) == unit_ideal(F)


class TestMultAlpha:
    def test_examples(self):
        assert mult_alpha_matrix(std_basis(F)) == pm.pmat([[0, X], [1, 0]])
        g = T ** 3 - T
        assert mult_alpha_matrix(std_basis(g)) == pm.pmat([[0, 0, 0], [1, 0, 1], [0, 1, 0]])
        M = mult_alpha_matrix([el(F, X), QuotElem.alpha(F)])
        assert pm.charpoly(M) == F

    def test_not_s_module(self):
        with pytest.raises(NotSModule):
            mult_alpha_matrix([el(F, X), el(F, 0, 1) * RatFunc(1, X)])

    def test_charpoly_recovers_modulus(self):
        rng = random.Random(54)
        for _ in range(15):
            f = _random_field(rng)
            I = _rand_ideal(rng, f)
            assert pm.charpoly(mult_alpha_matrix(I.basis())) == f


class TestSquareWitness:
    def test_examples(self):
        one, a = QuotElem.one(F), QuotElem.alpha(F)
        unit = unit_ideal(F)
        assert verify_square(IdealWitness.from_module(unit, a * 2))
        assert not verify_square(IdealWitness.from_module(unit, one))
        assert verify_square(IdealWitness.from_module(principal(a), a ** 3 * 2))

    def test_witness_rejects_bad_shapes(self):
        with pytest.raises(ValueError):
            IdealWitness(F, tuple(std_basis(F)), QuotElem.one(F) * 0)
        with pytest.raises(RankError):
            IdealWitness(F, (QuotElem.one(F),), QuotElem.one(F))

    def test_candidates_are_s_ideals(self):
        f = T ** 3 - BX * T ** 2 - 2 * T + BX
        for I in candidate_ideals(f):
            assert pm.charpoly(mult_alpha_matrix(I.basis())) == f

    @pytest.mark.parametrize("f", [T ** 2 - BX * T - 1, T ** 2 - BX ** 2 - 1])
    def test_search_finds_quadratic_witnesses(self, f):
        w = next(witness_candidates(f))
        assert verify_square(w)

    def test_square_implies_unimodular_gram(self):
        count = 0
        for f in (T ** 2 - BX * T - 1, T ** 2 - BX ** 2 - 1, T ** 2 - BX, T ** 3 - BX * T ** 2 - 2 * T + BX):
            for i, w in enumerate(witness_candidates(f)):
                G = beta_gram(list(w.basis), w.c)
                assert G.unimodular
                count += 1
                if i >= 2:
                    break
        assert count >= 4

    def test_principal_witnesses_from_derivative(self):
        """``(g)`` with ``c = f'(alpha) g^2`` is always a witness."""
        rng = random.Random(55)
        for _ in range(8):
            f = _random_field(rng)
            if not is_separable(f):
                continue
            g = _rand_elem(rng, f)
            w = IdealWitness.from_module(principal(g), derivative_element(f) * g * g)
            assert verify_square(w)
            assert beta_gram(list(w.basis), w.c).unimodular
