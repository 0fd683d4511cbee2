import random
from fractions import Fraction

import pytest
import sympy

from _gen import X, rand_monic
from hypdet import matrix as pm
from hypdet.hermite import SymMatrixPoly, hermite_matrix, pd_on_line, power_sums
from hypdet.poly import BiPoly, squarefree_part
from hypdet.univariate import sturm_count

T = BiPoly.T()
BX = BiPoly.X()


def test_quadratic_closed_forms():
    a = X ** 2 + 3
    assert hermite_matrix(T ** 2 - BiPoly([a])).rows() == [[2, 0], [0, a * 2]]
    p, q = X + 1, X * 2 - 5
    H = hermite_matrix(T ** 2 + T * BiPoly([p]) + BiPoly([q])).rows()
    assert H == [[2, -p], [-p, p * p - q * 2]]


def test_cubic_exact():
    assert hermite_matrix(T ** 3 - T).rows() == pm.pmat([[3, 0, 2], [0, 2, 0], [2, 0, 2]])


def test_pd_on_line_examples():
    assert pd_on_line(hermite_matrix(T ** 2 - BX ** 2 - 1))
    assert not pd_on_line(hermite_matrix(T ** 2 - BX ** 2))
    assert not pd_on_line(hermite_matrix(T ** 2 + 1))


def test_symmetry_enforced():
    with pytest.raises(ValueError):
        SymMatrixPoly([[1, 2], [3, 4]])


def _random_cases(n, seed):
    rng = random.Random(seed)
    for _ in range(n):
        yield rand_monic(rng, rng.randint(1, 5), 2, 6), Fraction(rng.randint(-9, 9), rng.randint(1, 4))


def test_specialisation_commutes():
    for f, x0 in _random_cases(50, 21):
        fx = BiPoly.from_uni_t(f.eval_x(x0))
        assert hermite_matrix(f).at(x0) == hermite_matrix(fx).at(0)


def _sign_changes(cs):
    signs = [c > 0 for c in cs if c != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _inertia(M):
    """Exact inertia: a symmetric matrix has a real-rooted characteristic polynomial, so
    Descartes' rule of signs counts positive and negative eigenvalues exactly."""
    lam = sympy.Symbol("lam")
    cp = M.charpoly(lam).all_coeffs()
    n = len(cp) - 1
    neg_cp = [c * (-1) ** (n - i) for i, c in enumerate(cp)]
    return _sign_changes(cp), _sign_changes(neg_cp)


def test_signature_and_rank_count_roots():
    for f, x0 in _random_cases(50, 22):
        M = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row]
                          for row in hermite_matrix(f).at(x0)])
        pos, neg = _inertia(M)
        p = f.eval_x(x0)
        core = squarefree_part(p)
        assert pos - neg == sturm_count(core)
        assert M.rank() == core.degree


def test_first_entry_is_degree_and_translation_invariance():
    rng = random.Random(9)
    for _ in range(20):
        f = rand_monic(rng, rng.randint(1, 4), 2, 5)
        H = hermite_matrix(f)
        assert H.entries[0][0] == f.degree_t
        shifted = f.shift_x(Fraction(3))
        Hs = hermite_matrix(shifted).rows()
        assert Hs == [[v.shift(Fraction(3)) for v in row] for row in H.rows()]


def test_power_sums_match_roots():
    f = (T - 1) * (T + 2) * (T - 3)
    ps = power_sums(f, 5)
    roots = [1, -2, 3]
    assert [p.const_value() for p in ps] == [sum(r ** m for r in roots) for m in range(5)]
