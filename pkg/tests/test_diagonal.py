import math
import random
from fractions import Fraction

import numpy as np
import pytest

from _gen import X, elementary_unimodular, rand_symmetric
from hypdet import matrix as pm
from hypdet.diagonal import (CertificateError, DSymCertificate, NotUnimodular, OrthoResult,
                             orthogonal_basis, positivity_check, symmetrize)
from hypdet.quotient import GramForm


def _check(G, r):
    Q = r.rows()
    assert pm.matmul(pm.transpose(Q), pm.matmul(pm.pmat(G), Q)) == pm.diag(list(r.diag))
    assert all(v != 0 for v in r.diag)


def random_unimodular_gram(rng, n, deg=3):
    P = elementary_unimodular(rng, n, deg, rng.randint(2, 6))
    D = [Fraction(rng.choice([-3, -2, -1, 1, 2, 3, 5]), rng.choice([1, 2, 3])) for _ in range(n)]
    return pm.matmul(pm.transpose(P), pm.matmul(pm.diag(D), P))


class TestOrthogonalBasis:
    def test_identity(self):
        r = orthogonal_basis(pm.identity(3))
        assert r.rows() == pm.identity(3) and r.diag == (1, 1, 1)

    def test_hyperbolic_plane(self):
        r = orthogonal_basis([[0, 1], [1, 0]])
        assert sorted(r.diag) == [-2, 2]
        cols = r.columns()
        want = pm.pmat([[1, 1], [1, -1]])
        assert cols == want or cols == want[::-1]
        _check([[0, 1], [1, 0]], r)

    def test_polynomial_entry(self):
        G = pm.pmat([[0, 1], [1, X]])
        r = orthogonal_basis(GramForm.from_rows(G))
        _check(G, r)
        assert all(isinstance(v, Fraction) for v in r.diag)

    def test_rejects_non_unimodular(self):
        with pytest.raises(NotUnimodular):
            orthogonal_basis(pm.pmat([[2, 0], [0, X * 2]]))

    def test_random_unimodular_forms(self):
        rng = random.Random(60)
        for _ in range(30):
            n = rng.randint(1, 4)
            G = random_unimodular_gram(rng, n)
            r = orthogonal_basis(G)
            _check(G, r)
            assert math.prod(r.diag) == pm.det(G) * pm.det(r.rows()) ** 2

    def test_signature_is_preserved(self):
        """Sylvester's law: the sign pattern of D survives any P over Q[X]."""
        rng = random.Random(61)
        for _ in range(15):
            n = rng.randint(1, 4)
            P = elementary_unimodular(rng, n, 2)
            D = [rng.choice([-2, -1, 1, 3]) for _ in range(n)]
            G = pm.matmul(pm.transpose(P), pm.matmul(pm.diag(D), P))
            r = orthogonal_basis(G)
            assert sum(v > 0 for v in r.diag) == sum(v > 0 for v in D)


class TestPositivity:
    def test_examples(self):
        assert positivity_check(OrthoResult(tuple(map(tuple, pm.identity(2))), (Fraction(1), Fraction(2))))
        assert not positivity_check(OrthoResult(tuple(map(tuple, pm.identity(2))), (Fraction(2), Fraction(-2))))


class TestSymmetrize:
    def test_symmetric_input(self):
        M = pm.pmat([[X, 1], [1, -X]])
        cert, num = symmetrize(M, (1, 1))
        assert cert.rows() == M
        assert np.allclose(cert.numeric_at(2.0), [[2, 1], [1, -2]])

    def test_scaled_example(self):
        cert, num = symmetrize([[0, 2], [1, 0]], (1, 2))
        A = cert.numeric_at(0.0)
        assert np.allclose(A, [[0, math.sqrt(2)], [math.sqrt(2), 0]])
        DM = pm.matmul(pm.diag(list(cert.D)), cert.rows())
        assert DM == pm.pmat([[0, 2], [2, 0]])

    def test_rejects_broken_identity(self):
        with pytest.raises(CertificateError):
            symmetrize([[0, X], [1, 0]], (1, 1))
        with pytest.raises(CertificateError):
            DSymCertificate([[1]], (0,))

    def test_numeric_matrix_is_symmetric_with_matching_charpoly(self):
        rng = random.Random(62)
        for _ in range(10):
            n = rng.randint(1, 4)
            S = rand_symmetric(rng, n, 2, 3)
            D = [Fraction(rng.randint(1, 5), rng.randint(1, 3)) for _ in range(n)]
            # M = D^-1 S satisfies D M = S = M^T D
            M = [[S[i][j] * (1 / D[i]) for j in range(n)] for i in range(n)]
            cert, _ = symmetrize(M, D)
            cp = cert.charpoly()
            for x in np.linspace(-3, 3, 10):
                A = cert.numeric_at(x)
                assert np.allclose(A, A.T, atol=1e-12)
                got = np.poly(A)
                want = [float(cp.coeff_t(n - i)(Fraction(x))) for i in range(n + 1)]
                scale = max(1.0, max(abs(w) for w in want))
                assert np.max(np.abs(got - want)) <= 1e-10 * scale
