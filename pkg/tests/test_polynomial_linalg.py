from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy

from chenruan import linalg
from chenruan.fixtures import QUINTIC_RAYS, quintic_grading, quintic_polynomial
from chenruan.polynomial import GradedPoly, random_poly, variables


def test_parse_roundtrip_and_arithmetic():
    names = ("x", "y")
    p = GradedPoly.parse("3*x^2*y - 1/2*y + 4", names)
    x, y = GradedPoly.gens(names)
    assert p == 3 * x ** 2 * y - Fraction(1, 2) * y + 4
    assert GradedPoly.parse(p.to_str(), names) == p
    assert p.diff(0) == 6 * x * y
    assert p.evaluate([2, 2]) == Fraction(27)


def test_ring_axioms_random():
    rng = random.Random(3)
    names = variables(3)
    for _ in range(30):
        a, b, c = (random_poly(rng, names, 3, 4) for _ in range(3))
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a - a == GradedPoly.constant(names, 0)


def test_quintic_grading_classes():
    g = quintic_grading()
    assert g.weights == (1, 1, 1, 1, 1)
    # x1^5 and x1 x2 x3 x4 x5 have the same class; x1^5 and x2^5 too; x1^4 x2 does not
    assert g.same_class((5, 0, 0, 0, 0), (1, 1, 1, 1, 1))
    assert g.same_class((5, 0, 0, 0, 0), (0, 5, 0, 0, 0))
    assert not g.same_class((4, 1, 0, 0, 0), (1, 1, 1, 1, 1))
    # degree-5 monomials in the class of beta: exponents congruent mod 5 (sympy count oracle)
    mons = g.monomials_in_class((1, 1, 1, 1, 1))
    assert all(len({e % 5 for e in m}) == 1 for m in mons)
    assert len(mons) == 6
    assert quintic_polynomial(2).is_homogeneous()


def test_det_inverse_charpoly_against_sympy():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 5)
        M = [[Fraction(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
        S = sympy.Matrix(M)
        assert linalg.det(M) == Fraction(str(S.det()))
        cp = linalg.charpoly(M)
        ref = S.charpoly().all_coeffs()[::-1]
        assert [Fraction(str(c)) for c in ref] == cp
        if S.det() != 0:
            inv = linalg.inverse(M)
            assert linalg.matmul(M, inv) == linalg.identity(n)


def test_nullspace_and_rank():
    M = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    M = [[Fraction(x) for x in r] for r in M]
    assert linalg.rank(M) == 2
    (v,) = linalg.nullspace(M)
    assert linalg.matvec(M, v) == [0, 0, 0]
    assert linalg.solve(M, [1, 1, 1]) is None


def test_integer_kernel_of_quintic_rays():
    cols = [[QUINTIC_RAYS[j][i] for j in range(5)] for i in range(4)]
    (k,) = linalg.integer_kernel(cols)
    assert sorted(abs(x) for x in k) == [1, 1, 1, 1, 1]


@pytest.mark.parametrize("seed", range(3))
def test_kron_shape_and_mixed_product(seed):
    rng = random.Random(seed)
    A = [[Fraction(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
    B = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
    C = [[Fraction(rng.randint(-3, 3)) for _ in range(2)] for _ in range(2)]
    D = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(3)]
    lhs = linalg.matmul(linalg.kron(A, B), linalg.kron(C, D))
    assert lhs == linalg.kron(linalg.matmul(A, C), linalg.matmul(B, D))


def test_integer_solve():
    rng = random.Random(9)
    for _ in range(50):
        M = [[rng.randint(-6, 6) for _ in range(4)] for _ in range(2)]
        x = [rng.randint(-5, 5) for _ in range(4)]
        b = [sum(a * y for a, y in zip(r, x)) for r in M]
        sol = linalg.integer_solve(M, b)
        assert sol is not None and [sum(a * y for a, y in zip(r, sol)) for r in M] == b
    assert linalg.integer_solve([[2, 4]], [3]) is None
    assert linalg.integer_solve([[1, 0], [1, 0]], [1, 2]) is None
