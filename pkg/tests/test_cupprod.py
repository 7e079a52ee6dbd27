from __future__ import annotations

import dataclasses
from fractions import Fraction

import pytest
import sympy

from chenruan.cupprod import (ResidueError, c_ab, c_I_beta, compute_J, fit_residue_constant, graded_dims,
                              ideal_quotient, jacobian_data, pairing_value, polytope_volume,
                              quintic_cup_product, quotient_contains, residue_constant, residue_context)
from chenruan.fixtures import QUINTIC_RAYS, quintic_polynomial
from chenruan.groebner import groebner_basis, in_ideal
from chenruan.polynomial import ChowGrading, GradedPoly, variables


@pytest.fixture(scope="module")
def quintic_data():
    f = quintic_polynomial(1)
    return f, jacobian_data(f), residue_context(f, QUINTIC_RAYS, (1, 1, 1, 1, 1))


def test_ideal_quotient_trivial_cases():
    x, y = GradedPoly.gens(("x", "y"))
    one = GradedPoly.constant(("x", "y"), 1)
    assert ideal_quotient([x ** 2], x) == [x]
    assert sorted(p.to_str() for p in ideal_quotient([x, y], one)) == ["x", "y"]
    assert ideal_quotient([x * (x + y)], x + y) == [x]


def test_ideal_quotient_routes_agree():
    """Monomial fast route and the elimination route give the same reduced basis."""
    from chenruan.cupprod import _quotient_by_elimination
    x, y, z = GradedPoly.gens(("x", "y", "z"))
    gens = [x ** 2 * y - z ** 3, x * y * z, y ** 3 - x * z ** 2]
    h = x * y
    fast = ideal_quotient(gens, h)
    slow = groebner_basis(_quotient_by_elimination(gens, h), "grevlex")
    assert fast == slow
    assert quotient_contains(groebner_basis(gens), fast, h)


def test_ideal_quotient_against_sympy_saturation_free_check():
    """g in I : h  iff  g h in I, checked with sympy's reduction on a handful of candidates."""
    x, y, z = GradedPoly.gens(("x", "y", "z"))
    gens = [x ** 3 - y * z ** 2, x * y ** 2 - z ** 3]
    h = x * y * z
    J = ideal_quotient(gens, h)
    syms = sympy.symbols("x y z")
    G = sympy.groebner([sympy.sympify(g.to_str().replace("^", "**")) for g in gens], *syms, order="grevlex")
    for g in J:
        prod = sympy.sympify((g * h).to_str().replace("^", "**"))
        assert G.reduce(prod)[1] == 0


def test_quintic_J_matches_display():
    f = quintic_polynomial(Fraction(3, 2))
    J, c = compute_J(f, range(5), QUINTIC_RAYS, (1, 1, 1, 1, 1))
    assert c == 625 or c == -625
    xs = GradedPoly.gens(f.vars, f.grading)
    m = xs[0] * xs[1] * xs[2] * xs[3] * xs[4]
    expected = 25 * m ** 4
    for i in range(5):
        hat = GradedPoly.constant(f.vars, 1)
        for j in range(5):
            if j != i:
                hat = hat * xs[j]
        expected = expected + Fraction(3, 2) * hat ** 5
    assert J == expected


def test_c_I_independent_of_representative():
    assert abs(c_I_beta(QUINTIC_RAYS, (1, 1, 1, 1, 1), range(5))) == 625
    assert abs(c_I_beta(QUINTIC_RAYS, (0, 0, 0, 0, 5), range(5))) == 625
    with pytest.raises(ResidueError):
        compute_J(quintic_polynomial(1), range(4), QUINTIC_RAYS, (1, 1, 1, 1, 1))


def test_projective_line_J_oracle():
    rays = ((1,), (-1,))
    g = ChowGrading(rays)
    f = GradedPoly.parse("x1^2 + x2^2", variables(2), g)
    J, c = compute_J(f, (0, 1), rays, (1, 1))
    # F_j = 2 x_j^2, d F_j/ d x_j = 4 x_j; det = 16 x1 x2; (c_I^beta)^2 = 4
    assert abs(c) == 2
    assert J == GradedPoly.parse("4*x1*x2", variables(2), g)


def test_polytope_volumes():
    assert polytope_volume(QUINTIC_RAYS, (1, 1, 1, 1, 1)) == Fraction(5, 24)
    square = ((1, 0), (0, 1), (-1, 0), (0, -1))
    assert polytope_volume(square, (1, 1, 1, 1)) == 4
    assert polytope_volume(square, (2, 1, 0, 1)) == 4
    assert polytope_volume(((1,), (-1,)), (1, 1)) == 2


def test_c_ab_values():
    assert c_ab(0, 3, 4) == Fraction(-1, 6)
    assert c_ab(1, 2, 4) == Fraction(1, 2)


def test_residue_constant_and_pairings(quintic_data):
    f, data, ctx = quintic_data
    xs = GradedPoly.gens(f.vars, f.grading)
    m = xs[0] * xs[1] * xs[2] * xs[3] * xs[4]
    one = GradedPoly.constant(f.vars, 1, f.grading)
    c = residue_constant(one, m ** 3, ctx, data)
    assert c * 3126 == 125
    p03 = pairing_value(c, 0, 3, ctx)
    p12 = pairing_value(c, 1, 2, ctx)
    assert p03.pi_power == 4 and p03.imaginary_power == 0
    assert p03.coefficient * 3126 == Fraction(-5000, 3)
    assert p12.coefficient * 3126 == 5000
    assert pairing_value(Fraction(0), 0, 3, ctx).coefficient == 0
    with pytest.raises(ResidueError):
        pairing_value(c, 1, 1, ctx)


def test_residue_constant_trivial_cases(quintic_data):
    f, data, ctx = quintic_data
    xs = GradedPoly.gens(f.vars, f.grading)
    m = xs[0] * xs[1] * xs[2] * xs[3] * xs[4]
    one = GradedPoly.constant(f.vars, 1, f.grading)
    same = dataclasses.replace(ctx, J=m ** 4)
    assert residue_constant(one, m ** 3, same, data) == 1
    F1 = xs[0] * f.diff(0)
    F2 = xs[1] * f.diff(1)
    assert residue_constant(one, m ** 2 * (F1 - F2), ctx, data) == 0
    with pytest.raises(ResidueError):
        residue_constant(one, m ** 2, ctx, data)


def test_graded_dims_and_symmetry(quintic_data):
    f, data, _ = quintic_data
    dims = graded_dims(data, [(k,) * 5 for k in range(4)])
    assert dims == [1, 1, 1, 1]
    assert dims[0] == dims[3] and dims[1] == dims[2]
    m = GradedPoly.monomial(f.vars, (1, 1, 1, 1, 1))
    assert quotient_contains(data.F_basis, data.J1_basis, m)


def test_orders_agree():
    a = quintic_cup_product(2, "grevlex")
    b = quintic_cup_product(2, "lex")
    assert a.c == b.c and a.graded_dims == b.graded_dims


def test_fit_over_specializations():
    fit = fit_residue_constant((1, 2, 3, 7))
    assert fit.ok and fit.numerator == 125
    assert all(c * (p ** 5 + 3125) == 125 for p, c in fit.values.items())


def test_degenerate_psi_rejected():
    with pytest.raises(ValueError):
        quintic_cup_product(-5)


def test_subset_independence_on_p1xp1():
    rays = ((1, 0), (0, 1), (-1, 0), (0, -1))
    g = ChowGrading(rays)
    V = variables(4)
    f = GradedPoly.parse("x1^2*x2^2 + x3^2*x4^2 + 2*x1^2*x4^2 + 3*x3^2*x2^2 + x1*x2*x3*x4", V, g)
    data = jacobian_data(f)
    one = GradedPoly.constant(V, 1, g)
    m = GradedPoly.monomial(V, (1, 1, 1, 1), grading=g)
    values = {residue_constant(one, m, residue_context(f, rays, (1, 1, 1, 1), I), data)
              for I in [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]}
    assert len(values) == 1 and values != {0}
    assert all(in_ideal(m * q, data.F_basis) for q in data.J1_basis)
