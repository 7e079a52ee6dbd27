from __future__ import annotations

import random
from fractions import Fraction

import pytest

from chenruan.fixtures import quintic_polynomial
from chenruan.localization import (EquivariantWeight, LocalizationError, attach, curve_sector_localization,
                                   fixed_points, intersection_check_eta_cubed, line_bundle_weights,
                                   localized_integral, shift_lift)
from chenruan.toric import Fan, quotient_fan

REFERENCE_BASIS = [(1, 1, 0, 3), (0, 0, 1, -1)]
F = Fraction


def W(a, b):
    return EquivariantWeight((F(a), F(b)))


@pytest.fixture(scope="module")
def q(quintic):
    return quotient_fan(quintic.cone((0, 1)), quintic, m_basis=REFERENCE_BASIS)


def by_cone(data):
    return {d.cone: d for d in data}


def test_fixed_point_weights(q):
    pts = by_cone(fixed_points(q))
    # q5 = {v3, v4}, q4 = {v3, v5}, q3 = {v4, v5}
    assert pts[(2, 3)].tangent_weights == (W(F(1, 5), F(2, 5)), W(F(1, 5), F(1, 5)))
    assert pts[(2, 4)].tangent_weights == (W(0, F(1, 5)), W(F(-1, 5), F(-1, 5)))
    assert pts[(3, 4)].tangent_weights == (W(0, F(-1, 5)), W(F(-1, 5), F(-2, 5)))
    assert all(d.order == 25 for d in pts.values())


def test_q5_characters(q):
    """z3 = chi^{m1}, z4 = chi^{m2} with m1 = (c1 + 2 c2)/5, m2 = (c1 + c2)/5."""
    (m1, m2) = by_cone(fixed_points(q))[(2, 3)].tangent_weights
    assert m1.coeffs == (F(1, 5), F(2, 5)) and m2.coeffs == (F(1, 5), F(1, 5))


def test_line_bundle_weights(quintic, q):
    L = line_bundle_weights({2: 5}, q, quintic)
    assert [L[c] for c in [(2, 3), (2, 4), (3, 4)]] == [W(1, 2), W(0, 1), W(0, 0)]
    Fpp = line_bundle_weights({4: 5}, q, quintic)
    assert [Fpp[c] for c in [(2, 3), (2, 4), (3, 4)]] == [W(0, 0), W(-1, -1), W(-1, -2)]
    zero = line_bundle_weights({}, q, quintic)
    assert all(w.is_zero() for w in zero.values())


def test_non_cartier_divisor_names_the_cone(quintic, q):
    with pytest.raises(LocalizationError, match="cone"):
        line_bundle_weights({2: 1}, q, quintic)


def test_divisor_on_tau_is_moved_off(quintic, q):
    # 5 D1 ~ 5 D5 on the quintic fan, so the weights agree with F'' up to a global character
    a = line_bundle_weights({0: 5}, q, quintic)
    b = line_bundle_weights({4: 5}, q, quintic)
    diffs = {tuple(x - y for x, y in zip(a[c].coeffs, b[c].coeffs)) for c in a}
    assert len(diffs) == 1


def test_localized_sum_is_one(quintic):
    loc = curve_sector_localization(quintic, m_basis=REFERENCE_BASIS)
    assert loc.result.constant == 1
    assert loc.euler_integral == F(1, 25)
    # two of the three fixed points have a zero bundle weight and contribute nothing
    assert sum(1 for num, _ in loc.result.contributions if num.is_zero()) == 2


@pytest.mark.parametrize("seed", range(5))
def test_unimodular_basis_invariance(quintic, seed):
    rng = random.Random(seed)
    a, b, c = (rng.randint(-4, 4) for _ in range(3))
    U = [[1, a], [0, 1]]
    V = [[1, 0], [b, 1]]
    S = [[0, 1], [-1, 0]] if c % 2 else [[1, 0], [0, 1]]
    from chenruan import linalg
    T = linalg.matmul(linalg.matmul(U, V), S)
    basis = [[sum(T[i][j] * REFERENCE_BASIS[j][t] for j in range(2)) for t in range(4)] for i in range(2)]
    assert curve_sector_localization(quintic, m_basis=basis).result.constant == 1


@pytest.mark.parametrize("shift", [(1, 0), (0, 1), (-3, 7), (F(1, 2), F(-5, 3))])
def test_lift_shift_invariance(quintic, shift):
    loc = curve_sector_localization(quintic)
    for name in ("L", "F''"):
        data = shift_lift(loc.data, name, W(*shift))
        assert localized_integral(data, ["F''", "L"]).constant == 1


@pytest.mark.parametrize("chart,line", [(2, 3), (3, 2), (4, 3), (3, 4)])
def test_chart_and_line_choices(quintic, chart, line):
    assert curve_sector_localization(quintic, chart=chart, line_ray=line).result.constant == 1


def test_degree_mismatch_and_inconsistent_lift(quintic, q):
    data = attach(fixed_points(q), "L", line_bundle_weights({2: 5}, q, quintic))
    with pytest.raises(LocalizationError):
        localized_integral(data, ["L"])
    bad = list(data)
    bad[0] = bad[0].with_bundle("L", bad[0].bundle_weights["L"] + W(1, 0))
    with pytest.raises(LocalizationError):
        localized_integral(bad, ["L", "L"])


def test_projective_line_oracle():
    """P^1: integral of c1(O(1))^1 = 1; the quotient fan of the zero cone is the fan itself."""
    fan = Fan([(1,), (-1,)], [(0,), (1,)])
    q1 = quotient_fan(fan.cone(()), fan)
    data = attach(fixed_points(q1), "O1", line_bundle_weights({0: 1}, q1, fan))
    assert localized_integral(data, ["O1"]).constant == 1


def test_projective_plane_self_intersection():
    fan = Fan([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
    q2 = quotient_fan(fan.cone(()), fan)
    data = attach(fixed_points(q2), "H", line_bundle_weights({2: 1}, q2, fan))
    assert localized_integral(data, ["H", "H"]).constant == 1


def test_incomplete_fan_rejected():
    fan = Fan([(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2)])
    with pytest.raises(LocalizationError, match="complete"):
        fixed_points(quotient_fan(fan.cone(()), fan))


def test_eta_cubed_intersection(quintic):
    f = quintic_polynomial(1)
    assert intersection_check_eta_cubed(quintic, f) == 1
    assert intersection_check_eta_cubed(quintic, f, (1, 2, 3)) == 1
