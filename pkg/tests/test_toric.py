from __future__ import annotations

import json
from fractions import Fraction
from itertools import product

import pytest

from chenruan import linalg
from chenruan.toric import (Fan, FanError, cone_det, fan_from_json, interior_box_points, local_group,
                            orbit_closure_meet, quotient_fan)


def _bfs_closure(fan, gens):
    """Group generated by gens, by breadth-first multiplication (independent of local_group)."""
    seen = {fan.identity().weights}
    frontier = [fan.identity()]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                p = fan.multiply(g, h)
                if p.weights not in seen:
                    seen.add(p.weights)
                    nxt.append(p)
        frontier = nxt
    return seen


def test_quintic_fan_shape(quintic):
    assert quintic.dim == 4 and quintic.nrays == 5
    assert [len(quintic.cones(d)) for d in range(5)] == [1, 5, 10, 10, 5]


def test_local_group_order_equals_det(quintic):
    for c in quintic.cones():
        G = local_group(c, quintic)
        assert len(G) == cone_det(c)
        assert len(G) == {0: 1, 1: 1, 2: 5, 3: 25, 4: 125}[c.dim]


def test_local_group_closed_and_box_points_integral(quintic):
    for c in quintic.cones():
        G = local_group(c, quintic)
        assert _bfs_closure(quintic, G) == {g.weights for g in G}
        for g in G:
            assert all(x.denominator == 1 for x in g.box_point)
            assert set(g.support) <= set(c.indices)


def test_box_points_by_exponent_oracle(quintic):
    """Interior box points of a cone are the a in {1..4}^cone (rest 0) with sum a = 0 mod 5."""
    for c in quintic.cones():
        ours = {g.weights for g in interior_box_points(c, quintic)}
        ref = set()
        for a in product(range(1, 5), repeat=c.dim):
            if sum(a) % 5 == 0 or c.dim == 0:
                w = [Fraction(0)] * 5
                for i, x in zip(c.indices, a):
                    w[i] = Fraction(x, 5)
                ref.add(tuple(w))
        if c.dim == 0:
            ref = {tuple([Fraction(0)] * 5)}
        assert ours == ref


def test_group_law(quintic):
    g = quintic.element_from_exponents((1, 2, 2, 0, 0))
    assert g.age() == 1 and g.order() == 5
    assert quintic.multiply(g, quintic.inverse(g)).is_identity()
    assert quintic.inverse(g).age() == 2


def test_orbit_closure_meet(quintic):
    a, b = quintic.cone((0, 1)), quintic.cone((1, 2))
    assert orbit_closure_meet(a, b, quintic).indices == (0, 1, 2)
    assert orbit_closure_meet(quintic.cone((0, 1, 2, 3)), quintic.cone((4,)), quintic) is None


def test_quotient_fan_reference_basis(quintic):
    q = quotient_fan(quintic.cone((0, 1)), quintic, m_basis=[(1, 1, 0, 3), (0, 0, 1, -1)])
    assert q.projected_rays == {2: (-5, 5), 3: (10, -5), 4: (-5, 0)}
    assert sorted(q.max_cones) == [(2, 3), (2, 4), (3, 4)]
    assert all(abs(linalg.det(q.cone_matrix(c))) == 25 for c in q.max_cones)


def test_quotient_fan_rejects_bad_basis(quintic):
    with pytest.raises(FanError):
        quotient_fan(quintic.cone((0, 1)), quintic, m_basis=[(1, 0, 0, 0), (0, 1, 0, 0)])


def test_projective_space_is_smooth(p4):
    assert all(len(local_group(c, p4)) == 1 for c in p4.cones())


def test_fan_validation():
    with pytest.raises(FanError):
        Fan([(2, 0), (0, 1)], [(0, 1)])          # non-primitive ray
    with pytest.raises(FanError):
        Fan([(1, 0), (0, 1), (1, 1)], [(0, 1, 2)])  # not simplicial


def test_fan_from_json_diagnostics():
    good = json.dumps({"dim": 1, "rays": [[1], [-1]], "max_cones": [[0], [1]]})
    assert fan_from_json(good).nrays == 2
    with pytest.raises(FanError, match="line 1"):
        fan_from_json('{"dim": 1,, }')
    with pytest.raises(FanError, match="rays\\[1\\]"):
        fan_from_json(json.dumps({"dim": 2, "rays": [[1, 0], [0]], "max_cones": []}))
    with pytest.raises(FanError, match="max_cones"):
        fan_from_json(json.dumps({"dim": 1, "rays": [[1]]}))
