from __future__ import annotations

from collections import Counter
from fractions import Fraction
from itertools import product

import pytest

from chenruan.fixtures import MIRROR_QUINTIC_HODGE, POINT_HODGE, quintic_polynomial
from chenruan.sectors import (census, degree_shift, enumerate_tricyclic_hypersurface,
                              has_unit_determinant, orbifold_betti, point_components,
                              shift_duality_holds, twisted_sectors, two_sector_count)

# Oracle: group elements of the mirror quintic as exponent vectors a in (Z/5)^5 with
# sum a = 0 mod 5 and some a_i = 0; the element fixes V(support), shift = sum a / 5.
ELEMENTS = [a for a in product(range(5), repeat=5) if sum(a) % 5 == 0 and 0 in a]


def support(a):
    return {i for i, x in enumerate(a) if x}


def age(a):
    return Fraction(sum(a), 5)


def oracle_tricyclic_points():
    out = []
    for a, b in product(ELEMENTS, repeat=2):
        if len(support(a) | support(b)) != 3:
            continue
        c = tuple((-x - y) % 5 for x, y in zip(a, b))
        out.append((a, b, c))
    return out


def test_element_count_oracle(quintic):
    from chenruan.toric import interior_box_points
    ours = sum(len(interior_box_points(c, quintic)) for c in quintic.cones())
    assert ours == len(ELEMENTS)


def test_twisted_sectors_match_oracle(quintic):
    ours = Counter((s.dim, s.shift) for s in twisted_sectors(quintic))
    ref = Counter((3 - len(support(a)), age(a)) for a in ELEMENTS if 0 < len(support(a)) <= 3)
    assert ours == ref


def test_h11_by_brute_force_oracle(quintic):
    """h^{1,1}_orb = 1 + #(curve or point sectors of shift 1); curves of shift 0 do not exist."""
    ref = 1 + sum(1 for a in ELEMENTS if len(support(a)) in (2, 3) and age(a) == 1)
    table = orbifold_betti(quintic, MIRROR_QUINTIC_HODGE)
    assert ref == 101
    assert table[(1, 1)] == ref and table[(2, 2)] == ref
    assert table[(3, 0)] == table[(0, 3)] == table[(2, 1)] == table[(1, 2)] == 1
    assert table[(0, 0)] == table[(3, 3)] == 1
    assert all(k in {(0, 0), (1, 1), (2, 2), (3, 3), (3, 0), (0, 3), (2, 1), (1, 2)} for k in table)


def test_census_matches_oracle(tricyclic):
    pts = oracle_tricyclic_points()
    rank0 = [(a, b, c) for a, b, c in pts if age(a) + age(b) + age(c) == 3]
    all_one = [t for t in rank0 if all(age(x) == 1 for x in t)]
    published_i = [t for t in all_one if len(support(t[2])) == 3]
    type_ii = [t for t in rank0 if not any(t[2])]
    ours = census(tricyclic, "published")["ordered"]
    assert (ours["type_i"], ours["type_ii"], ours["total"]) == (len(published_i), len(type_ii), 930)
    assert (len(published_i), len(type_ii)) == (810, 120)
    full = census(tricyclic, "complete")["ordered"]
    assert (full["type_i"], full["type_ii"], full["other"]) == (len(all_one), 120, len(rank0) - len(all_one) - 120)
    assert (full["type_i"], full["other"]) == (1890, 240)


def test_tricyclic_count_and_types(tricyclic):
    pairs = sum(1 for a, b in product(ELEMENTS, repeat=2) if len(support(a) | support(b)) <= 3)
    assert len(tricyclic) == pairs == 5761
    kinds = Counter(s.type for s in tricyclic)
    assert kinds["identity"] == 1
    assert kinds["curve"] == sum(1 for a, b in product(ELEMENTS, repeat=2)
                                 if len(support(a) | support(b)) == 2)


def test_rank_formula_nonnegative_integer(tricyclic):
    for s in tricyclic:
        assert s.obstruction_rank >= 0
        assert s.obstruction_rank == s.dim - 3 + s.shift_total


def test_curve_sectors_power_relation(tricyclic):
    for s in tricyclic:
        if s.type == "curve" and not s.g1.is_identity() and not s.g2.is_identity():
            assert s.curve_k in (1, 2, 3, 4)


@pytest.mark.parametrize("ambient", [False, True])
def test_shift_duality_every_sector(quintic, ambient):
    secs = twisted_sectors(quintic, hypersurface=not ambient)
    assert secs and all(shift_duality_holds(quintic, s, ambient=ambient) for s in secs)


def test_unit_determinant_and_shift(quintic):
    for s in twisted_sectors(quintic):
        assert has_unit_determinant(s.g)
        assert degree_shift(s.g, 4) == s.shift


def test_point_components_every_3_cone(quintic):
    f = quintic_polynomial(1)
    for c in quintic.cones(3):
        assert point_components(quintic, f, c) == 1


def test_projective_space_has_no_twisted_sectors(p4):
    assert twisted_sectors(p4) == []
    tri = enumerate_tricyclic_hypersurface(p4)
    assert [s.type for s in tri] == ["identity"]
    assert orbifold_betti(p4, POINT_HODGE) == {(0, 0): 1}
    assert two_sector_count(p4) == 1


def test_non_cy_requires_degree(quintic):
    with pytest.raises(ValueError):
        enumerate_tricyclic_hypersurface(quintic, cy=False)


def test_unknown_census_convention(tricyclic):
    with pytest.raises(ValueError):
        census(tricyclic, "other")


def test_toric_tricyclic_count_oracle(quintic):
    from chenruan.sectors import enumerate_tricyclic_toric
    ref = sum(1 for a, b in product(ELEMENTS, repeat=2) if len(support(a) | support(b)) <= 4)
    secs = enumerate_tricyclic_toric(quintic)
    assert len(secs) == ref == 72121
    assert all(s.obstruction_rank == s.dim - 4 + s.shift_total for s in secs)
