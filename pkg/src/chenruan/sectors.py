"""Twisted and tricyclic sectors, degree shifts and orbifold Hodge numbers.

All local groups here are abelian, so a conjugacy class (g) is just g.
Sectors of the hypersurface X are cut out of the ambient orbit closures:
X_(g) = X meet V(tau) with tau the cone whose interior contains the box
point, of dimension d - 1 - dim(tau) when that is nonnegative.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Iterable, Sequence

from .fixtures import HodgeFixture
from .polynomial import GradedPoly
from .toric import Cone, Fan, GroupElement, interior_box_points, local_group, orbit_closure_meet

SECTOR_TYPES = ("identity", "curve", "point-i", "point-ii", "point")


def degree_shift(g: GroupElement, ambient_dim: int | None = None) -> Fraction:
    """Sum of the rotation weights m_{i,g}/m_g of g on an ambient chart."""
    shift = g.age()
    if ambient_dim is not None and shift > ambient_dim:
        raise ValueError(f"shift {shift} exceeds the dimension {ambient_dim}")
    return shift


def has_unit_determinant(g: GroupElement) -> bool:
    """det of the diagonal action is exp(2 pi i * age), so 1 iff the age is integral."""
    return g.age().denominator == 1


def normal_weight(g: GroupElement, degree: Sequence[int]) -> Fraction:
    """Weight of g on the fibre of O(X) for a hypersurface of class sum degree_i D_i."""
    return sum((a * b for a, b in zip(g.weights, degree)), Fraction(0)) % 1


@dataclass(frozen=True)
class TwistedSector:
    g: GroupElement
    cone: Cone
    dim: int
    shift: Fraction

    @property
    def geometry(self) -> str:
        return {0: "point", 1: "curve"}.get(self.dim, f"dim-{self.dim}")


def _interior_elements(fan: Fan) -> list[tuple[Cone, GroupElement]]:
    out = []
    for c in fan.cones():
        for g in interior_box_points(c, fan):
            out.append((c, g))
    return out


def twisted_sectors(fan: Fan, hypersurface: bool = True, degree: Sequence[int] | None = None
                    ) -> list[TwistedSector]:
    """Nontrivial sectors X_(g) (hypersurface) or V(tau_g) (ambient).

    `degree` is the class of the hypersurface as an exponent vector; the
    default (1, ..., 1) is the anticanonical (Calabi-Yau) class.
    """
    d = fan.dim
    deg = tuple(degree) if degree is not None else (1,) * fan.nrays
    out = []
    for cone, g in _interior_elements(fan):
        if g.is_identity():
            continue
        if hypersurface:
            dim = d - 1 - cone.dim
            shift = degree_shift(g) - normal_weight(g, deg)
        else:
            dim = d - cone.dim
            shift = degree_shift(g)
        if dim < 0:
            continue
        out.append(TwistedSector(g, cone, dim, shift))
    return out


# ---------------------------------------------------------------- tricyclic ---

@dataclass(frozen=True)
class TricyclicSector:
    g1: GroupElement
    g2: GroupElement
    g3: GroupElement
    tau1: Cone
    tau2: Cone
    support: Cone
    dim: int
    shifts: tuple[Fraction, Fraction, Fraction]
    obstruction_rank: int | None
    type: str
    component: int = 0
    curve_k: int | None = None

    @property
    def key(self) -> tuple:
        return (self.tau1.indices, self.g1.weights, self.tau2.indices, self.g2.weights, self.component)

    @property
    def elements(self) -> tuple[GroupElement, GroupElement, GroupElement]:
        return (self.g1, self.g2, self.g3)

    @property
    def shift_total(self) -> Fraction:
        return sum(self.shifts, Fraction(0))


def _classify(fan: Fan, g1, g2, g3, shifts, dim: int) -> str:
    if g1.is_identity() and g2.is_identity():
        return "identity"
    if dim == 1:
        return "curve"
    if dim == 0:
        if all(s == 1 for s in shifts):
            return "point-i"
        if g3.is_identity():
            return "point-ii"
        return "point"
    return f"dim-{dim}"


def _power_relation(fan: Fan, g1: GroupElement, g2: GroupElement) -> int | None:
    """k in 1..order-1 with g2 = g1^k, if any."""
    if g1.is_identity():
        return None
    h = g1
    for k in range(1, g1.order()):
        if h.weights == g2.weights:
            return k
        h = fan.multiply(h, g1)
    return None


def _enumerate(fan: Fan, hypersurface: bool, degree: Sequence[int] | None) -> list[TricyclicSector]:
    d = fan.dim
    deg = tuple(degree) if degree is not None else (1,) * fan.nrays
    elems = _interior_elements(fan)
    out = []
    for (t1, g1), (t2, g2) in product(elems, repeat=2):
        meet = orbit_closure_meet(t1, t2, fan)
        if meet is None:
            continue
        dim = d - meet.dim - (1 if hypersurface else 0)
        if dim < 0:
            continue
        g3 = fan.inverse(fan.multiply(g1, g2))
        if hypersurface:
            shifts = tuple(degree_shift(g) - normal_weight(g, deg) for g in (g1, g2, g3))
            dim_x = d - 1
        else:
            shifts = tuple(degree_shift(g) for g in (g1, g2, g3))
            dim_x = d
        total = dim - dim_x + sum(shifts, Fraction(0))
        if total.denominator != 1 or total < 0:
            raise ArithmeticError(f"obstruction rank {total} is not a nonnegative integer "
                                  f"for {g1.label()}, {g2.label()}")
        kind = _classify(fan, g1, g2, g3, shifts, dim)
        k = _power_relation(fan, g1, g2) if kind == "curve" else None
        out.append(TricyclicSector(g1, g2, g3, t1, t2, meet, dim, shifts, int(total), kind, 0, k))
    out.sort(key=lambda s: s.key)
    return out


def enumerate_tricyclic_toric(fan: Fan) -> list[TricyclicSector]:
    """Tricyclic sectors of the toric orbifold Y, one per pair of interior box points."""
    return _enumerate(fan, hypersurface=False, degree=None)


def enumerate_tricyclic_hypersurface(fan: Fan, cy: bool = True,
                                     degree: Sequence[int] | None = None) -> list[TricyclicSector]:
    """Tricyclic sectors of a nondegenerate quasi-smooth hypersurface X.

    With cy=True the hypersurface is anticanonical, so g acts trivially on
    its normal bundle and the shifts on X equal those on Y.  For cy=False
    the class `degree` must be given.
    """
    if not cy and degree is None:
        raise ValueError("a non-Calabi-Yau hypersurface needs its class as an exponent vector")
    return _enumerate(fan, hypersurface=True, degree=None if cy else degree)


def two_sector_count(fan: Fan, hypersurface: bool = True) -> int:
    """Number of pairs (g1, g2) with a nonempty common fixed locus."""
    d = fan.dim
    elems = _interior_elements(fan)
    n = 0
    for (t1, _), (t2, _) in product(elems, repeat=2):
        meet = orbit_closure_meet(t1, t2, fan)
        if meet is not None and d - meet.dim - (1 if hypersurface else 0) >= 0:
            n += 1
    return n


# ------------------------------------------------------------------ census ---

def nonzero_point_sectors(sectors: Iterable[TricyclicSector]) -> list[TricyclicSector]:
    """Nontrivial rank-zero point sectors, whose 3-point function is nonzero."""
    return [s for s in sectors if s.dim == 0 and s.obstruction_rank == 0 and s.type != "identity"]


def census(sectors: Sequence[TricyclicSector], convention: str = "published") -> dict:
    """Counts of point sectors with nonzero 3-point function.

    convention "published": type (i) counts triples with all shifts 1 whose g3
    lies in the interior of a 3-dimensional cone (so g1 g2 has shift 2);
    type (ii) counts triples with g3 = id.
    convention "complete": type (i) counts every triple with all shifts 1;
    triples with g1 or g2 trivial are reported as "other".
    """
    pts = nonzero_point_sectors(sectors)
    if convention == "published":
        type_i = [s for s in pts if s.type == "point-i" and len(s.g3.support) == 3]
        type_ii = [s for s in pts if s.type == "point-ii"]
        other = []
    elif convention == "complete":
        type_i = [s for s in pts if s.type == "point-i"]
        type_ii = [s for s in pts if s.type == "point-ii"]
        other = [s for s in pts if s.type == "point"]
    else:
        raise ValueError(f"unknown census convention {convention!r}")

    def unordered(group):
        return len({frozenset(Counter(g.weights for g in s.elements).items()) for s in group})

    return {
        "convention": convention,
        "ordered": {"type_i": len(type_i), "type_ii": len(type_ii), "other": len(other),
                    "total": len(type_i) + len(type_ii) + len(other)},
        "unordered": {"type_i": unordered(type_i), "type_ii": unordered(type_ii),
                      "other": unordered(other),
                      "total": unordered(type_i + type_ii + other)},
    }


# ------------------------------------------------------- point components ---

def cox_group_generators(fan: Fan) -> list[GroupElement]:
    out = []
    for c in fan.max_cones:
        out.extend(local_group(fan.cone(c), fan))
    return out


def point_components(fan: Fan, f: GradedPoly, cone: Cone) -> int:
    """Number of points of X meet V(cone) when that set is finite.

    After setting the coordinates of the cone to zero, f must restrict to a
    binomial c_a x_a^N + c_b x_b^N in the two remaining coordinates; the
    N roots of t^N = -c_b/c_a (t = x_a/x_b) are counted up to the action of
    the group, which multiplies t by exp(2 pi i (w_a - w_b)).
    """
    rest = [i for i in range(fan.nrays) if i not in cone.indices]
    if len(rest) != 2:
        raise NotImplementedError("component counts are implemented for curves V(tau) only")
    restricted = {m: c for m, c in f.terms.items() if all(m[i] == 0 for i in cone.indices)}
    a, b = rest
    if len(restricted) != 2:
        raise NotImplementedError("restricted equation is not a binomial")
    (m1, c1), (m2, c2) = sorted(restricted.items())
    if m1[a] != 0 or m2[b] != 0:
        (m1, c1), (m2, c2) = (m2, c2), (m1, c1)
    # now m1 = x_b^N and m2 = x_a^N
    N = m2[a]
    if m1[b] != N or m1[a] or m2[b]:
        raise NotImplementedError("restricted equation is not of the form x_a^N + c x_b^N")
    ratio = -c1 / c2
    phase = Fraction(0) if ratio > 0 else Fraction(1, 2)
    angles = {((phase + k) / N) % 1 for k in range(N)}
    L = 1
    for g in cox_group_generators(fan):
        L = lcm(L, ((g.weights[a] - g.weights[b]) % 1).denominator)
    step = Fraction(1, L)
    orbits = 0
    seen: set[Fraction] = set()
    for t in sorted(angles):
        if t in seen:
            continue
        orbits += 1
        for j in range(L):
            u = (t + j * step) % 1
            if u in angles:
                seen.add(u)
    return orbits


# ---------------------------------------------------------- Hodge numbers ---

def orbifold_betti(fan: Fan, hodge: HodgeFixture, degree: Sequence[int] | None = None
                   ) -> dict[tuple[int, int], int]:
    """h^{p,q}_orb = untwisted h^{p,q} + sum over twisted sectors of h^{p-i,q-i}(sector)."""
    table: Counter = Counter()
    for pq, h in hodge.untwisted.items():
        table[pq] += h
    for sec in twisted_sectors(fan, hypersurface=True, degree=degree):
        if sec.shift.denominator != 1:
            raise ValueError(f"fractional shift {sec.shift}; bigrading is not integral")
        i = int(sec.shift)
        for (p, q), h in hodge.table(sec.geometry).items():
            table[(p + i, q + i)] += h
    return dict(sorted((k, v) for k, v in table.items() if v))


def shift_duality_holds(fan: Fan, sec: TwistedSector, ambient: bool = False) -> bool:
    """iota(g) + iota(g^-1) = dim - dim of the sector."""
    g_inv = fan.inverse(sec.g)
    total_dim = fan.dim if ambient else fan.dim - 1
    return sec.shift + degree_shift(g_inv) == total_dim - sec.dim
