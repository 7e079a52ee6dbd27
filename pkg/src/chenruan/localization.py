"""Torus localization on the toric orbit closure V(tau) of a sector.

Weights are linear forms in u_1, ..., u_k, the coordinates dual to the
chosen basis of M(tau).  Each fixed point contributes
(product of bundle weights) / (|G_sigma| * product of tangent weights),
and the sum must simplify to a constant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from . import linalg
from .polynomial import GradedPoly
from .sectors import point_components
from .toric import Fan, FanError, QuotientFanData, quotient_fan


class LocalizationError(ArithmeticError):
    """Incomplete fan, non-Cartier divisor or a non-constant fixed-point sum."""


@dataclass(frozen=True)
class EquivariantWeight:
    coeffs: tuple[Fraction, ...]

    def __add__(self, other: EquivariantWeight) -> EquivariantWeight:
        return EquivariantWeight(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def poly(self) -> GradedPoly:
        k = len(self.coeffs)
        names = tuple(f"u{i + 1}" for i in range(k))
        return GradedPoly(names, {tuple(int(i == j) for j in range(k)): c
                                  for i, c in enumerate(self.coeffs)})

    def to_str(self) -> str:
        return self.poly().to_str() if not self.is_zero() else "0"

    def in_basis(self, change: Sequence[Sequence[int]]) -> EquivariantWeight:
        """Coordinates after replacing the M basis c by c' = change . c."""
        inv = linalg.inverse([[Fraction(x) for x in r] for r in change])
        # m = sum x_i c_i = sum y_j c'_j  with c' = A c  =>  x = A^T y  =>  y = (A^T)^-1 x
        invT = linalg.transpose(inv)
        return EquivariantWeight(tuple(linalg.matvec(invT, list(self.coeffs))))


@dataclass(frozen=True)
class FixedPointDatum:
    cone: tuple[int, ...]                 # fan ray indices of the maximal cone of V(tau)
    order: int
    tangent_weights: tuple[EquivariantWeight, ...]
    bundle_weights: dict = field(default_factory=dict)

    def with_bundle(self, name: str, weight: EquivariantWeight) -> FixedPointDatum:
        bw = dict(self.bundle_weights)
        bw[name] = weight
        return FixedPointDatum(self.cone, self.order, self.tangent_weights, bw)


def _check_complete(q: QuotientFanData):
    k = q.dim
    if k == 0:
        return
    faces: dict[tuple[int, ...], int] = {}
    for c in q.max_cones:
        if len(c) != k:
            raise LocalizationError(f"maximal cone {c} of V(tau) is not {k}-dimensional")
        for f in combinations(c, k - 1):
            faces[f] = faces.get(f, 0) + 1
    bad = [f for f, n in faces.items() if n != 2]
    if bad:
        raise LocalizationError(f"quotient fan is not complete: faces {bad} lie in "
                                "fewer or more than two maximal cones")


def fixed_points(q: QuotientFanData) -> list[FixedPointDatum]:
    """One datum per maximal cone: local order |det| and the dual tangent weights."""
    _check_complete(q)
    out = []
    for c in q.max_cones:
        F = [[Fraction(x) for x in q.projected_rays[j]] for j in c]
        det = linalg.det(F)
        if det == 0:
            raise LocalizationError(f"cone {c} of V(tau) is degenerate")
        Finv = linalg.inverse(F)
        # column i of F^-1 is the m^i with <m^i, ray_j> = delta_ij
        weights = tuple(EquivariantWeight(tuple(Finv[r][i] for r in range(q.dim)))
                        for i in range(q.dim))
        out.append(FixedPointDatum(c, abs(int(det)), weights))
    return out


def _normalize_divisor(divisor: Mapping[int, int], q: QuotientFanData, fan: Fan) -> dict[int, int]:
    """Move a divisor off the rays of tau by a principal divisor, if needed."""
    b = {j: int(c) for j, c in divisor.items() if c}
    tau = q.source.indices
    if not any(b.get(j, 0) for j in tau):
        return b
    m = linalg.integer_solve([fan.rays[j] for j in tau], [-b.get(j, 0) for j in tau])
    if m is None:
        raise LocalizationError("divisor is not linearly equivalent to one avoiding tau")
    for j in range(fan.nrays):
        b[j] = b.get(j, 0) + sum(a * x for a, x in zip(m, fan.rays[j]))
    return {j: c for j, c in b.items() if c}


def line_bundle_weights(divisor: Mapping[int, int], q: QuotientFanData, fan: Fan
                        ) -> dict[tuple[int, ...], EquivariantWeight]:
    """Weight -m_sigma at each fixed point, where <-m_sigma, ray_j> = b_j on the cone."""
    b = _normalize_divisor(divisor, q, fan)
    out = {}
    for c in q.max_cones:
        F = [[Fraction(x) for x in q.projected_rays[j]] for j in c]
        w = linalg.solve(F, [Fraction(b.get(j, 0)) for j in c])
        if w is None or any(x.denominator != 1 for x in w):
            raise LocalizationError(f"divisor is not Cartier on the cone {list(c)}")
        out[c] = EquivariantWeight(tuple(w))
    return out


def obstruction_lift_divisor(chart: int, group_order: int = 5) -> dict[int, int]:
    """Divisor of the |K|-th power bundle trivialized with weight 0 over the chart x_chart != 0."""
    return {chart: group_order}


def attach(data: Sequence[FixedPointDatum], name: str,
           weights: Mapping[tuple[int, ...], EquivariantWeight]) -> list[FixedPointDatum]:
    return [d.with_bundle(name, weights[d.cone]) for d in data]


@dataclass(frozen=True)
class LocalizationResult:
    contributions: tuple[tuple[GradedPoly, GradedPoly], ...]   # (numerator, denominator) per point
    constant: Fraction


def localized_integral(data: Sequence[FixedPointDatum], bundles: Sequence[str]) -> LocalizationResult:
    """Sum over fixed points of prod(bundle weights)/(order * prod(tangent weights))."""
    if not data:
        raise LocalizationError("no fixed points")
    dim = len(data[0].tangent_weights)
    if len(bundles) != dim:
        raise LocalizationError(f"integrand has degree {len(bundles)} but the space has dimension {dim}")
    names = tuple(f"u{i + 1}" for i in range(dim))
    one = GradedPoly.constant(names, 1)
    terms = []
    for d in data:
        num = one
        for b in bundles:
            num = num * d.bundle_weights[b].poly()
        den = GradedPoly.constant(names, d.order)
        for t in d.tangent_weights:
            den = den * t.poly()
        if not num.is_zero() and num.total_degree() != den.total_degree():
            raise LocalizationError("contribution is not homogeneous of degree zero")
        terms.append((num, den))
    # common denominator: product of all denominators
    total_den = one
    for _, den in terms:
        total_den = total_den * den
    total_num = GradedPoly.constant(names, 0)
    for i, (num, _) in enumerate(terms):
        rest = num
        for j, (_, den) in enumerate(terms):
            if j != i:
                rest = rest * den
        total_num = total_num + rest
    if total_num.is_zero():
        return LocalizationResult(tuple(terms), Fraction(0))
    m = next(iter(total_den.terms))
    c = total_num.terms.get(m, Fraction(0)) / total_den.terms[m]
    if total_num != total_den.scale(c):
        raise LocalizationError("fixed-point sum is not a constant; the equivariant lifts are inconsistent")
    return LocalizationResult(tuple(terms), c)


def shift_lift(data: Sequence[FixedPointDatum], name: str, shift: EquivariantWeight
               ) -> list[FixedPointDatum]:
    """Change the lift of one bundle by a global character."""
    return [d.with_bundle(name, d.bundle_weights[name] + shift) for d in data]


# ---------------------------------------------------------------- quintic ---

@dataclass(frozen=True)
class SectorLocalization:
    quotient: QuotientFanData
    data: tuple[FixedPointDatum, ...]
    result: LocalizationResult
    euler_integral: Fraction


def curve_sector_localization(fan: Fan, tau: Sequence[int] = (0, 1), line_ray: int | None = None,
                              chart: int | None = None, group_order: int = 5,
                              m_basis: Sequence[Sequence[int]] | None = None) -> SectorLocalization:
    """Localization on V(tau) for the curve sector X meet V(tau).

    L = |K| D_line is the class of the curve in V(tau) (a monomial x_j^5 of f
    avoiding tau), and F'' = |K| D_chart is the |K|-th power of the
    obstruction line bundle, trivial over the chart x_chart != 0.  The
    orbifold integral of e(E_(g)) carries two factors 1/|K|: one from the
    generic stabilizer K and one from E^|K| = F''.
    """
    cone = fan.cone(tau)
    others = [j for j in range(fan.nrays) if j not in cone.indices]
    line_ray = others[0] if line_ray is None else line_ray
    chart = others[-1] if chart is None else chart
    q = quotient_fan(cone, fan, m_basis)
    data = fixed_points(q)
    data = attach(data, "L", line_bundle_weights({line_ray: group_order}, q, fan))
    data = attach(data, "F''", line_bundle_weights(obstruction_lift_divisor(chart, group_order), q, fan))
    res = localized_integral(data, ["F''", "L"])
    return SectorLocalization(q, tuple(data), res, res.constant / group_order ** 2)


def intersection_check_eta_cubed(fan: Fan, f: GradedPoly, hyperplanes: Sequence[int] = (0, 1, 2)) -> Fraction:
    """Points of X meet {x_i = 0 for i in hyperplanes}, counted up to the group action."""
    if not fan.has_cone(hyperplanes):
        raise FanError(f"hyperplanes {list(hyperplanes)} do not meet in an orbit closure")
    return Fraction(point_components(fan, f, fan.cone(hyperplanes)))
