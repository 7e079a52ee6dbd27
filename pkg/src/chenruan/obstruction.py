"""Obstruction bundles over tricyclic sectors and 3-point values.

For a curve sector with g2 = g1^k the cover Sigma has genus two, and the
generator g1 acts on T X tensor H^{0,1}(Sigma) by the Kronecker product of
the conjugated action on H^{0,1} with diag(zeta^w1, zeta^w2, zeta^w3).
All entries lie in Q(zeta_5), so the eigen-analysis is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .cyclotomic import CyclotomicNumber, zeta
from .fixtures import EIGENVECTOR_TABLE
from .sectors import TricyclicSector
from .surface_group import (OrbifoldSphere, PeriodMatrix, action_on_forms, cover_genus,
                            monodromy_matrix, solve_period_matrix)
from .toric import Fan, local_group

ORDER = 5


class RankMismatchError(ArithmeticError):
    """The invariant rank disagrees with the dimension formula."""


@dataclass(frozen=True)
class ObstructionAction:
    n: int
    k: int
    weights: tuple[int, int, int]
    period: PeriodMatrix
    form_action: tuple[tuple[CyclotomicNumber, ...], ...]   # B, acting on H^{1,0}
    matrix: tuple[tuple[CyclotomicNumber, ...], ...]        # 6x6 on T X (x) H^{0,1}
    field: str = "Q(zeta_5), exact"

    def rows(self) -> list[list[CyclotomicNumber]]:
        return [list(r) for r in self.matrix]

    def invariant_vectors(self) -> list[list[CyclotomicNumber]]:
        return linalg.eigenspace(self.rows(), CyclotomicNumber.rational(ORDER, 1))

    def numeric(self) -> list[list[complex]]:
        return [[complex(x) for x in r] for r in self.matrix]


_PERIOD_CACHE: dict[int, PeriodMatrix] = {}


def period_matrix(k: int) -> PeriodMatrix:
    if k not in _PERIOD_CACHE:
        _PERIOD_CACHE[k] = solve_period_matrix(monodromy_matrix(k), k=k).selected
    return _PERIOD_CACHE[k]


def printed_form_action(k: int, P: PeriodMatrix) -> list[list[CyclotomicNumber]]:
    """The 2x2 blocks of the obstruction matrices written in terms of p, q, s."""
    p, q, s = P.p, P.q, P.s
    one = CyclotomicNumber.rational(ORDER, 1)
    zero = one * 0
    if k == 1:
        return [[-one - p + q, -q + s], [-q, -s]]
    if k == 2:
        return [[-q, -one - s], [one, zero]]
    if k == 3:
        return [[-p, -q], [-q, -one - s]]
    raise ValueError(f"no printed block pattern for k = {k}")


def build_obstruction_matrix(n: int, k: int, P: PeriodMatrix | None = None,
                             weights: Sequence[int] | None = None) -> ObstructionAction:
    """Matrix of g1 on T X (x) H^{0,1}(Sigma) in the frame xi_a (x) conj(omega_b), b-major."""
    if k == 4:
        raise ValueError("k = 4 has a genus-zero cover and no H^{0,1}; the bundle has rank zero")
    if k not in (1, 2, 3):
        raise ValueError(f"k must be 1, 2 or 3, got {k}")
    if n not in (1, 2, 3, 4):
        raise ValueError(f"n must be in 1..4, got {n}")
    P = P or period_matrix(k)
    w = tuple(weights) if weights is not None else (n, ORDER - n, 0)
    B = action_on_forms(monodromy_matrix(k), P)
    Bbar = [[x.conjugate() for x in row] for row in B]
    D = [[zeta(ORDER, w[i]) if i == j else CyclotomicNumber.rational(ORDER, 0) for j in range(3)]
         for i in range(3)]
    M = linalg.kron(Bbar, D)
    return ObstructionAction(n, k, w, P, tuple(tuple(r) for r in B), tuple(tuple(r) for r in M))


def matrix_order(action: ObstructionAction, limit: int = 20) -> int | None:
    M = action.rows()
    ident = linalg.identity(6, CyclotomicNumber.rational(ORDER, 1))
    P = M
    for e in range(1, limit + 1):
        if P == ident:
            return e
        P = linalg.matmul(P, M)
    return None


def invariant_rank(action: ObstructionAction | None) -> int:
    """Dimension of the eigenvalue-1 eigenspace; None stands for a rank-zero case."""
    if action is None:
        return 0
    return len(action.invariant_vectors())


def table_eigenvector(n: int, k: int) -> list[CyclotomicNumber]:
    entries = EIGENVECTOR_TABLE[(n, k)]
    return [CyclotomicNumber.from_powers(ORDER, entries.get(i, {})) for i in range(6)]


def matches_table(action: ObstructionAction) -> bool:
    vecs = action.invariant_vectors()
    return len(vecs) == 1 and linalg.is_scalar_multiple(table_eigenvector(action.n, action.k), vecs[0])


def eigen_coordinate(action: ObstructionAction) -> int:
    """Index (0, 1, 2) of the tangent frame vector carrying the invariant line."""
    vecs = action.invariant_vectors()
    if len(vecs) != 1:
        raise RankMismatchError(f"expected a unique invariant line, found {len(vecs)}")
    idx = {i % 3 for i, x in enumerate(vecs[0]) if not x.is_zero()}
    if len(idx) != 1:
        raise ValueError("invariant line is not supported on a single tangent direction")
    return idx.pop()


# ----------------------------------------------------- rank via characters ---

def chevalley_weil_rank(weights: Sequence[Sequence[Fraction]]) -> int:
    """dim (T (x) H^{0,1}(Sigma))^K from the rotation weights a_ij of g_j on coordinate i.

    A coordinate on which K acts by a nontrivial character chi contributes
    the multiplicity of chi^-1 in H^{0,1}, which is -1 + sum_j a_ij for a
    cover of the sphere branched at three points; trivial characters
    contribute the genus of Sigma/K, which is zero.
    """
    total = 0
    for row in weights:
        if not any(row):
            continue
        s = sum(row, Fraction(0))
        if s.denominator != 1:
            raise ValueError(f"weights {row} do not multiply to the identity")
        total += int(s) - 1
    return total


def sector_tangent_weights(sector: TricyclicSector) -> list[list[Fraction]]:
    """Rotation weights of (g1, g2, g3) on the normal coordinates of the support."""
    return [[g.weights[i] for g in sector.elements] for i in sector.support.indices]


def curve_n(sector: TricyclicSector) -> int:
    """Exponent n with g1 = (zeta^n, zeta^(5-n)) on the two rays of the cone."""
    i = sector.support.indices[0]
    return int(sector.g1.weights[i] * ORDER)


def sector_rank(sector: TricyclicSector) -> int:
    """Invariant rank of the obstruction bundle, computed from the K-action."""
    if sector.type == "identity":
        return 0
    if sector.dim == 1 and sector.curve_k in (1, 2, 3):
        return invariant_rank(build_obstruction_matrix(curve_n(sector), sector.curve_k))
    if sector.dim == 1:
        # one of the g_j is trivial: the cover of the sphere is branched at two points
        orders = tuple(g.order() if not g.is_identity() else 1 for g in sector.elements)
        if cover_genus(OrbifoldSphere(orders, max(orders))) == 0:
            return 0
    return chevalley_weil_rank(sector_tangent_weights(sector))


def check_ranks(sectors: Sequence[TricyclicSector]) -> int:
    """Compare the computed rank with the dimension formula for every sector."""
    for s in sectors:
        r = sector_rank(s)
        if s.obstruction_rank is not None and r != s.obstruction_rank:
            raise RankMismatchError(
                f"rank {r} from the group action but {s.obstruction_rank} from the formula "
                f"for ({s.g1.label()}, {s.g2.label()}, {s.g3.label()})")
    return len(sectors)


# ----------------------------------------------------------- curve integrals ---

def local_invariant(base_exp: int, fiber_exp: int, order: int = ORDER) -> int:
    """mu with h^r acting by (zeta^1 on the base, zeta^mu on the fibre) for the generator h^r."""
    base_exp %= order
    if base_exp == 0:
        raise ValueError("generator acts trivially on the base coordinate")
    r = pow(base_exp, -1, order)
    return (fiber_exp * r) % order


def local_invariants(sector: TricyclicSector, fan: Fan) -> list[int]:
    """mu_j at the singular points p_j = X meet V(tau + v_j) of the reduced curve sector.

    At p_j take h in G_{tau + v_j} outside K = G_tau.  The reduced bundle
    E'' is the |K|-th power of the invariant line, so its fibre weight is
    |K| times the weight of h on the eigen coordinate.
    """
    if sector.dim != 1 or sector.curve_k not in (1, 2, 3):
        raise ValueError("local invariants are defined for rank-one curve sectors")
    tau = sector.support
    action = build_obstruction_matrix(curve_n(sector), sector.curve_k)
    eig_ray = tau.indices[eigen_coordinate(action)]
    K = len(local_group(tau, fan))
    out = []
    for j in range(fan.nrays):
        if j in tau.indices:
            continue
        big = fan.cone(tau.indices + (j,))
        h = next(g for g in local_group(big, fan) if g.weights[j])
        base = int(h.weights[j] * ORDER)
        fibre_weight = (K * h.weights[eig_ray]) % 1
        out.append(local_invariant(base, int(fibre_weight * ORDER)))
    return out


def curve_euler_integral(sector: TricyclicSector | None, mu: Sequence[int], c1_desing: int,
                         group_order: int = ORDER) -> Fraction:
    """<c1(E), [X_(g)]> = (1/|K|^2)(c1 of the desingularized bundle + sum mu_j/|K|)."""
    for m in mu:
        if not 0 <= m < group_order:
            raise ValueError(f"local invariant {m} outside [0, {group_order})")
    if sector is not None and sector.dim != 1:
        raise ValueError("curve_euler_integral needs a curve sector")
    return Fraction(1, group_order ** 2) * (c1_desing + sum(Fraction(m, group_order) for m in mu))


# ---------------------------------------------------------------- 3-point ---

@dataclass(frozen=True)
class ThreePointValue:
    key: tuple
    value: Fraction | None
    reason: str


def three_point(sector: TricyclicSector, degrees: Sequence[int], fan: Fan,
                euler_integral: Fraction | None = None, eta_integral: int = 1) -> ThreePointValue:
    """Coefficient of <eta1, eta2, eta3>_orb for classes of the given real degrees.

    Point sectors need three 0-forms and a rank-zero bundle, giving 1/|G|
    with G the local group at the point.  Curve sectors with a rank-one
    bundle need three 0-forms and give the orbifold Euler integral; with a
    rank-zero bundle exactly one input must be a 2-form, whose ordinary
    integral over the reduced curve is `eta_integral`.
    """
    degs = tuple(sorted(degrees))
    if len(degs) != 3:
        raise ValueError("three_point takes three degrees")
    if sector.type == "identity":
        return ThreePointValue(sector.key, None, "untwisted: ordinary cup product")
    rank = sector.obstruction_rank
    top = 2 * sector.dim
    if sum(degs) + 2 * rank != top:
        return ThreePointValue(sector.key, Fraction(0), "degree")
    order = len(local_group(sector.support, fan))
    if sector.dim == 0:
        return ThreePointValue(sector.key, Fraction(1, order), "point")
    if sector.dim == 1:
        K = order
        if rank == 1:
            if euler_integral is None:
                euler_integral = curve_euler_integral(sector, local_invariants(sector, fan), 1)
            return ThreePointValue(sector.key, euler_integral, "curve: Euler class")
        return ThreePointValue(sector.key, Fraction(eta_integral, K), "curve: top form")
    return ThreePointValue(sector.key, None, "unsupported sector dimension")


def pairing_degrees_balance(sector_dim: int, shift: Fraction, inverse_shift: Fraction,
                            dim_x: int) -> bool:
    """Degrees n + 2 iota(g) and (2 dim - n) + 2 iota(g^-1) add up to 2 dim X for all n."""
    return all((n + 2 * shift) + (2 * sector_dim - n + 2 * inverse_shift) == 2 * dim_x
               for n in range(2 * sector_dim + 1))
