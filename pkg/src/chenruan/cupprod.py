"""Middle-cohomology cup product of an ample toric hypersurface.

R_1(f) = S / (<F_1, ..., F_n> : x_1...x_n) with F_j = x_j df/dx_j realizes
the primitive middle Hodge pieces, and the pairing of two residues is read
off from a constant c with A B x_1...x_n = c J modulo <F_j>.  The constant
is obtained by reducing both sides to the one-dimensional socle.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from . import linalg
from .fixtures import QUINTIC_RAYS, check_psi, quintic_polynomial
from .groebner import groebner_basis, in_ideal, normal_form, standard_monomials
from .polynomial import GradedPoly

THREADS_ENV = "CHENRUAN_THREADS"


class ResidueError(ArithmeticError):
    """Bad index subset, degree mismatch or non-proportional socle representatives."""


def _product_of_vars(f: GradedPoly) -> GradedPoly:
    return GradedPoly.monomial(f.vars, (1,) * len(f.vars), grading=f.grading)


# ---------------------------------------------------------- ideal quotient ---

def _permute(p: GradedPoly, perm: Sequence[int]) -> GradedPoly:
    """Variable i of the result is variable perm[i] of p."""
    return GradedPoly(tuple(p.vars[i] for i in perm),
                      {tuple(m[i] for i in perm): c for m, c in p.terms.items()}, p.grading)


def _unpermute(p: GradedPoly, perm: Sequence[int], like: GradedPoly) -> GradedPoly:
    inv = [0] * len(perm)
    for pos, i in enumerate(perm):
        inv[i] = pos
    return GradedPoly(like.vars, {tuple(m[inv[i]] for i in range(len(perm))): c
                                  for m, c in p.terms.items()}, like.grading)


def _quotient_by_variable(gens: Sequence[GradedPoly], i: int) -> list[GradedPoly]:
    """<gens> : x_i for a homogeneous ideal, from a grevlex basis with x_i last.

    With x_i the smallest variable, x_i divides the leading term of a
    homogeneous g iff it divides g, so dividing each basis element by
    gcd(g, x_i) generates the quotient.
    """
    n = len(gens[0].vars)
    perm = [j for j in range(n) if j != i] + [i]
    basis = groebner_basis([_permute(g, perm) for g in gens], "grevlex")
    out = []
    for g in basis:
        if all(m[-1] >= 1 for m in g.terms):
            g = GradedPoly(g.vars, {m[:-1] + (m[-1] - 1,): c for m, c in g.terms.items()}, g.grading)
        out.append(_unpermute(g, perm, gens[0]))
    return out


def _is_homogeneous_total(gens: Sequence[GradedPoly]) -> bool:
    return all(g.is_zero() or len({sum(m) for m in g.terms}) == 1 for g in gens)


def _quotient_by_elimination(gens: Sequence[GradedPoly], h: GradedPoly) -> list[GradedPoly]:
    """<gens> : h = (1/h) (<gens> meet <h>), the intersection by eliminating t."""
    names = ("_t",) + tuple(h.vars)

    def lift(p: GradedPoly, t_power: int = 0) -> GradedPoly:
        return GradedPoly(names, {(t_power,) + m: c for m, c in p.terms.items()})

    t = GradedPoly.monomial(names, (1,) + (0,) * len(h.vars))
    one = GradedPoly.constant(names, 1)
    mixed = [t * lift(g) for g in gens] + [(one - t) * lift(h)]
    basis = groebner_basis(mixed, "lex")
    out = []
    for b in basis:
        if any(m[0] for m in b.terms):
            continue
        q = GradedPoly(h.vars, {m[1:]: c for m, c in b.terms.items()}, h.grading)
        quot, rem = _divide_exact(q, h)
        if not rem.is_zero():
            raise ArithmeticError("intersection element not divisible by h")
        out.append(quot)
    return out


def _divide_exact(p: GradedPoly, h: GradedPoly) -> tuple[GradedPoly, GradedPoly]:
    from .groebner import multi_divide
    (q,), r = multi_divide(p, [h], "lex")
    return q, r


def ideal_quotient(gens: Sequence[GradedPoly], h: GradedPoly, order: str = "grevlex") -> list[GradedPoly]:
    """Groebner basis of <gens> : h."""
    if h.is_zero():
        raise ValueError("ideal quotient by the zero polynomial")
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    if len(h.terms) == 1 and _is_homogeneous_total(gens):
        (mono, coeff), = h.terms.items()
        cur = list(gens)
        for i, e in enumerate(mono):
            for _ in range(e):
                cur = _quotient_by_variable(cur, i)
        result = groebner_basis(cur, order)
    else:
        result = groebner_basis(_quotient_by_elimination(gens, h), order)
    return result


def quotient_contains(gens_basis: Sequence[GradedPoly], quotient: Sequence[GradedPoly],
                      h: GradedPoly, order: str = "grevlex") -> bool:
    """h * J subset of I, given a Groebner basis of I."""
    return all(in_ideal(h * q, gens_basis, order) for q in quotient)


# ------------------------------------------------------- Jacobian data ---

@dataclass(frozen=True)
class JacobianData:
    f: GradedPoly
    F: tuple[GradedPoly, ...]
    order: str
    F_basis: tuple[GradedPoly, ...]      # Groebner basis of <F_j>
    J1_basis: tuple[GradedPoly, ...]     # Groebner basis of <F_j> : x_1...x_n


def jacobian_data(f: GradedPoly, order: str = "grevlex") -> JacobianData:
    xs = GradedPoly.gens(f.vars, f.grading)
    F = tuple(xs[j] * f.diff(j) for j in range(len(f.vars)))
    F_basis = groebner_basis(list(F), order)
    J1 = ideal_quotient(list(F), _product_of_vars(f), order)
    return JacobianData(f, F, order, tuple(F_basis), tuple(J1))


def graded_dims(data: JacobianData, classes: Sequence[Sequence[int]]) -> list[int]:
    """dim R_1(f) in each class, counted by standard monomials."""
    g = data.f.grading
    if g is None:
        raise ValueError("graded dimensions need a Chow grading on f")
    return [len(standard_monomials(data.J1_basis, g.monomials_in_class(c), data.order)) for c in classes]


# ------------------------------------------------------------ residues ---

@dataclass(frozen=True)
class ResiduePairingContext:
    I: tuple[int, ...]
    c_I: Fraction
    J: GradedPoly
    volume: Fraction
    divisor: tuple[int, ...]
    rays: tuple[tuple[int, ...], ...]

    @property
    def d(self) -> int:
        return len(self.rays[0])


def c_I_beta(rays: Sequence[Sequence[int]], divisor: Sequence[int], I: Sequence[int]) -> Fraction:
    """det of the (d+1)x(d+1) matrix with first row b_I and rows <m_j, e_i> for i in I."""
    d = len(rays[0])
    M = [[Fraction(divisor[i]) for i in I]]
    for j in range(d):
        M.append([Fraction(rays[i][j]) for i in I])
    return linalg.det(M)


def compute_J(f: GradedPoly, I: Sequence[int], rays: Sequence[Sequence[int]],
              divisor: Sequence[int]) -> tuple[GradedPoly, Fraction]:
    """J = det(dF_j/dx_i)_{i,j in I} / ((c_I^beta)^2 x_hat_I) and c_I^beta."""
    d = len(rays[0])
    I = tuple(I)
    if len(I) != d + 1 or len(set(I)) != d + 1:
        raise ResidueError(f"index subset {I} must have {d + 1} distinct entries")
    c = c_I_beta(rays, divisor, I)
    if c == 0:
        raise ResidueError(f"c_I^beta vanishes for I = {I}")
    xs = GradedPoly.gens(f.vars, f.grading)
    F = [xs[j] * f.diff(j) for j in range(len(f.vars))]
    D = [[F[j].diff(i) for j in I] for i in I]
    det = _poly_det(D)
    hat = [i for i in range(len(f.vars)) if i not in I]
    terms = {}
    for m, coeff in det.terms.items():
        if any(m[i] < 1 for i in hat):
            raise ResidueError(f"Jacobian determinant is not divisible by x_hat_I for I = {I}")
        terms[tuple(e - (1 if i in hat else 0) for i, e in enumerate(m))] = coeff / (c * c)
    return GradedPoly(f.vars, terms, f.grading), c


def _poly_det(M: list[list[GradedPoly]]) -> GradedPoly:
    """Laplace expansion along the first row (sizes here are at most 5)."""
    n = len(M)
    if n == 1:
        return M[0][0]
    total = M[0][0] * 0
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        term = M[0][j] * _poly_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def polytope_volume(rays: Sequence[Sequence[int]], divisor: Sequence[int]) -> Fraction:
    """Euclidean volume of {m : <m, e_i> >= -b_i}, exactly.

    Vertices are found by solving every d-subset of facet equations; a
    simplex is measured directly, otherwise the facet triangulation of the
    convex hull is coned from the vertex barycentre with exact determinants.
    """
    d = len(rays[0])
    verts = set()
    for S in combinations(range(len(rays)), d):
        A = [[Fraction(x) for x in rays[i]] for i in S]
        if linalg.det(A) == 0:
            continue
        m = linalg.solve(A, [Fraction(-divisor[i]) for i in S])
        if all(sum(a * x for a, x in zip(m, rays[k])) >= -divisor[k] for k in range(len(rays))):
            verts.add(tuple(m))
    verts = sorted(verts)
    if len(verts) < d + 1:
        return Fraction(0)
    if len(verts) == d + 1:
        base = verts[0]
        return abs(linalg.det([[a - b for a, b in zip(v, base)] for v in verts[1:]])) / factorial(d)
    from scipy.spatial import ConvexHull  # combinatorics only; volumes stay exact
    hull = ConvexHull([[float(x) for x in v] for v in verts])
    centre = [sum(v[i] for v in verts) / len(verts) for i in range(d)]
    vol = Fraction(0)
    for simplex in hull.simplices:
        rows = [[verts[k][i] - centre[i] for i in range(d)] for k in simplex]
        vol += abs(linalg.det(rows))
    return vol / factorial(d)


def residue_context(f: GradedPoly, rays: Sequence[Sequence[int]], divisor: Sequence[int],
                    I: Sequence[int] | None = None) -> ResiduePairingContext:
    I = tuple(range(len(rays[0]) + 1)) if I is None else tuple(I)
    J, c = compute_J(f, I, rays, divisor)
    return ResiduePairingContext(I, c, J, polytope_volume(rays, divisor), tuple(divisor),
                                 tuple(tuple(r) for r in rays))


def _class_sum(g, *exps) -> tuple[int, ...]:
    return tuple(sum(col) for col in zip(*exps))


def residue_constant(A: GradedPoly, B: GradedPoly, ctx: ResiduePairingContext,
                     data: JacobianData) -> Fraction:
    """The unique c with A B x_1...x_n - c J in <F_1, ..., F_n>."""
    prod = A * B * _product_of_vars(A)
    g = A.grading
    if g is not None and not prod.is_zero() and not ctx.J.is_zero():
        lhs = next(iter(prod.terms))
        rhs = next(iter(ctx.J.terms))
        if not g.same_class(lhs, rhs):
            raise ResidueError("deg A + deg B does not match the class of J")
    nf_prod = normal_form(prod, data.F_basis, data.order)
    nf_J = normal_form(ctx.J, data.F_basis, data.order)
    if nf_J.is_zero():
        raise ResidueError("J lies in <F_j>; the socle representative vanishes")
    if nf_prod.is_zero():
        return Fraction(0)
    m = next(iter(nf_J.terms))
    c = nf_prod.terms.get(m, Fraction(0)) / nf_J.terms[m]
    if nf_prod != nf_J.scale(c):
        raise ResidueError("normal forms of A B x_1...x_n and J are not proportional")
    return c


def c_ab(a: int, b: int, d: int) -> Fraction:
    e = a * (a + 1) // 2 + b * (b + 1) // 2 + a * a + d - 1
    return Fraction((-1) ** e, factorial(a) * factorial(b))


@dataclass(frozen=True)
class PairingValue:
    """coefficient * i^imaginary_power * pi^pi_power."""

    coefficient: Fraction
    pi_power: int
    imaginary_power: int

    def to_str(self) -> str:
        unit = {0: "", 1: "i ", 2: "-", 3: "-i "}[self.imaginary_power % 4]
        return f"{unit}{self.coefficient} pi^{self.pi_power}"


def pairing_value(c: Fraction, a: int, b: int, ctx: ResiduePairingContext) -> PairingValue:
    """c (-2 pi i)^d c_ab d! Vol(Delta_D)."""
    d = ctx.d
    if a + b != d - 1 or a < 0 or b < 0:
        raise ResidueError(f"a + b must equal {d - 1}, got a = {a}, b = {b}")
    coeff = Fraction(c) * (-2) ** d * c_ab(a, b, d) * factorial(d) * ctx.volume
    # i^d, folded into the sign when d is even
    if d % 2 == 0:
        coeff *= (-1) ** (d // 2)
        return PairingValue(coeff, d, 0)
    coeff *= (-1) ** (d // 2)
    return PairingValue(coeff, d, 1)


# --------------------------------------------------------------- quintic ---

@dataclass(frozen=True)
class QuinticCupProduct:
    psi: Fraction
    order: str
    c: Fraction
    c_I: Fraction
    volume: Fraction
    pairings: dict                 # (a, b) -> PairingValue
    graded_dims: tuple[int, ...]   # classes 0, beta, 2 beta, 3 beta

    @property
    def normalized_c(self) -> Fraction:
        return self.c * (self.psi ** 5 + 3125)


QUINTIC_DIVISOR = (1, 1, 1, 1, 1)


def quintic_cup_product(psi, order: str = "grevlex") -> QuinticCupProduct:
    psi = check_psi(psi)
    f = quintic_polynomial(psi)
    data = jacobian_data(f, order)
    ctx = residue_context(f, QUINTIC_RAYS, QUINTIC_DIVISOR)
    m = _product_of_vars(f)
    one = GradedPoly.constant(f.vars, 1, f.grading)
    # check the representatives of H^{3,0} (x) H^{0,3} and H^{2,1} (x) H^{1,2} give the same c
    c03 = residue_constant(one, m ** 3, ctx, data)
    c12 = residue_constant(m, m ** 2, ctx, data)
    if c03 != c12:
        raise ResidueError(f"representative choices disagree: {c03} vs {c12}")
    pairings = {(0, 3): pairing_value(c03, 0, 3, ctx), (1, 2): pairing_value(c12, 1, 2, ctx)}
    dims = tuple(graded_dims(data, [tuple(k for _ in range(5)) for k in range(4)]))
    return QuinticCupProduct(psi, order, c03, ctx.c_I, ctx.volume, pairings, dims)


def _threads() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class ResidueFit:
    values: dict            # psi -> c
    numerator: Fraction | None

    @property
    def ok(self) -> bool:
        return self.numerator is not None


def fit_residue_constant(psis: Sequence = (1, 2, 3, 7), order: str = "grevlex") -> ResidueFit:
    """Check c(psi) (psi^5 + 5^5) is the same constant at every specialization."""
    psis = [check_psi(p) for p in psis]
    n = _threads()
    if n > 1 and len(psis) > 1:
        with ProcessPoolExecutor(max_workers=min(n, len(psis))) as ex:
            results = list(ex.map(quintic_cup_product, psis, [order] * len(psis)))
    else:
        results = [quintic_cup_product(p, order) for p in psis]
    values = {r.psi: r.c for r in results}
    nums = {r.normalized_c for r in results}
    return ResidueFit(values, nums.pop() if len(nums) == 1 else None)
