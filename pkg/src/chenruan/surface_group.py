"""Covers of the three-pointed orbifold sphere and their period matrices.

The holomorphic one-forms of a genus-two cover are normalized as
omega_1 = alpha + p beta + q delta and omega_2 = gamma + q beta + s delta
in the cohomology basis dual to a symplectic basis (a1, b1, a2, b2).
A monodromy matrix acts on coefficient column vectors in that basis.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import linalg
from .cyclotomic import CyclotomicNumber, cyclotomic_polynomial, zeta
from .fixtures import MONODROMY_H1_COHOMOLOGY, MONODROMY_H1_HOMOLOGY

TOL = 1e-9

SYMPLECTIC_J = ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0))


class PeriodError(ValueError):
    """No admissible period matrix (e.g. a basis with the wrong orientation)."""


@dataclass(frozen=True)
class OrbifoldSphere:
    orders: tuple[int, int, int]
    group_order: int

    def __post_init__(self):
        if self.group_order < 1 or any(k < 1 for k in self.orders):
            raise ValueError("orbifold orders and group order must be positive")


def cover_genus(sphere: OrbifoldSphere) -> int:
    """Genus of the |K|-sheeted cover branched with the given orders (Riemann-Hurwitz)."""
    K = sphere.group_order
    for k in sphere.orders:
        if K % k:
            raise ValueError(f"orbifold order {k} does not divide the group order {K}")
    twice = 2 + K - sum(K // k for k in sphere.orders)
    if twice % 2 or twice < 0:
        raise ValueError(f"inconsistent cover data {sphere}: 2g = {twice}")
    return twice // 2


# ------------------------------------------------------------- monodromy ---

def monodromy_matrix(k: int) -> list[list[int]]:
    try:
        return [list(r) for r in MONODROMY_H1_COHOMOLOGY[k]]
    except KeyError:
        raise ValueError(f"no monodromy fixture for k = {k}; expected 1, 2 or 3") from None


def is_symplectic(M: Sequence[Sequence[int]], J=SYMPLECTIC_J) -> bool:
    J = [list(r) for r in J]
    lhs = linalg.matmul(linalg.matmul(linalg.transpose(M), J), M)
    return lhs == J


def matrix_order(M: Sequence[Sequence[int]], limit: int = 100) -> int | None:
    n = len(M)
    ident = [[int(i == j) for j in range(n)] for i in range(n)]
    P = [list(r) for r in M]
    for e in range(1, limit + 1):
        if P == ident:
            return e
        P = linalg.matmul(P, M)
    return None


def charpoly_int(M: Sequence[Sequence[int]]) -> tuple[int, ...]:
    cp = linalg.charpoly([[Fraction(x) for x in r] for r in M])
    return tuple(int(c) for c in cp)


def is_cyclotomic_charpoly(M, n: int = 5) -> bool:
    return charpoly_int(M) == cyclotomic_polynomial(n)


def homology_transpose_check(k: int = 1) -> bool:
    """The cohomology fixture is the transpose of the homology matrix."""
    return linalg.transpose(MONODROMY_H1_HOMOLOGY[k]) == monodromy_matrix(k)


# --------------------------------------------------------- period solver ---

@dataclass(frozen=True)
class PeriodMatrix:
    p: CyclotomicNumber
    q: CyclotomicNumber
    s: CyclotomicNumber
    eigen_exponents: tuple[int, int]   # the eigenvalues zeta^j spanning H^{1,0}
    imP_posdef: bool

    def numeric(self) -> tuple[complex, complex, complex]:
        return complex(self.p), complex(self.q), complex(self.s)

    def forms(self) -> list[list[CyclotomicNumber]]:
        """omega_1, omega_2 as coefficient vectors in (alpha, beta, gamma, delta)."""
        one = CyclotomicNumber.rational(self.p.n, 1)
        zero = one * 0
        return [[one, self.p, zero, self.q], [zero, self.q, one, self.s]]


@dataclass(frozen=True)
class PeriodSolution:
    k: int | None
    solutions: tuple[PeriodMatrix, ...]
    selected: PeriodMatrix

    @property
    def count(self) -> int:
        return len(self.solutions)


def _imag_posdef(p: CyclotomicNumber, q: CyclotomicNumber, s: CyclotomicNumber) -> bool:
    # Im x = (x - xbar)/(2i); det Im P = -(a_p a_s - a_q^2)/4 with a_x = x - xbar
    if p.imag_sign() <= 0:
        return False
    ap = p - p.conjugate()
    aq = q - q.conjugate()
    as_ = s - s.conjugate()
    return (ap * as_ - aq * aq).real_sign() < 0


def solve_period_matrix(M: Sequence[Sequence[int]], n: int = 5, k: int | None = None) -> PeriodSolution:
    """All symmetric normalized period matrices with an M-invariant span.

    The eigenlines of M over Q(zeta_n) are paired in every way; a pair gives
    a solution when its (alpha, gamma) block is invertible and the induced
    P is symmetric.  The selected solution is the unique one with Im P > 0.
    """
    Mz = linalg.cyclotomic_matrix(n, M)
    lines = []
    for j in range(1, n):
        if math.gcd(j, n) != 1:
            continue
        basis = linalg.eigenspace(Mz, zeta(n, j))
        for v in basis:
            lines.append((j, v))
    if len(lines) != 4:
        raise PeriodError(f"expected four eigenlines over Q(zeta_{n}), found {len(lines)}")
    sols = []
    for (j1, u), (j2, w) in combinations(lines, 2):
        block = [[u[0], w[0]], [u[2], w[2]]]
        if linalg.det(block).is_zero():
            continue
        binv = linalg.inverse(block)
        W = [[u[i], w[i]] for i in range(4)]
        Wn = linalg.matmul(W, binv)  # columns are omega_1, omega_2
        p, q1 = Wn[1][0], Wn[3][0]
        q2, s = Wn[1][1], Wn[3][1]
        if q1 != q2:
            continue
        sols.append(PeriodMatrix(p, q1, s, (j1, j2), _imag_posdef(p, q1, s)))
    good = [P for P in sols if P.imP_posdef]
    if len(good) != 1:
        raise PeriodError(f"found {len(good)} solutions with Im P positive definite; "
                          "check the orientation of the symplectic basis")
    return PeriodSolution(k, tuple(sols), good[0])


def span_is_invariant(M: Sequence[Sequence[int]], P: PeriodMatrix) -> bool:
    """Exact check that M maps span{omega_1, omega_2} into itself."""
    Mz = linalg.cyclotomic_matrix(P.p.n, M)
    forms = P.forms()
    for w in forms:
        img = linalg.matvec(Mz, w)
        # coordinates are forced by the alpha and gamma entries
        recon = [img[0] * a + img[2] * b for a, b in zip(*forms)]
        if recon != img:
            return False
    return True


def action_on_forms(M: Sequence[Sequence[int]], P: PeriodMatrix) -> list[list[CyclotomicNumber]]:
    """Matrix B with lambda^* omega_j = sum_i B[i][j] omega_i."""
    Mz = linalg.cyclotomic_matrix(P.p.n, M)
    cols = [linalg.matvec(Mz, w) for w in P.forms()]
    return [[cols[0][0], cols[1][0]], [cols[0][2], cols[1][2]]]


# closed forms of the selected solutions, for comparison in the complex plane
def closed_form_periods(k: int) -> tuple[complex, complex, complex]:
    r5 = math.sqrt(5)
    pi = math.pi
    if k == 1:
        return (cmath.exp(3j * pi / 5), (1 + 1j * math.sqrt(5 - 2 * r5)) / 2, cmath.exp(2j * pi / 5))
    if k == 2:
        a = math.sqrt((5 - r5) / 2)
        return (a * cmath.exp(3j * pi / 10), 2 * math.sin(pi / 10) * cmath.exp(1j * pi / 5),
                a * cmath.exp(7j * pi / 10))
    if k == 3:
        return ((1j / 10) * (5 + 3 * r5) * math.sqrt(5 - 2 * r5),
                math.sqrt((5 - r5) / 10) * cmath.exp(-1j * pi / 10),
                math.sqrt((5 + r5) / 10) * cmath.exp(7j * pi / 10))
    raise ValueError(f"no closed form for k = {k}")


# ------------------------------------------------------- triangle group ---

@dataclass(frozen=True)
class TriangleReport:
    v: float
    z0: complex
    R: float
    checks: dict[str, bool]
    residuals: dict[str, float]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def family_ok(self, family: str) -> bool:
        """All order-5 relations for one family of maps ("printed" or "reflection")."""
        names = [n for n in self.checks if n.startswith(family + ":")]
        return bool(names) and all(self.checks[n] for n in names)


def _mobius_mul(A, B):
    return [[A[0][0] * B[0][0] + A[0][1] * B[1][0], A[0][0] * B[0][1] + A[0][1] * B[1][1]],
            [A[1][0] * B[0][0] + A[1][1] * B[1][0], A[1][0] * B[0][1] + A[1][1] * B[1][1]]]


def _mobius_pow(A, e):
    out = [[1, 0], [0, 1]]
    for _ in range(e):
        out = _mobius_mul(out, A)
    return out


def _mobius_inv(A):
    return [[A[1][1], -A[0][1]], [-A[1][0], A[0][0]]]


def _conj(A):
    return [[complex(x).conjugate() for x in row] for row in A]


def _compose_reflections(A, B):
    """Holomorphic map A o B for anti-Moebius maps z -> A(conj z), z -> B(conj z)."""
    return _mobius_mul(A, _conj(B))


def _identity_residual(A) -> float:
    """Distance of a Moebius matrix from the identity map (scale-free)."""
    scale = max(abs(A[0][0]), abs(A[1][1]))
    return max(abs(A[0][1]), abs(A[1][0]), abs(A[0][0] - A[1][1])) / scale


def _apply(A, z):
    return (A[0][0] * z + A[0][1]) / (A[1][0] * z + A[1][1])


def _relations(prefix: str, lam1, lam2) -> dict[str, float]:
    lam12 = _mobius_mul(lam1, lam2)
    lam3 = _mobius_inv(lam12)
    return {
        f"{prefix}: lambda1^5": _identity_residual(_mobius_pow(lam1, 5)),
        f"{prefix}: lambda2^5": _identity_residual(_mobius_pow(lam2, 5)),
        f"{prefix}: (lambda1 lambda2)^5": _identity_residual(_mobius_pow(lam12, 5)),
        f"{prefix}: lambda1 lambda2 lambda3": _identity_residual(_mobius_mul(lam12, lam3)),
    }


def verify_triangle_group(theta: float = math.pi / 5) -> TriangleReport:
    """Equilateral hyperbolic triangle o, v, w with angles theta in the Poincare disk.

    Two families of maps are checked: the closed-form maps
    lambda1 = exp(-4 i theta) z, lambda2 = exp(4 i theta)(conj(z0) z + R^2 - |z0|^2)/(z - z0),
    and the compositions L o M, M o N of reflections in the sides
    L = [o, v], M = [o, w], N = [v, w] built from the computed geometry.
    """
    # vertex v on the real axis: cosh(side) = cos(t)(1+cos(t))/sin(t)^2, radius tanh(side/2)
    side = math.acosh(math.cos(theta) / (1 - math.cos(theta)))
    v = math.tanh(side / 2)
    w = v * cmath.exp(1j * theta)
    # geodesic through v and w: circle orthogonal to the unit circle, centred on arg theta/2
    rho = (v * v + 1) / (2 * v * math.cos(theta / 2))
    z0 = rho * cmath.exp(1j * theta / 2)
    R = math.sqrt(rho * rho - 1)

    r5 = math.sqrt(5)
    v_closed = math.sqrt(2 / (1 + r5))
    z0_closed = math.sqrt((5 + 3 * r5) / 10) * cmath.exp(1j * math.pi / 10)
    R_closed = (-1 + r5) / (2 * 5 ** 0.25)

    residuals = {
        "v_closed_form": abs(v - v_closed),
        "z0_closed_form": abs(z0 - z0_closed),
        "R_closed_form": abs(R - R_closed),
        "R_equals_Im_z0_sec_theta": abs(R - z0.imag / math.cos(theta)),
    }

    e = cmath.exp(4j * theta)
    printed1 = [[cmath.exp(-4j * theta), 0], [0, 1]]
    printed2 = [[e * z0.conjugate(), e * (R * R - abs(z0) ** 2)], [1, -z0]]
    residuals.update(_relations("printed", printed1, printed2))

    refl_L = [[1, 0], [0, 1]]                              # z -> conj z
    refl_M = [[cmath.exp(2j * theta), 0], [0, 1]]          # z -> e^{2 i theta} conj z
    refl_N = [[z0, R * R - abs(z0) ** 2], [1, -z0.conjugate()]]  # inversion in |z - z0| = R
    lam1 = _compose_reflections(refl_L, refl_M)
    lam2 = _compose_reflections(refl_M, refl_N)
    residuals.update(_relations("reflection", lam1, lam2))
    residuals["reflection: lambda1 fixes o"] = abs(_apply(lam1, 0))
    residuals["reflection: lambda2 fixes w"] = abs(_apply(lam2, w) - w)
    residuals["reflection: lambda2 preserves the disk"] = max(
        abs(abs(_apply(lam2, cmath.exp(1j * t))) - 1) for t in (0.1, 1.3, 2.9, 4.4))

    checks = {name: r < TOL for name, r in residuals.items()}
    return TriangleReport(v, z0, R, checks, residuals)
