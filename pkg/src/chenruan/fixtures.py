"""Fixed input data for the mirror quintic family.

The monodromy matrices on H^1 of the genus-two covers and the Hodge
numbers of X are transcribed inputs; everything else is computed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .polynomial import ChowGrading, GradedPoly, variables
from .toric import Fan, mirror_quintic_fan

QUINTIC_RAYS = ((4, -1, -1, -1), (-1, 4, -1, -1), (-1, -1, 4, -1), (-1, -1, -1, 4), (-1, -1, -1, -1))

# action of lambda_1^* on H^1(Sigma; Z) in the basis (alpha, beta, gamma, delta)
# dual to the symplectic homology basis (a1, b1, a2, b2); key is k with g2 = g1^k
MONODROMY_H1_COHOMOLOGY: dict[int, tuple[tuple[int, ...], ...]] = {
    1: ((-1, -1, 0, 1), (1, 0, 0, -1), (0, 0, 0, -1), (0, -1, 1, 0)),
    2: ((0, 0, -1, -1), (1, 0, 0, -1), (1, 0, 0, 0), (-1, 1, -1, -1)),
    3: ((0, -1, 0, 0), (1, 0, -1, -1), (0, 0, -1, -1), (0, -1, 1, 0)),
}

# action of lambda_1 on H_1(Sigma; Z) in the basis (a1, b1, a2, b2)
MONODROMY_H1_HOMOLOGY: dict[int, tuple[tuple[int, ...], ...]] = {
    1: ((-1, 1, 0, 0), (-1, 0, 0, -1), (0, 0, 0, 1), (1, -1, -1, 0)),
    2: ((0, 1, 1, -1), (0, 0, 0, 1), (-1, 0, 0, -1), (-1, -1, 0, -1)),
    3: ((0, 1, 0, 0), (-1, 0, 0, -1), (0, -1, -1, 1), (0, -1, -1, 0)),
}

# Eigenvalue-1 eigenvectors of the 6x6 obstruction matrices, as
# {position: {zeta exponent: coefficient}} with zeta = exp(2 pi i/5); key (n, k)
EIGENVECTOR_TABLE: dict[tuple[int, int], dict[int, dict[int, int]]] = {
    (1, 1): {1: {3: 1}, 4: {0: 1}},
    (2, 1): {1: {1: 1}, 4: {0: 1}},
    (3, 1): {0: {1: 1}, 3: {0: 1}},
    (4, 1): {0: {3: 1}, 3: {0: 1}},
    (1, 2): {1: {1: 1}, 4: {0: 1}},
    (2, 2): {0: {3: 1}, 3: {0: 1}},
    (3, 2): {1: {3: 1}, 4: {0: 1}},
    (4, 2): {0: {1: 1}, 3: {0: 1}},
    # 2 Re(zeta^2) = zeta^2 + zeta^3 and 2 Re(zeta) = zeta + zeta^4
    (1, 3): {1: {2: 1, 3: 1}, 4: {0: 1}},
    (2, 3): {1: {1: 1, 4: 1}, 4: {0: 1}},
    (3, 3): {0: {1: 1, 4: 1}, 3: {0: 1}},
    (4, 3): {0: {2: 1, 3: 1}, 3: {0: 1}},
}


@dataclass(frozen=True)
class HodgeFixture:
    """Hodge numbers of the untwisted space and of each sector geometry."""

    untwisted: Mapping[tuple[int, int], int]
    geometries: Mapping[str, Mapping[tuple[int, int], int]] = field(default_factory=dict)

    def __post_init__(self):
        for name, table in [("untwisted", self.untwisted), *self.geometries.items()]:
            for (p, q), h in table.items():
                if table.get((q, p), 0) != h:
                    raise ValueError(f"Hodge table {name!r} is not symmetric at ({p},{q})")

    def table(self, geometry: str) -> Mapping[tuple[int, int], int]:
        try:
            return self.geometries[geometry]
        except KeyError:
            raise KeyError(f"no Hodge data for sector geometry {geometry!r}") from None


MIRROR_QUINTIC_HODGE = HodgeFixture(
    untwisted={(0, 0): 1, (1, 1): 1, (2, 2): 1, (3, 3): 1,
               (3, 0): 1, (0, 3): 1, (2, 1): 1, (1, 2): 1},
    geometries={"point": {(0, 0): 1}, "curve": {(0, 0): 1, (1, 1): 1}},
)

POINT_HODGE = HodgeFixture(untwisted={(0, 0): 1}, geometries={"point": {(0, 0): 1}})


def quintic_grading() -> ChowGrading:
    return ChowGrading(QUINTIC_RAYS)


def quintic_polynomial(psi) -> GradedPoly:
    """f = x1^5 + ... + x5^5 + psi x1 x2 x3 x4 x5."""
    psi = Fraction(psi)
    terms = {tuple(5 * int(i == j) for j in range(5)): 1 for i in range(5)}
    terms[(1, 1, 1, 1, 1)] = psi
    return GradedPoly(variables(5), terms, quintic_grading())


def check_psi(psi) -> Fraction:
    """Reject psi with psi^5 = -5^5 (singular member); over Q this is psi = -5."""
    psi = Fraction(psi)
    if psi ** 5 == -3125:
        raise ValueError(f"psi = {psi} gives a singular member (psi^5 = -5^5)")
    return psi


def quintic_fan() -> Fan:
    return mirror_quintic_fan()
