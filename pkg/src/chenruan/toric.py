"""Simplicial fans, box points, local groups and quotient fans."""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd
from typing import Iterable, Sequence

from . import linalg


class FanError(ValueError):
    """Invalid fan data (non-primitive ray, non-simplicial cone, unknown cone)."""


@dataclass(frozen=True)
class Cone:
    indices: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.indices)

    @property
    def rays(self) -> frozenset[int]:
        return frozenset(self.indices)

    def label(self, base: int = 1) -> str:
        return "<" + ",".join(f"v{i + base}" for i in self.indices) + ">"


@dataclass(frozen=True)
class GroupElement:
    """Element of a local group, stored by its rational weights on every ray.

    `weights[i]` in [0, 1) is the exponent of exp(2 pi i .) on the Cox
    coordinate x_i; it vanishes off the home cone.  `box_point` is
    sum_i weights[i] * v_i, a lattice point of N.
    """

    home: tuple[int, ...]
    weights: tuple[Fraction, ...]
    box_point: tuple[int, ...]

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(self.weights) if a)

    @property
    def cone_weights(self) -> tuple[Fraction, ...]:
        return tuple(self.weights[i] for i in self.home)

    def is_identity(self) -> bool:
        return not any(self.weights)

    def age(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def exponents(self, order: int) -> tuple[int, ...]:
        """Exponents k_i with g = (zeta_order^k_1, ...); weights must lie in (1/order)Z."""
        out = []
        for a in self.weights:
            k = a * order
            if k.denominator != 1:
                raise ValueError(f"weight {a} is not a multiple of 1/{order}")
            out.append(int(k))
        return tuple(out)

    def order(self) -> int:
        from math import lcm
        return lcm(*(a.denominator for a in self.weights))

    def label(self, root: str = "z") -> str:
        n = self.order() if any(self.weights) else 1
        parts = []
        for k in self.exponents(n) if n > 1 else (0,) * len(self.weights):
            parts.append("1" if k == 0 else (root if k == 1 else f"{root}^{k}"))
        return "(" + ",".join(parts) + ")"


def _primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


class Fan:
    """Simplicial fan given by rays and maximal cones; faces generated internally."""

    def __init__(self, rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]],
                 name: str = "custom"):
        if not rays:
            raise FanError("fan has no rays")
        dim = len(rays[0])
        self.name = name
        self.dim = dim
        self.rays: tuple[tuple[int, ...], ...] = tuple(tuple(int(x) for x in r) for r in rays)
        for i, r in enumerate(self.rays):
            if len(r) != dim:
                raise FanError(f"ray {i} has length {len(r)}, expected {dim}")
            if not _primitive(r):
                raise FanError(f"ray {i} = {list(r)} is not primitive")
        maxes = []
        for c in max_cones:
            idx = tuple(sorted(set(int(i) for i in c)))
            if any(i < 0 or i >= len(self.rays) for i in idx):
                raise FanError(f"cone {list(c)} refers to a missing ray")
            gens = [[Fraction(x) for x in self.rays[i]] for i in idx]
            if idx and linalg.rank(gens) != len(idx):
                raise FanError(f"cone {list(c)} is not simplicial")
            maxes.append(idx)
        self.max_cones: tuple[tuple[int, ...], ...] = tuple(sorted(set(maxes)))
        faces = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                faces.update(combinations(c, k))
        self._faces = frozenset(faces)

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def has_cone(self, indices: Iterable[int]) -> bool:
        return tuple(sorted(set(indices))) in self._faces

    def cone(self, indices: Iterable[int]) -> Cone:
        idx = tuple(sorted(set(indices)))
        if idx not in self._faces:
            raise FanError(f"{list(idx)} is not a cone of the fan")
        return Cone(idx, tuple(self.rays[i] for i in idx))

    def cones(self, dim: int | None = None) -> list[Cone]:
        return [Cone(c, tuple(self.rays[i] for i in c)) for c in sorted(self._faces, key=lambda c: (len(c), c))
                if dim is None or len(c) == dim]

    # group elements ----------------------------------------------------------------
    def element(self, weights: Sequence, home: Sequence[int] | None = None) -> GroupElement:
        """Group element from full weight vector (reduced mod 1); validates integrality."""
        w = tuple(Fraction(a) % 1 for a in weights)
        if len(w) != self.nrays:
            raise ValueError(f"expected {self.nrays} weights, got {len(w)}")
        r = [sum((w[i] * self.rays[i][k] for i in range(self.nrays)), Fraction(0))
             for k in range(self.dim)]
        if any(x.denominator != 1 for x in r):
            raise ValueError(f"weights {w} do not give a lattice point")
        sup = tuple(i for i, a in enumerate(w) if a)
        home = tuple(sorted(home)) if home is not None else sup
        if not set(sup) <= set(home):
            raise ValueError("weights supported outside the home cone")
        return GroupElement(home, w, tuple(int(x) for x in r))

    def element_from_exponents(self, exps: Sequence[int], order: int = 5) -> GroupElement:
        return self.element([Fraction(k, order) for k in exps])

    def identity(self) -> GroupElement:
        return self.element([0] * self.nrays, home=())

    def multiply(self, g: GroupElement, h: GroupElement) -> GroupElement:
        home = tuple(sorted(set(g.home) | set(h.home)))
        return self.element([a + b for a, b in zip(g.weights, h.weights)], home)

    def inverse(self, g: GroupElement) -> GroupElement:
        return self.element([-a for a in g.weights], g.home)

    def support_cone(self, g: GroupElement) -> Cone:
        """Cone whose relative interior contains the box point of g."""
        return self.cone(g.support)


def local_group(cone: Cone, fan: Fan) -> list[GroupElement]:
    """All box points of the cone by a bounded search over the parallelepiped."""
    k = cone.dim
    n = fan.nrays
    if k == 0:
        return [fan.identity()]
    gens = [[Fraction(x) for x in g] for g in cone.generators]
    if linalg.rank(gens) != k:
        raise FanError(f"cone {cone.label()} is not simplicial")
    d = fan.dim
    # choose k coordinates on which the generators are independent
    gt = linalg.transpose(gens)  # d x k
    sub_rows = linalg.rref(gens)[1]
    square = [gt[r] for r in sub_rows]  # k x k, invertible
    inv = linalg.inverse(square)
    lo = [0] * d
    hi = [0] * d
    for c in range(d):
        for g in cone.generators:
            if g[c] > 0:
                hi[c] += g[c]
            else:
                lo[c] += g[c]
    from math import lcm
    den = lcm(*(x.denominator for row in inv for x in row))
    inv_int = [[int(x * den) for x in row] for row in inv]
    out = []
    for r in product(*(range(lo[c], hi[c] + 1) for c in range(d))):
        num = [sum(row[j] * r[c] for j, c in enumerate(sub_rows)) for row in inv_int]
        if any(x < 0 or x >= den for x in num):
            continue
        if any(sum(num[j] * cone.generators[j][c] for j in range(k)) != r[c] * den
               for c in range(d)):
            continue
        full = [Fraction(0)] * n
        for j, i in enumerate(cone.indices):
            full[i] = Fraction(num[j], den)
        out.append(GroupElement(cone.indices, tuple(full), tuple(r)))
    out.sort(key=lambda g: g.weights)
    return out


def interior_box_points(cone: Cone, fan: Fan) -> list[GroupElement]:
    """Box points in the relative interior (all weights positive)."""
    return [g for g in local_group(cone, fan) if all(g.weights[i] > 0 for i in cone.indices)]


def cone_det(cone: Cone) -> int:
    """Multiplicity of the cone: gcd of the maximal minors of its generator matrix.

    For a full-dimensional cone this is |det F|.
    """
    gens = [[Fraction(x) for x in g] for g in cone.generators]
    k = len(gens)
    if k == 0:
        return 1
    out = 0
    for cols in combinations(range(len(gens[0])), k):
        out = gcd(out, int(linalg.det([[row[j] for j in cols] for row in gens])))
    return abs(out)


def orbit_closure_meet(t1: Cone, t2: Cone, fan: Fan) -> Cone | None:
    """Cone spanned by the union of rays, or None when the orbit closures are disjoint."""
    union = set(t1.indices) | set(t2.indices)
    if fan.has_cone(union):
        return fan.cone(union)
    return None


# ----------------------------------------------------------------- quotient fans ---

@dataclass(frozen=True)
class QuotientFanData:
    source: Cone
    m_basis: tuple[tuple[int, ...], ...]        # basis of tau-perp in M
    n_basis: tuple[tuple[int, ...], ...]        # lifts in N of the dual basis of N(tau)
    projected_rays: dict                         # ray index -> image in N(tau) = Z^k
    max_cones: tuple[tuple[int, ...], ...]       # ray indices (outside tau) of maximal cones

    @property
    def dim(self) -> int:
        return len(self.m_basis)

    def pairing(self) -> list[list[int]]:
        return [[sum(a * b for a, b in zip(m, n)) for n in self.n_basis] for m in self.m_basis]

    def cone_matrix(self, cone: tuple[int, ...]) -> list[list[int]]:
        return [list(self.projected_rays[j]) for j in cone]


def _right_inverse(C: list[list[int]]) -> list[list[int]]:
    """Integer vectors n_j with C n_j = e_j, for C with saturated row lattice."""
    r = len(C)
    ncols = len(C[0])
    sols = []
    for j in range(r):
        target = [int(i == j) for i in range(r)]
        # augmented kernel: find x in Z^ncols with C x = target via kernel of [C | -target]
        aug = [row + [-t] for row, t in zip(C, target)]
        ker = linalg.integer_kernel(aug)
        # look for a kernel vector with last coordinate 1 (gcd of last coordinates is 1)
        last = [v[-1] for v in ker]
        coeffs = _bezout(last)
        if coeffs is None:
            raise FanError("dual basis is not integral; M basis not saturated")
        x = [sum(c * v[i] for c, v in zip(coeffs, ker)) for i in range(ncols + 1)]
        assert x[-1] == 1
        sols.append(x[:-1])
    return sols


def _bezout(nums: list[int]) -> list[int] | None:
    """Integers c with sum c_i nums_i = 1, or None."""
    coeffs = [0] * len(nums)
    g = 0
    for i, a in enumerate(nums):
        if a == 0:
            continue
        if g == 0:
            g = a
            coeffs[i] = 1
            continue
        # extended gcd of g and a
        old_r, r = g, a
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        coeffs = [c * old_s for c in coeffs]
        coeffs[i] = old_t
        g = old_r
    if abs(g) != 1:
        return None
    if g == -1:
        coeffs = [-c for c in coeffs]
    return coeffs


def quotient_fan(tau: Cone, fan: Fan, m_basis: Sequence[Sequence[int]] | None = None) -> QuotientFanData:
    """Fan of the orbit closure V(tau): star of tau projected to N/N_tau.

    If `m_basis` is given it must be a Z-basis of tau-perp in M.
    """
    if not fan.has_cone(tau.indices):
        raise FanError(f"{tau.label()} is not a cone of the fan")
    d = fan.dim
    if tau.dim == 0:
        computed = [[int(i == j) for j in range(d)] for i in range(d)]
    else:
        computed = linalg.integer_kernel([list(g) for g in tau.generators])
    if m_basis is not None:
        basis = [list(map(int, b)) for b in m_basis]
        if len(basis) != len(computed) or any(
                sum(a * b for a, b in zip(m, g)) for m in basis for g in tau.generators):
            raise FanError("supplied M basis is not a basis of the orthogonal lattice")
        # unimodular relative to the computed basis
        coords = []
        for b in basis:
            sol = linalg.solve(linalg.transpose([[Fraction(x) for x in c] for c in computed]),
                               [Fraction(x) for x in b])
            if sol is None or any(x.denominator != 1 for x in sol):
                raise FanError("supplied M basis is not integral in the orthogonal lattice")
            coords.append(sol)
        if coords and abs(linalg.det(coords)) != 1:
            raise FanError("supplied M basis does not span the orthogonal lattice")
    else:
        basis = computed
    nb = _right_inverse(basis) if basis else []
    star = [c for c in fan.max_cones if set(tau.indices) <= set(c)]
    proj = {}
    maxes = []
    for c in star:
        rest = tuple(j for j in c if j not in tau.indices)
        maxes.append(rest)
        for j in rest:
            proj[j] = tuple(sum(a * b for a, b in zip(m, fan.rays[j])) for m in basis)
    return QuotientFanData(tau, tuple(tuple(b) for b in basis), tuple(tuple(n) for n in nb),
                           dict(sorted(proj.items())), tuple(sorted(maxes)))


# ---------------------------------------------------------------------- fixtures ---

def mirror_quintic_fan() -> Fan:
    rays = [(4, -1, -1, -1), (-1, 4, -1, -1), (-1, -1, 4, -1), (-1, -1, -1, 4), (-1, -1, -1, -1)]
    return Fan(rays, list(combinations(range(5), 4)), name="mirror-quintic")


def projective_space_fan(d: int = 4) -> Fan:
    rays = [tuple(int(i == j) for j in range(d)) for i in range(d)] + [tuple([-1] * d)]
    return Fan(rays, list(combinations(range(d + 1), d)), name="projective-space")


BUILTIN_FANS = {
    "mirror-quintic": mirror_quintic_fan,
    "projective-space": projective_space_fan,
}


def builtin_fan(name: str) -> Fan:
    try:
        return BUILTIN_FANS[name]()
    except KeyError:
        raise FanError(f"unknown builtin fan {name!r}; known: {sorted(BUILTIN_FANS)}") from None


def fan_from_json(text: str, name: str = "file") -> Fan:
    """Parse {"dim", "rays", "max_cones"}; errors name the offending field."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FanError(f"malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise FanError("fan file must contain a JSON object")
    for key in ("dim", "rays", "max_cones"):
        if key not in data:
            raise FanError(f"missing field {key!r}")
    dim = data["dim"]
    if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
        raise FanError(f"field 'dim' must be a positive integer, got {dim!r}")
    rays = data["rays"]
    if not isinstance(rays, list) or not rays:
        raise FanError("field 'rays' must be a nonempty list")
    for i, r in enumerate(rays):
        if not isinstance(r, list) or len(r) != dim or not all(
                isinstance(x, int) and not isinstance(x, bool) for x in r):
            raise FanError(f"field 'rays[{i}]' must be a list of {dim} integers, got {r!r}")
    cones = data["max_cones"]
    if not isinstance(cones, list):
        raise FanError("field 'max_cones' must be a list")
    for i, c in enumerate(cones):
        if not isinstance(c, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in c):
            raise FanError(f"field 'max_cones[{i}]' must be a list of ray indices, got {c!r}")
        if any(x < 0 or x >= len(rays) for x in c):
            raise FanError(f"field 'max_cones[{i}]' refers to a missing ray")
    return Fan(rays, cones, name=name)
