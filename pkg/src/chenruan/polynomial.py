"""Sparse multivariate polynomials with rational coefficients.

Terms are stored as {exponent tuple: Fraction}.  A polynomial may carry a
grading; for hypersurfaces in a toric variety the relevant grading is by
the class group, handled by ChowGrading.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Callable, Iterable, Mapping, Sequence

Monomial = tuple[int, ...]
Terms = dict[Monomial, Fraction]


# ---------------------------------------------------------------- orders ---

def _lex_key(e: Monomial):
    return e


def _grlex_key(e: Monomial):
    return (sum(e), e)


def _grevlex_key(e: Monomial):
    return (sum(e), tuple(-x for x in reversed(e)))


ORDERS: dict[str, Callable[[Monomial], tuple]] = {
    "lex": _lex_key,
    "grlex": _grlex_key,
    "grevlex": _grevlex_key,
}


def order_key(order: str) -> Callable[[Monomial], tuple]:
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}; expected one of {sorted(ORDERS)}")


# ---------------------------------------------------- raw term utilities ---

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Monomial, a: Monomial) -> Monomial:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def leading(terms: Mapping[Monomial, Fraction], key) -> Monomial:
    return max(terms, key=key)


def terms_add(a: Terms, b: Mapping[Monomial, Fraction], scale=1, shift: Monomial | None = None) -> Terms:
    """In-place a += scale * x^shift * b; returns a."""
    for m, c in b.items():
        if shift is not None:
            m = mono_mul(m, shift)
        v = a.get(m, 0) + scale * c
        if v:
            a[m] = v
        else:
            a.pop(m, None)
    return a


def terms_mul(a: Mapping[Monomial, Fraction], b: Mapping[Monomial, Fraction]) -> Terms:
    out: Terms = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            v = out.get(m, 0) + ca * cb
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


# --------------------------------------------------------------- grading ---

@dataclass(frozen=True)
class ChowGrading:
    """Grading of Cox-ring monomials by the class group Cl(Y), torsion included.

    Two exponent vectors have the same class iff their difference is
    (<m, v_i>)_i for an integral m.  Only fans with n = d + 1 rays (rank-one
    class group) are supported for enumeration; class comparison works in
    general.
    """

    rays: tuple[tuple[int, ...], ...]

    @property
    def nvars(self) -> int:
        return len(self.rays)

    def same_class(self, e1: Sequence[int], e2: Sequence[int]) -> bool:
        diff = [a - b for a, b in zip(e1, e2)]
        return _solve_integral_pairing(self.rays, tuple(diff)) is not None

    @property
    def weights(self) -> tuple[int, ...]:
        """Positive integer relation sum w_i v_i = 0 (total-degree weights)."""
        return _positive_relation(self.rays)

    def monomials_in_class(self, base: Sequence[int]) -> list[Monomial]:
        """All exponent vectors with the class of `base`."""
        w = self.weights
        target = sum(a * b for a, b in zip(w, base))
        out = []
        for e in _weighted_compositions(w, target):
            if self.same_class(e, base):
                out.append(e)
        return sorted(out)


@lru_cache(maxsize=None)
def _positive_relation(rays: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    from .linalg import nullspace

    n = len(rays)
    d = len(rays[0])
    mat = [[Fraction(rays[j][i]) for j in range(n)] for i in range(d)]
    ker = nullspace(mat)
    if len(ker) != 1:
        raise NotImplementedError("class-group enumeration needs exactly one ray relation")
    v = ker[0]
    if all(x <= 0 for x in v):
        v = [-x for x in v]
    if not all(x > 0 for x in v):
        raise ValueError("ray relation is not positive; fan is not complete")
    from math import lcm, gcd
    den = lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = gcd(*ints)
    return tuple(x // g for x in ints)


@lru_cache(maxsize=None)
def _solve_integral_pairing(rays, diff) -> tuple[Fraction, ...] | None:
    """Integral m with <m, v_i> = diff_i for all i, or None."""
    from .linalg import solve

    n = len(rays)
    d = len(rays[0])
    mat = [[Fraction(rays[i][j]) for j in range(d)] for i in range(n)]
    sol = solve(mat, [Fraction(x) for x in diff])
    if sol is None or any(x.denominator != 1 for x in sol):
        return None
    return tuple(sol)


def _weighted_compositions(w: Sequence[int], total: int):
    n = len(w)

    def rec(i, remaining, acc):
        if i == n - 1:
            if remaining % w[i] == 0:
                yield tuple(acc + [remaining // w[i]])
            return
        for k in range(remaining // w[i] + 1):
            yield from rec(i + 1, remaining - k * w[i], acc + [k])

    if total < 0:
        return
    yield from rec(0, total, [])


# ------------------------------------------------------------ GradedPoly ---

class GradedPoly:
    """Polynomial in named variables with Fraction coefficients."""

    __slots__ = ("vars", "terms", "grading")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, object] | None = None,
                 grading: ChowGrading | None = None):
        variables = tuple(variables)
        clean: Terms = {}
        for m, c in (terms or {}).items():
            m = tuple(int(x) for x in m)
            if len(m) != len(variables):
                raise ValueError(f"exponent {m} has wrong length for variables {variables}")
            if any(x < 0 for x in m):
                raise ValueError(f"negative exponent in {m}")
            c = Fraction(c)
            if c:
                clean[m] = clean.get(m, 0) + c
                if not clean[m]:
                    del clean[m]
        object.__setattr__(self, "vars", variables)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "grading", grading)

    def __setattr__(self, key, value):
        raise AttributeError("GradedPoly is immutable")

    # constructors -----------------------------------------------------------
    @classmethod
    def gens(cls, variables: Sequence[str], grading: ChowGrading | None = None) -> list[GradedPoly]:
        n = len(variables)
        return [cls(variables, {tuple(int(i == j) for j in range(n)): 1}, grading) for i in range(n)]

    @classmethod
    def constant(cls, variables: Sequence[str], c, grading: ChowGrading | None = None) -> GradedPoly:
        return cls(variables, {(0,) * len(variables): c}, grading)

    @classmethod
    def monomial(cls, variables: Sequence[str], exps: Sequence[int], c=1,
                 grading: ChowGrading | None = None) -> GradedPoly:
        return cls(variables, {tuple(exps): c}, grading)

    @classmethod
    def parse(cls, text: str, variables: Sequence[str], grading: ChowGrading | None = None) -> GradedPoly:
        """Parse sums of terms like '3/2*x1^5 - x1*x2 + 7'."""
        variables = tuple(variables)
        idx = {v: i for i, v in enumerate(variables)}
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty polynomial text")
        if s[0] not in "+-":
            s = "+" + s
        terms: Terms = {}
        for sign, body in re.findall(r"([+-])([^+-]+)", s):
            coeff = Fraction(1)
            exps = [0] * len(variables)
            for factor in body.split("*"):
                if not factor:
                    raise ValueError(f"malformed term {body!r}")
                if "^" in factor:
                    base, power = factor.split("^", 1)
                    power = int(power)
                else:
                    base, power = factor, 1
                if base in idx:
                    exps[idx[base]] += power
                else:
                    try:
                        coeff *= Fraction(base) ** power
                    except ValueError:
                        raise ValueError(f"unknown symbol {base!r} in {text!r}") from None
            if sign == "-":
                coeff = -coeff
            m = tuple(exps)
            terms[m] = terms.get(m, 0) + coeff
        return cls(variables, terms, grading)

    def _new(self, terms) -> GradedPoly:
        return GradedPoly(self.vars, terms, self.grading)

    def _check(self, other: GradedPoly):
        if other.vars != self.vars:
            raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")

    def _lift(self, other):
        if isinstance(other, GradedPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return GradedPoly.constant(self.vars, other, self.grading)
        return NotImplemented

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self._new(terms_add(dict(self.terms), o.terms))

    __radd__ = __add__

    def __neg__(self):
        return self._new({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self._new(terms_add(dict(self.terms), o.terms, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self._new(terms_mul(self.terms, o.terms))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power of a polynomial")
        out = GradedPoly.constant(self.vars, 1, self.grading)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPoly.constant(self.vars, other)
        if not isinstance(other, GradedPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c) -> GradedPoly:
        c = Fraction(c)
        return self._new({m: c * v for m, v in self.terms.items()})

    def diff(self, i: int) -> GradedPoly:
        out = {}
        for m, c in self.terms.items():
            if m[i]:
                mm = list(m)
                mm[i] -= 1
                out[tuple(mm)] = c * m[i]
        return self._new(out)

    def subs(self, values: Mapping[int, object]) -> GradedPoly:
        """Substitute numbers for some variables (by index)."""
        out: Terms = {}
        for m, c in self.terms.items():
            coeff = c
            mm = list(m)
            for i, v in values.items():
                coeff *= Fraction(v) ** m[i]
                mm[i] = 0
            key = tuple(mm)
            out[key] = out.get(key, 0) + coeff
        return self._new(out)

    def evaluate(self, point: Sequence):
        total = 0
        for m, c in self.terms.items():
            t = c
            for x, k in zip(point, m):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    # inspection -----------------------------------------------------------------
    def leading_monomial(self, order: str = "grevlex") -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return leading(self.terms, order_key(order))

    def leading_coefficient(self, order: str = "grevlex") -> Fraction:
        return self.terms[self.leading_monomial(order)]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        if not self.terms:
            return True
        ms = list(self.terms)
        if self.grading is None:
            return len({sum(m) for m in ms}) == 1
        return all(self.grading.same_class(ms[0], m) for m in ms[1:])

    @property
    def degree(self) -> Monomial | None:
        """A representative exponent vector of the graded degree, if homogeneous."""
        if not self.terms or not self.is_homogeneous():
            return None
        return min(self.terms)

    def monic(self, order: str = "grevlex") -> GradedPoly:
        return self.scale(1 / self.leading_coefficient(order))

    def __repr__(self):
        return f"GradedPoly({self.to_str()!r})"

    def to_str(self, order: str = "grevlex") -> str:
        if not self.terms:
            return "0"
        key = order_key(order)
        parts = []
        for m in sorted(self.terms, key=key, reverse=True):
            c = self.terms[m]
            factors = []
            for v, k in zip(self.vars, m):
                if k == 1:
                    factors.append(v)
                elif k > 1:
                    factors.append(f"{v}^{k}")
            mono = "*".join(factors)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def variables(n: int, prefix: str = "x") -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


def all_monomials(nvars: int, degree: int) -> Iterable[Monomial]:
    yield from _weighted_compositions([1] * nvars, degree)


def random_poly(rng, variables: Sequence[str], max_degree: int, nterms: int,
                coeff_range: int = 9) -> GradedPoly:
    n = len(variables)
    terms = {}
    for _ in range(nterms):
        deg = rng.randint(0, max_degree)
        cuts = sorted(rng.randint(0, deg) for _ in range(n - 1))
        exps = [b - a for a, b in zip([0] + cuts, cuts + [deg])]
        c = Fraction(rng.randint(-coeff_range, coeff_range), rng.randint(1, 4))
        terms[tuple(exps)] = terms.get(tuple(exps), 0) + c
    return GradedPoly(variables, terms)
