"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored in the power basis 1, z, ..., z^(phi(n)-1) with
rational coordinates, where z = exp(2 pi i / n).  Products are reduced
modulo the n-th cyclotomic polynomial, so every element has exactly one
representative and equality is coordinate equality.

The complex embedding used throughout is z -> exp(2 pi i / n).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

import mpmath


class FieldMismatchError(ValueError):
    """Raised when combining elements of different cyclotomic fields."""


def _poly_divmod_int(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # coefficient lists, lowest degree first; den monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    return q, num[: len(den) - 1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int, upto: int) -> tuple[tuple[Fraction, ...], ...]:
    """Power-basis coordinates of z^k for 0 <= k < upto."""
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * deg
    cur[0] = Fraction(1)
    for _ in range(upto):
        rows.append(tuple(cur))
        # multiply by z, then eliminate z^deg using Phi_n (monic)
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    return tuple(rows)


class CyclotomicNumber:
    """Immutable element of Q(zeta_n)."""

    __slots__ = ("n", "coeffs", "_hash")

    def __init__(self, n: int, coeffs: Iterable):
        deg = euler_phi(n)
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) > deg:
            # accept unreduced input: reduce modulo Phi_n
            cs = _reduce(n, cs)
        cs = cs + (Fraction(0),) * (deg - len(cs))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, key, value):
        raise AttributeError("CyclotomicNumber is immutable")

    # construction helpers -------------------------------------------------
    @classmethod
    def zeta(cls, n: int, k: int = 1) -> CyclotomicNumber:
        k %= n
        table = _power_table(n, n)
        return cls(n, table[k])

    @classmethod
    def rational(cls, n: int, q) -> CyclotomicNumber:
        return cls(n, [Fraction(q)])

    @classmethod
    def from_powers(cls, n: int, powers: Mapping[int, object]) -> CyclotomicNumber:
        """Build sum c_k z^k from a {k: c_k} mapping (any integer k)."""
        table = _power_table(n, n)
        acc = [Fraction(0)] * euler_phi(n)
        for k, c in powers.items():
            c = Fraction(c)
            if c:
                for i, t in enumerate(table[k % n]):
                    acc[i] += c * t
        return cls(n, acc)

    # basic protocol --------------------------------------------------------
    def _coerce(self, other) -> CyclotomicNumber:
        if isinstance(other, CyclotomicNumber):
            if other.n != self.n:
                raise FieldMismatchError(
                    f"cannot combine elements of Q(zeta_{self.n}) and Q(zeta_{other.n})")
            return other
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber.rational(self.n, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CyclotomicNumber(self.n, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.n, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return CyclotomicNumber(self.n, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        deg = len(self.coeffs)
        prod = [Fraction(0)] * (2 * deg - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return CyclotomicNumber(self.n, _reduce(self.n, prod))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CyclotomicNumber.rational(self.n, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.rational(self.n, other)
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.n, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CyclotomicNumber({self.n}, {self.to_str()})"

    def to_str(self, var: str = "z") -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if k == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        if not parts:
            return "0"
        return " + ".join(parts).replace("+ -", "- ")

    # field structure -------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0]

    def conjugate(self) -> CyclotomicNumber:
        """Complex conjugation z -> z^-1 (a field automorphism)."""
        return CyclotomicNumber.from_powers(
            self.n, {-k: c for k, c in enumerate(self.coeffs) if c})

    def galois(self, j: int) -> CyclotomicNumber:
        """The automorphism z -> z^j, gcd(j, n) = 1."""
        if math.gcd(j, self.n) != 1:
            raise ValueError(f"{j} is not a unit modulo {self.n}")
        return CyclotomicNumber.from_powers(
            self.n, {j * k: c for k, c in enumerate(self.coeffs) if c})

    def inverse(self) -> CyclotomicNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        # extended Euclid in Q[x] against Phi_n
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        a = _trim(list(self.coeffs))
        r0, r1 = phi, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] != 0:
            q, r = _qdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _trim(_qsub(s0, _qmul(q, s1)))
        # r0 is a nonzero constant: s0 * a == r0 mod phi
        c = r0[0]
        return CyclotomicNumber(self.n, _reduce(self.n, [x / c for x in s0]))

    def norm(self) -> Fraction:
        """Field norm to Q (product of all Galois conjugates)."""
        acc = CyclotomicNumber.rational(self.n, 1)
        for j in range(1, self.n + 1):
            if math.gcd(j, self.n) == 1:
                acc = acc * self.galois(j)
        return acc.as_rational()

    # embeddings ------------------------------------------------------------
    def __complex__(self) -> complex:
        return sum((float(c) * cmath.exp(2j * math.pi * k / self.n)
                    for k, c in enumerate(self.coeffs) if c), 0j)

    def to_mpc(self, dps: int = 50):
        with mpmath.workdps(dps):
            return mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator
                               * mpmath.expjpi(mpmath.mpf(2 * k) / self.n)
                               for k, c in enumerate(self.coeffs) if c)

    def is_real(self) -> bool:
        return self == self.conjugate()

    def real_sign(self) -> int:
        """Certified sign of a real element (-1, 0 or 1).

        Zero is decided exactly; otherwise an interval enclosure of the
        embedding is refined until it excludes zero.
        """
        if not self.is_real():
            raise ValueError(f"{self!r} is not real")
        if self.is_zero():
            return 0
        prec = 64
        while True:
            old = mpmath.iv.prec
            mpmath.iv.prec = prec
            try:
                two_pi = 2 * mpmath.iv.pi
                total = mpmath.iv.mpf(0)
                for k, c in enumerate(self.coeffs):
                    if c:
                        total += mpmath.iv.mpf(c.numerator) / c.denominator * \
                            mpmath.iv.cos(two_pi * k / self.n)
                if total.a > 0:
                    return 1
                if total.b < 0:
                    return -1
            finally:
                mpmath.iv.prec = old
            prec *= 2
            if prec > 1 << 16:
                raise ArithmeticError("sign refinement did not terminate")

    def real_part(self) -> CyclotomicNumber:
        return (self + self.conjugate()) * Fraction(1, 2)

    def imag_sign(self) -> int:
        """Certified sign of the imaginary part of the embedding."""
        diff = self - self.conjugate()  # = 2i Im(x)
        if diff.is_zero():
            return 0
        if self.n <= 2:
            return 0
        # (x - xbar)(z - zbar) = -4 Im(x) sin(2 pi/n), real, with sin > 0
        z = CyclotomicNumber.zeta(self.n)
        return -(diff * (z - z.conjugate())).real_sign()


def _reduce(n: int, coeffs) -> tuple[Fraction, ...]:
    deg = euler_phi(n)
    if len(coeffs) <= deg:
        return tuple(coeffs) + (Fraction(0),) * (deg - len(coeffs))
    table = _power_table(n, len(coeffs))
    acc = [Fraction(0)] * deg
    for k, c in enumerate(coeffs):
        if c:
            if k < deg:
                acc[k] += c
            else:
                for i, t in enumerate(table[k]):
                    if t:
                        acc[i] += c * t
    return tuple(acc)


def _trim(p):
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p or [Fraction(0)]


def _qmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _qsub(a, b):
    m = max(len(a), len(b))
    a = a + [Fraction(0)] * (m - len(a))
    b = b + [Fraction(0)] * (m - len(b))
    return [x - y for x, y in zip(a, b)]


def _qdivmod(num, den):
    num = _trim(list(num))
    den = _trim(list(den))
    if len(num) < len(den):
        return [Fraction(0)], num
    q = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1] / lead
        q[shift] = c
        if c:
            for i, d in enumerate(den):
                num[shift + i] -= c * d
    return q, _trim(num[: len(den) - 1] or [Fraction(0)])


def zeta(n: int, k: int = 1) -> CyclotomicNumber:
    return CyclotomicNumber.zeta(n, k)


def cyc(n: int, q) -> CyclotomicNumber:
    return CyclotomicNumber.rational(n, q)
