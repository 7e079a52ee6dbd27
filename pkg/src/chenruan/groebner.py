"""Division algorithm and Buchberger's algorithm over Q.

The pair bookkeeping uses the Gebauer-Moeller installation of the
product and chain criteria, with the normal selection strategy (smallest
lcm first).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .polynomial import (GradedPoly, Monomial, Terms, mono_div, mono_divides, mono_lcm,
                         mono_mul, order_key, terms_add)


def _lead(terms: Terms, key) -> Monomial:
    return max(terms, key=key)


def multi_divide(g: GradedPoly, divisors: Sequence[GradedPoly], order: str = "grevlex"
                 ) -> tuple[list[GradedPoly], GradedPoly]:
    """Generalized division: g = sum q_i d_i + r, no term of r divisible by any LT(d_i)."""
    if any(d.is_zero() for d in divisors):
        raise ValueError("division by the zero polynomial")
    for d in divisors:
        g._check(d)
    key = order_key(order)
    leads = [(_lead(d.terms, key), d.terms) for d in divisors]
    quots: list[Terms] = [{} for _ in divisors]
    rem: Terms = {}
    p = dict(g.terms)
    while p:
        m = _lead(p, key)
        c = p[m]
        for i, (lm, dt) in enumerate(leads):
            if mono_divides(lm, m):
                shift = mono_div(m, lm)
                f = c / dt[lm]
                quots[i][shift] = quots[i].get(shift, 0) + f
                terms_add(p, dt, -f, shift)
                break
        else:
            rem[m] = c
            del p[m]
    return [g._new(q) for q in quots], g._new(rem)


def _reduce(p: Terms, basis: list[tuple[Monomial, Terms]], key, full: bool = True) -> Terms:
    """Normal form of p w.r.t. monic basis elements (lm, terms)."""
    p = dict(p)
    rem: Terms = {}
    while p:
        m = _lead(p, key)
        c = p[m]
        for lm, bt in basis:
            if mono_divides(lm, m):
                terms_add(p, bt, -c, mono_div(m, lm))
                break
        else:
            if not full:
                rem.update(p)
                return rem
            rem[m] = c
            del p[m]
    return rem


def _monic(t: Terms, key) -> Terms:
    lc = t[_lead(t, key)]
    if lc == 1:
        return t
    inv = 1 / lc
    return {m: c * inv for m, c in t.items()}


def _spoly(a: tuple[Monomial, Terms], b: tuple[Monomial, Terms]) -> Terms:
    la, ta = a
    lb, tb = b
    l = mono_lcm(la, lb)
    out: Terms = {}
    terms_add(out, ta, 1, mono_div(l, la))
    terms_add(out, tb, -1, mono_div(l, lb))
    return out


def _disjoint(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def buchberger(gens: Sequence[Terms], key) -> list[Terms]:
    """Reduced Groebner basis (monic, sorted by leading monomial) of raw term dicts."""
    polys: list[tuple[Monomial, Terms]] = []
    G: list[int] = []
    B: list[tuple[int, int, Monomial]] = []

    def update(h: int):
        nonlocal G, B
        lh = polys[h][0]
        C = [(g, mono_lcm(lh, polys[g][0])) for g in G]
        D = []
        while C:
            g, l = C.pop()
            if _disjoint(lh, polys[g][0]) or not any(
                    mono_divides(l2, l) for _, l2 in C + D):
                D.append((g, l))
        E = [(h, g, l) for g, l in D if not _disjoint(lh, polys[g][0])]
        newB = []
        for g1, g2, l in B:
            if mono_divides(lh, l) and \
                    mono_lcm(polys[g1][0], lh) != l and mono_lcm(lh, polys[g2][0]) != l:
                continue
            newB.append((g1, g2, l))
        B = newB + E
        G = [g for g in G if not mono_divides(lh, polys[g][0])] + [h]

    # seed with interreduced generators, smallest first
    seeds = [_monic(dict(t), key) for t in gens if t]
    seeds.sort(key=lambda t: key(_lead(t, key)))
    for t in seeds:
        basis = [polys[g] for g in G]
        r = _reduce(t, basis, key)
        if r:
            r = _monic(r, key)
            polys.append((_lead(r, key), r))
            update(len(polys) - 1)

    while B:
        B.sort(key=lambda x: key(x[2]))
        i, j, _ = B.pop(0)
        s = _spoly(polys[i], polys[j])
        if not s:
            continue
        r = _reduce(s, [polys[g] for g in G], key)
        if r:
            r = _monic(r, key)
            polys.append((_lead(r, key), r))
            update(len(polys) - 1)

    # minimal basis, then tail-reduce
    minimal = [polys[g] for g in G]
    minimal = [a for a in minimal
               if not any(b is not a and mono_divides(b[0], a[0]) for b in minimal)]
    reduced = []
    for idx, (lm, t) in enumerate(minimal):
        others = [b for k, b in enumerate(minimal) if k != idx]
        tail = {m: c for m, c in t.items() if m != lm}
        r = _reduce(tail, others, key)
        r[lm] = Fraction(1)
        reduced.append(r)
    reduced.sort(key=lambda t: key(_lead(t, key)))
    return reduced


def groebner_basis(gens: Sequence[GradedPoly], order: str = "grevlex") -> list[GradedPoly]:
    """Reduced Groebner basis of the ideal generated by gens."""
    if not gens:
        return []
    ref = gens[0]
    for g in gens[1:]:
        ref._check(g)
    key = order_key(order)
    return [ref._new(t) for t in buchberger([g.terms for g in gens if g], key)]


def normal_form(f: GradedPoly, basis: Sequence[GradedPoly], order: str = "grevlex") -> GradedPoly:
    """Remainder of f on division by a Groebner basis (unique for a GB)."""
    key = order_key(order)
    raw = []
    for b in basis:
        f._check(b)
        t = _monic(dict(b.terms), key)
        raw.append((_lead(t, key), t))
    return f._new(_reduce(f.terms, raw, key))


def in_ideal(f: GradedPoly, basis: Sequence[GradedPoly], order: str = "grevlex") -> bool:
    return normal_form(f, basis, order).is_zero()


def s_polynomial(a: GradedPoly, b: GradedPoly, order: str = "grevlex") -> GradedPoly:
    key = order_key(order)
    ta = _monic(dict(a.terms), key)
    tb = _monic(dict(b.terms), key)
    return a._new(_spoly((_lead(ta, key), ta), (_lead(tb, key), tb)))


def is_groebner(basis: Sequence[GradedPoly], order: str = "grevlex") -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            if not normal_form(s_polynomial(basis[i], basis[j], order), basis, order).is_zero():
                return False
    return True


def standard_monomials(basis: Sequence[GradedPoly], candidates, order: str = "grevlex") -> list[Monomial]:
    """Candidates not divisible by any leading monomial of the basis."""
    leads = [b.leading_monomial(order) for b in basis]
    return [m for m in candidates if not any(mono_divides(l, m) for l in leads)]
