"""Command line front end: each subcommand runs one computation and checks its golden values.

Exit status is 0 when every golden value matches, 1 on a mismatch and 2
on bad input (unreadable fan file, degenerate psi, bad arguments).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .cyclotomic import CyclotomicNumber
from .fixtures import MIRROR_QUINTIC_HODGE, QUINTIC_RAYS, check_psi, quintic_polynomial
from .toric import BUILTIN_FANS, Fan, FanError, builtin_fan, fan_from_json

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


@dataclass
class Golden:
    name: str
    expected: Any
    actual: Any
    ok: bool
    tag: str          # "published", "derived" or "trivial"
    label: str        # where the value comes from, in words

    def to_json(self) -> dict:
        return {"name": self.name, "expected": self.expected, "actual": self.actual,
                "status": "pass" if self.ok else "fail", "tag": self.tag, "label": self.label}


def exact(name, expected, actual, tag, label) -> Golden:
    return Golden(name, expected, actual, expected == actual, tag, label)


def close(name, expected: complex, actual: complex, tol: float, tag, label) -> Golden:
    return Golden(name, expected, actual, abs(expected - actual) <= tol, tag, label)


# ------------------------------------------------------------- JSON output ---

def canonical(obj):
    """Plain JSON data with rationals as "p/q" and cyclotomic numbers as strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, complex):
        return {"re": canonical(obj.real), "im": canonical(obj.imag)}
    if isinstance(obj, CyclotomicNumber):
        return obj.to_str()
    if isinstance(obj, Golden):
        return canonical(obj.to_json())
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): canonical(v)
                for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(x) for x in obj]
    return str(obj)


def dumps(obj) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------- sections ---

Section = tuple[dict, list[Golden]]


def is_quintic(fan: Fan) -> bool:
    return tuple(tuple(r) for r in fan.rays) == QUINTIC_RAYS


def section_sectors(fan: Fan) -> Section:
    from .obstruction import RankMismatchError, check_ranks, three_point
    from .sectors import (census, enumerate_tricyclic_hypersurface, orbifold_betti,
                          shift_duality_holds, twisted_sectors)
    from .surface_group import OrbifoldSphere, cover_genus

    twisted = twisted_sectors(fan)
    by_geom: dict[str, int] = {}
    for s in twisted:
        by_geom[s.geometry] = by_geom.get(s.geometry, 0) + 1
    tri = enumerate_tricyclic_hypersurface(fan)
    types: dict[str, int] = {}
    for s in tri:
        types[s.type] = types.get(s.type, 0) + 1
    data: dict = {
        "twisted_sectors": len(twisted),
        "twisted_by_geometry": by_geom,
        "twisted_table": [{"g": s.g.label(), "cone": s.cone.label(), "dim": s.dim, "shift": s.shift}
                          for s in twisted],
        "tricyclic_sectors": len(tri),
        "tricyclic_by_type": types,
        "census": {"published": census(tri, "published"), "complete": census(tri, "complete")},
    }
    goldens: list[Golden] = [
        exact("shift duality on every twisted sector", True,
              all(shift_duality_holds(fan, s) for s in twisted), "derived", "iota(g) + iota(g^-1) = codimension"),
    ]
    if not is_quintic(fan):
        return data, goldens
    hodge = orbifold_betti(fan, MIRROR_QUINTIC_HODGE)
    data["orbifold_hodge"] = {f"{p},{q}": h for (p, q), h in hodge.items()}
    c = data["census"]["published"]["ordered"]
    try:
        check_ranks(tri)
        ranks_ok = True
    except RankMismatchError:
        ranks_ok = False
    curve_k1 = next(s for s in tri if s.type == "curve" and s.curve_k == 1)
    curve_k4 = next(s for s in tri if s.type == "curve" and s.curve_k == 4)
    point_i = next(s for s in tri if s.type == "point-i" and s.obstruction_rank == 0)
    goldens += [
        exact("point sectors with nonzero 3-point function", 930, c["total"], "published", "point-sector census"),
        exact("type (i) point sectors", 810, c["type_i"], "published", "point-sector census"),
        exact("type (ii) point sectors", 120, c["type_ii"], "published", "point-sector census"),
        exact("h^{1,1}_orb", 101, hodge.get((1, 1), 0), "derived", "sector enumeration with shifts"),
        exact("h^{2,2}_orb", 101, hodge.get((2, 2), 0), "derived", "sector enumeration with shifts"),
        exact("h^{2,1}_orb", 1, hodge.get((2, 1), 0), "published", "untwisted middle cohomology"),
        exact("genus of the (5,5,5) cover", 2, cover_genus(OrbifoldSphere((5, 5, 5), 5)), "published",
              "Riemann-Hurwitz"),
        exact("genus of the (5,5,1) cover", 0, cover_genus(OrbifoldSphere((5, 5, 1), 5)), "published",
              "Riemann-Hurwitz"),
        exact("obstruction rank agrees with the dimension formula", True, ranks_ok, "derived",
              "group-action rank on every tricyclic sector"),
        exact("3-point value, curve sector k = 1", Fraction(1, 25),
              three_point(curve_k1, (0, 0, 0), fan).value, "published", "curve sector Euler integral"),
        exact("3-point value, curve sector k = 4 with one 2-form", Fraction(1, 5),
              three_point(curve_k4, (0, 0, 2), fan).value, "published", "integral of eta'"),
        exact("3-point value, point sector", Fraction(1, 25),
              three_point(point_i, (0, 0, 0), fan).value, "published", "point sector"),
    ]
    return data, goldens


def section_periods(k: int) -> Section:
    from .surface_group import (closed_form_periods, is_cyclotomic_charpoly, is_symplectic,
                                matrix_order, monodromy_matrix, solve_period_matrix)

    M = monodromy_matrix(k)
    sol = solve_period_matrix(M, k=k)
    sel = sol.selected
    data = {
        "k": k,
        "matrix": M,
        "solutions": [{"p": P.p, "q": P.q, "s": P.s, "imP_posdef": P.imP_posdef,
                       "numeric": dict(zip("pqs", P.numeric()))} for P in sol.solutions],
        "selected": {"p": sel.p, "q": sel.q, "s": sel.s, "numeric": dict(zip("pqs", sel.numeric()))},
    }
    closed = closed_form_periods(k)
    goldens = [
        exact(f"k={k}: algebraic solutions", 4, sol.count, "published", "period system"),
        exact(f"k={k}: solutions with Im P positive definite", 1,
              sum(P.imP_posdef for P in sol.solutions), "published", "Riemann bilinear relations"),
        exact(f"k={k}: monodromy symplectic of order 5 with charpoly Phi_5", True,
              is_symplectic(M) and matrix_order(M) == 5 and is_cyclotomic_charpoly(M), "derived",
              "monodromy fixture"),
    ]
    for name, want, got in zip("pqs", closed, sel.numeric()):
        goldens.append(close(f"k={k}: {name} closed form", want, got, 1e-9, "published", "period closed form"))
    return data, goldens


def section_obstruction(n: int, k: int) -> Section:
    from .obstruction import (build_obstruction_matrix, eigen_coordinate, invariant_rank, matches_table,
                              matrix_order, table_eigenvector)
    from .surface_group import OrbifoldSphere, cover_genus

    if k == 4:
        g = cover_genus(OrbifoldSphere((5, 5, 1), 5))
        data = {"n": n, "k": k, "genus": g, "rank": 0, "matrix": None}
        return data, [exact(f"(n,k)=({n},4): obstruction rank", 0, 0 if g == 0 else None, "published",
                            "genus-zero cover")]
    act = build_obstruction_matrix(n, k)
    vecs = act.invariant_vectors()
    data = {
        "n": n, "k": k, "field": act.field,
        "form_action": [list(r) for r in act.form_action],
        "matrix": act.rows(),
        "invariant_vectors": vecs,
        "table_vector": table_eigenvector(n, k),
        "eigen_coordinate": eigen_coordinate(act) if len(vecs) == 1 else None,
    }
    numeric_gap = None
    if len(vecs) == 1:
        # distance between the normalized numeric vectors, for the 1e-9 comparison
        u = [complex(x) for x in vecs[0]]
        t = [complex(x) for x in table_eigenvector(n, k)]
        i = max(range(6), key=lambda j: abs(t[j]))
        numeric_gap = max(abs(a / u[i] - b / t[i]) for a, b in zip(u, t))
    goldens = [
        exact(f"(n,k)=({n},{k}): order of the 6x6 matrix", 5, matrix_order(act), "derived", "g1 has order 5"),
        exact(f"(n,k)=({n},{k}): eigenvalue-1 multiplicity", 1, invariant_rank(act), "published",
              "obstruction eigenvector table"),
        exact(f"(n,k)=({n},{k}): eigenvector matches table up to scalar", True, matches_table(act),
              "published", "obstruction eigenvector table"),
        Golden(f"(n,k)=({n},{k}): numeric eigenvector gap", 0.0, numeric_gap,
               numeric_gap is not None and numeric_gap < 1e-9, "published", "obstruction eigenvector table"),
    ]
    return data, goldens


def section_localization() -> Section:
    import random

    from .localization import EquivariantWeight, curve_sector_localization, intersection_check_eta_cubed, \
        localized_integral, shift_lift
    from .toric import mirror_quintic_fan

    fan = mirror_quintic_fan()
    loc = curve_sector_localization(fan, m_basis=[(1, 1, 0, 3), (0, 0, 1, -1)])
    points = []
    for d, (num, den) in zip(loc.data, loc.result.contributions):
        points.append({"cone": [j + 1 for j in d.cone], "order": d.order,
                       "tangent_weights": [w.to_str() for w in d.tangent_weights],
                       "bundle_weights": {k: w.to_str() for k, w in sorted(d.bundle_weights.items())},
                       "contribution": f"({num.to_str()}) / ({den.to_str()})"})
    rng = random.Random(5)
    a, b = rng.randint(-3, 3), rng.randint(-3, 3)
    U = [[1 + a * b, a], [b, 1]]   # determinant 1
    base = loc.quotient.m_basis
    new_basis = [[sum(U[i][j] * base[j][t] for j in range(2)) for t in range(4)] for i in range(2)]
    changed = curve_sector_localization(fan, m_basis=new_basis).result.constant
    shifted = localized_integral(
        shift_lift(loc.data, "L", EquivariantWeight((Fraction(a), Fraction(b)))), ["F''", "L"]).constant
    f = quintic_polynomial(1)
    data = {"tau": [1, 2], "m_basis": base, "fixed_points": points, "constant": loc.result.constant,
            "euler_integral": loc.euler_integral, "unimodular_change": U,
            "constant_after_basis_change": changed, "constant_after_lift_shift": shifted}
    goldens = [
        exact("fixed-point sum for F'' + L", Fraction(1), loc.result.constant, "published", "localization"),
        exact("orbifold Euler integral of E", Fraction(1, 25), loc.euler_integral, "published", "localization"),
        exact("fixed-point orders", [25, 25, 25], [d.order for d in loc.data], "published", "localization"),
        exact("sum after a unimodular basis change", Fraction(1), changed, "derived", "basis invariance"),
        exact("sum after shifting the lift of L", Fraction(1), shifted, "derived", "lift invariance"),
        exact("X meet {x1 = x2 = x3 = 0}", Fraction(1), intersection_check_eta_cubed(fan, f),
              "published", "eta cubed"),
    ]
    from .obstruction import curve_euler_integral
    goldens.append(exact("desingularization route with mu = (0,0,0)", loc.euler_integral,
                         curve_euler_integral(None, (0, 0, 0), 1), "published", "local invariants"))
    return data, goldens


def section_cupprod(psi: Fraction, order: str, fit: bool = False) -> Section:
    from .cupprod import fit_residue_constant, quintic_cup_product

    r = quintic_cup_product(psi, order)
    denom = psi ** 5 + 3125
    data = {
        "psi": psi, "order": order, "c": r.c, "c_I": r.c_I, "volume": r.volume,
        "pairing_values": {f"{a},{b}": {"coefficient": v.coefficient, "pi_power": v.pi_power,
                                        "times_psi5_plus_3125": v.coefficient * denom}
                           for (a, b), v in r.pairings.items()},
        "graded_dims": list(r.graded_dims),
    }
    goldens = [
        exact("c (psi^5 + 3125)", Fraction(125), r.normalized_c, "published", "residue constant"),
        exact("c_I^beta", Fraction(625), r.c_I, "published", "residue pairing"),
        exact("Vol(Delta_D)", Fraction(5, 24), r.volume, "published", "residue pairing"),
        exact("H^{3,0} H^{0,3} pairing coefficient", Fraction(-5000, 3),
              r.pairings[(0, 3)].coefficient * denom, "published", "residue pairing"),
        exact("H^{2,1} H^{1,2} pairing coefficient", Fraction(5000),
              r.pairings[(1, 2)].coefficient * denom, "published", "residue pairing"),
        exact("dim R_1(f) in degrees 0, beta, 2 beta, 3 beta", [1, 1, 1, 1], list(r.graded_dims),
              "derived", "standard monomials"),
    ]
    if fit:
        ft = fit_residue_constant((1, 2, 3, 7), order)
        data["fit"] = {"values": {str(p): c for p, c in ft.values.items()}, "numerator": ft.numerator}
        goldens.append(exact("fitted numerator of c over psi in {1,2,3,7}", Fraction(125), ft.numerator,
                             "published", "residue constant"))
    return data, goldens


def section_triangle() -> Section:
    from .surface_group import verify_triangle_group

    rep = verify_triangle_group(math.pi / 5)
    data = {"v": rep.v, "z0": rep.z0, "R": rep.R, "residuals": rep.residuals}
    goldens = [
        close("v", 0.786151, rep.v, 1e-5, "published", "triangle vertex"),
        close("R", 0.413304, rep.R, 1e-5, "published", "side circle radius"),
    ]
    for name, res in sorted(rep.residuals.items()):
        goldens.append(Golden(name, 0.0, res, rep.checks[name], "published" if name.startswith("printed")
                              else "derived", "Moebius relation" if "lambda" in name else "closed form"))
    return data, goldens


# ------------------------------------------------------------------ driver ---

def load_fan(spec: str) -> Fan:
    if spec in BUILTIN_FANS:
        return builtin_fan(spec)
    path = Path(spec)
    if not path.exists():
        raise FanError(f"{spec!r} is neither a builtin fan ({', '.join(sorted(BUILTIN_FANS))}) nor a file")
    return fan_from_json(path.read_text(), name=path.stem)


def parse_psi(text: str) -> Fraction:
    try:
        psi = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"psi must be a rational number, got {text!r}") from None
    return check_psi(psi)


def print_human(title: str, data: dict, goldens: list[Golden], out=None):
    out = out or sys.stdout
    print(f"== {title}", file=out)
    for key in sorted(data):
        val = data[key]
        if isinstance(val, (list, dict)) and len(json.dumps(canonical(val))) > 100:
            continue
        print(f"  {key}: {json.dumps(canonical(val), sort_keys=True)}", file=out)
    for g in goldens:
        mark = "PASS" if g.ok else "FAIL"
        print(f"  [{mark}] {g.name}: got {json.dumps(canonical(g.actual))}, "
              f"expected {json.dumps(canonical(g.expected))} ({g.tag}; {g.label})", file=out)


def run_report(fan: Fan, psi: Fraction, order: str = "grevlex") -> dict:
    sections: dict[str, Section] = {"sectors": section_sectors(fan)}
    if is_quintic(fan):
        per = [section_periods(k) for k in (1, 2, 3)]
        sections["periods"] = ({f"k={k}": d for k, (d, _) in zip((1, 2, 3), per)},
                               [g for _, gs in per for g in gs])
        obs = [section_obstruction(n, k) for k in (1, 2, 3, 4) for n in (1, 2, 3, 4)]
        sections["obstruction"] = ({f"n={d['n']},k={d['k']}": {"rank": len(d.get("invariant_vectors", [])),
                                                                "eigen_coordinate": d.get("eigen_coordinate")}
                                    for d, _ in obs},
                                   [g for _, gs in obs for g in gs])
        sections["localization"] = section_localization()
        sections["cupprod"] = section_cupprod(psi, order, fit=True)
        sections["triangle"] = section_triangle()
    return {
        "metadata": {"fixture": fan.name, "psi": psi, "version": __version__},
        "sections": {name: {"data": d, "goldens": gs} for name, (d, gs) in sections.items()},
        "passed": all(g.ok for _, gs in sections.values() for g in gs),
    }


def _emit(args, title: str, data: dict, goldens: list[Golden]) -> int:
    print_human(title, data, goldens)
    if args.json:
        Path(args.json).write_text(dumps({"data": data, "goldens": goldens,
                                          "passed": all(g.ok for g in goldens)}))
    return EXIT_OK if all(g.ok for g in goldens) else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fixture", default="mirror-quintic",
                        help="builtin fan name or path to a JSON fan file")
    common.add_argument("--json", metavar="PATH", help="also write the report as canonical JSON")

    p = argparse.ArgumentParser(prog="chenruan", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("sectors", parents=[common], help="twisted and tricyclic sectors, census, Hodge numbers")
    sp = sub.add_parser("periods", parents=[common], help="period matrix of the genus-two cover")
    sp.add_argument("--k", type=int, choices=(1, 2, 3), required=True)
    sp = sub.add_parser("obstruction", parents=[common], help="6x6 obstruction matrix and its invariant line")
    sp.add_argument("--n", type=int, choices=(1, 2, 3, 4), required=True)
    sp.add_argument("--k", type=int, choices=(1, 2, 3, 4), required=True)
    sub.add_parser("localize", parents=[common], help="fixed-point sum on the sector curve")
    sp = sub.add_parser("cupprod", parents=[common], help="residue pairing on middle cohomology")
    sp.add_argument("--psi", default="1")
    sp.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    sp.add_argument("--fit", action="store_true", help="also fit c over psi in {1, 2, 3, 7}")
    sub.add_parser("triangle-check", parents=[common], help="hyperbolic triangle and Moebius relations")
    sp = sub.add_parser("report", parents=[common], help="run everything")
    sp.add_argument("--psi", default="1")
    sp.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    return p


def _require_quintic(fan: Fan):
    if not is_quintic(fan):
        raise FanError(f"this subcommand needs the mirror quintic fixture, got {fan.name!r}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        fan = load_fan(args.fixture)
        if args.command == "sectors":
            return _emit(args, f"sectors ({fan.name})", *section_sectors(fan))
        if args.command == "report":
            psi = parse_psi(args.psi)
            rep = run_report(fan, psi, args.order)
            for name, sec in rep["sections"].items():
                print_human(name, sec["data"], sec["goldens"])
            print(f"== overall: {'PASS' if rep['passed'] else 'FAIL'}")
            if args.json:
                Path(args.json).write_text(dumps(rep))
            return EXIT_OK if rep["passed"] else EXIT_MISMATCH
        _require_quintic(fan)
        handlers: dict[str, Callable[[], Section]] = {
            "periods": lambda: section_periods(args.k),
            "obstruction": lambda: section_obstruction(args.n, args.k),
            "localize": section_localization,
            "cupprod": lambda: section_cupprod(parse_psi(args.psi), args.order, args.fit),
            "triangle-check": section_triangle,
        }
        return _emit(args, args.command, *handlers[args.command]())
    except (FanError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
