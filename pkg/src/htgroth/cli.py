"""Command-line front end.

Subcommands: diagram, reduce, jacquet, red, cohomology, balance, torsion,
verify, figures.  All output is UTF-8 JSON, ASCII art or SVG 1.1; outputs
are deterministic for a fixed invocation and seed.  Invalid input exits
with code 2 (parse errors) or 3 (precondition violations), printing a
machine-readable error record on stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import jsonio
from .cohomology import (
    ProfileEntry,
    SpectrumProfile,
    check_hij,
    check_se2,
    coh_intermediate,
    coh_shriek,
    euler_master_identity,
    euler_oracle_violations,
    euler_shape_established,
    inclusion_exclusion_ramified,
    rl_hi_balance,
    torsion_detect,
)
from .diagrams import LocalComponent, m_support, n_support, render, superpose
from .jl_red import red_tau
from .modl import (
    SupercuspidalData,
    TowerLevel,
    rl_division_rep,
    rl_speh,
    tower_cuspidal,
)
from .segments import CuspidalLabel, GrothElement, ladder_cuts, make_speh_st
from .symbolic import atom

PARSE_ERROR = 2
PRECONDITION_ERROR = 3


def _fail(code: int, kind: str, message: str):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    raise SystemExit(code)


def thread_cap() -> int:
    """Parallelism cap from HT_GROTH_THREADS; sweeps here are pure per cell."""
    try:
        return max(1, int(os.environ.get("HT_GROTH_THREADS", "1")))
    except ValueError:
        return 1


# -- subcommands -------------------------------------------------------------


def cmd_diagram(args) -> int:
    kind = args.kind.upper()
    if args.blocks:
        try:
            ts = [int(x) for x in args.blocks.split(",")]
        except ValueError:
            _fail(PARSE_ERROR, "parse", f"bad --blocks {args.blocks!r}")
        pi = CuspidalLabel("pi")
        comp = LocalComponent(args.s, tuple((pi, t, Fraction(0)) for t in ts))
        obj = superpose(comp, pi, kind)
        if args.format == "json":
            payload = {
                f"{r},{i}": [c.block for c in contribs]
                for (r, i), contribs in obj.items()
            }
            print(jsonio.dumps(payload))
            return 0
        print(render(obj, args.format), end="")
        return 0
    support = m_support(args.s, args.t) if kind == "M" else n_support(args.s, args.t)
    if args.format == "json":
        print(jsonio.dumps(sorted(support.points)))
        return 0
    print(render(support, args.format), end="")
    return 0


def cmd_jacquet(args) -> int:
    pi = CuspidalLabel("pi", g=args.g)
    label = make_speh_st(pi, args.s, args.t)
    lad = label.multisegments()[0]
    try:
        cuts = ladder_cuts(lad, args.left_rank)
    except ValueError as exc:
        _fail(PRECONDITION_ERROR, "precondition", str(exc))
    payload = [
        {
            "a1": jsonio.multisegment_to_json(a1),
            "a2": jsonio.multisegment_to_json(a2),
        }
        for a1, a2 in cuts
    ]
    print(jsonio.dumps(payload))
    return 0


def cmd_red(args) -> int:
    pi = CuspidalLabel("pi", g=args.g)
    x = GrothElement.of(make_speh_st(pi, args.s, args.t))
    out = red_tau(pi, args.r, x)
    print(jsonio.dumps(jsonio.groth_to_json(out)))
    return 0


def cmd_reduce(args) -> int:
    if args.division:
        out = rl_division_rep(args.m_tau, args.iota)
        print(jsonio.dumps(jsonio.groth_to_json(out)))
        return 0
    sc = _load_supercuspidal(args)
    pi = tower_cuspidal(TowerLevel(sc, args.u))
    label = make_speh_st(pi, args.s, 1)
    from .modl import modl_label

    out = rl_speh(label, modl_label(pi))
    print(jsonio.dumps(jsonio.groth_to_json(out)))
    return 0


def _load_supercuspidal(args) -> SupercuspidalData:
    try:
        data = json.loads(args.sc) if args.sc.strip().startswith("{") else json.load(open(args.sc))
    except (OSError, json.JSONDecodeError) as exc:
        _fail(PARSE_ERROR, "parse", f"cannot read supercuspidal data: {exc}")
    try:
        return jsonio.supercuspidal_from_json(data)
    except (KeyError, ValueError) as exc:
        _fail(PRECONDITION_ERROR, "precondition", str(exc))


def _load_profile(source: str, cuspidals: dict[str, CuspidalLabel]) -> SpectrumProfile:
    try:
        data = json.loads(source) if source.strip().startswith("[") else json.load(open(source))
    except (OSError, json.JSONDecodeError) as exc:
        _fail(PARSE_ERROR, "parse", f"cannot read profile: {exc}")
    entries = []
    try:
        for item in data:
            cusp = cuspidals.get(item["cuspidal"]) or CuspidalLabel(item["cuspidal"])
            cuspidals[item["cuspidal"]] = cusp
            entries.append(
                ProfileEntry(
                    s=item["s"],
                    t=item["t"],
                    cuspidal=cusp,
                    mult=jsonio.sym_from_json(item.get("mult", f"m[{item['cuspidal']}]")),
                    xi=jsonio.twist_val(item.get("xi_numerator", 0)),
                    markers=frozenset(item.get("markers", ())),
                )
            )
    except (KeyError, TypeError, ValueError) as exc:
        _fail(PRECONDITION_ERROR, "precondition", f"bad profile entry: {exc}")
    return SpectrumProfile(tuple(entries))


def cmd_cohomology(args) -> int:
    cuspidals: dict[str, CuspidalLabel] = {}
    profile = _load_profile(args.profile, cuspidals)
    pi = cuspidals.get(args.pi) or CuspidalLabel(args.pi)
    table = (
        coh_shriek(profile, pi, args.r)
        if args.extension == "shriek"
        else coh_intermediate(profile, pi, args.r)
    )
    payload = {
        str(i): jsonio.groth_to_json(table.degree(i)) for i in table.degrees()
    }
    print(jsonio.dumps(payload))
    return 0


def cmd_balance(args) -> int:
    sc = _load_supercuspidal(args)
    cuspidals: dict[str, CuspidalLabel] = {}
    lifts = {}
    pi_u = tower_cuspidal(TowerLevel(sc, args.u))
    pi_up = tower_cuspidal(TowerLevel(sc, args.u_prime))
    cuspidals[pi_u.id] = pi_u
    cuspidals[pi_up.id] = pi_up
    lifts[pi_u.id] = TowerLevel(sc, args.u)
    lifts[pi_up.id] = TowerLevel(sc, args.u_prime)
    profile_u = _load_profile(args.profile_u, cuspidals)
    profile_up = _load_profile(args.profile_u_prime, cuspidals)
    try:
        constraints = rl_hi_balance(
            profile_u, profile_up, sc, args.u, args.u_prime, args.r, args.r_prime,
            pi_u, pi_up, lifts,
        )
    except ValueError as exc:
        _fail(PRECONDITION_ERROR, "precondition", str(exc))
    payload = [
        {
            "class": repr(c.class_key),
            "lhs": jsonio.sym_to_json(c.lhs),
            "rhs": jsonio.sym_to_json(c.rhs),
            "holds": c.holds(),
            "lhs_entries": [
                {"s": s, "t": t, "markers": sorted(mk)} for s, t, mk in c.lhs_entries
            ],
            "rhs_entries": [
                {"s": s, "t": t, "markers": sorted(mk)} for s, t, mk in c.rhs_entries
            ],
        }
        for c in constraints
    ]
    print(jsonio.dumps(payload))
    return 0


def cmd_torsion(args) -> int:
    sc = _load_supercuspidal(args)
    try:
        cert = torsion_detect(args.d, sc, args.u_prime, args.r_prime)
    except ValueError as exc:
        _fail(PRECONDITION_ERROR, "precondition", str(exc))
    payload = {
        "emitted": cert.emitted,
        "d": cert.d,
        "u_prime": cert.u_prime,
        "r_prime": cert.r_prime,
        "g_base": cert.g_base,
        "g_up": cert.g_up,
    }
    if cert.emitted:
        payload.update(
            r=cert.r,
            s=cert.s,
            s_prime=cert.s_prime,
            i0_lower_bound=cert.i0_lower_bound,
            lower_bound_only=cert.lower_bound_only,
            shriek_degree=cert.shriek_degree,
            star_degree=cert.star_degree,
        )
    print(jsonio.dumps(payload))
    return 0


def cmd_verify(args) -> int:
    pi = CuspidalLabel("pi", g=1)
    checks: list[tuple[str, bool]] = []
    n = args.max

    from .diagrams import m_coeff, m_coeff_hull

    def grid_agrees(st_pair) -> bool:
        s, t = st_pair
        return all(
            m_coeff(s, t, r, i) == m_coeff_hull(s, t, r, i)
            for r in range(1, s + t)
            for i in range(-(s + t), s + t + 1)
        )

    cells = [(s, t) for s in range(1, n + 1) for t in range(1, n + 1)]
    cap = thread_cap()
    if cap > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=cap) as pool:
            agree = all(pool.map(grid_agrees, cells))
    else:
        agree = all(map(grid_agrees, cells))
    checks.append(("diagram-bullets-vs-hull", agree))
    checks.append(
        (
            "se2-hij-round-trip",
            all(
                check_se2(pi, t, s) and check_hij(pi, t, s)
                for s in range(1, n + 1)
                for t in range(1, s + 1)
            ),
        )
    )
    from .jl_red import R_cell, S_cell

    endpoint = all(
        S_cell(s, t, s + t - 1, 0, pi) == R_cell(s, t, s + t - 1, 0, pi)
        and not R_cell(s, t, s + t - 1, 0, pi).is_zero()
        for s in range(1, n + 1)
        for t in range(1, n + 1)
        if s * t <= max(n, 12)
    )
    checks.append(("endpoint-identity", endpoint))
    established = [
        (s, t)
        for s in range(1, n)
        for t in range(1, n + 1 - s)
        if euler_shape_established(s, t)
    ]
    master = all(
        euler_master_identity(ProfileEntry(s=s, t=t, cuspidal=pi, mult=atom("m")), pi, r)
        for (s, t) in established
        for r in range(1, s * t + 1)
    )
    checks.append(("euler-master-established-shapes", master))
    checks.append(("inclusion-exclusion", inclusion_exclusion_ramified(6)))

    violations = euler_oracle_violations(min(n, 6), pi)
    for name, ok in checks:
        print(("PASS " if ok else "FAIL ") + name)
    if violations:
        print(
            "FLAG euler-oracle-open-configurations "
            + json.dumps(sorted({(s, t) for s, t, _ in violations}))
        )
    return 0 if all(ok for _, ok in checks) else 1


def cmd_figures(args) -> int:
    from .diagrams import render_svg_panels

    os.makedirs(args.out, exist_ok=True)
    pi = CuspidalLabel("pi")
    blocks = LocalComponent(
        4, ((pi, 1, Fraction(0)), (pi, 3, Fraction(0)), (pi, 5, Fraction(0)))
    )
    figures = {
        "fig1-intermediate-speh-steinberg": [m_support(4, 1), m_support(1, 4)],
        "fig2-intermediate-general": [m_support(4, 3), m_support(3, 4)],
        "fig3-intermediate-superposed": [superpose(blocks, pi, "M")],
        "fig4-shriek-speh-steinberg": [n_support(4, 1), n_support(1, 4)],
        "fig5-shriek-3x3": [n_support(3, 3)],
        "fig6-shriek-superposed": [superpose(blocks, pi, "N")],
    }
    written = []
    for name, objs in figures.items():
        path = os.path.join(args.out, f"{name}.svg")
        svg = render(objs[0], "svg") if len(objs) == 1 else render_svg_panels(objs)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(svg)
        written.append(path)
    print(jsonio.dumps(written))
    return 0


# -- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="htgroth",
        description="exact bookkeeping for Harris-Taylor local system combinatorics",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("diagram", help="coefficient diagram supports")
    p.add_argument("--kind", choices=["m", "n", "M", "N"], required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--blocks", help="comma-separated t_k for a superposition")
    p.add_argument("--format", choices=["ascii", "svg", "json"], default="ascii")
    p.set_defaults(func=cmd_diagram)

    p = sub.add_parser("jacquet", help="ladder cut enumeration")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--left-rank", type=int, required=True)
    p.set_defaults(func=cmd_jacquet)

    p = sub.add_parser("red", help="transfer of a rectangle block")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--g", type=int, default=1)
    p.add_argument("--r", type=int, required=True, help="depth in g-units")
    p.set_defaults(func=cmd_red)

    p = sub.add_parser("reduce", help="mod-l reduction rules")
    p.add_argument("--division", action="store_true")
    p.add_argument("--m-tau", type=int, default=1)
    p.add_argument("--iota", default="iota")
    p.add_argument("--sc", default='{"id":"rho","g":1,"q":2,"l":3,"epsilon":1}')
    p.add_argument("--u", type=int, default=-1)
    p.add_argument("--s", type=int, default=1)
    p.add_argument("--t", type=int, default=1)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("cohomology", help="degree-resolved tables over a profile")
    p.add_argument("--profile", required=True, help="JSON file or inline JSON")
    p.add_argument("--pi", required=True, help="reference cuspidal id")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--extension", choices=["shriek", "intermediate"], default="shriek")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("balance", help="mod-l balance constraints across a tower")
    p.add_argument("--sc", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--u-prime", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--r-prime", type=int, required=True)
    p.add_argument("--profile-u", required=True)
    p.add_argument("--profile-u-prime", required=True)
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("torsion", help="torsion certificates")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--sc", required=True)
    p.add_argument("--u-prime", type=int, required=True)
    p.add_argument("--r-prime", type=int, required=True)
    p.set_defaults(func=cmd_torsion)

    p = sub.add_parser("verify", help="run the invariant suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--max", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("figures", help="regenerate the reference diagrams as SVG")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_figures)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
