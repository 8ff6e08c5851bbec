"""Command-line front end.

Exit codes: 0 success, 1 bad input or flags, 2 infeasible (or a failed check).
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from . import analysis, strategic
from .core import (
    Lottery,
    Objective,
    Profile,
    as_rational,
    egalitarian_welfare,
    expected_egalitarian_welfare,
    expected_utilitarian_welfare,
    loc,
    utilitarian_welfare,
)
from .fairness import (
    Axiom,
    AxiomKind,
    HybridAxiom,
    HybridProfile,
    check,
    check_expectation,
    check_hybrid,
    feasible_region,
    hybrid_feasible_region,
    margins,
)
from .intervals import IntervalSet
from .mechanisms_det import (
    InfeasibleError,
    opt_ew,
    opt_ew_fair,
    opt_uw,
    opt_uw_fair,
    solve_2pf,
    solve_hybrid,
)
from .mechanisms_rand import RANDOMIZED

EXIT_OK, EXIT_INPUT, EXIT_INFEASIBLE = 0, 1, 2

DET_MECHS = ("opt-uw", "opt-ew", "opt-uw-fair", "opt-ew-fair", "solve-2pf", "solve-hybrid")
MECHS = DET_MECHS + tuple(RANDOMIZED)


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def fmt(q: Fraction) -> str:
    """Exact value with a 12-significant-digit decimal beside it.

    >>> fmt(Fraction(17, 70))
    '17/70 ≈ 0.242857142857'
    >>> fmt(Fraction(2))
    '2'
    """
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q} ≈ {float(q):.12g}"


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from exc


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def _locations(values, path: str, key: str) -> List[Fraction]:
    if not isinstance(values, list):
        raise InputError(f"{path}: {key!r} must be a list")
    try:
        return [loc(v) for v in values]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: bad location in {key!r}: {exc}") from exc


def load_profile(path: str) -> Profile:
    data = _load(path)
    if "locations" not in data:
        raise InputError(f"{path}: missing 'locations'")
    xs = _locations(data["locations"], path, "locations")
    if not xs:
        raise InputError(f"{path}: a profile needs at least one agent")
    return Profile(xs)


def load_hybrid(path: str) -> HybridProfile:
    data = _load(path)
    if "classic" not in data and "obnoxious" not in data:
        raise InputError(f"{path}: expected 'classic' and/or 'obnoxious'")
    classic = _locations(data.get("classic", []), path, "classic")
    obnoxious = _locations(data.get("obnoxious", []), path, "obnoxious")
    if not classic and not obnoxious:
        raise InputError(f"{path}: a hybrid profile needs at least one agent")
    return HybridProfile(classic, obnoxious)


def load_lottery(path: str) -> Lottery:
    data = _load(path)
    atoms = data.get("atoms")
    if not isinstance(atoms, list) or not all(isinstance(a, list) and len(a) == 2 for a in atoms):
        raise InputError(f"{path}: 'atoms' must be a list of [location, probability] pairs")
    try:
        return Lottery([(w, as_rational(q)) for w, q in atoms])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: bad lottery: {exc}") from exc


def load_raw_locations(path: str) -> List[Fraction]:
    """Locations in file order; used for per-agent truths and reports."""
    data = _load(path)
    key = "reports" if "reports" in data else "locations"
    if key not in data:
        raise InputError(f"{path}: missing 'locations'")
    xs = _locations(data[key], path, key)
    if not xs:
        raise InputError(f"{path}: need at least one agent")
    return xs


def _axiom(args) -> Axiom:
    return Axiom(AxiomKind(args.axiom), args.alpha)


def _region_text(region: IntervalSet) -> str:
    if region.is_empty():
        return "empty"
    return " ∪ ".join(f"[{fmt(lo)}, {fmt(hi)}]" for lo, hi in region)


# -- subcommands --------------------------------------------------------------


def cmd_solve(args) -> int:
    if args.mech == "solve-hybrid":
        h = load_hybrid(args.input)
        kind = HybridAxiom(args.hybrid)
        y = solve_hybrid(h, kind)
        print(f"y = {fmt(y)}")
        print(f"{kind.name}: {'PASS' if check_hybrid(h, y, kind) else 'FAIL'}")
        return EXIT_OK
    p = load_profile(args.input)
    if args.mech in RANDOMIZED:
        lottery = RANDOMIZED[args.mech](p)
        print("lottery " + " ".join(f"{w}:{q}" for w, q in lottery.atoms))
        for w, q in lottery.atoms:
            print(f"  P(y = {w}) = {fmt(q)}")
        print(f"E[UW] = {fmt(expected_utilitarian_welfare(lottery, p))}")
        print(f"E[EW] = {fmt(expected_egalitarian_welfare(lottery, p))}")
        for a in (Axiom.ifs(args.alpha), Axiom.ufs(args.alpha)):
            print(f"{a} in expectation: {'PASS' if check_expectation(p, lottery, a) else 'FAIL'}")
        if args.sample:
            rng = random.Random(args.seed)
            where = [w for w, _ in lottery.atoms]
            weights = [float(q) for _, q in lottery.atoms]
            draws = rng.choices(where, weights=weights, k=args.sample)
            print("samples " + " ".join(str(w) for w in draws))
        return EXIT_OK
    if args.mech == "opt-uw":
        y = opt_uw(p)
    elif args.mech == "opt-ew":
        y = opt_ew(p)
    elif args.mech == "opt-uw-fair":
        y = opt_uw_fair(p, _axiom(args))
    elif args.mech == "opt-ew-fair":
        y = opt_ew_fair(p, _axiom(args))
    else:
        y = solve_2pf(p)
    print(f"y = {fmt(y)}, UW = {fmt(utilitarian_welfare(p, y))}, EW = {fmt(egalitarian_welfare(p, y))}")
    for kind in AxiomKind:
        a = Axiom(kind, args.alpha)
        print(f"{a}: {'PASS' if check(p, y, a) else 'FAIL'}")
    return EXIT_OK


def cmd_check(args) -> int:
    if args.hybrid:
        h = load_hybrid(args.input)
        if args.y is None:
            raise InputError("hybrid checks need -y")
        ok = check_hybrid(h, args.y, HybridAxiom(args.hybrid))
        print("PASS" if ok else "FAIL")
        return EXIT_OK if ok else EXIT_INFEASIBLE
    p = load_profile(args.input)
    a = _axiom(args)
    if args.lottery:
        if a.kind is AxiomKind.PF:
            raise InputError("PF in expectation is not supported")
        lottery = load_lottery(args.lottery)
        ok = check_expectation(p, lottery, a)
        print("PASS" if ok else "FAIL")
        return EXIT_OK if ok else EXIT_INFEASIBLE
    if args.y is None:
        raise InputError("give a location with -y or a lottery with --lottery")
    cons = margins(p, args.y, a)
    ok = all(c.ok for c in cons)
    print("PASS" if ok else "FAIL")
    shown = cons if ok else [c for c in cons if not c.ok]
    seen = set()
    for c in shown:
        if (c.label, c.agent, c.bound) in seen:
            continue
        seen.add((c.label, c.agent, c.bound))
        rel = ">=" if c.ok else "<"
        print(f"  {c.label} agent {c.agent}: {fmt(c.distance)} {rel} {fmt(c.bound)}, margin {fmt(c.margin)}")
    return EXIT_OK if ok else EXIT_INFEASIBLE


def cmd_region(args) -> int:
    if args.hybrid:
        region = hybrid_feasible_region(load_hybrid(args.input), HybridAxiom(args.hybrid))
    else:
        region = feasible_region(load_profile(args.input), _axiom(args))
    print(_region_text(region))
    return EXIT_OK if region else EXIT_INFEASIBLE


def _print_report(rep: strategic.EquilibriumReport, truth) -> None:
    for i, (x, g, t) in enumerate(zip(truth, rep.per_agent_gain, rep.deviations)):
        print(f"  agent {i}: truth {x}, report {rep.reports[i]}, best found {t}, gain {fmt(g)}")
    print(f"candidates: {rep.candidate_count}")
    print(f"max gain: {fmt(rep.max_gain)} (eps = {fmt(rep.epsilon)})")
    print(f"verified: {'true' if rep.is_equilibrium else 'false'}")


def cmd_equilibrium(args) -> int:
    m = strategic.MechId(args.mech)
    if args.action == "poa-family":
        try:
            truth, reports, ratio = strategic.poa_family(args.n, args.eps)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        print("truth   " + " ".join(str(x) for x in truth))
        print("reports " + " ".join(str(x) for x in reports))
        print(f"ratio = {fmt(ratio)}")
        if args.verify:
            rep = strategic.verify_equilibrium(m, truth, reports, args.eps, args.grid, args.delta)
            print(f"verified: {'true' if rep.is_equilibrium else 'false'}")
            return EXIT_OK if rep.is_equilibrium else EXIT_INFEASIBLE
        return EXIT_OK
    truth = load_raw_locations(args.input)
    if args.action == "construct":
        reports = strategic.construct_equilibrium(m, truth, args.eps)
        print("reports " + " ".join(str(x) for x in reports))
        print(f"facility = {fmt(strategic.facility(m, reports))}")
    else:
        if not args.reports:
            raise InputError("verify needs --reports")
        reports = load_raw_locations(args.reports)
        if len(reports) != len(truth):
            raise InputError(f"{len(truth)} true locations but {len(reports)} reports")
    rep = strategic.verify_equilibrium(m, truth, reports, args.eps, args.grid, args.delta)
    _print_report(rep, truth)
    ratio = strategic.poa_ratio(m, truth, reports)
    print(f"poa ratio = {'inf' if ratio == float('inf') else fmt(ratio)}")
    return EXIT_OK if rep.is_equilibrium else EXIT_INFEASIBLE


def _cell(q: Optional[Fraction], exact: bool) -> str:
    if q is None:
        return ""
    return str(q) if exact else f"{float(q):.12g}"


def cmd_experiment(args) -> int:
    mode = args.mode.replace("-", "_")
    n_min = args.n if args.n is not None else args.n_min
    n_max = args.n if args.n is not None else args.n_max
    try:
        cfg = analysis.SweepConfig(
            mode=mode,
            n_min=n_min,
            n_max=n_max,
            samples=args.samples,
            seed=args.seed,
            eps=tuple(args.eps) if args.eps else analysis.SweepConfig.eps,
            grid=args.grid,
            families=not args.no_families,
            jobs=args.jobs,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    records = analysis.sweep(cfg)
    out = open(args.out, "w", newline="") if args.out != "-" else sys.stdout
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["family", "n", "eps", "instance", "optimal", "constrained", "ratio"])
        for r in records:
            writer.writerow([
                r.family,
                r.n,
                "" if r.eps is None else str(r.eps),
                " ".join(str(x) for x in r.instance.locations),
                _cell(r.optimal, args.exact),
                _cell(r.constrained, args.exact),
                _cell(r.ratio, args.exact),
            ])
    finally:
        if out is not sys.stdout:
            out.close()
    best = analysis.max_ratio(records)
    bound = analysis.theorem_bound(mode, n_max)
    summary = {
        "mode": mode,
        "records": len(records),
        "degenerate": sum(r.degenerate for r in records),
        "max_ratio": str(best.ratio) if best else None,
        "max_ratio_decimal": float(best.ratio) if best else None,
        "argmax_instance": [str(x) for x in best.instance.locations] if best else None,
        "bound": str(bound),
        "bound_decimal": float(bound),
        "within_bound": all(r.ratio <= analysis.theorem_bound(mode, r.n) for r in records if r.ratio is not None),
    }
    if args.summary:
        with open(args.summary, "w") as fh:
            json.dump(summary, fh, indent=2)
            fh.write("\n")
    ratio_text = fmt(best.ratio) if best else "n/a"
    print(f"max ratio = {ratio_text}, bound = {fmt(bound)}", file=sys.stderr)
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _add_axiom_flags(p, default="ufs"):
    p.add_argument("--axiom", choices=[k.value for k in AxiomKind], default=default)
    p.add_argument("--alpha", type=_rational, default=Fraction(2))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="oflp", description="Proportionally fair obnoxious facility location on [0, 1].")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="run a mechanism on an instance file")
    s.add_argument("--mech", choices=MECHS, required=True)
    s.add_argument("-i", "--input", required=True)
    _add_axiom_flags(s)
    s.add_argument("--hybrid", choices=[h.value for h in HybridAxiom], default="hufs")
    s.add_argument("--sample", type=int, default=0, help="draw this many facility locations from a lottery")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check", help="check a location or lottery against an axiom")
    c.add_argument("-i", "--input", required=True)
    c.add_argument("-y", type=_rational)
    c.add_argument("--lottery")
    _add_axiom_flags(c)
    c.add_argument("--hybrid", choices=[h.value for h in HybridAxiom])
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("region", help="print the feasible region of an axiom")
    r.add_argument("-i", "--input", required=True)
    _add_axiom_flags(r)
    r.add_argument("--hybrid", choices=[h.value for h in HybridAxiom])
    r.set_defaults(func=cmd_region)

    e = sub.add_parser("equilibrium", help="construct or verify pure eps-Nash equilibria")
    e.add_argument("action", choices=["construct", "verify", "poa-family"])
    e.add_argument("--mech", choices=[m.value for m in strategic.MechId], default="2ifs")
    e.add_argument("--eps", type=_rational, required=True)
    e.add_argument("-i", "--input", help="true locations, in agent order")
    e.add_argument("--reports", help="reported locations, in agent order")
    e.add_argument("--n", type=int, default=2)
    e.add_argument("--verify", action="store_true")
    e.add_argument("--grid", type=int, default=strategic.DEFAULT_GRID)
    e.add_argument("--delta", type=_rational, default=strategic.DEFAULT_DELTA)
    e.set_defaults(func=cmd_equilibrium)

    x = sub.add_parser("experiment", help="sweep random and adversarial instances")
    x.add_argument("--mode", required=True, choices=[m.replace("_", "-") for m in analysis.MODES] + list(analysis.MODES))
    x.add_argument("--n", type=int, help="fix n (overrides --n-min/--n-max)")
    x.add_argument("--n-min", type=int, default=2)
    x.add_argument("--n-max", type=int, default=10)
    x.add_argument("--eps", type=_rational, action="append", help="family eps; repeatable")
    x.add_argument("--samples", type=int, default=1000)
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--grid", type=int, default=1001)
    x.add_argument("--no-families", action="store_true")
    x.add_argument("--jobs", type=int, default=0, help="worker processes (default: $OFLP_JOBS or 1)")
    x.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    x.add_argument("--summary", help="JSON summary path")
    x.add_argument("--exact", action="store_true", help="write fractions instead of decimals")
    x.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "action", None) in ("construct", "verify") and not args.input:
        print("oflp: error: equilibrium construct/verify need -i", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except InputError as exc:
        print(f"oflp: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleError as exc:
        print(f"infeasible: {exc}")
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
