"""Command-line interface: ``khoveq <command> ...``; every command prints one JSON document."""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import corpus
from .complex import ResourceLimitError, build_complex, verify_delta_squared
from .conditions import full_report
from .diagram import PDError, find_move_sites, parse_pd
from .frobenius import load_calculus, universal_calculus
from .homology import homology_at
from .invariants import euler_in_A, graded_euler, jones_from_bracket, kauffman_bracket
from .moves import KinkIsomorphism, MovePair, contexts_for, random_move_sequence, verify_invariance, verify_move
from .polyring import Specialization, gf2_parse

log = logging.getLogger("khoveq")

PRESETS = {
    "universal": universal_calculus,
    "khovanov": lambda: universal_calculus().specialized(0, 0, "khovanov"),
    "lee": lambda: universal_calculus().specialized(0, 1, "lee"),
}


class CLIError(Exception):
    pass


def read_diagram(arg: str):
    if arg.startswith("corpus:"):
        try:
            return corpus.get(arg.split(":", 1)[1])
        except KeyError as exc:
            raise CLIError(exc.args[0]) from None
    if arg == "-":
        return parse_pd(sys.stdin.read())
    if os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return parse_pd(fh.read())
    if "X" in arg or arg.strip().startswith("O"):
        return parse_pd(arg)
    raise CLIError(f"no such PD file {arg!r} (use corpus:NAME or inline PD text)")


def read_calculus(arg: str | None):
    if arg is None:
        return universal_calculus()
    if arg in PRESETS:
        return PRESETS[arg]()
    return load_calculus(arg)


def make_spec(args) -> Specialization:
    ring = args.ring
    if ring == "mod2poly":
        s = gf2_parse(str(args.s), "s")
        t = int(args.t)
    else:
        try:
            s, t = int(args.s), int(args.t)
        except ValueError:
            raise CLIError("--s and --t must be integers for this ring") from None
    return Specialization(ring, s, t)


def _cap(args):
    return args.max_crossings


# ---------------------------------------------------------------------------
# commands


def cmd_homology(args):
    d = read_diagram(args.pd)
    sp = make_spec(args)
    cx = build_complex(d, read_calculus(args.calculus), _cap(args))
    res = homology_at(cx, sp, args.bigraded)
    out = res.to_json()
    out["pd"] = str(d)
    return out, True


def cmd_verify(args):
    d = read_diagram(args.pd)
    calc = read_calculus(args.calculus)
    if args.what == "delta-squared":
        rep = verify_delta_squared(build_complex(d, calc, _cap(args)))
        return rep.to_json() | {"pd": str(d)}, rep.ok
    if args.what == "move":
        kind = args.type.upper()
        sites = find_move_sites(d, kind)
        if not sites:
            raise CLIError(f"diagram has no {kind} site")
        reports = []
        ok = True
        for site in sites:
            for ctx in contexts_for(d, site):
                pair = MovePair(ctx, calc)
                reps = verify_move(pair)
                if kind == "R1":
                    reps += KinkIsomorphism(pair).check()
                ok = ok and all(r.ok for r in reps)
                reports.append({"site": site.to_json(), "roles": ctx.describe(), "rho_form": pair.rho_form, "checks": [r.to_json() for r in reps]})
        return {"identity": "move", "move": kind, "pd": str(d), "status": "pass" if ok else "fail", "sites": reports}, ok
    if args.what == "invariance":
        sp = make_spec(args)
        spec = args.moves
        if not spec.startswith("random:"):
            raise CLIError("--moves must look like random:N")
        steps = int(spec.split(":", 1)[1])
        log.info("random move sequence: steps=%d seed=%d", steps, args.seed)
        seq = random_move_sequence(d, steps, args.seed, cap=min(8, _cap(args) or 8))
        rep = verify_invariance(d, [(s, dr) for s, dr, _ in seq], sp, args.bigraded, calc)
        return rep.to_json() | {"pd": str(d), "seed": args.seed, "spec": sp.to_json()}, rep.ok
    raise CLIError(f"unknown verify target {args.what!r}")


def cmd_check_calculus(args):
    calc = read_calculus(args.calculus)
    rep = full_report(calc)
    out = rep.to_json()
    return out, rep.verdict_r1 and rep.verdict_r23 and rep.delta_squared_ok


def cmd_jones(args):
    d = read_diagram(args.pd)
    chi = graded_euler(build_complex(d, universal_calculus(), _cap(args)))
    ok = euler_in_A(chi) == jones_from_bracket(d)
    return {
        "pd": str(d),
        "euler_characteristic_q": chi.to_json(),
        "bracket_A": kauffman_bracket(d).to_json(),
        "bracket_identity": "pass" if ok else "fail",
    }, ok


def cmd_parse(args):
    d = read_diagram(args.pd)
    sites = {k: [s.to_json() for s in find_move_sites(d, k)] for k in ("R1", "R2", "R3")}
    return {
        "pd": str(d),
        "crossings": d.n,
        "loops": d.loops,
        "signs": list(d.signs),
        "writhe": d.writhe,
        "components": d.component_count,
        "faces": len(d.faces),
        "sign_mismatches": [c + 1 for c in d.sign_mismatches],
        "sites": sites,
    }, True


# ---------------------------------------------------------------------------


def _add_spec_flags(p):
    p.add_argument("--s", default="0", help="value of s (a GF(2)[s] polynomial for --ring mod2poly)")
    p.add_argument("--t", default="0", help="value of t")
    p.add_argument("--ring", default="integers", choices=["integers", "mod2", "mod2poly"])
    p.add_argument("--bigraded", action="store_true", help="split by quantum degree (needs s = t = 0)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="khoveq", description="Khovanov-type homology with the universal (s, t) differential.")
    ap.add_argument("--out", help="write JSON here instead of stdout")
    ap.add_argument("--max-crossings", type=int, default=None, help="crossing cap (default: $KHOVEQ_MAX_CROSSINGS or 14)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="homology at a specialization")
    p.add_argument("--pd", required=True, help="PD file, inline PD text, '-' or corpus:NAME")
    p.add_argument("--calculus", help="calculus JSON file or preset name")
    _add_spec_flags(p)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("verify", help="symbolic and end-to-end checks")
    p.add_argument("what", choices=["delta-squared", "move", "invariance"])
    p.add_argument("--pd", required=True)
    p.add_argument("--calculus")
    p.add_argument("--type", default="r1", choices=["r1", "r2", "r3", "R1", "R2", "R3"])
    p.add_argument("--moves", default="random:5")
    p.add_argument("--seed", type=int, default=0)
    _add_spec_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("check-calculus", help="decide the invariance conditions for a calculus")
    p.add_argument("--calculus", default="universal", help="calculus JSON file or preset (universal, khovanov, lee)")
    p.set_defaults(func=cmd_check_calculus)

    p = sub.add_parser("jones", help="graded Euler characteristic and bracket cross-check")
    p.add_argument("--pd", required=True)
    p.set_defaults(func=cmd_jones)

    p = sub.add_parser("parse", help="validate a PD code and list move sites")
    p.add_argument("--pd", required=True)
    p.set_defaults(func=cmd_parse)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.max_crossings is None:
        from .complex import max_crossings

        args.max_crossings = max_crossings()
    try:
        doc, ok = args.func(args)
    except (CLIError, PDError, ResourceLimitError, ValueError, OSError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return 2
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
