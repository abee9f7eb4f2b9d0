"""Command-line interface.

Exit codes: 0 success, 1 a finding (non-membership, oracle disagreement,
sandwich violation), 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import bounds as bnd
from . import homogenize as hom
from . import lattice as lat
from . import microgeometry as mg
from . import spin_oracle as so
from . import wulff as wf
from .render import wulff_svg


class UsageError(Exception):
    pass


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, default=str) + "\n"


def _emit(text: str, path: str | None):
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None


def _load_field(path: str) -> lat.BondField:
    return lat.from_document(_load_json(path))


def _fractions_doc(field) -> dict | None:
    if not field.is_mixture:
        return None
    vf = lat.volume_fractions(field)
    return {"theta": str(vf.theta), "theta_h": str(vf.theta_h), "theta_v": str(vf.theta_v)}


def cmd_gen(args) -> int:
    kind = args.kind
    alpha = args.alpha
    beta = args.beta if args.beta is not None else (None if kind == "homogeneous" else 2.0)
    T = args.T
    if kind == "homogeneous":
        field = lat.homogeneous(T, alpha, beta)
        prov = {"construction": "homogeneous", "params": {"T": T, "weight": alpha}}
    elif kind == "laminate":
        field = mg.laminate(T, args.N1, args.N2, alpha, beta)
        prov = mg.laminate_provenance(T, args.N1, args.N2, alpha, beta)
    elif kind == "special":
        for name in ("t1", "t2", "theta1", "theta2"):
            if getattr(args, name) is None:
                raise UsageError(f"--{name} is required for --kind special")
        spec = mg.SpecialSpec(T, Fraction(args.t1), Fraction(args.t2), Fraction(args.theta1),
                              Fraction(args.theta2), args.seed)
        field = mg.prop_special_field(spec, alpha, beta)
        prov = mg.special_provenance(spec, alpha, beta)
    elif kind == "realize":
        if args.c1 is None or args.c2 is None or args.theta is None:
            raise UsageError("--c1, --c2 and --theta are required for --kind realize")
        res = mg.realize(args.c1, args.c2, args.theta, alpha, beta, T, args.seed)
        field, prov = res.field, res.provenance()
    elif kind == "random":
        if args.theta is None:
            raise UsageError("--theta is required for --kind random")
        field = lat.random_mixture(T, args.theta, args.seed, alpha, beta)
        prov = {"construction": "random", "params": {"T": T, "theta": args.theta, "seed": args.seed}}
    else:  # argparse restricts choices
        raise UsageError(f"unknown kind {kind}")
    _emit(_dump(lat.to_document(field, prov)), args.out)
    fr = _fractions_doc(field)
    if fr is not None:
        msg = f"theta={fr['theta']} theta_h={fr['theta_h']} theta_v={fr['theta_v']}\n"
        (sys.stdout if args.out else sys.stderr).write(msg)
    return 0


def cmd_phi(args) -> int:
    field = _load_field(args.field)
    prof = hom.phi_profile(field, args.D, args.k_max, args.rel_tol, args.workers)
    _emit(_dump(prof.to_document()), args.out)
    return 0


def _bounds_doc(field) -> dict:
    doc = {
        "projection": list(bnd.projection_bounds(field).as_tuple()),
        "averaging": list(bnd.averaging_bounds(field).as_tuple()),
    }
    if field.is_mixture:
        doc["mixture"] = list(bnd.mixture_upper_bound(field).as_tuple())
        doc["volume_fractions"] = _fractions_doc(field)
    return doc


def cmd_bounds(args) -> int:
    _emit(_dump(_bounds_doc(_load_field(args.field))), args.out)
    return 0


def _load_profile(path) -> hom.SurfaceTensionProfile:
    try:
        return hom.SurfaceTensionProfile.from_document(_load_json(path))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_check(args) -> int:
    prof = _load_profile(args.profile)
    verdict = bnd.theorem_membership(prof, args.alpha, args.beta, args.theta, args.tol)
    _emit(_dump(verdict.to_document()), args.out)
    return 0 if verdict.member else 1


def cmd_wulff(args) -> int:
    if args.profile:
        prof = _load_profile(args.profile)
    elif args.c1 is not None and args.c2 is not None:
        prof = hom.weighted_l1_profile(args.c1, args.c2, args.D)
    else:
        raise UsageError("give --profile or both --c1 and --c2")
    poly = wf.wulff_shape(prof)
    _emit(_dump(poly.to_document()), args.json)
    if args.svg:
        Path(args.svg).write_text(wulff_svg(poly, args.theta, args.alpha, args.beta))
    return 0


def cmd_oracle(args) -> int:
    field = _load_field(args.field)
    W, H = args.window
    win = so.SpinWindow.half_plane(W, H, tuple(args.nu), args.offset, args.x0, args.y0)
    if args.exhaustive and W * H > so.MAX_EXHAUSTIVE_SITES:
        raise UsageError(f"window {W}x{H} too large for exhaustive mode")
    doc = so.oracle_report(field, win, exhaustive=True if args.exhaustive else None)
    _emit(_dump(doc), args.out)
    return 0 if doc["agree"] else 1


def cmd_report(args) -> int:
    field = _load_field(args.field)
    if not field.is_mixture:
        raise UsageError("report needs a mixture-tagged field (alpha and beta)")
    vf = lat.volume_fractions(field)
    alpha, beta = field.alpha, field.beta
    prof = hom.phi_profile(field, args.D, args.k_max, args.rel_tol)
    avg = bnd.averaging_bounds(field)
    rows = []
    sandwich_ok = True
    for s in prof.samples:
        lo = alpha * (abs(s.nu[0]) + abs(s.nu[1]))
        hi = avg.evaluate(s.nu) + s.slack(beta)
        ok = lo <= s.value * (1 + 1e-12) and s.value <= hi
        sandwich_ok &= ok
        rows.append({"z": list(s.z), "lower": lo, "value": s.value, "averaging_plus_slack": hi, "ok": ok})
    tol = max(max(s.slack(beta) for s in prof.samples), 1e-9)
    verdict = bnd.theorem_membership(prof, alpha, beta, float(vf.theta), tol)
    doc = {
        "field_hash": prof.field_hash,
        "volume_fractions": _fractions_doc(field),
        "bounds": _bounds_doc(field),
        "sandwich": {"ok": sandwich_ok, "samples": rows},
        "convexity_violations": len(hom.convexity_report(prof, tol=1e-9)),
        "verdict": verdict.to_document(),
    }
    _emit(_dump(doc), args.out)
    return 0 if (verdict.member and sandwich_ok) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isinghom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a bond field document")
    g.add_argument("--kind", required=True, choices=["laminate", "special", "realize", "random", "homogeneous"])
    g.add_argument("--T", type=int, required=True)
    g.add_argument("--alpha", type=float, default=1.0)
    g.add_argument("--beta", type=float, default=None)
    g.add_argument("--N1", type=int, default=0)
    g.add_argument("--N2", type=int, default=0)
    for name in ("t1", "t2", "theta1", "theta2"):
        g.add_argument(f"--{name}", type=str, default=None, help="fraction, e.g. 1/4")
    g.add_argument("--theta", type=float)
    g.add_argument("--c1", type=float)
    g.add_argument("--c2", type=float)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    ph = sub.add_parser("phi", help="surface tension profile of a field")
    ph.add_argument("--field", required=True)
    ph.add_argument("--D", type=int, default=8, help="max |z_i| of the direction fan")
    ph.add_argument("--k-max", type=int, default=8)
    ph.add_argument("--rel-tol", type=float, default=1e-3)
    ph.add_argument("--workers", type=int, default=1)
    ph.add_argument("--out")
    ph.set_defaults(func=cmd_phi)

    b = sub.add_parser("bounds", help="projection, averaging and mixture bound pairs")
    b.add_argument("--field", required=True)
    b.add_argument("--out")
    b.set_defaults(func=cmd_bounds)

    c = sub.add_parser("check", help="optimal-bounds membership of a profile")
    c.add_argument("--profile", required=True)
    c.add_argument("--theta", type=float, required=True)
    c.add_argument("--alpha", type=float, required=True)
    c.add_argument("--beta", type=float, required=True)
    c.add_argument("--tol", type=float, default=1e-9)
    c.add_argument("--out")
    c.set_defaults(func=cmd_check)

    w = sub.add_parser("wulff", help="normalized Wulff shape (JSON, optional SVG)")
    w.add_argument("--profile")
    w.add_argument("--c1", type=float)
    w.add_argument("--c2", type=float)
    w.add_argument("--D", type=int, default=2)
    w.add_argument("--theta", type=float, default=0.5)
    w.add_argument("--alpha", type=float, default=1.0)
    w.add_argument("--beta", type=float, default=2.0)
    w.add_argument("--json")
    w.add_argument("--svg")
    w.set_defaults(func=cmd_wulff)

    o = sub.add_parser("oracle", help="spin-window interface energy vs dual shortest path")
    o.add_argument("--field", required=True)
    o.add_argument("--nu", type=float, nargs=2, required=True)
    o.add_argument("--window", type=int, nargs=2, required=True, metavar=("W", "H"))
    o.add_argument("--offset", type=float, default=0.0)
    o.add_argument("--x0", type=int, default=0)
    o.add_argument("--y0", type=int, default=0)
    o.add_argument("--exhaustive", action="store_true")
    o.add_argument("--out")
    o.set_defaults(func=cmd_oracle)

    r = sub.add_parser("report", help="sandwich and membership summary for a mixture field")
    r.add_argument("--field", required=True)
    r.add_argument("--D", type=int, default=2)
    r.add_argument("--k-max", type=int, default=8)
    r.add_argument("--rel-tol", type=float, default=1e-3)
    r.add_argument("--out")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, lat.FieldError, mg.ConstructionError, ValueError, OSError) as exc:
        print(f"isinghom {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
