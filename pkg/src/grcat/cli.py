"""Command line entry point: ``grcat <command> ...``.

Exit status 0 on success, 1 when a verification finds a counterexample,
2 on usage errors or exceeded size limits.
"""

from __future__ import annotations

import argparse
import json
import sys

from .braidings import (
    QuasiBicharacter,
    is_skew_symmetric,
    solve_quasi_bicharacters,
    verify_hexagon,
    verify_pentagon,
)
from .chainmaps import verify_chain_map
from .classify import classify_braided, classify_monoidal
from .cocycles import CocycleParams3, all_params, cohomology_group, is_cocycle_bar, phi2, phi3
from .exact import SizeLimitError, UnityRoot
from .group import GroupSpec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _element(spec: GroupSpec, text: str):
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"group element must look like 'i,j', got {text!r}") from None
    if len(parts) == 1:
        parts.append(0)
    if len(parts) != 2:
        raise UsageError(f"group element must look like 'i,j', got {text!r}")
    return spec.element(*parts)


def _params(args, spec: GroupSpec) -> CocycleParams3:
    try:
        return CocycleParams3(args.a, args.b, args.d).validate(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _fail(args, payload: dict, text: str) -> int:
    _emit(args, payload, text)
    return EXIT_FAIL


# ---------------------------------------------------------------------------


def cmd_classify(args, spec: GroupSpec) -> int:
    if args.kind == "monoidal":
        classes = classify_monoidal(spec)
        payload = {"group": {"m": spec.m, "n": spec.n},
                   "monoidal_classes": [c.params.as_dict() for c in classes]}
        lines = [f"{len(classes)} monoidal classes on {spec}"]
        lines += [f"  a={c.params.a} b={c.params.b} d={c.params.d}" for c in classes]
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK
    report = classify_braided(spec, max_order=args.max_order)
    if args.json:
        sys.stdout.write(report.to_json())
        return EXIT_OK
    lines = [f"{len(report.monoidal_classes)} monoidal classes, {report.braided_count} braided structures on {spec}"]
    for e in report.braided:
        p = e.monoidal.params
        lines.append(f"a={p.a} b={p.b} d={p.d}: " + ("no braiding" if e.empty else f"{len(e.solutions)} braidings"))
        for r in e.solutions:
            tag = "  symmetric" if is_skew_symmetric(r) else ""
            lines.append(f"    r11={r.r11} r12={r.r12} r21={r.r21} r22={r.r22}{tag}")
    print("\n".join(lines))
    return EXIT_OK


def cmd_cocycle(args, spec: GroupSpec) -> int:
    if args.action == "eval":
        if args.degree == 2:
            if args.x is None or args.y is None:
                raise UsageError("degree 2 evaluation needs --x and --y")
            try:
                f = phi2(spec, args.b)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            xs = (_element(spec, args.x), _element(spec, args.y))
        else:
            if None in (args.x, args.y, args.z):
                raise UsageError("degree 3 evaluation needs --x, --y and --z")
            f = phi3(spec, _params(args, spec))
            xs = (_element(spec, args.x), _element(spec, args.y), _element(spec, args.z))
        value = f(*xs)
        _emit(args, {"value": str(value), "args": [repr(x) for x in xs]}, str(value))
        return EXIT_OK

    if spec.order > args.max_order:
        raise SizeLimitError(f"|G| = {spec.order} exceeds --max-order {args.max_order}")
    if args.degree == 2:
        targets = [(f"b={b}", phi2(spec, b)) for b in range(spec.gcd)]
    elif args.a is not None or args.b is not None or args.d is not None:
        p = _params(_defaults(args), spec)
        targets = [(f"a={p.a} b={p.b} d={p.d}", phi3(spec, p))]
    else:
        targets = [(f"a={p.a} b={p.b} d={p.d}", phi3(spec, p)) for p in all_params(spec)]
    for label, f in targets:
        if not is_cocycle_bar(f, max_order=args.max_order):
            return _fail(args, {"ok": False, "failed": label}, f"FAIL {label}: coboundary is nontrivial")
    _emit(args, {"ok": True, "checked": len(targets)},
          f"PASS {len(targets)} degree-{args.degree} cocycles on {spec}")
    return EXIT_OK


def _defaults(args):
    for name in ("a", "b", "d"):
        if getattr(args, name) is None:
            setattr(args, name, 0)
    return args


def cmd_cohomology(args, spec: GroupSpec) -> int:
    try:
        h = cohomology_group(spec, args.degree, mode=args.mode, max_order=args.max_order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    payload = {"group": {"m": spec.m, "n": spec.n}, "degree": args.degree, "mode": h.mode,
               "factors": list(h.factors), "order": h.order, "classes": h.classes}
    text = f"H^{args.degree}({spec}) = {h.describe()}, order {h.order}"
    if h.classes is not None:
        text += f"; {h.classes} classes among representatives"
    _emit(args, payload, text)
    if h.classes is not None and h.classes != h.order:
        return EXIT_FAIL
    return EXIT_OK


def cmd_chainmap(args, spec: GroupSpec) -> int:
    if args.action == "verify-cyclic":
        if spec.n != 1:
            raise UsageError("verify-cyclic needs --n 1")
        family, default = "cyclic", 5
    else:
        family, default = "product", 3
    degree = args.degree if args.degree is not None else default
    report = verify_chain_map(spec, max_degree=degree, family=family)
    payload = {"ok": report.ok, "family": family, "max_degree": degree,
               "generators_checked": report.generators_checked}
    if not report.ok:
        payload["counterexample"] = repr(report.counterexample[0])
    _emit(args, payload, report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_braiding(args, spec: GroupSpec) -> int:
    params = _params(_defaults(args), spec)
    if args.action == "solve":
        sols = solve_quasi_bicharacters(spec, params)
        payload = {"params": params.as_dict(),
                   "solutions": [dict(r.as_dict(), skew_symmetric=is_skew_symmetric(r)) for r in sols],
                   "empty": not sols}
        lines = [f"{len(sols)} quasi-bicharacters for a={params.a} b={params.b} d={params.d}"]
        lines += [f"  r11={r.r11} r12={r.r12} r21={r.r21} r22={r.r22}" for r in sols]
        _emit(args, payload, "\n".join(lines))
        return EXIT_OK

    given = [args.r11, args.r12, args.r21, args.r22]
    if any(v is not None for v in given):
        try:
            vals = [UnityRoot.parse(v if v is not None else "0/1") for v in given]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        rs = [QuasiBicharacter(spec, params, *vals)]
    else:
        rs = solve_quasi_bicharacters(spec, params)
    pent = verify_pentagon(spec, params, max_order=args.max_order)
    if not pent:
        return _fail(args, {"ok": False, "pentagon": False, "counterexample": [repr(x) for x in pent.counterexample]},
                     f"FAIL pentagon at {pent.counterexample}")
    for r in rs:
        hexa = verify_hexagon(r, max_order=args.max_order)
        if not hexa:
            return _fail(
                args,
                {"ok": False, "braiding": r.as_dict(), "identity": hexa.reason,
                 "counterexample": [repr(x) for x in hexa.counterexample]},
                f"FAIL {hexa.reason} for r11={r.r11} r12={r.r12} r21={r.r21} r22={r.r22} at {hexa.counterexample}",
            )
    _emit(args, {"ok": True, "checked": len(rs)}, f"PASS pentagon and hexagons for {len(rs)} braidings")
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, required=True)
    common.add_argument("--n", type=int, default=1)
    common.add_argument("--json", action="store_true", help="emit one JSON document")
    common.add_argument("--max-order", type=int, default=16, help="largest |G| for brute-force checks")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--a", type=int)
    params.add_argument("--b", type=int)
    params.add_argument("--d", type=int)

    parser = argparse.ArgumentParser(prog="grcat", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="monoidal or braided classification", parents=[common])
    p.add_argument("kind", choices=["monoidal", "braided"])
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("cocycle", help="evaluate or verify representative cocycles", parents=[common, params])
    p.add_argument("action", choices=["eval", "verify"])
    p.add_argument("--degree", type=int, choices=[2, 3], default=3)
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--z")
    p.set_defaults(func=cmd_cocycle)

    p = sub.add_parser("cohomology", help="H^2 or H^3 of Z_m x Z_n with Q/Z coefficients", parents=[common])
    p.add_argument("--degree", type=int, choices=[2, 3], default=3)
    p.add_argument("--mode", choices=["closed", "oracle", "resolution"], default="closed")
    p.set_defaults(func=cmd_cohomology)

    p = sub.add_parser("chainmap", help="check the chain maps commute with the differentials", parents=[common])
    p.add_argument("action", choices=["verify", "verify-cyclic"])
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_chainmap)

    p = sub.add_parser("braiding", help="quasi-bicharacters for phi3(a, b, d)", parents=[common, params])
    p.add_argument("action", choices=["solve", "verify"])
    for name in ("r11", "r12", "r21", "r22"):
        p.add_argument(f"--{name}", help="value as p/q")
    p.set_defaults(func=cmd_braiding)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        spec = GroupSpec(args.m, args.n)
        if args.command == "cocycle" and args.action == "eval" and args.degree == 3:
            _defaults(args)
        return args.func(args, spec)
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
