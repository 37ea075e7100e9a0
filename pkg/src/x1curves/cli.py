"""Command-line front end: derive, optimize, generate, generate4n, verify, export."""
from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from pathlib import Path

log = logging.getLogger("x1curves")


def _emit(args, obj, text: str):
    if args.format == "json":
        print(json.dumps(obj, indent=1))
    elif not args.quiet:
        print(text)


def cmd_derive(args) -> int:
    from .tate import multiples_of_P, raw_form, torsion_indices

    N = args.N
    obj: dict = {"N": N}
    lines = []
    if args.show_multiples:
        m, _ = torsion_indices(N) if N > 3 else (N, 0)
        pts = multiples_of_P(max(m, 2))
        obj["multiples"] = {str(pt.n): {"x": str(pt.x), "y": str(pt.y)} for pt in pts}
        lines += [f"x_{pt.n} = {pt.x}" for pt in pts]
    model = raw_form(N)
    obj["F"] = model.F.to_json()
    obj["removed_factors"] = [str(f) for f in model.removed_factors]
    lines.append(f"F(r,s) = {model.F}")
    lines.append(f"terms: {len(model.F)}")
    _emit(args, obj, "\n".join(lines))
    return 0


def cmd_optimize(args) -> int:
    from .poly import BiPoly, parse_poly
    from .search import optimize
    from .tate import raw_form

    if args.from_file:
        text = Path(args.from_file).read_text()
        try:
            f = BiPoly.from_json(json.loads(text)).rename(("x", "y"))
        except (json.JSONDecodeError, KeyError, TypeError):
            f = parse_poly(text.strip(), ("x", "y"))
    else:
        f = raw_form(args.N).F.rename(("x", "y"))
    t0 = time.perf_counter()
    res = optimize(f, R=args.radius)
    elapsed = time.perf_counter() - t0
    phi_r = res.phi.x_image
    phi_s = res.phi.y_image
    obj = {
        "N": args.N,
        "f": str(res.C1.f),
        "phi": {"r": str(phi_r), "s": str(phi_s)},
        "path": res.path,
        "vector": list(res.C1.vector),
        "k_max": res.k_max,
        "seconds": round(elapsed, 3),
    }
    text = "\n".join([
        f"f = {res.C1.f}",
        f"r = {phi_r}",
        f"s = {phi_s}",
        f"vector = {tuple(res.C1.vector)}",
        f"path ({len(res.path)} steps) = {' '.join(map(str, res.path))}",
        f"time = {elapsed:.1f}s",
    ])
    _emit(args, obj, text)
    return 0


def _field(p: int):
    from .field import PrimeField

    return PrimeField(p)


def cmd_generate(args) -> int:
    from .generate import GenerationStats, generate

    stats = GenerationStats()
    curves = generate(args.N, _field(args.p), args.count, random.Random(args.seed),
                      fast_genus1=args.fast_genus1, stats=stats)
    obj = [c.to_json() for c in curves]
    text = "\n".join(f"y^2 = x^3 + {c.curve.A}x + {c.curve.B}  P = {c.torsion_point}" for c in curves)
    _emit(args, obj, text)
    log.info("points sampled %d, rejected %d", stats.points, stats.rejected)
    return 0


def cmd_generate4n(args) -> int:
    from .fourtorsion import FORBID, REQUIRE, FourTorsionStats, generate_order_4N

    stats = FourTorsionStats()
    curves = generate_order_4N(args.N, _field(args.p), args.count, random.Random(args.seed),
                               mode=FORBID if args.forbid else REQUIRE, stats=stats)
    obj = [c.to_json() for c in curves]
    text = "\n".join(f"y^2 = x^3 + {c.base.curve.A}x + {c.base.curve.B}  P = {c.point} (order {c.order})"
                     for c in curves)
    _emit(args, obj, text)
    log.info("curves examined per accepted: %.2f", stats.examined_per_accepted)
    return 0


def cmd_verify(args) -> int:
    from .data import verify_database

    report = verify_database(n_primes=args.primes, seed=args.seed or 0, raw=not args.skip_raw)
    obj = {"ok": report.ok, "results": [r.__dict__ for r in report.results]}
    _emit(args, obj, "\n".join(report.lines()))
    return 0 if report.ok else 1


def cmd_export(args) -> int:
    from .data import export_tables

    fmts = {"json": ("json",), "text": ("text",), "both": ("json", "text")}[args.tables]
    paths = export_tables(args.out, fmts)
    _emit(args, {"written": [str(p) for p in paths]}, "\n".join(map(str, paths)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="x1curves", description=__doc__)
    ap.add_argument("--seed", type=int, default=None, help="RNG seed")
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--quiet", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("derive", help="raw model F(r,s) of X1(N)")
    p.add_argument("N", type=int)
    p.add_argument("--show-multiples", action="store_true")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("optimize", help="search for a simpler model of X1(N)")
    p.add_argument("N", type=int)
    p.add_argument("--radius", type=int, default=8)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--from-raw", action="store_true", help="start from the raw model (default)")
    src.add_argument("--from-file", help="polynomial in x, y (text or BiPoly JSON)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("generate", help="curves with a point of order N")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--fast-genus1", action="store_true")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("generate4n", help="curves with a point of order 4N, N odd")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--forbid", action="store_true", help="group order 2N mod 4N instead")
    p.set_defaults(func=cmd_generate4n)

    p = sub.add_parser("verify", help="cross-check the bundled models")
    p.add_argument("--primes", type=int, default=5)
    p.add_argument("--skip-raw", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export", help="write the bundled tables")
    p.add_argument("--out", default="x1_tables")
    p.add_argument("--tables", choices=("json", "text", "both"), default="both")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO,
                        format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (ValueError, KeyError, RuntimeError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
