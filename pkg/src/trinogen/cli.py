"""Command line front end.

    trinogen analyze --n 5 --m 4 --a 3 --b 24 --p 2
    trinogen certify --n 18 --m 1 --a 342 --b 26
    trinogen discriminant --n 12 --m 6 --a -19 --b 171
    trinogen scan --n 6 --m 1-5 --a=-100:100 --a-mod 9 --a-res 0 --b=-100:100 --b-mod 9 --b-res=-1

Exit codes: 0 certified (or plain success), 1 no certificate, 2 input rejected.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional

from .arith import DeskScaleError, is_prime
from .intpoly import ReducibleError, Trinomial, irreducibility_screen, trinomial_discriminant
from .monogenity import (
    CheckConfig,
    Certificate,
    candidate_primes,
    certify,
    match_corollary_families,
)
from .newton import NewtonPolygon
from .ore import OreReport, analyze_prime

EXIT_CERTIFIED, EXIT_NONE, EXIT_REJECTED = 0, 1, 2
DEFAULT_CAP = 10**6

log = logging.getLogger("trinogen")


@dataclass
class RunConfig:
    command: str
    trinomial: Optional[Trinomial] = None
    primes: Optional[list[int]] = None
    output: str = "table"
    workers: int = 1
    cap: int = DEFAULT_CAP
    checks: CheckConfig = field(default_factory=CheckConfig)

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be at least 1")


# -- argument parsing -------------------------------------------------------------


def _prime(text: str) -> int:
    try:
        p = int(text)
        ok = is_prime(p)
    except (ValueError, DeskScaleError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not ok:
        raise argparse.ArgumentTypeError(f"{text} is not prime")
    return p


def parse_range(text: str) -> range:
    """``"5"``, ``"1-5"`` or ``"-100:100"`` (inclusive); ``:`` allows negative ends.

    Pass negative ranges as ``--a=-100:100`` so argparse does not read them as flags.
    """
    sep = ":" if ":" in text else ("-" if "-" in text.lstrip("-") else None)
    if sep is None:
        v = int(text)
        return range(v, v + 1)
    if sep == "-":
        head = text.lstrip("-")
        lo_txt, hi_txt = head.split("-", 1)
        lo_txt = text[: len(text) - len(head)] + lo_txt
    else:
        lo_txt, hi_txt = text.split(":", 1)
    return range(int(lo_txt), int(hi_txt) + 1)


def _residues(text: str) -> list[int]:
    return [int(t) for t in text.split(",") if t.strip()]


def _trinomial_args(sp: argparse.ArgumentParser) -> None:
    for name in ("n", "m", "a", "b"):
        sp.add_argument(f"--{name}", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true")
    ap = argparse.ArgumentParser(
        prog="trinogen", parents=[common], description="Newton polygons and non-monogenity certificates for trinomials"
    )
    sub = ap.add_subparsers(dest="command", required=True)

    an = sub.add_parser("analyze", parents=[common], help="Newton polygons, index bound and splitting shape at a prime")
    _trinomial_args(an)
    an.add_argument("--p", type=_prime, action="append", help="prime (repeatable; default: candidate primes)")
    an.add_argument("--json", action="store_true")
    an.add_argument("--dump-polygon", action="store_true", help="draw each polygon as text")
    an.add_argument("--plot", type=Path, help="write a figure per prime (suffix _p<p> added)")

    ce = sub.add_parser("certify", parents=[common], help="search for a common index divisor")
    _trinomial_args(ce)
    ce.add_argument("--p", type=_prime, action="append", help="restrict to these primes")
    ce.add_argument("--json", action="store_true")
    ce.add_argument("--d-limit", type=int)
    ce.add_argument("--dn2-literal", action="store_true", help="literal count in condition 3 of dn2")

    di = sub.add_parser("discriminant", parents=[common], help="discriminant and candidate primes")
    _trinomial_args(di)
    di.add_argument("--json", action="store_true")

    sc = sub.add_parser("scan", parents=[common], help="certify a congruence family, one JSON line per certificate")
    sc.add_argument("--n", required=True, help="degree or range, e.g. 6 or 12-18")
    sc.add_argument("--m", required=True, help="range for m; values outside 0 < m < n are skipped")
    sc.add_argument("--a", required=True, type=parse_range)
    sc.add_argument("--b", required=True, type=parse_range)
    sc.add_argument("--a-mod", type=int, default=1)
    sc.add_argument("--a-res", type=_residues, default=[0])
    sc.add_argument("--b-mod", type=int, default=1)
    sc.add_argument("--b-res", type=_residues, default=[0])
    sc.add_argument("--theorem", help="keep certificates whose source starts with this (dn1, dn2.4, d6, ore)")
    sc.add_argument("--workers", type=int, default=1)
    sc.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sc.add_argument("--d-limit", type=int)
    sc.add_argument("--plot", type=Path, help="write a summary figure")
    return ap


# -- rendering ----------------------------------------------------------------------


def _fmt_point(pt) -> str:
    return f"({pt.abscissa},{pt.ordinate})"


def render_polygon_ascii(N: NewtonPolygon, width: int = 72) -> list[str]:
    """Text picture: ``*`` vertices, ``o`` other points, ``.`` lattice points under N+."""
    if N.is_empty():
        return ["  (empty polygon)"]
    pts = {(pt.abscissa, pt.ordinate) for pt in N.points}
    verts = {(v.abscissa, v.ordinate) for v in N.vertices}
    x_max = N.vertices[-1].abscissa
    y_max = N.vertices[0].ordinate
    if x_max + 1 > width or y_max > 40:
        return [f"  (polygon too large to draw: {x_max + 1} x {y_max + 1})"]
    rows = []
    for y in range(y_max, -1, -1):
        cells = []
        for x in range(x_max + 1):
            h = N.height_at(x)
            if (x, y) in verts:
                cells.append("*")
            elif (x, y) in pts:
                cells.append("o")
            elif x >= 1 and y >= 1 and h is not None and y <= h:
                cells.append(".")
            else:
                cells.append(" ")
        rows.append(f"  {y:>3} |" + " ".join(cells))
    rows.append("      +" + "-" * (2 * x_max + 1))
    return rows


def render_report(report: OreReport, dump_polygon: bool = False) -> list[str]:
    out = [f"F = {report.F}   p = {report.p}"]
    for fa in report.factors:
        out.append(f"  factor {fa.g} (multiplicity {fa.multiplicity})   phi = {fa.phi}")
        if fa.polygon is None or fa.polygon.is_empty():
            out.append(f"    simple factor: prime of residue degree {fa.g.degree}")
            continue
        out.append("    vertices " + " ".join(_fmt_point(v) for v in fa.polygon.vertices))
        for sa in fa.sides:
            s = sa.side
            facs = ", ".join(f"{g}" + (f"^{k}" if k > 1 else "") for g, k in sa.factors)
            out.append(
                f"    side {_fmt_point(s.start)}-{_fmt_point(s.end)}  slope {s.slope}  e={s.e} h={s.h}"
                f"  residual {sa.residual.poly}  ->  [{facs}]{'' if sa.separable else '  NOT separable'}"
            )
        out.append(f"    ind_phi = {fa.index}" + ("  (lift outside the lifting lemma)" if not fa.lemtech else ""))
        if dump_polygon:
            out.extend("  " + row for row in render_polygon_ascii(fa.polygon))
    out.append(f"  index >= {report.index_lower_bound}   {'regular' if report.regular else 'not regular'}")
    shape = report.shape
    if shape is not None:
        out.append("  shape " + " . ".join(f"e^{e} f^{f}" for e, f in shape.entries))
    return out


def render_certificate(c: Certificate) -> list[str]:
    out = [
        f"{c.trinomial}: p = {c.prime} divides i(K)  [{c.source}]",
        f"  witness d = {c.witness_d}: P_d = {c.primes_found} > N_p(d) = {c.irreducible_budget}",
        f"  engine shape {c.engine_shape.as_lists() if c.engine_shape else 'unavailable'}; engine agrees: {c.engine_agrees}",
        f"  nu_p(i(K)) = {c.index_valuation}; irreducibility {c.irreducibility}",
    ]
    out += [f"  WARNING: {w}" for w in c.warnings]
    return out


# -- commands -----------------------------------------------------------------------


def _screen_or_reject(T: Trinomial):
    screen = irreducibility_screen(T.to_poly())
    if screen.status == "reducible":
        raise ReducibleError(f"{T} is reducible: {screen.witness}", screen.factor)
    return screen


def cmd_analyze(args, out) -> int:
    T = Trinomial(args.n, args.m, args.a, args.b)
    _screen_or_reject(T)
    primes = args.p or candidate_primes(T)
    if not primes:
        print(f"{T}: no prime p < n with p^2 dividing the discriminant", file=out)
        return 0
    for p in primes:
        report = analyze_prime(T.to_poly(), p)
        if args.json:
            print(report.to_json(), file=out)
        else:
            print("\n".join(render_report(report, args.dump_polygon)), file=out)
        if args.plot:
            from .plotting import plot_report

            target = args.plot.with_name(f"{args.plot.stem}_p{p}{args.plot.suffix or '.png'}")
            plot_report(report, target)
            log.info("wrote %s", target)
    return 0


def cmd_certify(args, out) -> int:
    T = Trinomial(args.n, args.m, args.a, args.b)
    screen = _screen_or_reject(T)
    config = CheckConfig(d_limit=args.d_limit, dn2_literal_count=args.dn2_literal)
    certs = certify(T, args.p, config, screen)
    if args.json:
        for c in certs:
            print(c.to_json(), file=out)
    else:
        for c in certs:
            print("\n".join(render_certificate(c)), file=out)
        hits = match_corollary_families(T)
        if hits:
            print("  corollary clauses: " + ", ".join(f"{h.corollary}({h.clause}) at p={h.p}" for h in hits), file=out)
        if not certs:
            print(f"{T}: no certificate (candidate primes {candidate_primes(T)})", file=out)
    return EXIT_CERTIFIED if certs else EXIT_NONE


def cmd_discriminant(args, out) -> int:
    T = Trinomial(args.n, args.m, args.a, args.b)
    disc = trinomial_discriminant(T)
    cands = candidate_primes(T)
    if args.json:
        print(json.dumps({"discriminant": str(disc), "candidate_primes": cands}, separators=(",", ":")), file=out)
    else:
        print(f"disc({T}) = {disc}", file=out)
        print(f"primes p < {T.n} with p^2 | disc: {cands or 'none'}", file=out)
    return 0


def _scan_one(job: tuple[Trinomial, Optional[int], Optional[str]]) -> tuple[str, list[str]]:
    T, d_limit, prefix = job
    try:
        certs = certify(T, config=CheckConfig(d_limit=d_limit))
    except ReducibleError:
        return "reducible", []
    lines = [c.to_json() for c in certs if prefix is None or c.source.startswith(prefix)]
    return "certified" if lines else "none", lines


def scan_jobs(ns: Iterable[int], ms: range, a_vals: list[int], b_vals: list[int]):
    for n in ns:
        for m in ms:
            if not 0 < m < n:
                continue
            for a in a_vals:
                for b in b_vals:
                    yield n, m, a, b


def cmd_scan(args, out) -> int:
    ns, ms = parse_range(args.n), parse_range(args.m)
    a_vals = [a for a in args.a if any((a - r) % args.a_mod == 0 for r in args.a_res)]
    b_vals = [b for b in args.b if b != 0 and any((b - r) % args.b_mod == 0 for r in args.b_res)]
    valid_m = sum(1 for n in ns for m in ms if 0 < m < n)
    total = valid_m * len(a_vals) * len(b_vals)
    if total > args.cap:
        print(f"scan refused: {total} candidates exceed the cap of {args.cap}", file=sys.stderr)
        return EXIT_REJECTED
    if args.workers < 1:
        print("worker count must be at least 1", file=sys.stderr)
        return EXIT_REJECTED
    jobs = [(Trinomial(*t), args.d_limit, args.theorem) for t in scan_jobs(ns, ms, a_vals, b_vals)]
    if args.workers == 1:
        results = map(_scan_one, jobs)
        pool = None
    else:
        pool = ProcessPoolExecutor(max_workers=args.workers)
        results = pool.map(_scan_one, jobs, chunksize=max(1, len(jobs) // (8 * args.workers)))
    tally = {"candidates": total, "reducible": 0, "certified": 0, "none": 0, "certificates": 0}
    records = []
    try:
        # map preserves job order, so output is lexicographic in (n, m, a, b) for any worker count
        for status, lines in results:
            tally[status] += 1
            tally["certificates"] += len(lines)
            for line in lines:
                print(line, file=out)
                if args.plot:
                    records.append(json.loads(line))
    finally:
        if pool is not None:
            pool.shutdown()
    print(json.dumps({"summary": tally}, separators=(",", ":")), file=out)
    if args.plot:
        from .plotting import plot_scan_summary

        plot_scan_summary(records, args.plot)
    return EXIT_CERTIFIED if tally["certified"] else EXIT_NONE


COMMANDS = {"analyze": cmd_analyze, "certify": cmd_certify, "discriminant": cmd_discriminant, "scan": cmd_scan}


def main(argv: Optional[list[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args, out)
    except ReducibleError as exc:
        print(f"rejected: {exc}" + (f"; factor {exc.factor}" if getattr(exc, "factor", None) is not None else ""), file=sys.stderr)
        return EXIT_REJECTED
    except (ValueError, DeskScaleError) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED


if __name__ == "__main__":
    sys.exit(main())
