"""Command line interface.

All randomness flows from --seed, so identical invocations produce
byte-identical reports and database files.  Long expansions print progress
(assignments processed / total) to stderr.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import database as dbmod
from .dimension import dimensions
from .equations import format_reports, ideal_slice
from .evaluation import evaluate_hwp
from .families import (
    FamilySpec,
    read_generic_family,
    sample,
    symmetroid_family,
    veronese_family,
)
from .hashing import DEFAULT_P_CAP
from .hwp import read_hwp_file, write_hwp_file
from .seeding import derived_rng
from .tableaux import (
    count_isobaric_tableaux,
    enumerate_isobaric_tableaux,
    tableau_from_rows,
)


class CliError(Exception):
    pass


def _parse_weight(text):
    return tuple(int(x) for x in text.split(","))


def make_family(spec_text: str, n: int | None, c: int | None) -> FamilySpec:
    """Parse --family values: symmetroid:m | veronese | generic:FILE."""
    if spec_text.startswith("symmetroid:"):
        m = int(spec_text.split(":", 1)[1])
        if n is None:
            raise CliError("symmetroid family requires --n")
        if c is not None and c != m:
            raise CliError(f"symmetroid:{m} produces degree {m}, but --c {c} given")
        return symmetroid_family(m, n)
    if spec_text == "veronese":
        if n is None or c is None:
            raise CliError("veronese family requires --n and --c")
        return veronese_family(n, c)
    if spec_text.startswith("generic:"):
        path = spec_text.split(":", 1)[1]
        fam = read_generic_family(path)
        if n is not None and fam.n != n:
            raise CliError(f"family file has n={fam.n}, but --n {n} given")
        if c is not None and fam.c != c:
            raise CliError(f"family file has c={fam.c}, but --c {c} given")
        return fam
    raise CliError(f"unknown family {spec_text!r} (use symmetroid:m, veronese, generic:FILE)")


class _Progress:
    """Throttled 'processed / total' lines on stderr."""

    def __init__(self, enabled: bool, label: str = ""):
        self.enabled = enabled
        self.label = label
        self._last = 0.0

    def __call__(self, done, total):
        if not self.enabled:
            return
        now = time.monotonic()
        if now - self._last < 2.0 and done < total:
            return
        self._last = now
        print(f"  {self.label}{done}/{total} assignments", file=sys.stderr)


def _read_tableau_file(path):
    rows = []
    with open(path, encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            rows.append([int(x) for x in line.replace(",", " ").split()])
    if not rows:
        raise CliError(f"{path}: no tableau rows found")
    return tableau_from_rows(rows)


def cmd_tableaux(args):
    if args.weight is not None:
        weights = [_parse_weight(args.weight)]
    else:
        from .tableaux import partitions_of

        weights = partitions_of(args.d * args.c)
    for lam in weights:
        count = count_isobaric_tableaux(lam, args.d, args.c)
        print(f"weight={','.join(str(x) for x in lam)} count={count}")
        if count and count <= args.limit:
            for tab in enumerate_isobaric_tableaux(lam, args.d, args.c):
                print(f"  {tab}")
    return 0


def cmd_expand(args):
    from .expander import expand_hwv

    tableau = _read_tableau_file(args.tableau)
    progress = _Progress(not args.quiet, f"{tableau.shape} ")
    hwp = expand_hwv(tableau, seed=args.seed, workers=args.workers, progress=progress)
    write_hwp_file(args.out, hwp)
    print(f"weight={','.join(str(x) for x in hwp.weight)} terms={hwp.term_count()} -> {args.out}")
    return 0


def cmd_build_db(args):
    db = dbmod.Database(args.db)
    progress = _Progress(not args.quiet)
    weight = _parse_weight(args.weight) if args.weight else None
    added = dbmod.build(
        db, args.d, args.c, weight=weight, seed=args.seed, workers=args.workers,
        expand_all=args.all, progress=progress,
        log=lambda msg: print(msg, file=sys.stderr),
    )
    print(f"added {len(added)} entries to {args.db}")
    for entry in added:
        print(f"  {_fmt_entry(entry)}")
    return 0


def _fmt_entry(e):
    return (
        f"c={e.c} d={e.d} weight={','.join(str(x) for x in e.weight)} "
        f"tableau={e.tableau_id} terms={e.terms}"
    )


def cmd_verify_db(args):
    db = dbmod.Database(args.db)
    problems = dbmod.verify(db)
    if problems:
        for p in problems:
            print(p)
        return 1
    print(f"ok: {len(db.entries())} entries verified")
    return 0


def cmd_find_equations(args):
    family = make_family(args.family, args.n, args.c)
    c = family.c
    db = dbmod.Database(args.db) if args.db else dbmod.MemoryStore()
    progress = _Progress(not args.quiet)
    weight = _parse_weight(args.weight) if args.weight else None
    reports = ideal_slice(
        args.d, c, args.n, family, db,
        seed=args.seed, height=args.height, weight=weight,
        workers=args.workers, progress=progress,
    )
    text = format_reports(reports)
    sys.stdout.write(text)
    nonzero = [r for r in reports if r.b]
    if args.out:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "report.txt").write_text(text, encoding="utf-8")
        for rep in nonzero:
            for i, combo in enumerate(rep.combos):
                name = "eq_" + "-".join(str(x) for x in rep.weight) + f"_{i}.hwp"
                write_hwp_file(outdir / name, combo)
        print(f"wrote report and {sum(len(r.combos) for r in nonzero)} equation files to {outdir}",
              file=sys.stderr)
    print(
        f"I_{args.d} is {'zero' if not nonzero else 'NONZERO in ' + str(len(nonzero)) + ' weight(s)'}",
        file=sys.stderr,
    )
    return 0


def cmd_dimension(args):
    family = make_family(args.family, args.n, args.c)
    report = dimensions(family, seed=args.seed, height=args.height)
    sys.stdout.write(report.format())
    return 0


def cmd_verify_equation(args):
    family = make_family(args.family, args.n, args.c)
    hwp = read_hwp_file(args.hwp_combo)
    if hwp.c != family.c:
        raise CliError(f"equation has c={hwp.c}, family produces degree {family.c}")
    rng = derived_rng("verify-equation", args.seed)
    bad = 0
    for i in range(args.samples):
        f = sample(family, rng, height=args.height)
        value = evaluate_hwp(hwp, f)
        if value != Fraction(0):
            bad += 1
            print(f"sample {i}: value {value} != 0")
    if bad:
        print(f"FAIL: {bad}/{args.samples} samples do not vanish")
        return 1
    print(f"ok: vanishes exactly at {args.samples}/{args.samples} family samples")
    return 0


def build_parser():
    ap = argparse.ArgumentParser(
        prog="hwpoly",
        description="Isotypic decomposition of ideals of GL-invariant families "
        "via highest weight polynomial databases.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, db=False, family=False, seed=True, workers=False):
        if seed:
            p.add_argument("--seed", type=int, default=0, help="master random seed")
        if workers:
            p.add_argument("--workers", type=int, default=os.cpu_count() or 1,
                           help="parallel workers for expansions")
        if db:
            p.add_argument("--db", default=None, help="database directory")
        if family:
            p.add_argument("--family", required=True,
                           help="symmetroid:m | veronese | generic:FILE")
            p.add_argument("--n", type=int, default=None, help="number of variables")
            p.add_argument("--c", type=int, default=None, help="form degree")
            p.add_argument("--height", type=int, default=100,
                           help="coefficient height for integer sampling")
        p.add_argument("--quiet", action="store_true", help="suppress progress output")

    p = sub.add_parser("tableaux", help="list/count isobaric semistandard tableaux")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--weight", default=None, help="comma-separated partition")
    p.add_argument("--limit", type=int, default=40, help="list tableaux when count <= limit")
    common(p, seed=False)
    p.set_defaults(func=cmd_tableaux)

    p = sub.add_parser("expand", help="expand one tableau into an HWP file")
    p.add_argument("--tableau", required=True, help="text file, one tableau row per line")
    p.add_argument("--out", required=True, help="output .hwp path")
    common(p, workers=True)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("build-db", help="build/extend the HWP database")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--weight", default=None, help="restrict to one weight")
    p.add_argument("--all", action="store_true",
                   help="expand every tableau (default: basis-selection driven)")
    common(p, workers=True)
    p.add_argument("--db", default="db", help="database directory")
    p.set_defaults(func=cmd_build_db)

    p = sub.add_parser("verify-db", help="check database integrity")
    p.add_argument("--db", default="db", help="database directory")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_verify_db)

    p = sub.add_parser("find-equations", help="isotypic decomposition of the ideal slice")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--weight", default=None, help="restrict to one weight")
    p.add_argument("--out", default=None, help="directory for report + equation files")
    common(p, db=True, family=True, workers=True)
    p.set_defaults(func=cmd_find_equations)

    p = sub.add_parser("dimension", help="dim V / dim W / dim X / fiber dim")
    common(p, family=True)
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("verify-equation", help="a-posteriori exact vanishing check")
    p.add_argument("--hwp-combo", required=True, help="equation .hwp file")
    p.add_argument("--samples", type=int, default=10)
    common(p, family=True)
    p.set_defaults(func=cmd_verify_equation)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
