"""Command-line interface.

    torsion-tower run --config cfg.json --out covers.csv [--plot s.svg]
                      [--hist h.svg] [--log-x] [--jobs N] [--snf-limit NNZ]
                      [--lenient]
    torsion-tower catalog
    torsion-tower check --config cfg.json

Exit codes: 0 success, 1 config error, 2 if any record carries an error
(downgraded to 0 by --lenient).
"""

import argparse
import sys

from .catalog import catalog_specs
from .config import ParseError, ValidationError, load_config
from .fpgroup import check_relators
from .pipeline import (DEFAULT_SNF_LIMIT, _reduced_images, default_jobs,
                       emit_csv, run_batch)
from .residue import ResidueRing, degree_one_primes


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="torsion-tower",
        description="Congruence covers, torsion homology, and the "
                    "normalized torsion statistic of hyperbolic 3-orbifolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a batch and write CSV (and plots)")
    run.add_argument("--config", required=True, help="JSON config file")
    run.add_argument("--out", required=True, help="output CSV path")
    run.add_argument("--plot", help="also write a volume/tr scatter SVG")
    run.add_argument("--hist", help="also write a tr histogram SVG")
    run.add_argument("--log-x", action="store_true",
                     help="log scale on the scatter volume axis")
    run.add_argument("--jobs", type=int, default=None,
                     help="worker processes (default $TORSION_TOWER_JOBS or 1)")
    run.add_argument("--snf-limit", type=int, default=DEFAULT_SNF_LIMIT,
                     help="abort a single SNF past this many nonzeros")
    run.add_argument("--bins", type=int, default=20, help="histogram bins")
    run.add_argument("--lenient", action="store_true",
                     help="exit 0 even if some records carry errors")

    sub.add_parser("catalog", help="list the bundled orbifold specs")

    check = sub.add_parser("check", help="validate a config without running")
    check.add_argument("--config", required=True, help="JSON config file")
    return parser


def _cmd_run(args):
    try:
        specs, plan, options = load_config(args.config)
    except (ParseError, ValidationError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    jobs = args.jobs if args.jobs is not None else default_jobs()
    records = run_batch(specs, plan, jobs=jobs, snf_limit=args.snf_limit)
    emit_csv(records, args.out)
    plot = args.plot or options.get("plot")
    hist = args.hist or options.get("hist")
    if plot or hist:
        from .plots import NoPlottableRecords, emit_histogram_svg, emit_scatter_svg
        try:
            if plot:
                emit_scatter_svg(records, plot, log_x=args.log_x)
            if hist:
                emit_histogram_svg(records, hist, bins=args.bins, split_by_b1=True)
        except NoPlottableRecords as e:
            print(f"plot skipped: {e}", file=sys.stderr)
    failures = [r for r in records if not r.ok]
    for r in failures:
        print(f"error: {r.orbifold_id} p={r.p} root={r.root} n={r.n}: {r.error}",
              file=sys.stderr)
    print(f"wrote {len(records)} records to {args.out}"
          f" ({len(failures)} with errors)")
    if failures and not args.lenient:
        return 2
    return 0


def _cmd_catalog(_args):
    for spec in catalog_specs():
        status = "runnable" if spec.runnable else "metadata-only"
        poly = list(spec.field_poly.coeffs)
        print(f"{spec.id:10s} {status:14s} degree={spec.field_poly.degree} "
              f"vol={spec.base_volume:g} field_poly={poly}")
    return 0


def _cmd_check(args):
    try:
        specs, plan, _options = load_config(args.config)
        for spec in specs:
            if not spec.runnable:
                print(f"{spec.id}: metadata only, will not run")
                continue
            # sanity-check the relators at a few small levels; a single prime
            # can make a non-relator accidentally scalar
            for pr in degree_one_primes(spec.field_poly, 50)[:5]:
                ring = ResidueRing.for_field(spec.field_poly, pr.p, pr.root, 1)
                images = _reduced_images(spec, ring)
                if not check_relators(spec.presentation, images):
                    raise ValidationError(
                        f"{spec.id}: matrix images violate the relators mod {pr.p}"
                    )
            print(f"{spec.id}: ok")
    except (ParseError, ValidationError) as e:
        print(f"config error: {e}", file=sys.stderr)
        return 1
    print(f"config ok: {len(specs)} orbifolds, levels={plan.mode}")
    return 0


def main(argv=None):
    args = _build_parser().parse_args(argv)
    if args.command == "run":
        return _cmd_run(args)
    if args.command == "catalog":
        return _cmd_catalog(args)
    return _cmd_check(args)


if __name__ == "__main__":
    sys.exit(main())
