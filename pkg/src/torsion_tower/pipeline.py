"""Batch orchestration: levels -> covers -> homology -> records -> CSV.

One task per (orbifold, level).  Tasks are independent and pure, so they
can be fanned out to a process pool; results are sorted by
(orbifold_id, p, root, n) before emission, making the output independent
of worker count and scheduling.  Per-task failures (bad denominator,
relator violation, SNF resource abort, rank-check mismatch) become the
error column of their record and never abort the batch.
"""

import csv
import os
import random
from concurrent.futures import ProcessPoolExecutor

from sympy import nextprime

from .config import LevelPlan, OrbifoldSpec
from .fpgroup import check_relators, coset_action, reidemeister_schreier_abelianized
from .projline import Mat2
from .records import CoverRecord, assemble_record
from .residue import (DegreeOnePrime, ResidueRing, degree_one_primes,
                      reduce_number_elt)
from .snf import homology_summary, rank_mod_prime, smith_normal_form

DEFAULT_SNF_LIMIT = 5_000_000

CSV_HEADER = ["orbifold_id", "p", "root", "n", "index", "volume", "b1",
              "log_torsion", "tr", "transitive", "error"]


class RankCheckMismatch(RuntimeError):
    """Modular rank disagreed with the divisor count at two distinct primes."""


class NotRunnable(ValueError):
    """The spec has no presentation/matrices bundled."""


def plan_levels(spec, plan):
    """The (prime, exponent) pairs this spec is scheduled for under a plan."""
    if plan.mode == "prime_range":
        primes = degree_one_primes(spec.field_poly, plan.norm_max)
        return [(pr, 1) for pr in primes if pr.p >= plan.norm_min]
    return [(DegreeOnePrime(plan.p, plan.root), n)
            for n in range(1, plan.n_max + 1)]


def _reduced_images(spec, ring):
    images = []
    for mat in spec.matrices:
        (a, b), (c, d) = mat
        images.append(Mat2.from_elts(
            reduce_number_elt(a, ring), reduce_number_elt(b, ring),
            reduce_number_elt(c, ring), reduce_number_elt(d, ring),
        ))
    return images


def _crosscheck_rank(mat, divisor_count, seed_key):
    """Compare the divisor count against the rank mod a random 62-bit prime.

    The failure probability of one prime is at most rank * log2(max entry)/q;
    a mismatch triggers one retry at a second prime before giving up.  Seeded
    from the record key so reruns are reproducible.
    """
    rng = random.Random(f"rank-check:{seed_key}")
    q = int(nextprime(rng.randrange(1 << 61, 1 << 62)))
    if rank_mod_prime(mat, q) == divisor_count:
        return
    q2 = int(nextprime(rng.randrange(1 << 61, 1 << 62)))
    if rank_mod_prime(mat, q2) == divisor_count:
        return
    raise RankCheckMismatch(
        f"divisor count {divisor_count} vs rank mod {q} and {q2}"
    )


def compute_cover(spec, prime, n, snf_limit=DEFAULT_SNF_LIMIT):
    """One full cover computation, packaged as a CoverRecord.

    Any failure is captured in the error field together with whatever was
    already known about the cover (its index, for instance).
    """
    index = None
    transitive = None
    try:
        if not spec.runnable:
            raise NotRunnable(f"{spec.id} ships without a presentation")
        ring = ResidueRing.for_field(spec.field_poly, prime.p, prime.root, n)
        images = _reduced_images(spec, ring)
        if not check_relators(spec.presentation, images):
            raise ValueError("matrix images do not satisfy the relators projectively")
        ct = coset_action(spec.presentation, images)
        index, transitive = ct.m, ct.transitive
        _, mat = reidemeister_schreier_abelianized(spec.presentation, ct)
        divisors = smith_normal_form(mat, nnz_limit=snf_limit)
        _crosscheck_rank(mat, divisors.rank, f"{spec.id}:{prime.p}:{prime.root}:{n}")
        summary = homology_summary(divisors, mat.num_cols)
        return assemble_record(spec.id, prime, n, index, summary,
                               spec.base_volume, transitive)
    except Exception as e:  # per-record fault isolation, by contract
        return CoverRecord(
            orbifold_id=spec.id, p=prime.p, root=prime.root, n=n,
            index=index,
            volume=(spec.base_volume * index if index else None),
            transitive=transitive,
            error=f"{type(e).__name__}: {e}",
        )


def _run_task(args):
    return compute_cover(*args)


def default_jobs():
    try:
        return max(1, int(os.environ.get("TORSION_TOWER_JOBS", "1")))
    except ValueError:
        return 1


def run_batch(specs, plan, jobs=None, snf_limit=DEFAULT_SNF_LIMIT):
    """All covers for all specs under the plan, sorted deterministically."""
    if jobs is None:
        jobs = default_jobs()
    tasks = [(spec, prime, n, snf_limit)
             for spec in specs
             for prime, n in plan_levels(spec, plan)]
    if jobs <= 1 or len(tasks) <= 1:
        records = [compute_cover(*t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_run_task, tasks, chunksize=1))
    return sorted(records, key=CoverRecord.sort_key)


def _fmt_real(x):
    if x is None:
        return ""
    return f"{x:.12g}"


def _fmt_int(x):
    return "" if x is None else str(x)


def _fmt_bool(x):
    return "" if x is None else ("true" if x else "false")


def record_to_row(rec):
    return [rec.orbifold_id, str(rec.p), str(rec.root), str(rec.n),
            _fmt_int(rec.index), _fmt_real(rec.volume), _fmt_int(rec.b1),
            _fmt_real(rec.log_torsion), _fmt_real(rec.tr),
            _fmt_bool(rec.transitive), rec.error]


def emit_csv(records, path):
    """Deterministic CSV: fixed header, 12-significant-digit reals, LF ends.

    Written to a temp file and atomically renamed, so an interrupted run
    never leaves a partial output file.
    """
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for rec in records:
            writer.writerow(record_to_row(rec))
    os.replace(tmp, path)
