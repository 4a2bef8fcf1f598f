import math
from pathlib import Path

import pytest

from torsion_tower.catalog import catalog_spec
from torsion_tower.config import LevelPlan, OrbifoldSpec
from torsion_tower.fpgroup import Presentation
from torsion_tower.pipeline import (compute_cover, emit_csv, plan_levels,
                                    record_to_row, run_batch, CSV_HEADER)
from torsion_tower.residue import (DegreeOnePrime, MonicIntPolynomial,
                                   NumberRingElement)

GOLDEN = Path(__file__).parent / "golden" / "trivial.csv"

X = MonicIntPolynomial((0, 1))


def nre(k, den=1):
    return NumberRingElement((k,), den)


def matrix(a, b, c, d, den=1):
    return ((nre(a, den), nre(b, den)), (nre(c, den), nre(d, den)))


TRIVIAL = OrbifoldSpec(
    id="trivial", field_poly=X, base_volume=1.0,
    presentation=Presentation(1, ()),
    matrices=(matrix(1, 0, 0, 1),),
)

Z2_SPEC = OrbifoldSpec(
    id="z2", field_poly=X, base_volume=1.0,
    presentation=Presentation(2, ((1, 2, -1, -2),)),
    matrices=(matrix(1, 1, 0, 1), matrix(1, 0, 0, 1)),
)

HALF_SPEC = OrbifoldSpec(
    id="half", field_poly=X, base_volume=1.0,
    presentation=Presentation(1, ()),
    matrices=(matrix(1, 1, 0, 2, den=2),),  # denominator 2 clashes with p = 2
)


def test_plan_levels_prime_range():
    levels = plan_levels(TRIVIAL, LevelPlan(mode="prime_range", norm_min=2, norm_max=7))
    assert [(pr.p, n) for pr, n in levels] == [(2, 1), (3, 1), (5, 1), (7, 1)]
    levels = plan_levels(TRIVIAL, LevelPlan(mode="prime_range", norm_min=3, norm_max=7))
    assert [(pr.p, n) for pr, n in levels] == [(3, 1), (5, 1), (7, 1)]


def test_plan_levels_prime_power():
    levels = plan_levels(TRIVIAL, LevelPlan(mode="prime_power", p=3, root=0, n_max=3))
    assert [(pr.p, pr.root, n) for pr, n in levels] == [(3, 0, 1), (3, 0, 2), (3, 0, 3)]


def test_identity_images_give_index_one():
    rec = compute_cover(TRIVIAL, DegreeOnePrime(2, 0), 1)
    assert rec.ok and rec.index == 1
    assert rec.b1 == 1 and rec.log_torsion == 0.0  # base group is Z
    assert rec.volume == 1.0
    assert rec.transitive is False


def test_z2_cover_of_index_one():
    rec = compute_cover(Z2_SPEC, DegreeOnePrime(2, 0), 1)
    assert rec.ok
    assert rec.index == 1  # the upper parabolic fixes the base point
    assert rec.b1 == 2 and rec.log_torsion == 0.0  # H_1 = Z^2


def test_denominator_clash_is_captured_not_raised():
    rec = compute_cover(HALF_SPEC, DegreeOnePrime(2, 0), 1)
    assert not rec.ok
    assert "DenominatorNotInvertible" in rec.error
    # at an odd prime the same spec runs fine
    assert compute_cover(HALF_SPEC, DegreeOnePrime(3, 0), 1).ok


def test_metadata_only_spec_yields_error_records():
    spec = catalog_spec("M1")
    recs = run_batch([spec], LevelPlan(mode="prime_range", norm_min=2, norm_max=5))
    assert recs and all("NotRunnable" in r.error for r in recs)


def test_invalid_tower_prime_yields_error_records():
    spec = catalog_spec("fig8")  # x^2 - x + 1 has no root mod 2
    recs = run_batch([spec], LevelPlan(mode="prime_power", p=2, root=0, n_max=2))
    assert len(recs) == 2
    assert all("NotARoot" in r.error for r in recs)


def test_batch_sorted_and_deterministic():
    specs = [catalog_spec("modular"), catalog_spec("fig8")]
    plan = LevelPlan(mode="prime_range", norm_min=2, norm_max=7)
    recs1 = run_batch(specs, plan, jobs=1)
    recs2 = run_batch(list(reversed(specs)), plan, jobs=1)
    assert recs1 == recs2
    keys = [r.sort_key() for r in recs1]
    assert keys == sorted(keys)


def test_worker_count_does_not_change_output(tmp_path):
    specs = [catalog_spec("modular")]
    plan = LevelPlan(mode="prime_range", norm_min=2, norm_max=7)
    paths = []
    for jobs in (1, 2):
        out = tmp_path / f"out{jobs}.csv"
        emit_csv(run_batch(specs, plan, jobs=jobs), out)
        paths.append(out.read_bytes())
    assert paths[0] == paths[1]


def test_fault_isolation():
    plan = LevelPlan(mode="prime_range", norm_min=2, norm_max=5)
    good = run_batch([TRIVIAL], plan)
    mixed = run_batch([TRIVIAL, HALF_SPEC], plan)
    assert [r for r in mixed if r.orbifold_id == "trivial"] == good
    bad = [r for r in mixed if r.orbifold_id == "half"]
    assert sum(1 for r in bad if not r.ok) == 1  # only the p = 2 row fails
    assert {r.p for r in bad if not r.ok} == {2}


def test_volume_column_is_base_times_index():
    recs = run_batch([catalog_spec("modular")],
                     LevelPlan(mode="prime_range", norm_min=2, norm_max=13))
    for r in recs:
        assert r.ok
        assert f"{r.volume:.12g}" == f"{r.index * 1.0471975511965976:.12g}"


def test_emit_csv_header_only(tmp_path):
    out = tmp_path / "empty.csv"
    emit_csv([], out)
    assert out.read_bytes() == (",".join(CSV_HEADER) + "\n").encode()


def test_emit_csv_runs_byte_identical(tmp_path):
    recs = run_batch([catalog_spec("modular")],
                     LevelPlan(mode="prime_power", p=2, root=0, n_max=3))
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    emit_csv(recs, a)
    emit_csv(recs, b)
    assert a.read_bytes() == b.read_bytes()
    assert b"\r" not in a.read_bytes()


def test_golden_trivial_record(tmp_path):
    recs = run_batch([TRIVIAL], LevelPlan(mode="prime_range", norm_min=2, norm_max=2))
    out = tmp_path / "trivial.csv"
    emit_csv(recs, out)
    assert out.read_bytes() == GOLDEN.read_bytes()


def test_row_formatting_significant_digits():
    rec = run_batch([catalog_spec("modular")],
                    LevelPlan(mode="prime_power", p=5, root=0, n_max=1))[0]
    row = record_to_row(rec)
    assert row[5] == f"{rec.volume:.12g}"
    assert row[8] == f"{rec.tr:.12g}"
    assert row[10] == ""


def test_tr_recomputable_from_columns():
    from torsion_tower.records import tr_invariant

    recs = run_batch([catalog_spec("fig8")],
                     LevelPlan(mode="prime_power", p=7, root=3, n_max=1))
    for r in recs:
        assert r.ok
        assert r.tr == pytest.approx(tr_invariant(r.log_torsion, r.volume), abs=1e-14)
        assert math.isfinite(r.tr)
