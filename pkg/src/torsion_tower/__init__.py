"""Congruence covers of finitely presented Kleinian/orbifold groups:
cover construction on P^1(Z/p^n), exact first homology via sparse integer
Smith normal form, and the normalized torsion statistic tr."""

from .config import LevelPlan, OrbifoldSpec, load_config
from .fpgroup import Presentation, coset_action, reidemeister_schreier_abelianized
from .pipeline import compute_cover, emit_csv, run_batch
from .records import CoverRecord, cover_volume, tr_invariant
from .residue import MonicIntPolynomial, ResidueRing, degree_one_primes, hensel_lift_root
from .snf import homology_summary, rank_mod_prime, smith_normal_form

__version__ = "0.1.0"

__all__ = [
    "CoverRecord", "LevelPlan", "MonicIntPolynomial", "OrbifoldSpec",
    "Presentation", "ResidueRing", "compute_cover", "coset_action",
    "cover_volume", "degree_one_primes", "emit_csv", "hensel_lift_root",
    "homology_summary", "load_config", "rank_mod_prime",
    "reidemeister_schreier_abelianized", "run_batch", "smith_normal_form",
    "tr_invariant",
]
