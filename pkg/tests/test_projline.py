import random

import pytest

from oracles import brute_force_projective_count
from torsion_tower.projline import (Mat2, NotProjective, apply_matrix,
                                    enumerate_projective_line, normalize_point,
                                    permutation_of_generator, point_index)
from torsion_tower.residue import ResidueRing

Z4 = ResidueRing.make(2, 2)
Z2 = ResidueRing.make(2, 1)


def test_normalize_examples_over_z4():
    assert normalize_point(Z4, 1, 0) == normalize_point(Z4, 1, 0)
    pt = normalize_point(Z4, 1, 0)
    assert (pt.x, pt.y) == (1, 0)
    pt = normalize_point(Z4, 3, 3)
    assert (pt.x, pt.y) == (1, 1)
    pt = normalize_point(Z4, 2, 3)
    assert (pt.x, pt.y) == (2, 1)
    with pytest.raises(NotProjective):
        normalize_point(Z4, 2, 2)


def test_normalize_idempotent():
    rng = random.Random(7)
    ring = ResidueRing.make(3, 3)
    for _ in range(100):
        x, y = rng.randrange(27), rng.randrange(27)
        if x % 3 == 0 and y % 3 == 0:
            continue
        pt = normalize_point(ring, x, y)
        again = normalize_point(ring, pt.x, pt.y)
        assert pt == again


def test_enumeration_p2_n1():
    pts = enumerate_projective_line(Z2)
    assert [(pt.x, pt.y) for pt in pts] == [(1, 0), (1, 1), (0, 1)]


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (5, 2)])
def test_enumeration_counts(p, n):
    pts = enumerate_projective_line(ResidueRing.make(p, n))
    assert len(pts) == p ** n + p ** (n - 1)
    assert len(pts) == brute_force_projective_count(p, n)
    assert len(set(pts)) == len(pts)
    for i, pt in enumerate(pts):
        assert point_index(pt) == i


def test_apply_matrix_hand_table_over_z2():
    M = Mat2(Z2, 1, 1, 0, 1)
    pts = enumerate_projective_line(Z2)
    images = {(pt.x, pt.y): apply_matrix(M, pt) for pt in pts}
    assert (images[(1, 0)].x, images[(1, 0)].y) == (1, 0)
    assert (images[(0, 1)].x, images[(0, 1)].y) == (1, 1)
    assert (images[(1, 1)].x, images[(1, 1)].y) == (0, 1)


def test_identity_action_and_permutation():
    ring = ResidueRing.make(5, 2)
    pts = enumerate_projective_line(ring)
    ident = Mat2.identity(ring)
    assert permutation_of_generator(ident, pts) == list(range(len(pts)))
    for pt in pts[:10]:
        assert apply_matrix(ident, pt) == pt


def _random_invertible(ring, rng):
    while True:
        entries = [rng.randrange(ring.modulus) for _ in range(4)]
        try:
            return Mat2(ring, *entries)
        except ValueError:
            continue


def test_action_law_and_scalar_invariance():
    rng = random.Random(99)
    ring = ResidueRing.make(3, 3)
    pts = enumerate_projective_line(ring)
    for _ in range(60):
        M = _random_invertible(ring, rng)
        N = _random_invertible(ring, rng)
        pt = rng.choice(pts)
        assert apply_matrix(M * N, pt) == apply_matrix(M, apply_matrix(N, pt))
        u = rng.choice([v for v in range(1, 27) if v % 3 != 0])
        uM = Mat2(ring, u * M.a, u * M.b, u * M.c, u * M.d)
        assert apply_matrix(uM, pt) == apply_matrix(M, pt)


def test_permutations_are_mutually_inverse_bijections():
    rng = random.Random(5)
    ring = ResidueRing.make(2, 4)
    pts = enumerate_projective_line(ring)
    for _ in range(20):
        M = _random_invertible(ring, rng)
        perm = permutation_of_generator(M, pts)
        inv_perm = permutation_of_generator(M.inverse(), pts)
        assert sorted(perm) == list(range(len(pts)))
        assert all(inv_perm[perm[i]] == i for i in range(len(pts)))


def test_noninvertible_matrix_rejected():
    with pytest.raises(ValueError):
        Mat2(Z4, 2, 0, 0, 1)
