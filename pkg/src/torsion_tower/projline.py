"""The projective line over Z/p^n and the 2x2 matrix action on it.

P^1(Z/p^n) is the set of pairs (x:y), at least one coordinate a unit, up to
unit scaling.  Its points index the cosets of the upper-triangular subgroup:
the stabilizer of (1:0) under the left action on column vectors is exactly
the Gamma_0 pattern, so the orbit of (1:0) is the coset space of the
congruence subgroup of level p^n.

Canonical form pivots on the first coordinate: every point is either (1, y)
or (x, 1) with p | x.  That makes |P^1| = p^n + p^(n-1) and gives every
point an O(1) index into the deterministic enumeration, which is what the
permutation-building hot loop uses.
"""

from dataclasses import dataclass

from .residue import RingElt


class NotProjective(ValueError):
    """Both coordinates are non-units; the pair is not a projective point."""


@dataclass(frozen=True)
class ProjPoint:
    """A point of P^1(Z/p^n) in canonical form (raw integer coordinates)."""

    ring: object
    x: int
    y: int


@dataclass(frozen=True)
class Mat2:
    """An invertible 2x2 matrix over a ResidueRing, row-major raw entries."""

    ring: object
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        m = self.ring.modulus
        for name in ("a", "b", "c", "d"):
            object.__setattr__(self, name, getattr(self, name) % m)
        det = (self.a * self.d - self.b * self.c) % m
        if not self.ring.is_unit(det):
            raise ValueError("matrix is not invertible: determinant is a non-unit")

    @classmethod
    def from_elts(cls, a: RingElt, b: RingElt, c: RingElt, d: RingElt):
        return cls(a.ring, a.value, b.value, c.value, d.value)

    @classmethod
    def identity(cls, ring):
        return cls(ring, 1, 0, 0, 1)

    def __mul__(self, other):
        r = self.ring
        return Mat2(
            r,
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self):
        r = self.ring
        det_inv = r.inv((self.a * self.d - self.b * self.c) % r.modulus)
        return Mat2(r, self.d * det_inv, -self.b * det_inv,
                    -self.c * det_inv, self.a * det_inv)

    def is_scalar_unit(self):
        """True iff the matrix is u * identity for a unit u."""
        return (self.b == 0 and self.c == 0 and self.a == self.d
                and self.ring.is_unit(self.a))


def normalize_point(ring, x, y):
    """Canonical representative of (x:y) under unit scaling; idempotent."""
    m = ring.modulus
    x %= m
    y %= m
    if ring.is_unit(x):
        return ProjPoint(ring, 1, y * ring.inv(x) % m)
    if ring.is_unit(y):
        return ProjPoint(ring, x * ring.inv(y) % m, 1)
    raise NotProjective(f"({x}, {y}) has no unit coordinate mod {ring.p}^{ring.n}")


def enumerate_projective_line(ring):
    """All canonical points in deterministic order: (1, y) then (x, 1), p | x."""
    m, p = ring.modulus, ring.p
    pts = [ProjPoint(ring, 1, y) for y in range(m)]
    pts += [ProjPoint(ring, x, 1) for x in range(0, m, p)]
    return pts


def point_index(pt):
    """Index of a canonical point in enumerate_projective_line's order."""
    if pt.x == 1:
        return pt.y
    return pt.ring.modulus + pt.x // pt.ring.p


def apply_matrix(M, pt):
    """Image of a canonical point under the left action on column vectors."""
    return normalize_point(M.ring, M.a * pt.x + M.b * pt.y, M.c * pt.x + M.d * pt.y)


def permutation_of_generator(M, pts):
    """Index array pi with pts[pi[i]] = apply_matrix(M, pts[i])."""
    return [point_index(apply_matrix(M, pt)) for pt in pts]
