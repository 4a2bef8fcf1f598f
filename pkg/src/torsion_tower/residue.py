"""Exact arithmetic in the residue rings Z/p^n.

The rings here are the reduction targets O_K/P^n for a degree-one prime P
of a number field K = Q(theta).  Because P has residue degree one, the
quotient is plain Z/p^n once a root of the defining polynomial has been
Hensel-lifted to precision n; elements of the equation order Z[theta] (with
denominators prime to p) then reduce by evaluating at the lifted root.

Everything works with Python's arbitrary-precision integers: p is a machine
word but p^n is not, and polynomial evaluation at lifted roots overflows 64
bits almost immediately.
"""

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from sympy import primerange


class NotARoot(ValueError):
    """The supplied residue is not a root of f mod p."""


class NonSimpleRoot(ValueError):
    """f'(r0) vanishes mod p, so the root cannot be Hensel lifted."""


class DenominatorNotInvertible(ValueError):
    """A number-ring denominator is divisible by the residue characteristic."""


@dataclass(frozen=True)
class MonicIntPolynomial:
    """A monic polynomial over Z, coefficients in ascending degree order."""

    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if len(coeffs) < 2:
            raise ValueError("degree must be at least 1")
        if coeffs[-1] != 1:
            raise ValueError("leading coefficient must be exactly 1")

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def eval_mod(self, x, modulus):
        """f(x) mod modulus by Horner's rule."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % modulus
        return acc

    def deriv_eval_mod(self, x, modulus):
        """f'(x) mod modulus."""
        acc = 0
        for i in range(self.degree, 0, -1):
            acc = (acc * x + i * self.coeffs[i]) % modulus
        return acc


@dataclass(frozen=True)
class ResidueRing:
    """Z/p^n, optionally carrying a lifted root theta of a field polynomial."""

    p: int
    n: int
    modulus: int
    theta: Optional[int] = None

    def __post_init__(self):
        assert self.n >= 1
        assert self.modulus == self.p ** self.n

    @classmethod
    def make(cls, p, n):
        return cls(p=p, n=n, modulus=p ** n)

    @classmethod
    def for_field(cls, f, p, root, n):
        """The reduction target O_K/P^n for the degree-one prime (p, root)."""
        theta = hensel_lift_root(f, p, root, n)
        return cls(p=p, n=n, modulus=p ** n, theta=theta.value)

    def elt(self, value):
        return RingElt(self, value % self.modulus)

    def is_unit(self, value):
        return value % self.p != 0

    def inv(self, value):
        if not self.is_unit(value):
            raise ZeroDivisionError(f"{value} is not a unit mod {self.p}^{self.n}")
        return pow(value, -1, self.modulus)


@dataclass(frozen=True)
class RingElt:
    """A reduced element of a ResidueRing."""

    ring: ResidueRing
    value: int

    def __post_init__(self):
        assert 0 <= self.value < self.ring.modulus

    @property
    def is_unit(self):
        return self.ring.is_unit(self.value)

    def __add__(self, other):
        return self.ring.elt(self.value + other.value)

    def __sub__(self, other):
        return self.ring.elt(self.value - other.value)

    def __mul__(self, other):
        return self.ring.elt(self.value * other.value)

    def __neg__(self):
        return self.ring.elt(-self.value)

    def inverse(self):
        return self.ring.elt(self.ring.inv(self.value))


@dataclass(frozen=True)
class NumberRingElement:
    """An element of K = Q(theta) with coordinates in Z[theta] and a denominator.

    Stored as (sum_i numerator_coeffs[i] * theta^i) / denominator with the
    content of (numerators, denominator) cancelled.
    """

    numerator_coeffs: tuple
    denominator: int = 1

    def __post_init__(self):
        nums = tuple(int(c) for c in self.numerator_coeffs)
        den = int(self.denominator)
        if den == 0:
            raise ValueError("denominator must be nonzero")
        if den < 0:
            nums = tuple(-c for c in nums)
            den = -den
        g = den
        for c in nums:
            g = gcd(g, c)
        if g > 1:
            nums = tuple(c // g for c in nums)
            den //= g
        object.__setattr__(self, "numerator_coeffs", nums)
        object.__setattr__(self, "denominator", den)

    @classmethod
    def integer(cls, k):
        return cls((k,), 1)


def nre_add(a, b):
    """Sum of two NumberRingElements (no reduction mod f needed)."""
    d = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
    sa = d // a.denominator
    sb = d // b.denominator
    na = list(a.numerator_coeffs)
    nb = list(b.numerator_coeffs)
    length = max(len(na), len(nb))
    na += [0] * (length - len(na))
    nb += [0] * (length - len(nb))
    return NumberRingElement(tuple(sa * x + sb * y for x, y in zip(na, nb)), d)


def nre_mul(a, b, f):
    """Product of two NumberRingElements, reduced mod the field polynomial f."""
    na, nb = a.numerator_coeffs, b.numerator_coeffs
    prod = [0] * (len(na) + len(nb) - 1)
    for i, x in enumerate(na):
        for j, y in enumerate(nb):
            prod[i + j] += x * y
    # reduce theta^k for k >= deg f using theta^deg = -(lower coefficients)
    deg = f.degree
    for k in range(len(prod) - 1, deg - 1, -1):
        c = prod[k]
        if c:
            prod[k] = 0
            for i in range(deg):
                prod[k - deg + i] -= c * f.coeffs[i]
    return NumberRingElement(tuple(prod[:deg] or (0,)), a.denominator * b.denominator)


@dataclass(frozen=True)
class DegreeOnePrime:
    """A rational prime p together with a simple root of f mod p."""

    p: int
    root: int

    @property
    def norm(self):
        return self.p


def hensel_lift_root(f, p, r0, n):
    """Lift a simple root of f mod p to the unique root mod p^n above it.

    Newton iteration with doubling precision: if f(r) = 0 mod p^k then
    r - f(r)/f'(r) is a root mod p^2k, and f'(r) stays a unit because it is
    one mod p.  O(log n) ring operations.
    """
    r0 = r0 % p
    if f.eval_mod(r0, p) != 0:
        raise NotARoot(f"{r0} is not a root of f mod {p}")
    if f.deriv_eval_mod(r0, p) == 0:
        raise NonSimpleRoot(f"f'({r0}) = 0 mod {p}; root is not simple")
    target = p ** n
    r, k = r0, 1
    while k < n:
        k = min(2 * k, n)
        m = p ** k
        fr = f.eval_mod(r, m)
        dfr = f.deriv_eval_mod(r, m)
        r = (r - fr * pow(dfr, -1, m)) % m
    return RingElt(ResidueRing.make(p, n), r % target)


def reduce_number_elt(elt, ring):
    """The image of a number-ring element under O_K -> O_K/P^n = Z/p^n.

    Evaluates the numerator at the lifted root theta and multiplies by the
    inverse of the denominator; a ring homomorphism wherever the denominator
    is prime to p.
    """
    assert ring.theta is not None, "ring has no lifted root set"
    if elt.denominator % ring.p == 0:
        raise DenominatorNotInvertible(
            f"denominator {elt.denominator} not invertible mod {ring.p}^{ring.n}"
        )
    acc = 0
    for c in reversed(elt.numerator_coeffs):
        acc = (acc * ring.theta + c) % ring.modulus
    acc = acc * pow(elt.denominator, -1, ring.modulus) % ring.modulus
    return RingElt(ring, acc)


def degree_one_primes(f, bound):
    """All degree-one primes (p, r) of Z[theta] with p <= bound.

    One entry per simple root r of f mod p, sorted by (p, r); ramified and
    multiple roots are excluded, so every returned prime is unramified with
    residue field Z/p and norm p.
    """
    assert bound >= 2
    out = []
    for p in primerange(2, bound + 1):
        red = [c % p for c in f.coeffs]
        dred = [(i * f.coeffs[i]) % p for i in range(1, len(f.coeffs))]
        for r in range(p):
            acc = 0
            for c in reversed(red):
                acc = (acc * r + c) % p
            if acc != 0:
                continue
            dacc = 0
            for c in reversed(dred):
                dacc = (dacc * r + c) % p
            if dacc != 0:
                out.append(DegreeOnePrime(p, r))
    return out
