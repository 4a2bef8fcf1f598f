"""Independent brute-force oracles shared by the unit and acceptance tests.

Nothing here may call into the code paths it checks: determinants are
expanded from scratch, the projective line is enumerated as raw pairs, and
cover homology is recomputed from the presentation 2-complex with sympy's
Smith normal form.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors


def det_exact(rows):
    """Determinant by fraction-free Gaussian elimination over Fraction."""
    n = len(rows)
    M = [[Fraction(v) for v in row] for row in rows]
    det = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if M[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            M[k], M[piv] = M[piv], M[k]
            det = -det
        det *= M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / M[k][k]
            for j in range(k, n):
                M[i][j] -= f * M[k][j]
    assert det.denominator == 1
    return det.numerator


def minor_gcd_divisors(dense):
    """Elementary divisors straight from the definition.

    d_1 * ... * d_j equals the gcd of all j x j minors; divisors are the
    successive quotients.  Exponential in the matrix size, fine up to 6x6.
    """
    m = len(dense)
    n = len(dense[0]) if m else 0
    divisors = []
    prev = 1
    for j in range(1, min(m, n) + 1):
        g = 0
        for rows in combinations(range(m), j):
            for cols in combinations(range(n), j):
                sub = [[dense[r][c] for c in cols] for r in rows]
                g = gcd(g, det_exact(sub))
        if g == 0:
            break
        divisors.append(g // prev)
        prev = g
    return divisors


def brute_force_projective_count(p, n):
    """Number of unit-scaling classes of pairs over Z/p^n, pair by pair."""
    m = p ** n
    units = [u for u in range(m) if gcd(u, p) == 1]
    seen = set()
    count = 0
    for x in range(m):
        for y in range(m):
            if x % p == 0 and y % p == 0:
                continue
            if (x, y) in seen:
                continue
            count += 1
            for u in units:
                seen.add((x * u % m, y * u % m))
    return count


def brute_force_cover_homology(pres, ct):
    """(b1, torsion divisors) of the cover from its presentation 2-complex.

    Free abelian group on ALL (coset, generator) edges of the coset graph;
    one relation row per (relator, coset) counting signed edge traversals,
    plus one row per edge of an independently built (depth-first) spanning
    tree killing that edge.  Invariant factors via sympy.
    """
    g, m = ct.num_generators, ct.m

    def edge_col(coset, k):
        return coset * g + k

    rows = []
    for rel in pres.relators:
        for start in range(m):
            row = [0] * (m * g)
            cur = start
            for s in rel:
                k = abs(s) - 1
                if s > 0:
                    row[edge_col(cur, k)] += 1
                    cur = ct.table[cur][2 * k]
                else:
                    cur = ct.table[cur][2 * k + 1]
                    row[edge_col(cur, k)] -= 1
            assert cur == start
            rows.append(row)

    # depth-first spanning tree, deliberately different from the pipeline's BFS
    visited = {ct.base_coset}
    stack = [ct.base_coset]
    while stack:
        i = stack.pop()
        for k in range(g - 1, -1, -1):
            for col, via_gen in ((2 * k + 1, False), (2 * k, True)):
                j = ct.table[i][col]
                if j not in visited:
                    visited.add(j)
                    row = [0] * (m * g)
                    row[edge_col(i, k) if via_gen else edge_col(j, k)] = 1
                    rows.append(row)
                    stack.append(j)
    assert len(visited) == m

    mat = Matrix(rows)
    factors = [int(d) for d in invariant_factors(mat) if d != 0]
    factors = [abs(d) for d in factors]
    b1 = m * g - len(factors)
    torsion = sorted(d for d in factors if d > 1)
    return b1, torsion
