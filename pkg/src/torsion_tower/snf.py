"""Exact Smith normal form of sparse integer matrices.

The elementary divisors d_1 | d_2 | ... of an integer matrix determine the
cokernel Z^g / im(M) = Z^b1 + sum Z/d_i, which is first homology when M is
an abelianized relation matrix.  The pipeline is built for that input
shape: Reidemeister-Schreier matrices are extremely sparse and almost all
their entries are +-1, and a +-1 pivot causes zero coefficient growth.

Three stages:

1. sparse elimination using only +-1 pivots, smallest-row-first with the
   column of least fill, until no unit pivot remains (or the remaining core
   is dense);
2. classical elimination on the small remaining core, repeatedly moving a
   minimal entry to the pivot and reducing its row and column;
3. gcd/lcm fix-up of the diagonal into a divisibility chain.

All arithmetic is on Python integers; there is no modular reconstruction
of divisors, only an optional modular rank cross-check (rank_mod_prime).
"""

import math
from collections import defaultdict
from dataclasses import dataclass
from heapq import heapify, heappop, heappush
from math import gcd


class SnfLimitExceeded(RuntimeError):
    """The working matrix exceeded the nonzero budget; no answer produced."""


class DivisorCountExceedsGenerators(ValueError):
    """More elementary divisors than ambient generators."""


DENSE_DENSITY_THRESHOLD = 0.2
DENSE_CORE_MAX_DIM = 2000


@dataclass(frozen=True)
class ElementaryDivisors:
    """d_1 | d_2 | ... | d_k, all positive, k = rank; includes the 1s."""

    divisors: tuple

    def __post_init__(self):
        ds = tuple(int(d) for d in self.divisors)
        object.__setattr__(self, "divisors", ds)
        for d in ds:
            assert d > 0
        for a, b in zip(ds, ds[1:]):
            assert b % a == 0, f"divisor chain broken: {a} does not divide {b}"

    @property
    def rank(self):
        return len(self.divisors)


@dataclass(frozen=True)
class HomologySummary:
    """Betti number, torsion divisors (> 1), and natural-log torsion size."""

    b1: int
    torsion_divisors: tuple
    log_torsion: float


def _load(mat):
    rows = defaultdict(dict)
    cols = defaultdict(set)
    for (r, c), v in mat.entries.items():
        if v:
            rows[r][c] = v
            cols[c].add(r)
    return rows, cols


def _eliminate_unit_pivots(rows, cols, nnz_limit):
    """Stage 1: repeat +-1 pivots until none remain; returns pivot count."""
    nnz = sum(len(rw) for rw in rows.values())
    heap = [(len(rw), r) for r, rw in rows.items()]
    heapify(heap)
    pivots = 0
    deferred = []
    while heap:
        nr, r = heappop(heap)
        rw = rows.get(r)
        if rw is None:
            continue
        if len(rw) != nr:
            heappush(heap, (len(rw), r))
            continue
        unit_cols = [c for c, v in rw.items() if v == 1 or v == -1]
        if not unit_cols:
            deferred.append((nr, r))
            continue
        pc = min(unit_cols, key=lambda c: (len(cols[c]), c))
        e = rw[pc]
        # clear the pivot column by row operations; the pivot row's other
        # entries then die under column operations that touch nothing else
        del rows[r]
        for c in rw:
            cols[c].discard(r)
        nnz -= len(rw)
        for r2 in list(cols[pc]):
            row2 = rows[r2]
            factor = row2.pop(pc) * e
            cols[pc].discard(r2)
            nnz -= 1
            for c, v in rw.items():
                if c == pc:
                    continue
                nv = row2.get(c, 0) - factor * v
                if nv:
                    if c not in row2:
                        cols[c].add(r2)
                        nnz += 1
                    row2[c] = nv
                else:
                    if c in row2:
                        del row2[c]
                        cols[c].discard(r2)
                        nnz -= 1
            if row2:
                heappush(heap, (len(row2), r2))
            else:
                del rows[r2]
        cols.pop(pc, None)
        pivots += 1
        if nnz_limit is not None and nnz > nnz_limit:
            raise SnfLimitExceeded(f"working matrix grew past {nnz_limit} nonzeros")
        # rows set aside while hunting for this pivot may have gained units
        for item in deferred:
            heappush(heap, item)
        deferred.clear()
        live_rows = len(rows)
        live_cols = sum(1 for s in cols.values() if s)
        if live_rows and live_cols:
            if (nnz / (live_rows * live_cols) > DENSE_DENSITY_THRESHOLD
                    and max(live_rows, live_cols) <= DENSE_CORE_MAX_DIM):
                break
    return pivots


def _dense_core(rows):
    """Remaining entries as a dense matrix with deterministic index maps."""
    row_ids = sorted(rows)
    col_ids = sorted({c for rw in rows.values() for c in rw})
    col_pos = {c: j for j, c in enumerate(col_ids)}
    M = [[0] * len(col_ids) for _ in row_ids]
    for i, r in enumerate(row_ids):
        for c, v in rows[r].items():
            M[i][col_pos[c]] = v
    return M


def _dense_diagonalize(M):
    """Classical elimination; returns the nonzero |diagonal| (no chain yet)."""
    if not M or not M[0]:
        return []
    m, n = len(M), len(M[0])
    diag = []
    t = 0
    while t < min(m, n):
        # move a minimal-magnitude nonzero of the submatrix to (t, t)
        best = None
        for i in range(t, m):
            Mi = M[i]
            for j in range(t, n):
                v = Mi[j]
                if v and (best is None or abs(v) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            M[t], M[bi] = M[bi], M[t]
        if bj != t:
            for row in M:
                row[t], row[bj] = row[bj], row[t]
        pivot = M[t][t]
        clean = True
        for i in range(t + 1, m):
            if M[i][t]:
                q = M[i][t] // pivot
                if q:
                    Mi, Mt = M[i], M[t]
                    for j in range(t, n):
                        Mi[j] -= q * Mt[j]
                if M[i][t]:
                    clean = False
        for j in range(t + 1, n):
            if M[t][j]:
                q = M[t][j] // pivot
                if q:
                    for row in M:
                        row[j] -= q * row[t]
                if M[t][j]:
                    clean = False
        if clean:
            diag.append(abs(pivot))
            t += 1
        # otherwise a smaller remainder exists; next sweep picks it up
    return diag


def _fix_divisor_chain(diag):
    d = [x for x in diag if x != 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                if d[j] % d[i]:
                    g = gcd(d[i], d[j])
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
    d.sort()
    return d


def smith_normal_form(mat, nnz_limit=None):
    """Elementary divisors of a RelationMatrix, 1s included.

    The divisors satisfy d_1 ... d_j = gcd of all j x j minors and are
    invariant under unimodular row/column operations.  A zero or empty
    matrix yields the empty divisor list.  If nnz_limit is given and the
    working matrix grows past it, SnfLimitExceeded is raised; the limit is
    a resource guard, never a wrong answer.
    """
    rows, cols = _load(mat)
    unit_pivots = _eliminate_unit_pivots(rows, cols, nnz_limit)
    dense_diag = _dense_diagonalize(_dense_core(rows)) if rows else []
    chain = _fix_divisor_chain(dense_diag)
    return ElementaryDivisors(tuple([1] * unit_pivots + chain))


def rank_mod_prime(mat, q):
    """Rank of the matrix over the q-element field, by sparse elimination."""
    rows = defaultdict(dict)
    cols = defaultdict(set)
    for (r, c), v in mat.entries.items():
        v %= q
        if v:
            rows[r][c] = v
            cols[c].add(r)
    heap = [(len(rw), r) for r, rw in rows.items()]
    heapify(heap)
    rank = 0
    while heap:
        nr, r = heappop(heap)
        rw = rows.get(r)
        if rw is None:
            continue
        if len(rw) != nr:
            heappush(heap, (len(rw), r))
            continue
        pc = min(rw, key=lambda c: (len(cols[c]), c))
        inv = pow(rw[pc], -1, q)
        del rows[r]
        for c in rw:
            cols[c].discard(r)
        for r2 in list(cols[pc]):
            row2 = rows[r2]
            factor = row2.pop(pc) * inv % q
            cols[pc].discard(r2)
            for c, v in rw.items():
                if c == pc:
                    continue
                nv = (row2.get(c, 0) - factor * v) % q
                if nv:
                    if c not in row2:
                        cols[c].add(r2)
                    row2[c] = nv
                else:
                    if c in row2:
                        del row2[c]
                        cols[c].discard(r2)
            if row2:
                heappush(heap, (len(row2), r2))
            else:
                del rows[r2]
        cols.pop(pc, None)
        rank += 1
    return rank


def homology_summary(divisors, num_generators):
    """Betti number and torsion read off the divisors of a relation matrix.

    log_torsion is the natural log of the product of the divisors > 1;
    math.log on Python ints is exact to double precision even for
    thousand-bit divisors, far below the 2^-40 relative budget.
    """
    ds = divisors.divisors
    if len(ds) > num_generators:
        raise DivisorCountExceedsGenerators(
            f"{len(ds)} divisors but only {num_generators} generators"
        )
    torsion = tuple(d for d in ds if d > 1)
    log_torsion = math.fsum(math.log(d) for d in torsion)
    return HomologySummary(
        b1=num_generators - len(ds),
        torsion_divisors=torsion,
        log_torsion=log_torsion,
    )
