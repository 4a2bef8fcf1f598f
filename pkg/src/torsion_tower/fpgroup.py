"""Finitely presented groups, coset tables, and Reidemeister-Schreier rows.

Words are tuples of signed 1-based generator indices: +k is generator k,
-k its inverse.  The coset table of a congruence subgroup of Gamma_0 type
is not enumerated Todd-Coxeter style: it is read off from the explicit
permutation action of the generator images on P^1(Z/p^n), restricted to
the orbit of the base point (1:0).

The abelianized relation matrix of the cover subgroup is produced directly
as exponent vectors of Schreier generators.  The subgroup's word-level
presentation is never materialized; tree edges contribute nothing and each
non-tree edge (coset, generator) is one free-abelian coordinate.
"""

from collections import deque
from dataclasses import dataclass, field

from .projline import enumerate_projective_line, permutation_of_generator


class RelatorViolation(ValueError):
    """A relator fails to act trivially on the coset space."""


@dataclass(frozen=True)
class Presentation:
    """<x_1, ..., x_g | r_1, ..., r_s> with relators as signed index words."""

    num_generators: int
    relators: tuple

    def __post_init__(self):
        assert self.num_generators >= 1
        rels = tuple(tuple(int(s) for s in r) for r in self.relators)
        object.__setattr__(self, "relators", rels)
        for r in rels:
            for s in r:
                if s == 0 or abs(s) > self.num_generators:
                    raise ValueError(f"relator letter {s} out of range")
            for i in range(len(r) - 1):
                if r[i] == -r[i + 1]:
                    raise ValueError(f"relator {r} is not freely reduced")


def word_inverse(word):
    return tuple(-s for s in reversed(word))


def evaluate_word(word, images):
    """Product of matrix images along a word; images[k] realizes generator k+1."""
    assert images, "need at least one image to know the ring"
    M = None
    for s in word:
        g = images[abs(s) - 1]
        g = g if s > 0 else g.inverse()
        M = g if M is None else M * g
    if M is None:
        from .projline import Mat2
        return Mat2.identity(images[0].ring)
    return M


def check_relators(pres, images):
    """True iff every relator maps to a scalar unit matrix.

    Scalar (not identity) because the representations are projective: the
    generator matrices are only well defined up to units.
    """
    assert len(images) == pres.num_generators
    return all(evaluate_word(r, images).is_scalar_unit() for r in pres.relators)


@dataclass
class CosetTable:
    """Permutation action of the generators on the orbit of the base point.

    table[i][2k] is the coset reached from coset i by generator k+1,
    table[i][2k+1] the coset reached by its inverse.  Cosets are numbered
    breadth-first from the base point with generators in input order, so
    identical inputs give identical tables.
    """

    num_generators: int
    m: int
    table: list
    base_coset: int = 0
    transitive: bool = True

    def apply(self, coset, signed_gen):
        k = abs(signed_gen) - 1
        col = 2 * k if signed_gen > 0 else 2 * k + 1
        return self.table[coset][col]

    def trace(self, coset, word):
        for s in word:
            coset = self.apply(coset, s)
        return coset


def coset_action(pres, images):
    """Coset table of the stabilizer-of-(1:0) subgroup for the given images.

    The orbit size is the index of the congruence cover.  The transitive
    flag records whether the action reaches all of P^1; the table itself is
    always the single orbit of the base point.
    """
    ring = images[0].ring
    pts = enumerate_projective_line(ring)
    perms = []
    for M in images:
        perms.append(permutation_of_generator(M, pts))
        perms.append(permutation_of_generator(M.inverse(), pts))

    base = 0  # (1:0) is first in the enumeration
    coset_of = {base: 0}
    order = [base]
    queue = deque([base])
    while queue:
        i = queue.popleft()
        for perm in perms:
            j = perm[i]
            if j not in coset_of:
                coset_of[j] = len(order)
                order.append(j)
                queue.append(j)
    m = len(order)
    table = [[coset_of[perm[idx]] for perm in perms] for idx in order]

    ct = CosetTable(
        num_generators=pres.num_generators,
        m=m,
        table=table,
        transitive=(m == len(pts)),
    )
    for r in pres.relators:
        for i in range(m):
            if ct.trace(i, r) != i:
                raise RelatorViolation(f"relator {r} moves coset {i}")
    return ct


@dataclass
class SchreierData:
    """Spanning tree of the coset graph plus the Schreier generator index.

    tree[i] is (parent coset, signed generator) for i != base, None at the
    base.  generator_index maps each non-tree edge (coset, generator) to its
    column in the relation matrix; there are m*g - (m-1) such edges.
    """

    tree: list
    generator_index: dict
    num_schreier_generators: int

    def transversal_word(self, coset):
        """The word labelling the tree path from the base coset to `coset`."""
        out = []
        while self.tree[coset] is not None:
            parent, s = self.tree[coset]
            out.append(s)
            coset = parent
        return tuple(reversed(out))


@dataclass
class RelationMatrix:
    """Sparse integer matrix, entries mapping (row, col) to nonzero values."""

    num_rows: int
    num_cols: int
    entries: dict = field(default_factory=dict)

    @property
    def nnz(self):
        return len(self.entries)

    def dump_triplets(self):
        """Plain-text debug format: header `rows cols nnz`, then triplets."""
        lines = [f"{self.num_rows} {self.num_cols} {self.nnz}"]
        for (r, c) in sorted(self.entries):
            lines.append(f"{r} {c} {self.entries[(r, c)]}")
        return "\n".join(lines) + "\n"


def reidemeister_schreier_abelianized(pres, ct):
    """Abelianized relation matrix of the cover subgroup.

    Row (relator r, coset i) is the exponent vector of the rewrite of r
    based at coset i over the Schreier generators; the cokernel of the
    matrix, as a map into Z^(Schreier generators), is H_1 of the cover.
    Rows are ordered relator-major, matching the table's coset numbering.
    """
    g, m = ct.num_generators, ct.m

    tree = [None] * m
    seen = [False] * m
    seen[ct.base_coset] = True
    tree_edges = set()
    queue = deque([ct.base_coset])
    while queue:
        i = queue.popleft()
        for k in range(g):
            for col, sign in ((2 * k, 1), (2 * k + 1, -1)):
                j = ct.table[i][col]
                if not seen[j]:
                    seen[j] = True
                    tree[j] = (i, sign * (k + 1))
                    # traversing the inverse of generator k from i to j means
                    # the unsigned coset-graph edge is (j, k)
                    tree_edges.add((i, k) if sign > 0 else (j, k))
                    queue.append(j)

    generator_index = {}
    for i in range(m):
        for k in range(g):
            if (i, k) not in tree_edges:
                generator_index[(i, k)] = len(generator_index)
    num_schreier = len(generator_index)
    assert num_schreier == m * g - (m - 1)

    entries = {}
    for ri, rel in enumerate(pres.relators):
        for start in range(m):
            row = ri * m + start
            cur = start
            for s in rel:
                k = abs(s) - 1
                if s > 0:
                    col = generator_index.get((cur, k))
                    cur = ct.table[cur][2 * k]
                    delta = 1
                else:
                    cur = ct.table[cur][2 * k + 1]
                    col = generator_index.get((cur, k))
                    delta = -1
                if col is not None:
                    key = (row, col)
                    v = entries.get(key, 0) + delta
                    if v:
                        entries[key] = v
                    else:
                        entries.pop(key, None)
            assert cur == start, "relator does not close up; table is corrupt"

    data = SchreierData(tree, generator_index, num_schreier)
    mat = RelationMatrix(m * len(pres.relators), num_schreier, entries)
    return data, mat
