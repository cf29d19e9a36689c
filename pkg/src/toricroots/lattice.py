"""Exact integer linear algebra on the dual pair of lattices behind a fan.

Vectors of the ray lattice and of its dual share one representation, a plain
tuple of Python integers, and the pairing between them is the dot product in
the fixed coordinates.  Everything is exact: determinants are computed with
the fraction-free Bareiss scheme and coordinate solves go through Cramer's
rule, so the only divisions performed are known to be exact.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DimensionError, InputError

Vec = tuple[int, ...]


def _as_vec(v) -> Vec:
    return tuple(int(x) for x in v)


def pairing(u, e) -> int:
    """Dot product of a lattice vector with a dual lattice vector."""
    if len(u) != len(e):
        raise DimensionError(
            f"pairing of vectors of lengths {len(u)} and {len(e)}"
        )
    return sum(a * b for a, b in zip(u, e))


def primitive(v) -> Vec:
    """Divide a nonzero integer vector by the gcd of its entries."""
    v = _as_vec(v)
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise InputError("zero vector has no primitive generator")
    return tuple(x // g for x in v)


def det(rows) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    m = [list(map(int, r)) for r in rows]
    n = len(m)
    if any(len(r) != n for r in m):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[-1][-1]


def is_lattice_basis(vectors) -> bool:
    """True when the given vectors form a basis of the integer lattice,
    i.e. their determinant is +1 or -1."""
    vecs = [_as_vec(v) for v in vectors]
    n = len(vecs)
    if n == 0 or any(len(v) != n for v in vecs):
        raise DimensionError("need n vectors of length n")
    return det(vecs) in (1, -1)


@dataclass(frozen=True)
class Basis:
    """A unimodular lattice basis, stored as rows, with its determinant."""

    vectors: tuple[Vec, ...]
    determinant: int

    @classmethod
    def from_vectors(cls, vectors) -> "Basis":
        vecs = tuple(_as_vec(v) for v in vectors)
        n = len(vecs)
        if n == 0 or any(len(v) != n for v in vecs):
            raise DimensionError("basis needs n vectors of length n")
        d = det(vecs)
        if d not in (1, -1):
            raise InputError(f"vectors do not form a lattice basis (det {d})")
        return cls(vecs, d)

    def __len__(self) -> int:
        return len(self.vectors)


def basis_coordinates(basis: Basis, v) -> Vec:
    """Integer coordinates of v in the given unimodular basis.

    Solved by Cramer's rule on exact integer determinants; unimodularity
    makes every quotient an integer, which is asserted by reconstructing v.
    """
    v = _as_vec(v)
    n = len(basis)
    if len(v) != n:
        raise DimensionError("vector length does not match the basis")
    # column matrix of the basis: m[r][l] is coordinate r of basis vector l
    cols = [[basis.vectors[l][r] for l in range(n)] for r in range(n)]
    coords = []
    for l in range(n):
        repl = [row[:] for row in cols]
        for r in range(n):
            repl[r][l] = v[r]
        coords.append(det(repl) * basis.determinant)
    for r in range(n):
        total = sum(coords[l] * basis.vectors[l][r] for l in range(n))
        if total != v[r]:
            raise AssertionError("coordinate solve failed the round trip")
    return tuple(coords)


def dual_basis(basis: Basis) -> Basis:
    """The dual basis q_1..q_n with pairing(b_i, q_j) equal to delta_ij.

    Computed as the transposed inverse via cofactors; exact because the
    determinant is a unit.  The defining pairing identity is asserted.
    """
    n = len(basis)
    rows = []
    for j in range(n):
        q = []
        for k in range(n):
            minor = [
                [basis.vectors[r][c] for c in range(n) if c != k]
                for r in range(n)
                if r != j
            ]
            cof = det(minor) if n > 1 else 1
            q.append((-1) ** (j + k) * cof * basis.determinant)
        rows.append(tuple(q))
    out = Basis(tuple(rows), det(rows))
    for i in range(n):
        for j in range(n):
            if pairing(basis.vectors[i], out.vectors[j]) != (1 if i == j else 0):
                raise AssertionError("dual basis failed the pairing identity")
    return out


def matrix_rank(rows) -> int:
    """Rank over the rationals of an integer matrix."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(m)):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank
