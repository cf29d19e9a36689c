"""Ray-system analysis.

Detects the combinatorial structure an additive action forces on the rays
of a complete fan (a unimodular basis with every remaining ray in the
negative octant), derives the class-group grading of the Cox variables from
it, and builds the componentwise preorder on the basis rays.
"""

from dataclasses import dataclass
from itertools import combinations

from . import fm
from .errors import (
    DegenerateSystemError,
    DimensionError,
    InputError,
    InternalInvariantError,
)
from .lattice import (
    Basis,
    Vec,
    basis_coordinates,
    det,
    dual_basis,
    matrix_rank,
    pairing,
    primitive,
)


@dataclass(frozen=True)
class RaySystem:
    """The primitive ray generators of a fan, kept in input order."""

    dim: int
    rays: tuple[Vec, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise InputError("ambient dimension must be at least 1")
        for p in self.rays:
            if len(p) != self.dim:
                raise DimensionError(f"ray {p} does not have length {self.dim}")
            if all(x == 0 for x in p):
                raise InputError("the zero vector is not a ray")
            if primitive(p) != p:
                raise InputError(f"ray {p} is not primitive")
        if len(set(self.rays)) != len(self.rays):
            raise InputError("duplicate rays")

    @property
    def m(self) -> int:
        return len(self.rays)


@dataclass(frozen=True)
class AdditiveStructure:
    """A basis of rays with all remaining rays in its negative octant.

    ``order`` lists input ray indices in canonical order: the n basis rays
    first (ascending input index), then the remaining rays (ascending).
    Row j of ``alpha`` holds the nonnegative integers with
    ``p_extra_j = -sum alpha[j][i] * p_basis_i``.
    """

    rays: RaySystem
    basis_indices: tuple[int, ...]
    alpha: tuple[Vec, ...]
    order: tuple[int, ...]
    basis: Basis
    dual: Basis

    @property
    def n(self) -> int:
        return self.rays.dim

    @property
    def m(self) -> int:
        return self.rays.m

    @property
    def extra_indices(self) -> tuple[int, ...]:
        return self.order[self.n:]

    def canonical_position(self, ray_index: int) -> int:
        return self.order.index(ray_index)

    def columns_positive(self) -> bool:
        """Every basis ray gets a positive coefficient from some extra ray;
        with a structure present this is equivalent to positive spanning."""
        return all(
            any(row[i] > 0 for row in self.alpha) for i in range(self.n)
        )

    def negated_duals(self) -> tuple[Vec, ...]:
        """The vectors -q_1..-q_n for the dual basis q of the basis rays."""
        return tuple(tuple(-x for x in q) for q in self.dual.vectors)


def additive_bases(rs: RaySystem) -> list[tuple[int, ...]]:
    """All ascending index subsets that are unimodular bases with every
    remaining ray in their negative octant."""
    n, m = rs.dim, rs.m
    if m < n:
        raise InputError("too few rays")
    if matrix_rank(rs.rays) < n:
        raise DegenerateSystemError("degenerate ray system")
    found = []
    for subset in combinations(range(m), n):
        vecs = [rs.rays[i] for i in subset]
        if det(vecs) not in (1, -1):
            continue
        basis = Basis.from_vectors(vecs)
        ok = True
        for j in range(m):
            if j in subset:
                continue
            if any(c > 0 for c in basis_coordinates(basis, rs.rays[j])):
                ok = False
                break
        if ok:
            found.append(subset)
    return found


def structure_for_basis(rs: RaySystem, subset) -> AdditiveStructure:
    """Build the structure attached to one qualifying basis subset."""
    subset = tuple(sorted(subset))
    basis = Basis.from_vectors([rs.rays[i] for i in subset])
    rest = tuple(j for j in range(rs.m) if j not in subset)
    alpha = []
    for j in rest:
        coords = basis_coordinates(basis, rs.rays[j])
        if any(c > 0 for c in coords):
            raise InputError(f"ray {rs.rays[j]} escapes the negative octant")
        alpha.append(tuple(-c for c in coords))
    return AdditiveStructure(
        rays=rs,
        basis_indices=subset,
        alpha=tuple(alpha),
        order=subset + rest,
        basis=basis,
        dual=dual_basis(basis),
    )


def detect_additive_structure(rs: RaySystem) -> AdditiveStructure | None:
    """Find the canonical additive structure of a ray system, if any.

    The canonical representative is the lexicographically smallest
    qualifying basis index set.  Returning None certifies that no complete
    toric variety with these rays carries an additive action.
    """
    bases = additive_bases(rs)
    if not bases:
        return None
    return structure_for_basis(rs, bases[0])


@dataclass(frozen=True)
class DegreeMap:
    """Class-group degrees of the Cox variables, in canonical order.

    The variables of the extra rays map to the standard basis of Z^(m-n),
    and the basis-ray variables to the corresponding alpha columns.
    """

    rank: int
    degrees: tuple[Vec, ...]

    def monomial_degree(self, exponents) -> Vec:
        total = [0] * self.rank
        for e, d in zip(exponents, self.degrees):
            if e:
                for k in range(self.rank):
                    total[k] += e * d[k]
        return tuple(total)


def degree_map(structure: AdditiveStructure) -> DegreeMap:
    """Grading of the Cox variables by the (free) divisor class group."""
    n, m = structure.n, structure.m
    r = m - n
    degs = [tuple(structure.alpha[j][i] for j in range(r)) for i in range(n)]
    degs += [tuple(1 if k == j else 0 for k in range(r)) for j in range(r)]
    dm = DegreeMap(r, tuple(degs))
    # exactness: the class map kills the image of the dual lattice
    rays_canonical = [structure.rays.rays[i] for i in structure.order]
    for c in range(structure.rays.dim):
        w = tuple(1 if k == c else 0 for k in range(structure.rays.dim))
        total = [0] * r
        for pos in range(m):
            coef = pairing(rays_canonical[pos], w)
            for k in range(r):
                total[k] += coef * degs[pos][k]
        if any(total):
            raise InternalInvariantError("degree map breaks exactness")
    return dm


@dataclass(frozen=True)
class PreorderSummary:
    """The componentwise preorder on the basis rays.

    leq[i1][i2] says ray i1 is below ray i2 (positions are canonical
    basis positions, 0-based).
    """

    leq: tuple[tuple[bool, ...], ...]
    trivial: bool
    maximal_rays: tuple[int, ...]


def ray_preorder(structure: AdditiveStructure) -> PreorderSummary:
    """Compare basis rays columnwise through the alpha matrix."""
    n = structure.n
    rows = structure.alpha
    leq = tuple(
        tuple(
            all(row[i1] <= row[i2] for row in rows) for i2 in range(n)
        )
        for i1 in range(n)
    )
    for a in range(n):
        if not leq[a][a]:
            raise InternalInvariantError("preorder lost reflexivity")
        for b in range(n):
            for c in range(n):
                if leq[a][b] and leq[b][c] and not leq[a][c]:
                    raise InternalInvariantError("preorder lost transitivity")
    trivial = all(
        not leq[a][b] for a in range(n) for b in range(n) if a != b
    )
    maximal = tuple(
        a
        for a in range(n)
        if all(leq[b][a] or not leq[a][b] for b in range(n))
    )
    return PreorderSummary(leq=leq, trivial=trivial, maximal_rays=maximal)


def positively_spanning(rs: RaySystem) -> bool:
    """Whether the rays positively span the whole rational vector space.

    Equivalent formulation used here: no nonzero functional is nonnegative
    on every ray.  Checked exactly with Fourier-Motzkin feasibility, one
    strictness certificate per ray.
    """
    if matrix_rank(rs.rays) < rs.dim:
        return False
    base = [(p, 0) for p in rs.rays]
    for i, p in enumerate(rs.rays):
        rows = base[:i] + base[i + 1:] + [(p, 1)]
        if fm.feasible(rows, rs.dim):
            return False
    return True
