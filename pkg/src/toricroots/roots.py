"""Demazure root enumeration and classification.

A root of the ray system is a dual vector pairing to -1 with exactly one
ray and nonnegatively with all others.  On the ray set of a complete fan
every per-ray root set is finite.  Two exact enumeration paths exist: a
depth-first scan in dual-basis coordinates when an additive structure is
available, and Fourier-Motzkin driven integer point enumeration otherwise.
"""

from dataclasses import dataclass
from itertools import product

from . import fm
from .errors import (
    InfiniteRootSetError,
    InternalInvariantError,
    UnboundedPolyhedronError,
)
from .lattice import Basis, Vec, dual_basis, pairing
from .rays import (
    AdditiveStructure,
    RaySystem,
    additive_bases,
    detect_additive_structure,
    positively_spanning,
)

SEMISIMPLE = "semisimple"
UNIPOTENT = "unipotent"


@dataclass(frozen=True)
class DemazureRoot:
    """A root together with its distinguished ray and classification."""

    ray_index: int
    vector: Vec
    kind: str


@dataclass(frozen=True)
class RootCatalog:
    """All roots of a ray system, classified and organized per ray.

    ``per_ray[i]`` is the lexicographically sorted root set of input ray i.
    ``u`` and ``positive`` are only present when an additive structure was
    supplied: ``u`` is a regularizing vector (nonvanishing on the
    semisimple roots) and ``positive`` the induced positive system, the
    unipotent roots plus the semisimple roots positive on u.
    """

    per_ray: tuple[tuple[Vec, ...], ...]
    semisimple: frozenset[Vec]
    unipotent: frozenset[Vec]
    u: Vec | None
    positive: frozenset[Vec] | None
    unipotent_dim: int

    def home_ray(self, vector: Vec) -> int:
        for i, roots in enumerate(self.per_ray):
            if vector in roots:
                return i
        raise KeyError(f"{vector} is not a root of this system")

    def all_roots(self):
        for i, roots in enumerate(self.per_ray):
            for v in roots:
                kind = SEMISIMPLE if v in self.semisimple else UNIPOTENT
                yield DemazureRoot(i, v, kind)

    def root_set(self) -> frozenset[Vec]:
        return self.semisimple | self.unipotent


def _eps_solutions(t: int, alpha, n: int) -> list[tuple[int, ...]]:
    """Dual-basis coordinate vectors of all roots of the ray at canonical
    position t, found by depth-first search with budget pruning."""
    extras = len(alpha)
    if extras == 0:
        raise InfiniteRootSetError(
            "non-complete ray system: infinite root set"
        )
    if t < n:
        budgets = [alpha[j][t] for j in range(extras)]
        free = [l for l in range(n) if l != t]
        exact_row = None
    else:
        exact_row = t - n
        budgets = [1 if j == exact_row else 0 for j in range(extras)]
        free = list(range(n))
    sols: list[tuple[int, ...]] = []
    eps = [0] * n
    if t < n:
        eps[t] = -1

    def rec(idx: int, budgets: list[int]) -> None:
        if idx == len(free):
            if exact_row is None or budgets[exact_row] == 0:
                sols.append(tuple(eps))
            return
        l = free[idx]
        caps = [
            budgets[j] // alpha[j][l]
            for j in range(extras)
            if alpha[j][l] > 0
        ]
        if not caps:
            raise InfiniteRootSetError(
                "non-complete ray system: infinite root set"
            )
        for v in range(min(caps) + 1):
            eps[l] = v
            rec(idx + 1, [budgets[j] - alpha[j][l] * v for j in range(extras)])
        eps[l] = 0

    rec(0, budgets)
    return sols


def structured_root_sets(structure: AdditiveStructure) -> list[tuple[Vec, ...]]:
    """Per-ray root sets (input order) from the dual-basis coordinate scan."""
    n, m = structure.n, structure.m
    dim = structure.rays.dim
    duals = structure.dual.vectors
    per_input: list[tuple[Vec, ...] | None] = [None] * m
    for pos in range(m):
        vecs = []
        for eps in _eps_solutions(pos, structure.alpha, n):
            coords = [0] * dim
            for l, c in enumerate(eps):
                if c:
                    for k in range(dim):
                        coords[k] += c * duals[l][k]
            vecs.append(tuple(coords))
        per_input[structure.order[pos]] = tuple(sorted(vecs))
    return per_input  # type: ignore[return-value]


def fm_root_sets(rs: RaySystem) -> list[tuple[Vec, ...]]:
    """Per-ray root sets by exact elimination on the root polytopes."""
    sets = []
    for i, p in enumerate(rs.rays):
        rows = [(p, -1), (tuple(-x for x in p), 1)]
        rows += [(q, 0) for j, q in enumerate(rs.rays) if j != i]
        try:
            pts = fm.integer_points(rows, rs.dim)
        except UnboundedPolyhedronError as exc:
            raise InfiniteRootSetError(
                "non-complete ray system: infinite root set"
            ) from exc
        sets.append(tuple(sorted(pts)))
    return sets


def _classify(per_ray) -> tuple[frozenset[Vec], frozenset[Vec]]:
    allroots = frozenset(v for roots in per_ray for v in roots)
    semi = frozenset(
        v for v in allroots if tuple(-x for x in v) in allroots
    )
    return semi, allroots - semi


def _u_candidate(structure: AdditiveStructure) -> Vec:
    n = structure.n
    dim = structure.rays.dim
    u = [0] * dim
    for l in range(n):
        for k in range(dim):
            u[k] -= (l + 1) * structure.basis.vectors[l][k]
    return tuple(u)


def _u_valid(u, semisimple, per_ray, structure) -> bool:
    basis_set = set(structure.basis_indices)
    for e in semisimple:
        val = pairing(u, e)
        if val == 0:
            return False
        if val > 0:
            home = next(
                i for i, roots in enumerate(per_ray) if e in roots
            )
            if home not in basis_set:
                return False
    return True


def _positive_system(per_ray, semisimple, unipotent, structure):
    u = _u_candidate(structure)
    if not _u_valid(u, semisimple, per_ray, structure):
        # the closed-form u always works in theory; search anyway
        bound = structure.n * structure.m
        dim = structure.rays.dim
        for cand in product(range(-bound, bound + 1), repeat=dim):
            if any(cand) and _u_valid(cand, semisimple, per_ray, structure):
                u = tuple(cand)
                break
        else:
            raise InternalInvariantError("positive system construction failed")
    positive = frozenset(
        e for e in semisimple if pairing(u, e) > 0
    ) | unipotent
    return u, positive


def positive_system(catalog: "RootCatalog", structure: AdditiveStructure):
    """Regularizing vector and positive system for a computed catalog."""
    return _positive_system(
        catalog.per_ray, catalog.semisimple, catalog.unipotent, structure
    )


def enumerate_roots(
    rs: RaySystem, structure: AdditiveStructure | None = None
) -> RootCatalog:
    """Enumerate the complete, finite root sets of every ray.

    When no structure is passed one is detected; systems without a
    structure fall back to the elimination path.  Raises
    InfiniteRootSetError when some root set is infinite, which certifies
    the rays cannot come from a complete fan.
    """
    if structure is None:
        structure = detect_additive_structure(rs)
    if structure is not None:
        if not structure.columns_positive():
            raise InfiniteRootSetError(
                "non-complete ray system: infinite root set"
            )
        per_ray = tuple(structured_root_sets(structure))
    else:
        if not positively_spanning(rs):
            raise InfiniteRootSetError(
                "non-complete ray system: infinite root set"
            )
        per_ray = tuple(fm_root_sets(rs))
    semi, unip = _classify(per_ray)
    if len(semi) % 2 != 0:
        raise InternalInvariantError("odd number of semisimple roots")
    dim_u = len(unip) + len(semi) // 2
    u = pos = None
    if structure is not None:
        u, pos = _positive_system(per_ray, semi, unip, structure)
        if len(pos) != dim_u:
            raise InternalInvariantError(
                "positive system size disagrees with the unipotent dimension"
            )
    return RootCatalog(
        per_ray=per_ray,
        semisimple=semi,
        unipotent=unip,
        u=u,
        positive=pos,
        unipotent_dim=dim_u,
    )


def brute_force_roots(rs: RaySystem, box_radius: int) -> list[list[Vec]]:
    """Independent oracle: scan every dual vector of max-norm at most
    box_radius against the defining pairing conditions."""
    if box_radius < 1:
        raise ValueError("box_radius must be at least 1")
    rng = range(-box_radius, box_radius + 1)
    out: list[list[Vec]] = [[] for _ in rs.rays]
    rays = rs.rays
    for e in product(rng, repeat=rs.dim):
        home = -1
        for idx, p in enumerate(rays):
            v = 0
            for a, b in zip(p, e):
                v += a * b
            if v == -1:
                if home >= 0:
                    home = -2
                    break
                home = idx
            elif v < 0:
                home = -2
                break
        if home >= 0:
            out[home].append(e)
    return [sorted(r) for r in out]


def unipotent_dimension(catalog: RootCatalog) -> int:
    """Dimension of a maximal unipotent subgroup of the automorphism group:
    the unipotent root count plus half the semisimple root count."""
    return len(catalog.unipotent) + len(catalog.semisimple) // 2


@dataclass(frozen=True)
class CompleteCollection:
    """Roots e_1..e_n pairing to minus the identity with a ray basis."""

    basis_indices: tuple[int, ...]
    roots: tuple[Vec, ...]


def complete_collections(
    rs: RaySystem, catalog: RootCatalog
) -> list[CompleteCollection]:
    """All complete collections, one per qualifying basis subset.

    Each subset contributes the negated dual basis; membership of every
    vector in the catalog is asserted (it is guaranteed in theory).  The
    empty list is equivalent to the nonexistence of an additive action.
    """
    out = []
    for subset in additive_bases(rs):
        basis = Basis.from_vectors([rs.rays[i] for i in subset])
        dual = dual_basis(basis)
        roots = tuple(tuple(-x for x in q) for q in dual.vectors)
        for idx, e in zip(subset, roots):
            if e not in catalog.per_ray[idx]:
                raise InternalInvariantError(
                    f"collection root {e} missing from the catalog of ray {idx}"
                )
        out.append(CompleteCollection(basis_indices=subset, roots=roots))
    return out


def dual_coordinates(structure: AdditiveStructure, vector: Vec) -> Vec:
    """Coordinates of a dual-lattice vector on the dual basis q_1..q_n."""
    return tuple(
        pairing(structure.basis.vectors[l], vector)
        for l in range(structure.n)
    )
