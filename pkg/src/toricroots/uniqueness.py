"""Uniqueness of the additive action.

Three equivalent conditions decide whether every additive action is
isomorphic to the normalized one: every basis ray carries a single root,
the positive system is exactly the negated dual basis, and the ray
preorder is trivial.  All three are evaluated independently and compared
at runtime, together with the unipotent-dimension criterion and, for
surfaces, wideness of the fan.
"""

from dataclasses import dataclass

from .errors import (
    DimensionError,
    InternalInvariantError,
    NoAdditiveActionError,
)
from .rays import AdditiveStructure, PreorderSummary, RaySystem
from .roots import RootCatalog


@dataclass(frozen=True)
class UniquenessVerdict:
    """Outcome of the uniqueness test with per-condition evidence.

    ``evidence`` is only set on a negative verdict: a pair of canonical
    basis positions (maximal ray, dominated ray).
    """

    cond_roots: bool
    cond_positive: bool
    cond_preorder: bool
    unique: bool
    evidence: tuple[int, int] | None


def witness_pair(preorder: PreorderSummary) -> tuple[int, int] | None:
    """A maximal ray together with a distinct ray below it, smallest
    indices first; None when the preorder is trivial."""
    if preorder.trivial:
        return None
    n = len(preorder.leq)
    for i1 in preorder.maximal_rays:
        for i2 in range(n):
            if i2 != i1 and preorder.leq[i2][i1]:
                return i1, i2
    raise InternalInvariantError(
        "nontrivial preorder without a dominated pair under a maximal ray"
    )


def uniqueness_verdict(
    rs: RaySystem,
    structure: AdditiveStructure | None,
    catalog: RootCatalog,
    preorder: PreorderSummary,
) -> UniquenessVerdict:
    """Evaluate the three equivalent uniqueness conditions independently.

    Their agreement is a theorem; any disagreement aborts with a
    diagnostic dump since it can only mean a bug.
    """
    if structure is None:
        raise NoAdditiveActionError("no additive action exists")
    n = structure.n
    neg_duals = structure.negated_duals()
    cond_roots = all(
        catalog.per_ray[structure.order[l]] == (neg_duals[l],)
        for l in range(n)
    )
    cond_positive = catalog.positive == frozenset(neg_duals)
    cond_preorder = preorder.trivial
    if not (cond_roots == cond_positive == cond_preorder):
        raise InternalInvariantError(
            "uniqueness conditions disagree: "
            f"roots={cond_roots} positive={cond_positive} "
            f"preorder={cond_preorder}; alpha={structure.alpha} "
            f"per_ray={catalog.per_ray} positive_system={catalog.positive}"
        )
    unique = cond_roots
    evidence = None if unique else witness_pair(preorder)
    return UniquenessVerdict(
        cond_roots=cond_roots,
        cond_positive=cond_positive,
        cond_preorder=cond_preorder,
        unique=unique,
        evidence=evidence,
    )


def dimension_criterion(catalog: RootCatalog, n: int) -> bool:
    """Uniqueness through dimensions: the maximal unipotent subgroup of the
    automorphism group has the dimension of the variety itself."""
    return catalog.unipotent_dim == n


def surface_wideness(structure: AdditiveStructure) -> bool:
    """Wideness of a two-dimensional fan: some alpha row strictly favours
    the first column and some other row the second."""
    if structure.n != 2:
        raise DimensionError("wideness is defined for surfaces only")
    rows = structure.alpha
    return any(r[0] > r[1] for r in rows) and any(r[0] < r[1] for r in rows)


def projection_wideness_all_pairs(structure: AdditiveStructure) -> bool:
    """Whether every projection to a pair of basis coordinates is wide,
    i.e. every pair of basis rays is incomparable."""
    n = structure.n
    rows = structure.alpha
    for l1 in range(n):
        for l2 in range(l1 + 1, n):
            wide = any(r[l1] > r[l2] for r in rows) and any(
                r[l1] < r[l2] for r in rows
            )
            if not wide:
                return False
    return True
