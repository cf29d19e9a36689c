"""Full analysis pipeline: existence, roots, uniqueness, witnesses.

Every theorem this tool relies on is re-checked on the concrete instance
before a report is emitted, so a report is also a certificate that the
instance satisfies the theory.  Violations raise InternalInvariantError.
"""

from dataclasses import dataclass, field

from .cox import homogeneous_component, root_derivation
from .errors import InputError, InternalInvariantError
from .fanfile import FanFile
from .lattice import pairing
from .rays import (
    AdditiveStructure,
    DegreeMap,
    PreorderSummary,
    RaySystem,
    degree_map,
    detect_additive_structure,
    positively_spanning,
    ray_preorder,
)
from .roots import (
    CompleteCollection,
    DemazureRoot,
    RootCatalog,
    UNIPOTENT,
    complete_collections,
    dual_coordinates,
    enumerate_roots,
)
from .uniqueness import (
    UniquenessVerdict,
    dimension_criterion,
    projection_wideness_all_pairs,
    surface_wideness,
    uniqueness_verdict,
)
from .witness import (
    SeparationCertificate,
    WitnessData,
    build_witness_tuples,
    certify_tuple,
    separating_invariant,
)

ASSUMPTIONS = (
    "completeness assumed",
    "pairing-only root definition",
)


@dataclass
class Analysis:
    """Everything the pipeline computed for one fan."""

    fan: FanFile
    rays: RaySystem
    spanning: bool
    structure: AdditiveStructure | None
    catalog: RootCatalog
    existence: bool
    degrees: DegreeMap | None = None
    preorder: PreorderSummary | None = None
    verdict: UniquenessVerdict | None = None
    collections: list[CompleteCollection] = field(default_factory=list)
    witness: WitnessData | None = None
    certificate: SeparationCertificate | None = None
    assumptions: tuple[str, ...] = ASSUMPTIONS
    warnings: tuple[str, ...] = ()


def analyze(
    ff: FanFile,
    seed: int = 0,
    cap: int | None = None,
    samples: int = 100,
    check: bool = True,
) -> Analysis:
    """Run the whole pipeline on one fan file.

    ``seed`` drives the sampling side of the separation certificate,
    ``cap`` overrides the nilpotency certification depth, and ``check``
    controls the final self-consistency pass.
    """
    if not ff.assume_complete:
        raise InputError(
            "analysis requires assume_complete: the tool reasons at ray "
            "level and cannot certify completeness itself"
        )
    rs = ff.ray_system()
    if not positively_spanning(rs):
        raise InputError("not a complete fan's ray set")
    structure = detect_additive_structure(rs)
    catalog = enumerate_roots(rs, structure)
    analysis = Analysis(
        fan=ff,
        rays=rs,
        spanning=True,
        structure=structure,
        catalog=catalog,
        existence=structure is not None,
        warnings=ff.warnings,
    )
    if structure is not None:
        analysis.degrees = degree_map(structure)
        analysis.preorder = ray_preorder(structure)
        analysis.verdict = uniqueness_verdict(
            rs, structure, catalog, analysis.preorder
        )
        analysis.collections = complete_collections(rs, catalog)
        if not analysis.verdict.unique:
            analysis.witness = build_witness_tuples(
                structure, catalog, analysis.preorder, analysis.degrees
            )
            analysis.certificate = separating_invariant(
                structure,
                catalog,
                analysis.preorder,
                analysis.degrees,
                seed=seed,
                cap=cap,
                samples=samples,
            )
    if check:
        verify_consistency(analysis, cap=cap)
    return analysis


def verify_consistency(analysis: Analysis, cap: int | None = None) -> None:
    """Re-assert every cross-module invariant on the finished analysis."""
    rs = analysis.rays
    catalog = analysis.catalog
    structure = analysis.structure

    _check(
        len(catalog.semisimple) % 2 == 0,
        "odd semisimple root count",
    )
    for e in catalog.semisimple:
        _check(
            tuple(-x for x in e) in catalog.semisimple,
            f"semisimple set not symmetric at {e}",
        )
    _check(
        catalog.unipotent_dim
        == len(catalog.unipotent) + len(catalog.semisimple) // 2,
        "unipotent dimension formula broken",
    )

    if structure is None:
        _check(analysis.verdict is None, "verdict without a structure")
        return

    n, m = structure.n, structure.m
    # reconstruction of the extra rays from alpha
    for j, idx in enumerate(structure.extra_indices):
        rebuilt = tuple(
            -sum(
                structure.alpha[j][i] * structure.basis.vectors[i][k]
                for i in range(n)
            )
            for k in range(rs.dim)
        )
        _check(rebuilt == rs.rays[idx], f"alpha row {j} fails to rebuild")
    # the two positive-spanning computations agree
    _check(
        structure.columns_positive() == positively_spanning(rs),
        "column test and feasibility test disagree on positive spanning",
    )

    neg_duals = structure.negated_duals()
    basis_set = set(structure.basis_indices)
    all_roots = catalog.root_set()
    for l in range(n):
        idx = structure.order[l]
        _check(
            neg_duals[l] in catalog.per_ray[idx],
            f"negated dual of basis ray {idx} is not among its roots",
        )
        for e in catalog.per_ray[idx]:
            coords = dual_coordinates(structure, e)
            _check(coords[l] == -1, "root pairs wrongly with its own ray")
            _check(
                all(c >= 0 for i, c in enumerate(coords) if i != l),
                "root has a negative dual coordinate off its own ray",
            )
    duals = set(structure.dual.vectors)
    for j in structure.extra_indices:
        for e in catalog.per_ray[j]:
            _check(
                e in duals,
                f"extra-ray root {e} is not a dual basis vector",
            )
    for e in catalog.unipotent:
        home = catalog.home_ray(e)
        _check(home in basis_set, f"unipotent root {e} off the basis rays")
    if catalog.u is not None:
        for e in catalog.semisimple:
            _check(pairing(catalog.u, e) != 0, "u vanishes on a semisimple root")
            if pairing(catalog.u, e) > 0:
                _check(
                    catalog.home_ray(e) in basis_set,
                    "positive semisimple root off the basis rays",
                )
        _check(
            catalog.positive is not None
            and len(catalog.positive) == catalog.unipotent_dim,
            "positive system size broken",
        )

    preorder = analysis.preorder
    assert preorder is not None
    for i1 in range(n):
        for i2 in range(n):
            if i1 == i2:
                continue
            vec = tuple(
                -a + b
                for a, b in zip(
                    structure.dual.vectors[i1], structure.dual.vectors[i2]
                )
            )
            _check(
                (vec in all_roots) == preorder.leq[i2][i1],
                "mixed dual vector contradicts the preorder comparison",
            )

    verdict = analysis.verdict
    assert verdict is not None
    _check(
        verdict.unique == dimension_criterion(catalog, n),
        "dimension criterion disagrees with the verdict",
    )
    if n == 2:
        _check(
            verdict.unique == surface_wideness(structure),
            "surface wideness disagrees with the verdict",
        )
    _check(
        preorder.trivial == projection_wideness_all_pairs(structure),
        "projection wideness disagrees with preorder triviality",
    )
    _check(
        bool(analysis.collections) == analysis.existence,
        "collection list contradicts existence",
    )
    for coll in analysis.collections:
        for idx, e in zip(coll.basis_indices, coll.roots):
            _check(
                e in catalog.per_ray[idx],
                "collection root missing from the catalog",
            )

    dm = analysis.degrees
    assert dm is not None
    for j in range(m - n):
        _check(
            dm.degrees[n + j] == tuple(
                1 if k == j else 0 for k in range(m - n)
            ),
            "extra variable degree is not a unit vector",
        )
    for i in range(n):
        expected = tuple(structure.alpha[j][i] for j in range(m - n))
        _check(dm.degrees[i] == expected, "basis variable degree broken")

    # every variable's component is its own monomial plus the root images
    for pos in range(m):
        idx = structure.order[pos]
        comp = set(homogeneous_component(dm, dm.degrees[pos]))
        expected = {
            tuple(1 if k == pos else 0 for k in range(m))
        }
        for e in catalog.per_ray[idx]:
            d = root_derivation(
                structure, DemazureRoot(idx, e, UNIPOTENT), dm
            )
            (_, mono, _target), = d.terms
            expected.add(mono)
        _check(
            comp == expected,
            f"component of variable {pos + 1} is not the root span",
        )

    if analysis.witness is not None:
        for t in (analysis.witness.normalized, analysis.witness.nonnormalized):
            certify_tuple(t, structure, cap)
        cert = analysis.certificate
        _check(
            cert is not None and cert.valid,
            "separation certificate missing or invalid",
        )


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise InternalInvariantError(message)
