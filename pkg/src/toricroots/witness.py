"""Witness actions separating a non-unique pair, and their certificates.

When the ray preorder is nontrivial two commuting tuples of locally
nilpotent derivations are built: the normalized one, and a second tuple
whose slot for the dominated ray picks up one extra root derivation of the
maximal ray.  Both are certified (commuting, nilpotent, triangular, open
orbit), and the annihilator-rank invariant inside the homogeneous
component of the maximal ray's variable distinguishes them.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cox import (
    CAP_EXCEEDED,
    REFUTED,
    UNCHECKED,
    VERIFIED,
    Derivation,
    Mono,
    Poly,
    apply,
    commutator,
    homogeneous_component,
    is_locally_nilpotent,
    root_derivation,
)
from .errors import (
    InputError,
    InternalInvariantError,
    UniquenessHoldsError,
)
from .lattice import Vec, matrix_rank
from .rays import AdditiveStructure, DegreeMap, PreorderSummary, degree_map
from .roots import DemazureRoot, RootCatalog, UNIPOTENT, dual_coordinates
from .uniqueness import witness_pair

FLAG_NAMES = ("commuting", "locally_nilpotent", "triangular", "open_orbit")


@dataclass
class DerivationTuple:
    """An ordered tuple of derivations with certification flags.

    ``variable_order`` aligns tuple slots with canonical variable
    positions: slot k is expected to move variable variable_order[k].
    """

    derivations: tuple[Derivation, ...]
    variable_order: tuple[int, ...]
    flags: dict[str, str] = field(
        default_factory=lambda: {name: UNCHECKED for name in FLAG_NAMES}
    )
    notes: tuple[str, ...] = ()

    def all_verified(self) -> bool:
        return all(self.flags[name] == VERIFIED for name in FLAG_NAMES)


@dataclass(frozen=True)
class SeparationCertificate:
    """Membership asymmetry of the witness variable in the two annihilator
    loci.  Valid exactly when the normalized tuple keeps the variable and
    the other tuple expels it."""

    distinguished_class: Vec
    witness_variable: int  # canonical position
    member_in_normalized: bool
    member_in_nonnormalized: bool

    @property
    def valid(self) -> bool:
        return self.member_in_normalized and not self.member_in_nonnormalized


@dataclass(frozen=True)
class WitnessData:
    """The two ordered witness tuples and the data used to build them."""

    order: tuple[int, ...]  # canonical positions, maximal ray first
    twist_degree: int
    normalized: DerivationTuple
    nonnormalized: DerivationTuple


def default_nilpotency_cap(structure: AdditiveStructure, dm: DegreeMap) -> int:
    """Two more than the largest total degree appearing in the homogeneous
    components of the variables."""
    bound = 1
    for i in range(structure.m):
        for mono in homogeneous_component(dm, dm.degrees[i]):
            bound = max(bound, sum(mono))
    return 2 + bound


def twist_degree(
    structure: AdditiveStructure, catalog: RootCatalog, i1: int, i2: int
) -> int:
    """Largest multiple of the dominated dual vector that still yields a
    root distinguished by the maximal ray."""
    best = None
    for vec in catalog.per_ray[structure.order[i1]]:
        coords = dual_coordinates(structure, vec)
        if any(c != 0 for l, c in enumerate(coords) if l not in (i1, i2)):
            continue
        if coords[i1] != -1:
            continue
        eps = coords[i2]
        if eps >= 1 and (best is None or eps > best):
            best = eps
    if best is None:
        raise InternalInvariantError(
            "comparable rays without a mixed root; the preorder lied"
        )
    return best


def build_witness_tuples(
    structure: AdditiveStructure,
    catalog: RootCatalog,
    preorder: PreorderSummary,
    dm: DegreeMap | None = None,
) -> WitnessData:
    """Construct the normalized tuple and its twisted companion.

    Slots follow the witness order: the maximal ray first, the dominated
    ray second, the remaining basis rays ascending.
    """
    pair = witness_pair(preorder)
    if pair is None:
        raise UniquenessHoldsError("uniqueness holds; no witness exists")
    if dm is None:
        dm = degree_map(structure)
    i1, i2 = pair
    n = structure.n
    tau = (i1, i2) + tuple(l for l in range(n) if l not in (i1, i2))
    neg_duals = structure.negated_duals()

    def base_derivation(pos: int) -> Derivation:
        root = DemazureRoot(structure.order[pos], neg_duals[pos], UNIPOTENT)
        return root_derivation(structure, root, dm)

    base = tuple(base_derivation(pos) for pos in tau)
    d = twist_degree(structure, catalog, i1, i2)
    twist_vec = tuple(
        -a + d * b
        for a, b in zip(structure.dual.vectors[i1], structure.dual.vectors[i2])
    )
    twist = root_derivation(
        structure,
        DemazureRoot(structure.order[i1], twist_vec, UNIPOTENT),
        dm,
    )
    twisted = base[:1] + (base[1] + twist,) + base[2:]
    return WitnessData(
        order=tau,
        twist_degree=d,
        normalized=DerivationTuple(base, tau),
        nonnormalized=DerivationTuple(twisted, tau),
    )


def verify_additive_tuple(
    t: DerivationTuple, structure: AdditiveStructure, cap: int | None = None
) -> DerivationTuple:
    """Set the four certification flags of a tuple in place and return it.

    commuting: every pairwise bracket vanishes.
    locally_nilpotent: every derivation certified within the cap.
    triangular: slot k moves its own variable and no earlier slot's.
    open_orbit: the product of the moved images with the extra variables
    is a nonzero polynomial (the orbit map has somewhere-invertible
    differential).
    """
    if cap is None:
        cap = default_nilpotency_cap(structure, degree_map(structure))
    n = structure.n
    m = structure.m
    notes = []

    flag = VERIFIED
    for a in range(n):
        for b in range(a + 1, n):
            if not commutator(t.derivations[a], t.derivations[b]).is_zero():
                flag = REFUTED
                notes.append(f"bracket of slots {a + 1} and {b + 1} is nonzero")
    t.flags["commuting"] = flag

    statuses = [is_locally_nilpotent(d, cap) for d in t.derivations]
    if REFUTED in statuses:
        t.flags["locally_nilpotent"] = REFUTED
        notes.append(
            f"slot {statuses.index(REFUTED) + 1} is not locally nilpotent"
        )
    elif CAP_EXCEEDED in statuses:
        t.flags["locally_nilpotent"] = CAP_EXCEEDED
        notes.append(f"nilpotency cap {cap} exceeded")
    else:
        t.flags["locally_nilpotent"] = VERIFIED

    flag = VERIFIED
    for i in range(n):
        xi = Poly.variable(t.variable_order[i], m)
        if apply(t.derivations[i], xi).is_zero():
            flag = REFUTED
            notes.append(f"slot {i + 1} kills its own variable")
        for l in range(i):
            if not apply(t.derivations[l], xi).is_zero():
                flag = REFUTED
                notes.append(
                    f"slot {l + 1} moves the later variable of slot {i + 1}"
                )
    t.flags["triangular"] = flag

    jac = Poly.constant(m, 1)
    for k in range(n):
        jac = jac * apply(
            t.derivations[k], Poly.variable(t.variable_order[k], m)
        )
    for pos in range(n, m):
        jac = jac * Poly.variable(pos, m)
    t.flags["open_orbit"] = VERIFIED if not jac.is_zero() else REFUTED
    if jac.is_zero():
        notes.append("orbit jacobian vanishes identically")

    t.notes = tuple(notes)
    return t


def certify_tuple(
    t: DerivationTuple, structure: AdditiveStructure, cap: int | None = None
) -> DerivationTuple:
    """Verify a tuple and insist on full certification.

    An undersized cap is the caller's problem and raises InputError; any
    refuted flag on a pipeline-built tuple is a genuine invariant failure.
    """
    verify_additive_tuple(t, structure, cap)
    if t.all_verified():
        return t
    if (
        t.flags["locally_nilpotent"] == CAP_EXCEEDED
        and all(
            t.flags[name] == VERIFIED
            for name in FLAG_NAMES
            if name != "locally_nilpotent"
        )
    ):
        raise InputError(
            "nilpotency cap too small to certify the witness tuples; "
            "raise the cap"
        )
    raise InternalInvariantError(
        f"witness tuple failed certification: {t.flags} {t.notes}"
    )


def annihilator_rank(
    t: DerivationTuple, f: Poly, component_basis: list[Mono]
) -> int:
    """Exact rank of the matrix of images of f under the tuple, expanded in
    the component's monomial basis.  Rank at most one puts f in the locus
    of elements with an annihilator of codimension at most one."""
    basis_index = {mono: r for r, mono in enumerate(component_basis)}
    for (mono, s) in f.terms:
        if s != 0 or mono not in basis_index:
            raise InputError("element is not homogeneous of the given class")
    rows = len(component_basis)
    matrix = [[Fraction(0)] * len(t.derivations) for _ in range(rows)]
    for k, d in enumerate(t.derivations):
        img = apply(d, f)
        for (mono, s), c in img.terms.items():
            if s != 0 or mono not in basis_index:
                raise InternalInvariantError(
                    "derivation image left the homogeneous component"
                )
            matrix[basis_index[mono]][k] = c
    return matrix_rank(matrix)


def _random_component_element(
    rng: random.Random,
    component_basis: list[Mono],
    nvars: int,
    skip: Mono | None = None,
) -> Poly:
    out = Poly.zero(nvars)
    for mono in component_basis:
        if skip is not None and mono == skip:
            continue
        num = rng.randint(-6, 6)
        den = rng.randint(1, 3)
        if num:
            out = out + Poly.from_monomial(mono, Fraction(num, den))
    return out


def separating_invariant(
    structure: AdditiveStructure,
    catalog: RootCatalog,
    preorder: PreorderSummary,
    dm: DegreeMap | None = None,
    seed: int = 0,
    cap: int | None = None,
    samples: int = 100,
) -> SeparationCertificate:
    """Certify that the two witness actions are genuinely different.

    The witness variable is the Cox coordinate of the maximal ray; its
    membership in the rank-one locus must hold for the normalized tuple
    and fail for the other one.  Randomly sampled points check that the
    two loci agree away from the distinguishing coefficient and on every
    other variable component; disagreement there is an internal error.
    """
    if dm is None:
        dm = degree_map(structure)
    data = build_witness_tuples(structure, catalog, preorder, dm)
    na, nna = data.normalized, data.nonnormalized
    for t in (na, nna):
        certify_tuple(t, structure, cap)

    m = structure.m
    wpos = data.order[0]
    wclass = dm.degrees[wpos]
    basis = homogeneous_component(dm, wclass)
    witness_mono = tuple(1 if k == wpos else 0 for k in range(m))
    member_na = annihilator_rank(na, Poly.variable(wpos, m), basis) <= 1
    member_nna = annihilator_rank(nna, Poly.variable(wpos, m), basis) <= 1
    cert = SeparationCertificate(
        distinguished_class=wclass,
        witness_variable=wpos,
        member_in_normalized=member_na,
        member_in_nonnormalized=member_nna,
    )
    if not cert.valid:
        raise InternalInvariantError(
            "separation certificate invalid: the rank-one loci do not "
            "distinguish the witness tuples"
        )

    rng = random.Random(seed)
    for _ in range(samples):
        f = _random_component_element(rng, basis, m, skip=witness_mono)
        if f.is_zero():
            continue
        in_na = annihilator_rank(na, f, basis) <= 1
        in_nna = annihilator_rank(nna, f, basis) <= 1
        if in_na != in_nna:
            raise InternalInvariantError(
                "rank-one loci disagree on the distinguished slice"
            )
    other_classes = sorted(
        {dm.degrees[i] for i in range(m)} - {wclass}
    )
    for cls in other_classes:
        cbasis = homogeneous_component(dm, cls)
        for _ in range(samples):
            f = _random_component_element(rng, cbasis, m)
            if f.is_zero():
                continue
            in_na = annihilator_rank(na, f, cbasis) <= 1
            in_nna = annihilator_rank(nna, f, cbasis) <= 1
            if in_na != in_nna:
                raise InternalInvariantError(
                    "rank-one loci disagree on an untouched component"
                )
    return cert


@dataclass(frozen=True)
class QuadraticForm:
    """A quadratic polynomial in the component coefficients lam_b, stored
    as a map from index pairs (i <= j) to rational coefficients."""

    names: tuple[str, ...]
    coeffs: tuple[tuple[tuple[int, int], Fraction], ...]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for (i, j), c in self.coeffs:
            mono = (
                f"{self.names[i]}^2" if i == j
                else f"{self.names[i]}*{self.names[j]}"
            )
            parts.append(f"({c})*{mono}")
        return " + ".join(parts)


def minor_equations(
    t: DerivationTuple, component_basis: list[Mono]
) -> list[QuadraticForm]:
    """The two-by-two minors of the symbolic annihilator system.

    The generic element of the component has one coefficient per basis
    monomial; every minor is a quadratic form in those coefficients.
    Emitted for inspection, with zero minors dropped.
    """
    nvars = t.derivations[0].nvars if t.derivations else 0
    basis_index = {mono: r for r, mono in enumerate(component_basis)}
    names = tuple(
        "lam[" + "*".join(
            f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
            for i, e in enumerate(mono) if e
        ) + "]"
        for mono in component_basis
    )
    rows = len(component_basis)
    cols = len(t.derivations)
    # linear[r][k][b]: coefficient of basis monomial r in D_k(basis[b])
    linear = [
        [[Fraction(0)] * rows for _ in range(cols)] for _ in range(rows)
    ]
    for k, d in enumerate(t.derivations):
        for b, mono in enumerate(component_basis):
            img = apply(d, Poly.from_monomial(mono))
            for (mo, s), c in img.terms.items():
                if s != 0 or mo not in basis_index:
                    raise InternalInvariantError(
                        "derivation image left the homogeneous component"
                    )
                linear[basis_index[mo]][k][b] = c
    out = []
    for r1 in range(rows):
        for r2 in range(r1 + 1, rows):
            for k1 in range(cols):
                for k2 in range(k1 + 1, cols):
                    acc: dict[tuple[int, int], Fraction] = {}
                    for b1 in range(rows):
                        for b2 in range(rows):
                            c = (
                                linear[r1][k1][b1] * linear[r2][k2][b2]
                                - linear[r1][k2][b1] * linear[r2][k1][b2]
                            )
                            if not c:
                                continue
                            key = (min(b1, b2), max(b1, b2))
                            v = acc.get(key, Fraction(0)) + c
                            if v:
                                acc[key] = v
                            else:
                                acc.pop(key, None)
                    out.append(
                        QuadraticForm(names, tuple(sorted(acc.items())))
                    )
    return out
