from fractions import Fraction

import pytest

from toricroots.cox import Derivation, Poly, apply
from toricroots.errors import UniquenessHoldsError
from toricroots.fixtures import fixture
from toricroots.rays import degree_map, detect_additive_structure, ray_preorder
from toricroots.roots import enumerate_roots
from toricroots.witness import (
    DerivationTuple,
    annihilator_rank,
    build_witness_tuples,
    default_nilpotency_cap,
    minor_equations,
    separating_invariant,
    verify_additive_tuple,
)


def setup(name):
    rs = fixture(name).ray_system()
    s = detect_additive_structure(rs)
    cat = enumerate_roots(rs, s)
    pre = ray_preorder(s)
    dm = degree_map(s)
    return rs, s, cat, pre, dm


def term(c, mono, target):
    return (Fraction(c), mono, target)


class TestBuildWitnessTuples:
    def test_p2(self):
        _, s, cat, pre, dm = setup("p2")
        data = build_witness_tuples(s, cat, pre, dm)
        assert data.order == (0, 1)
        assert data.twist_degree == 1
        na = data.normalized.derivations
        nna = data.nonnormalized.derivations
        assert na[0].terms == (term(1, (0, 0, 1), 0),)  # x3 d/dx1
        assert na[1].terms == (term(1, (0, 0, 1), 1),)  # x3 d/dx2
        assert nna[0] == na[0]
        assert nna[1].terms == (
            term(1, (0, 1, 0), 0),  # x2 d/dx1
            term(1, (0, 0, 1), 1),  # x3 d/dx2
        )

    def test_p112(self):
        _, s, cat, pre, dm = setup("p112")
        data = build_witness_tuples(s, cat, pre, dm)
        assert data.order == (1, 0)  # the maximal ray is the second one
        assert data.twist_degree == 2
        na = data.normalized.derivations
        nna = data.nonnormalized.derivations
        assert na[0].terms == (term(1, (0, 0, 2), 1),)  # x3^2 d/dx2
        assert na[1].terms == (term(1, (0, 0, 1), 0),)  # x3 d/dx1
        assert nna[1].terms == (
            term(1, (0, 0, 1), 0),  # x3 d/dx1
            term(1, (2, 0, 0), 1),  # x1^2 d/dx2
        )

    def test_unique_case_raises(self):
        _, s, cat, pre, dm = setup("family-3")
        with pytest.raises(UniquenessHoldsError):
            build_witness_tuples(s, cat, pre, dm)


class TestNilpotencyChain:
    def test_p112_chain_exact(self):
        _, s, cat, pre, dm = setup("p112")
        data = build_witness_tuples(s, cat, pre, dm)
        d = data.nonnormalized.derivations[1]  # x3 d/dx1 + x1^2 d/dx2
        f0 = Poly.variable(1, 3)  # x2
        f1 = apply(d, f0)
        f2 = apply(d, f1)
        f3 = apply(d, f2)
        f4 = apply(d, f3)
        assert f1 == Poly.from_monomial((2, 0, 0))        # x1^2
        assert f2 == Poly.from_monomial((1, 0, 1), 2)     # 2 x1 x3
        assert f3 == Poly.from_monomial((0, 0, 2), 2)     # 2 x3^2
        assert f4.is_zero()


class TestVerifyTuple:
    def test_witness_tuples_fully_verified(self):
        for name in ("p2", "p112", "p123", "hirzebruch-2"):
            _, s, cat, pre, dm = setup(name)
            data = build_witness_tuples(s, cat, pre, dm)
            for t in (data.normalized, data.nonnormalized):
                verify_additive_tuple(t, s)
                assert t.all_verified(), (name, t.flags, t.notes)

    def test_designed_commuting_failure(self):
        _, s, _, _, _ = setup("p2")
        bad = DerivationTuple(
            derivations=(
                Derivation.from_terms(3, [term(1, (0, 0, 1), 0)]),  # x3 d/dx1
                Derivation.from_terms(3, [term(1, (1, 0, 0), 1)]),  # x1 d/dx2
            ),
            variable_order=(0, 1),
        )
        verify_additive_tuple(bad, s)
        assert bad.flags["commuting"] == "refuted"
        assert not bad.all_verified()

    def test_triangularity_failure(self):
        _, s, _, _, _ = setup("p2")
        # slot 1 moves slot 2's variable: not triangular in this order
        bad = DerivationTuple(
            derivations=(
                Derivation.from_terms(3, [term(1, (0, 0, 1), 1)]),  # x3 d/dx2
                Derivation.from_terms(3, [term(1, (0, 0, 1), 0)]),
            ),
            variable_order=(0, 1),
        )
        verify_additive_tuple(bad, s)
        assert bad.flags["triangular"] == "refuted"

    def test_collection_tuples_verified(self):
        from toricroots.cox import root_derivation
        from toricroots.roots import DemazureRoot, UNIPOTENT, complete_collections

        for name in ("p2", "p112", "p1xp1", "family-2"):
            rs, s, cat, pre, dm = setup(name)
            for coll in complete_collections(rs, cat):
                derivs = tuple(
                    root_derivation(
                        s, DemazureRoot(idx, e, UNIPOTENT), dm
                    )
                    for idx, e in zip(coll.basis_indices, coll.roots)
                )
                order = tuple(
                    s.canonical_position(idx) for idx in coll.basis_indices
                )
                t = DerivationTuple(derivs, order)
                verify_additive_tuple(t, s)
                assert t.all_verified(), (name, coll, t.flags, t.notes)


class TestAnnihilatorRank:
    def test_p2_membership_split(self):
        from toricroots.cox import homogeneous_component

        _, s, cat, pre, dm = setup("p2")
        data = build_witness_tuples(s, cat, pre, dm)
        basis = homogeneous_component(dm, (1,))
        x1 = Poly.variable(0, 3)
        assert annihilator_rank(data.normalized, x1, basis) == 1
        assert annihilator_rank(data.nonnormalized, x1, basis) == 2

    def test_killed_element_has_rank_zero(self):
        from toricroots.cox import homogeneous_component

        _, s, cat, pre, dm = setup("p2")
        data = build_witness_tuples(s, cat, pre, dm)
        basis = homogeneous_component(dm, (1,))
        x3 = Poly.variable(2, 3)  # both tuples kill x3
        assert annihilator_rank(data.normalized, x3, basis) == 0


class TestSeparatingInvariant:
    @pytest.mark.parametrize("name", ["p2", "p112", "p123", "p1112"])
    def test_valid_certificates(self, name):
        rs, s, cat, pre, dm = setup(name)
        cert = separating_invariant(s, cat, pre, dm, seed=0)
        assert cert.valid
        assert cert.member_in_normalized
        assert not cert.member_in_nonnormalized

    def test_seed_does_not_change_certificate(self):
        rs, s, cat, pre, dm = setup("p112")
        a = separating_invariant(s, cat, pre, dm, seed=0)
        b = separating_invariant(s, cat, pre, dm, seed=99)
        assert a == b

    def test_p112_distinguished_component(self):
        rs, s, cat, pre, dm = setup("p112")
        cert = separating_invariant(s, cat, pre, dm)
        assert cert.distinguished_class == (2,)
        assert cert.witness_variable == 1  # canonical position of x2

    def test_unique_case_has_no_invariant(self):
        rs, s, cat, pre, dm = setup("family-2")
        with pytest.raises(UniquenessHoldsError):
            separating_invariant(s, cat, pre, dm)


class TestMinorEquations:
    def test_p2_nonnormalized_has_lambda_square(self):
        from toricroots.cox import homogeneous_component

        _, s, cat, pre, dm = setup("p2")
        data = build_witness_tuples(s, cat, pre, dm)
        basis = homogeneous_component(dm, (1,))
        witness_index = basis.index((1, 0, 0))
        minors = minor_equations(data.nonnormalized, basis)
        squares = [
            q
            for q in minors
            if dict(q.coeffs)
            in (
                {(witness_index, witness_index): Fraction(1)},
                {(witness_index, witness_index): Fraction(-1)},
            )
        ]
        assert squares, [str(q) for q in minors]

    def test_p2_normalized_minors_all_vanish(self):
        from toricroots.cox import homogeneous_component

        _, s, cat, pre, dm = setup("p2")
        data = build_witness_tuples(s, cat, pre, dm)
        basis = homogeneous_component(dm, (1,))
        assert all(q.is_zero() for q in minor_equations(data.normalized, basis))

    def test_single_derivation_gives_no_minors(self):
        _, s, cat, pre, dm = setup("p1")
        from toricroots.cox import homogeneous_component, root_derivation
        from toricroots.roots import DemazureRoot, UNIPOTENT

        d = root_derivation(s, DemazureRoot(0, (-1,), UNIPOTENT), dm)
        t = DerivationTuple((d,), (0,))
        basis = homogeneous_component(dm, (1,))
        assert minor_equations(t, basis) == []


def test_default_cap_covers_the_component_degrees():
    _, s, _, _, dm = setup("p112")
    assert default_nilpotency_cap(s, dm) >= 4


class TestCapExceeded:
    def test_flag_reported_not_verified(self):
        _, s, cat, pre, dm = setup("p112")
        data = build_witness_tuples(s, cat, pre, dm)
        t = data.nonnormalized
        verify_additive_tuple(t, s, cap=1)
        assert t.flags["locally_nilpotent"] == "cap_exceeded"
        assert not t.all_verified()

    def test_certify_raises_input_error(self):
        from toricroots.errors import InputError
        from toricroots.witness import certify_tuple

        _, s, cat, pre, dm = setup("p112")
        data = build_witness_tuples(s, cat, pre, dm)
        with pytest.raises(InputError, match="cap too small"):
            certify_tuple(data.nonnormalized, s, cap=1)
