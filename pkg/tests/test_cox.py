import random
from fractions import Fraction

import pytest

from toricroots.cox import (
    CAP_EXCEEDED,
    REFUTED,
    VERIFIED,
    Derivation,
    Poly,
    apply,
    commutator,
    exponentiate,
    homogeneous_component,
    is_locally_nilpotent,
    root_derivation,
)
from toricroots.errors import InputError
from toricroots.fixtures import fixture
from toricroots.rays import degree_map, detect_additive_structure
from toricroots.roots import DemazureRoot, UNIPOTENT, enumerate_roots


def setup(name):
    rs = fixture(name).ray_system()
    s = detect_additive_structure(rs)
    return rs, s, degree_map(s)


def mono_deriv(nvars, mono, target, coeff=1):
    return Derivation.from_terms(nvars, [(Fraction(coeff), mono, target)])


class TestPoly:
    def test_arithmetic(self):
        x = Poly.variable(0, 2)
        y = Poly.variable(1, 2)
        p = (x + y) * (x - y)
        assert p == x * x - y * y
        assert (p - p).is_zero()

    def test_scalar_multiple_detection(self):
        x2 = Poly.from_monomial((2, 0))
        assert x2.scale(3).is_scalar_multiple_of(x2)
        assert not x2.is_scalar_multiple_of(Poly.from_monomial((0, 2)))

    def test_str_is_deterministic(self):
        p = Poly.from_monomial((1, 1), 2) + Poly.from_monomial((0, 2))
        assert str(p) == "x2^2 + 2*x1*x2"


class TestHomogeneousComponent:
    def test_p2_degree_one(self):
        _, _, dm = setup("p2")
        comp = homogeneous_component(dm, (1,))
        assert comp == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]

    def test_p112_degree_two(self):
        _, _, dm = setup("p112")
        comp = homogeneous_component(dm, (2,))
        assert comp == [(0, 0, 2), (0, 1, 0), (1, 0, 1), (2, 0, 0)]

    def test_zero_class_is_constants(self):
        _, _, dm = setup("p112")
        assert homogeneous_component(dm, (0,)) == [(0, 0, 0)]


class TestRootDerivation:
    def test_p2_negated_duals(self):
        rs, s, dm = setup("p2")
        d = root_derivation(s, DemazureRoot(0, (-1, 0), UNIPOTENT), dm)
        assert d.terms == ((Fraction(1), (0, 0, 1), 0),)  # x3 d/dx1
        d = root_derivation(s, DemazureRoot(0, (-1, 1), UNIPOTENT), dm)
        assert d.terms == ((Fraction(1), (0, 1, 0), 0),)  # x2 d/dx1

    def test_p112_square_term(self):
        rs, s, dm = setup("p112")
        d = root_derivation(s, DemazureRoot(1, (2, -1), UNIPOTENT), dm)
        assert d.terms == ((Fraction(1), (2, 0, 0), 1),)  # x1^2 d/dx2

    def test_invalid_root_rejected(self):
        rs, s, dm = setup("p2")
        with pytest.raises(InputError):
            root_derivation(s, DemazureRoot(0, (1, 0), UNIPOTENT), dm)

    def test_class_degree_is_zero(self):
        for name in ("p2", "p112", "p123", "hirzebruch-2", "family-3"):
            rs, s, dm = setup(name)
            cat = enumerate_roots(rs, s)
            for root in cat.all_roots():
                d = root_derivation(s, root, dm)
                assert d.cl_degree(dm) == (0,) * dm.rank


class TestApply:
    def test_basic(self):
        d = mono_deriv(3, (0, 0, 1), 0)  # x3 d/dx1
        assert apply(d, Poly.variable(0, 3)) == Poly.variable(2, 3)

    def test_power_rule(self):
        d = mono_deriv(3, (0, 0, 1), 0)
        f = Poly.from_monomial((2, 1, 0))
        assert apply(d, f) == Poly.from_monomial((1, 1, 1), 2)

    def test_p112_square(self):
        d = mono_deriv(3, (0, 0, 2), 1)  # x3^2 d/dx2
        assert apply(d, Poly.variable(1, 3)) == Poly.from_monomial((0, 0, 2))

    def test_grading_shift(self):
        # a degree-zero derivation keeps the class degree of its input and
        # shifts the fine degree by exactly its own
        rs, s, dm = setup("p112")
        cat = enumerate_roots(rs, s)
        rng = random.Random(3)
        for root in cat.all_roots():
            d = root_derivation(s, root, dm)
            shift = d.zm_degree()
            mono = tuple(rng.randint(0, 2) for _ in range(3))
            img = apply(d, Poly.from_monomial(mono))
            for (m, _), _c in img.terms.items():
                assert dm.monomial_degree(m) == dm.monomial_degree(mono)
                assert m == tuple(a + b for a, b in zip(mono, shift))


class TestCommutator:
    def test_commuting_pair(self):
        d1 = mono_deriv(3, (0, 0, 1), 0)  # x3 d/dx1
        d2 = mono_deriv(3, (0, 0, 1), 1)  # x3 d/dx2
        assert commutator(d1, d2).is_zero()

    def test_textbook_bracket(self):
        d1 = mono_deriv(2, (0, 0), 0)  # d/dx1
        d2 = mono_deriv(2, (1, 0), 1)  # x1 d/dx2
        assert commutator(d1, d2).terms == ((Fraction(1), (0, 0), 1),)

    def test_p112_witness_pair_commutes(self):
        d1 = mono_deriv(3, (0, 0, 1), 0) + mono_deriv(3, (2, 0, 0), 1)
        d2 = mono_deriv(3, (0, 0, 2), 1)
        assert commutator(d1, d2).is_zero()


class TestLocallyNilpotent:
    def test_translation_verified(self):
        d = mono_deriv(3, (0, 0, 1), 0)
        assert is_locally_nilpotent(d, 5) == VERIFIED

    def test_semisimple_refuted(self):
        d = mono_deriv(2, (1, 0), 0)  # x1 d/dx1
        assert is_locally_nilpotent(d, 5) == REFUTED

    def test_rotation_refuted(self):
        # d(x) = y, d(y) = -x cycles back to a multiple of x
        d = mono_deriv(2, (0, 1), 0) + mono_deriv(2, (1, 0), 1, coeff=-1)
        assert is_locally_nilpotent(d, 10) == REFUTED

    def test_p112_twisted_slot(self):
        d = mono_deriv(3, (0, 0, 1), 0) + mono_deriv(3, (2, 0, 0), 1)
        assert is_locally_nilpotent(d, 10) == VERIFIED

    def test_cap_exceeded(self):
        d = mono_deriv(1, (2,), 0)  # x^2 d/dx grows forever
        assert is_locally_nilpotent(d, 6) == CAP_EXCEEDED


class TestExponentiate:
    def test_translation(self):
        d = mono_deriv(3, (0, 0, 1), 0)
        out = exponentiate(d, Poly.variable(0, 3), cap=5)
        expected = Poly.variable(0, 3) + Poly.from_monomial((0, 0, 1), 1, s=1)
        assert out == expected

    def test_binomial(self):
        d = mono_deriv(1, (0,), 0)  # d/dx1
        out = exponentiate(d, Poly.from_monomial((2,)), cap=5)
        expected = (
            Poly.from_monomial((2,))
            + Poly.from_monomial((1,), 2, s=1)
            + Poly.from_monomial((0,), 1, s=2)
        )
        assert out == expected

    def test_p112_chain_coefficients(self):
        d = mono_deriv(3, (0, 0, 1), 0) + mono_deriv(3, (2, 0, 0), 1)
        out = exponentiate(d, Poly.variable(1, 3), cap=10)
        expected = (
            Poly.variable(1, 3)
            + Poly.from_monomial((2, 0, 0), 1, s=1)
            + Poly.from_monomial((1, 0, 1), 1, s=2)
            + Poly.from_monomial((0, 0, 2), Fraction(1, 3), s=3)
        )
        assert out == expected

    def test_refuses_non_nilpotent(self):
        d = mono_deriv(2, (1, 0), 0)
        with pytest.raises(InputError):
            exponentiate(d, Poly.variable(0, 2), cap=5)

    def test_ring_homomorphism_on_samples(self):
        rng = random.Random(5)
        for name in ("p2", "p112"):
            rs, s, dm = setup(name)
            cat = enumerate_roots(rs, s)
            roots = list(cat.all_roots())
            for _ in range(50):
                root = rng.choice(roots)
                d = root_derivation(s, root, dm)
                f = Poly.from_monomial(
                    tuple(rng.randint(0, 2) for _ in range(3))
                )
                g = Poly.from_monomial(
                    tuple(rng.randint(0, 2) for _ in range(3))
                )
                lhs = exponentiate(d, f * g, cap=20)
                rhs = exponentiate(d, f, cap=20) * exponentiate(d, g, cap=20)
                assert lhs == rhs


def test_component_basis_is_variable_plus_root_images():
    # the component of each variable's class is spanned by the variable
    # itself and the images of the root derivations of its ray
    for name in ("p1", "p2", "p3", "p112", "p123", "p1112", "p1xp1",
                 "family-2", "family-3", "hirzebruch-0", "hirzebruch-3"):
        rs, s, dm = setup(name)
        cat = enumerate_roots(rs, s)
        for pos in range(s.m):
            idx = s.order[pos]
            comp = set(homogeneous_component(dm, dm.degrees[pos]))
            expected = {tuple(1 if k == pos else 0 for k in range(s.m))}
            for e in cat.per_ray[idx]:
                d = root_derivation(s, DemazureRoot(idx, e, UNIPOTENT), dm)
                (_c, mono, _t), = d.terms
                expected.add(mono)
            assert comp == expected
