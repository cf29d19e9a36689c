import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricroots.errors import DimensionError, InputError
from toricroots.lattice import (
    Basis,
    basis_coordinates,
    det,
    dual_basis,
    is_lattice_basis,
    matrix_rank,
    pairing,
    primitive,
)

from support import random_unimodular


def det_by_permutations(rows):
    """Independent determinant oracle: signed permutation expansion."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        seen = list(perm)
        for i in range(n):
            for j in range(i + 1, n):
                if seen[i] > seen[j]:
                    sign = -sign
        term = 1
        for i in range(n):
            term *= rows[i][perm[i]]
        total += sign * term
    return total


class TestPrimitive:
    def test_examples(self):
        assert primitive((2, 4)) == (1, 2)
        assert primitive((-1, -1)) == (-1, -1)
        assert primitive((-3, 6, 0)) == (-1, 2, 0)

    def test_zero_vector_rejected(self):
        with pytest.raises(InputError, match="zero vector"):
            primitive((0, 0, 0))

    @given(
        st.lists(st.integers(-50, 50), min_size=1, max_size=6).filter(any),
        st.integers(1, 9),
    )
    @settings(deadline=None)
    def test_scaling_invariance(self, v, k):
        assert primitive([k * x for x in v]) == primitive(v)


class TestDeterminant:
    def test_against_permutation_expansion(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(1, 4)
            rows = [
                [rng.randint(-6, 6) for _ in range(n)] for _ in range(n)
            ]
            assert det(rows) == det_by_permutations(rows)

    def test_non_square_rejected(self):
        with pytest.raises(DimensionError):
            det([[1, 2, 3], [4, 5, 6]])


class TestIsLatticeBasis:
    def test_identity(self):
        assert is_lattice_basis([(1, 0), (0, 1)])

    def test_det_minus_one(self):
        assert is_lattice_basis([(1, 0), (-1, -1)])

    def test_det_two(self):
        assert det([(-1, 1), (-1, -1)]) == 2
        assert not is_lattice_basis([(-1, 1), (-1, -1)])

    def test_dimension_errors(self):
        with pytest.raises(DimensionError):
            is_lattice_basis([(1, 0)])
        with pytest.raises(DimensionError):
            is_lattice_basis([(1, 0), (0, 1, 2)])


class TestBasisCoordinates:
    def test_standard_basis(self):
        b = Basis.from_vectors([(1, 0), (0, 1)])
        assert basis_coordinates(b, (-1, -1)) == (-1, -1)
        assert basis_coordinates(b, (-1, -2)) == (-1, -2)

    def test_integer_solve(self):
        b = Basis.from_vectors([(1, 0), (-2, -1)])
        assert basis_coordinates(b, (0, 1)) == (-2, -1)

    def test_round_trip_random(self):
        rng = random.Random(11)
        for _ in range(300):
            n = rng.randint(1, 4)
            b = Basis.from_vectors(random_unimodular(rng, n))
            v = tuple(rng.randint(-9, 9) for _ in range(n))
            coords = basis_coordinates(b, v)
            rebuilt = tuple(
                sum(c * b.vectors[l][k] for l, c in enumerate(coords))
                for k in range(n)
            )
            assert rebuilt == v

    def test_non_unimodular_rejected(self):
        with pytest.raises(InputError):
            Basis.from_vectors([(2, 0), (0, 1)])


class TestDualBasis:
    def test_identity(self):
        b = Basis.from_vectors([(1, 0), (0, 1)])
        assert dual_basis(b).vectors == ((1, 0), (0, 1))

    def test_known_dual(self):
        b = Basis.from_vectors([(1, 0), (-1, -1)])
        assert dual_basis(b).vectors[0] == (1, -1)

    def test_pairing_identity_on_500_random_bases(self):
        rng = random.Random(13)
        for _ in range(500):
            n = rng.randint(1, 4)
            b = Basis.from_vectors(random_unimodular(rng, n))
            q = dual_basis(b)
            for i in range(n):
                for j in range(n):
                    expected = 1 if i == j else 0
                    assert pairing(b.vectors[i], q.vectors[j]) == expected


class TestPairing:
    def test_examples(self):
        assert pairing((1, 0), (-1, 0)) == -1
        assert pairing((-1, -1), (1, 0)) == -1
        assert pairing((-2, -1), (-1, 1)) == 1

    def test_mismatch(self):
        with pytest.raises(DimensionError):
            pairing((1, 0), (1, 0, 0))


class TestMatrixRank:
    def test_small_cases(self):
        assert matrix_rank([(1, 0), (0, 1)]) == 2
        assert matrix_rank([(1, 2), (2, 4)]) == 1
        assert matrix_rank([(0, 0)]) == 0
        assert matrix_rank([(1, 0), (0, 1), (1, 1)]) == 2

    def test_unimodular_full_rank(self):
        rng = random.Random(17)
        for _ in range(50):
            n = rng.randint(1, 4)
            assert matrix_rank(random_unimodular(rng, n)) == n
