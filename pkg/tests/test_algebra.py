"""The algebra, its dual and derivations; low Hochschild degrees checked against
direct computations that never touch the resolution."""

import pytest
from hypothesis import given, settings, strategies as st

from fk3hh.algebra import FiniteAlgebra, KoszulDual, Presentation
from fk3hh.linalg import QQ, Elimination


@pytest.fixture(scope="module")
def A():
    return FiniteAlgebra(Presentation.load())


@pytest.fixture(scope="module")
def D():
    return KoszulDual(Presentation.load())


def test_graded_dimensions(A):
    # [PAPER] twelve-dimensional, Hilbert series (1+t)^2 (1+t+t^2)
    assert A.dim == 12
    assert A.graded_dims == [1, 3, 4, 3, 1]


def test_defining_relations_vanish(A):
    # [TRIVIAL] a^2 = b^2 = c^2 = 0, ab + bc + ca = 0, ba + ac + cb = 0
    for rel in ("aa", "bb", "cc", "ab+bc+ca", "ba+ac+cb"):
        assert not A.parse(rel)


basis_index = st.integers(min_value=0, max_value=11)


@settings(max_examples=200, deadline=None)
@given(basis_index, basis_index, basis_index)
def test_multiplication_is_associative(A, x, y, z):
    e = lambda i: {i: QQ(1)}
    assert A.mul(A.mul(e(x), e(y)), e(z)) == A.mul(e(x), A.mul(e(y), e(z)))


def test_unit_and_top_degree(A):
    u = {A.unit: QQ(1)}
    for i in range(A.dim):
        assert A.mul(u, {i: QQ(1)}) == {i: 1}
    assert A.top == 4 and A.top_vanishing_checked


def test_dual_dimensions_in_low_degrees(D):
    # [TRIVIAL] 3 dual generators; 9 words modulo the 4-dimensional orthogonal complement
    assert D.dim(0) == 1
    assert D.dim(1) == 3
    assert D.dim(2) == 5


def test_grading_derivation_is_a_derivation(A):
    # [TRIVIAL] x -> deg(x) x satisfies the Leibniz rule
    images = A.derivation_from_generators({g: A.word(g) for g in A.gens})
    for i in range(A.dim):
        assert images[i] == ({i: A.degree[i]} if A.degree[i] else {})


def test_non_derivation_is_rejected(A):
    with pytest.raises(ValueError):
        A.derivation_from_generators({"a": A.word("b")})


def _inner_rank(A, t):
    inner = A.inner_derivations(t)
    cols = [{i * A.dim + j: c for i, img in enumerate(d) for j, c in img.items()} for d in inner]
    return Elimination(cols, A.dim * A.dim).rank if cols else 0


@pytest.mark.parametrize("t", [0, 2, 4])
def test_centre_matches_degree_zero_cohomology(A, C, t):
    # [DERIVED] HH^0 = centre, computed by direct commutators
    assert len(A.center(t)) == C.dim(0, t)


@pytest.mark.parametrize("t", [-2, 0, 2])
def test_outer_derivations_match_degree_one_cohomology(A, C, t):
    # [DERIVED] HH^1 = Der / Inn, computed from the Leibniz rule on all basis pairs
    assert len(A.derivations(t)) - _inner_rank(A, t) == C.dim(1, t)
