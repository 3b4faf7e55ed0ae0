"""Exact sparse elimination, checked against sympy and fraction-free elimination."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from fk3hh.linalg import (QQ, Elimination, Field, InconsistentSystem, ModP, Quotient, Subspace,
                          bareiss_rank, infeasibility_certificate, to_dense)

entries = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    dense = [[draw(entries) for _ in range(c)] for _ in range(r)]
    return dense


def columns_of(dense, F=QQ):
    r, c = len(dense), len(dense[0])
    return [{i: F(dense[i][j]) for i in range(r) if dense[i][j]} for j in range(c)]


def apply(cols, x, nrows):
    out = [0] * nrows
    for j, xj in x.items():
        for i, v in cols[j].items():
            out[i] += v * xj
    return out


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_agrees_with_sympy_and_bareiss(dense):
    cols = columns_of(dense)
    r = Elimination(cols, len(dense)).rank
    assert r == sympy.Matrix(dense).rank()
    assert r == bareiss_rank(dense)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_kernel_vectors_are_annihilated_and_count_is_nullity(dense):
    cols = columns_of(dense)
    el = Elimination(cols, len(dense))
    ker = el.kernel()
    assert len(ker) == len(cols) - el.rank
    for v in ker:
        assert all(x == 0 for x in apply(cols, v, len(dense)))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(entries, min_size=6, max_size=6))
def test_solve_reproduces_right_hand_side_from_image(dense, xs):
    cols = columns_of(dense)
    x = {j: QQ(xs[j]) for j in range(len(cols)) if xs[j]}
    b = {i: v for i, v in enumerate(apply(cols, x, len(dense))) if v}
    sol = Elimination(cols, len(dense)).solve(b)
    got = apply(cols, sol, len(dense))
    assert all(got[i] == b.get(i, 0) for i in range(len(dense)))


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(entries, min_size=6, max_size=6))
def test_certificate_exists_exactly_when_unsolvable(dense, bs):
    cols = columns_of(dense)
    n = len(dense)
    b = {i: QQ(bs[i]) for i in range(n) if bs[i]}
    aug = [row + [bs[i]] for i, row in enumerate(dense)]
    solvable = sympy.Matrix(aug).rank() == sympy.Matrix(dense).rank()
    cert = infeasibility_certificate(cols, n, b)
    assert (cert is None) == solvable
    if cert is not None:
        for col in cols:
            assert sum((col.get(i, 0) * c for i, c in cert.items()), QQ(0)) == 0
        assert sum((b.get(i, 0) * c for i, c in cert.items()), QQ(0)) == 1


def test_unsolvable_system_raises():
    el = Elimination([{0: QQ(1)}, {0: QQ(2)}], 2)
    with pytest.raises(InconsistentSystem):
        el.solve({1: QQ(1)})


def test_reversed_column_order_changes_particular_solution_not_consistency():
    cols = [{0: QQ(1)}, {0: QQ(1)}]
    a = Elimination(cols, 1).solve({0: QQ(1)})
    b = Elimination(cols, 1, column_order=[1, 0]).solve({0: QQ(1)})
    assert a != b
    assert a == {0: QQ(1)} and b == {1: QQ(1)}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(entries, min_size=5, max_size=5), min_size=1, max_size=5))
def test_subspace_basis_is_canonical(vectors):
    vecs = [{i: QQ(v[i]) for i in range(5) if v[i]} for v in vectors]
    a = Subspace(5, vecs)
    b = Subspace(5, list(reversed(vecs)))
    assert a.basis() == b.basis()
    assert a.rank == sympy.Matrix(vectors).rank()


def test_quotient_coordinates_ignore_coboundaries():
    Z = Subspace(3, [{0: QQ(1)}, {1: QQ(1)}])
    Bsp = Subspace(3, [{0: QQ(1), 1: QQ(1)}])
    Q = Quotient(Z, Bsp)
    assert Q.dim == 1
    assert Q.coordinates({0: QQ(1)}) == Q.coordinates({1: QQ(-1)})
    rep = Q.representative([QQ(1)])
    assert Q.coordinates(rep) == [1]


def test_rank_over_prime_field_can_drop():
    # det = 5, singular mod 5 only
    dense = [[1, 2], [3, 11]]
    assert Elimination(columns_of(dense), 2).rank == 2
    F5 = Field(5)
    assert Elimination(columns_of(dense, F5), 2).rank == 1


@given(st.integers(-50, 50), st.integers(1, 50).filter(lambda d: d % 7))
def test_modp_division_matches_modular_inverse(a, d):
    F7 = Field(7)
    x = F7(Fraction(a, d))
    assert x * F7(d) == F7(a)
    assert isinstance(x, ModP)


def test_formatting_is_reduced_with_positive_denominator():
    assert QQ.fmt(QQ(Fraction(6, -4))) == "-3/2"
    assert QQ.fmt(QQ(4)) == "4"
    assert Field(7).fmt(Field(7)(Fraction(1, 2))) == "4"


def test_field_parse_rejects_composite():
    with pytest.raises(ValueError):
        Field.parse("fp:9")
    assert Field.parse("rational") == QQ


def test_dense_view_round_trip():
    dense = [[1, 0, 2], [0, 3, 0]]
    cols = columns_of(dense)
    assert to_dense(cols, 2) == dense
