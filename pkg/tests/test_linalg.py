import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from affgerbe.linalg import (
    MatrixQ,
    Quotient,
    nullspace,
    rank,
    rref,
    same_span,
    solve,
    span_basis,
)

from helpers import rand_invertible, rand_matrix

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=5)


@st.composite
def matrices(draw, max_dim=4):
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    entries = draw(st.lists(rationals, min_size=r * c, max_size=r * c))
    return MatrixQ(r, c, tuple(entries))


def test_identity_and_products():
    a = MatrixQ.from_rows([[1, 2], [3, 4]])
    assert a @ MatrixQ.identity(2) == a
    assert a @ (1, 1) == (Fraction(3), Fraction(7))
    assert a.det() == -2
    assert (a @ a.inverse()).is_identity()


def test_singular_inverse_raises():
    with pytest.raises(ZeroDivisionError):
        MatrixQ.from_rows([[1, 2], [2, 4]]).inverse()


def test_rref_known():
    r, pivots = rref(MatrixQ.from_rows([[2, 4, 2], [1, 2, 3]]))
    assert pivots == [0, 2]
    assert r.to_rows() == [[1, 2, 0], [0, 0, 1]]


def test_solve_inconsistent():
    m = MatrixQ.from_rows([[1, 1], [1, 1]])
    assert solve(m, (1, 2)) is None
    assert solve(m, (2, 2)) == (2, 0)


@given(matrices())
@settings(max_examples=60, deadline=None)
def test_nullspace_is_kernel(m):
    ns = nullspace(m)
    assert len(ns) + rank(m) == m.cols
    for v in ns:
        assert all(x == 0 for x in m @ v)


@given(matrices(), st.data())
@settings(max_examples=60, deadline=None)
def test_solve_round_trip(m, data):
    x = tuple(data.draw(st.lists(rationals, min_size=m.cols, max_size=m.cols)))
    b = m @ x
    y = solve(m, b)
    assert y is not None and m @ y == b


def test_random_inverses():
    rng = random.Random(3)
    for _ in range(30):
        n = rng.randint(1, 4)
        a = rand_invertible(rng, n)
        assert (a.inverse() @ a).is_identity()
        assert a.T.det() == a.det()


def test_same_span_detects_difference():
    assert same_span([(1, 0, 0), (0, 1, 0)], [(1, 1, 0), (1, -1, 0)], 3)
    assert not same_span([(1, 0, 0)], [(0, 1, 0)], 3)
    assert len(span_basis([(1, 2), (2, 4)], 2)) == 1


def test_quotient_coordinates():
    q = Quotient(3, [(1, 0, 0), (0, 1, 0)], [(1, 1, 0)])
    assert q.rank == 1
    assert q.coordinates((1, 1, 0)) == (0,)
    assert q.coordinates(q.lift((5,))) == (5,)
    c1 = q.coordinates((1, 0, 0))
    c2 = q.coordinates((0, 1, 0))
    assert c1 == tuple(-x for x in c2) and c1 != (0,)


def test_quotient_rejects_bad_boundaries():
    with pytest.raises(ValueError):
        Quotient(2, [(1, 0)], [(0, 1)])


def test_quotient_random_projector_kills_boundaries():
    rng = random.Random(11)
    for _ in range(25):
        n = rng.randint(2, 5)
        cycles = [rand_matrix(rng, 1, n).row(0) for _ in range(rng.randint(1, n))]
        basis = span_basis(cycles, n)
        boundaries = []
        for _ in range(rng.randint(0, len(basis))):
            coeffs = [rng.randint(-2, 2) for _ in basis]
            boundaries.append(tuple(sum(c * b[i] for c, b in zip(coeffs, basis)) for i in range(n)))
        q = Quotient(n, cycles, boundaries)
        for b in boundaries:
            assert all(x == 0 for x in q.coordinates(b))
        for j in range(q.rank):
            e = tuple(int(i == j) for i in range(q.rank))
            assert q.coordinates(q.lift(e)) == e
