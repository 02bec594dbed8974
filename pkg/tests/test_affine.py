import random

import pytest

from affgerbe.affine import (
    AffineMap,
    BlockSplit,
    block_decompose,
    compose,
    conjugate_by_permutation,
    invert,
)
from affgerbe.exceptions import NotBlockTriangular, SingularLinearPart
from affgerbe.linalg import MatrixQ

from helpers import rand_invertible, rand_q


def rand_affine(rng, n):
    return AffineMap(rand_invertible(rng, n), tuple(rand_q(rng) for _ in range(n)))


def test_apply_gamma_generator():
    f3 = AffineMap.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 1])
    assert f3((2, 3, 5)) == (5, 3, 6)
    assert invert(f3)(f3((2, 3, 5))) == (2, 3, 5)


def test_singular_rejected():
    with pytest.raises(SingularLinearPart):
        AffineMap.from_rows([[1, 1], [1, 1]], [0, 0])


def test_compose_order():
    shift = AffineMap.translation_by([1, 0])
    swap = AffineMap.from_rows([[0, 1], [1, 0]], [0, 0])
    assert compose(swap, shift)((0, 0)) == (0, 1)
    assert compose(shift, swap)((0, 0)) == (1, 0)


def test_random_group_laws():
    rng = random.Random(5)
    for _ in range(40):
        n = rng.randint(1, 3)
        f, g, h = (rand_affine(rng, n) for _ in range(3))
        assert compose(compose(f, g), h) == compose(f, compose(g, h))
        assert compose(f, invert(f)).is_identity()
        p = tuple(rand_q(rng) for _ in range(n))
        assert compose(f, g)(p) == f(g(p))


def test_block_decompose_round_trip():
    f = AffineMap.from_rows([[2, 0, 0], [1, 1, 0], [3, 0, 1]], [1, 2, 3])
    b = block_decompose(f, BlockSplit(1, 2))
    assert b.A.to_rows() == [[2]]
    assert b.C.to_rows() == [[1], [3]]
    assert b.d == (2, 3)
    assert b.assemble() == f
    assert not b.is_fiber_element()


def test_block_decompose_rejects_upper_right():
    f = AffineMap.from_rows([[1, 1], [0, 1]], [0, 0])
    with pytest.raises(NotBlockTriangular) as exc:
        block_decompose(f, BlockSplit(1, 1))
    assert exc.value.positions == [(0, 1)]


def test_permutation_conjugation_moves_coordinates():
    f3 = AffineMap.from_rows([[1, 1, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 1])
    g = conjugate_by_permutation(f3, (2, 0, 1))
    # in coordinates (z, x, y): (z + 1, x + y, y)
    assert g((5, 2, 3)) == (6, 5, 3)
    with pytest.raises(ValueError):
        conjugate_by_permutation(f3, (0, 0, 1))


def test_permutation_conjugation_is_a_homomorphism():
    rng = random.Random(8)
    for _ in range(20):
        f, g = rand_affine(rng, 3), rand_affine(rng, 3)
        perm = tuple(rng.sample(range(3), 3))
        lhs = conjugate_by_permutation(compose(f, g), perm)
        rhs = compose(conjugate_by_permutation(f, perm), conjugate_by_permutation(g, perm))
        assert lhs == rhs


def test_split_requires_positive_blocks():
    with pytest.raises(ValueError):
        BlockSplit(0, 2)
    assert MatrixQ.identity(2).is_identity()
