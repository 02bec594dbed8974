"""Affine maps of rational n-space and their base/fiber block structure."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exceptions import NotBlockTriangular, SingularLinearPart
from .linalg import MatrixQ, Vector, vec, vec_add, zero_vector


@dataclass(frozen=True)
class AffineMap:
    """``p -> linear @ p + translation`` with an invertible linear part."""

    linear: MatrixQ
    translation: Vector

    def __post_init__(self):
        object.__setattr__(self, "translation", vec(self.translation))
        if self.linear.rows != self.linear.cols:
            raise ValueError("linear part must be square")
        if len(self.translation) != self.linear.rows:
            raise ValueError("translation length does not match the linear part")
        if self.linear.det() == 0:
            raise SingularLinearPart("affine map has a singular linear part")

    @property
    def dim(self) -> int:
        return self.linear.rows

    @classmethod
    def identity(cls, n: int) -> "AffineMap":
        return cls(MatrixQ.identity(n), zero_vector(n))

    @classmethod
    def translation_by(cls, t: Sequence) -> "AffineMap":
        t = vec(t)
        return cls(MatrixQ.identity(len(t)), t)

    @classmethod
    def from_rows(cls, linear_rows, translation) -> "AffineMap":
        return cls(MatrixQ.from_rows(linear_rows), vec(translation))

    def is_identity(self) -> bool:
        return self.linear.is_identity() and all(t == 0 for t in self.translation)

    def is_translation(self) -> bool:
        return self.linear.is_identity()

    def __matmul__(self, other: "AffineMap") -> "AffineMap":
        return compose(self, other)

    def __call__(self, p: Sequence) -> Vector:
        return apply(self, p)


def compose(f: AffineMap, g: AffineMap) -> AffineMap:
    """``f o g``: apply g first, then f."""
    if f.dim != g.dim:
        raise ValueError(f"dimension mismatch: {f.dim} vs {g.dim}")
    return AffineMap(f.linear @ g.linear, vec_add(f.linear @ g.translation, f.translation))


def invert(f: AffineMap) -> AffineMap:
    inv = f.linear.inverse()
    return AffineMap(inv, tuple(-x for x in inv @ f.translation))


def apply(f: AffineMap, p: Sequence) -> Vector:
    p = vec(p)
    if len(p) != f.dim:
        raise ValueError(f"point of length {len(p)} for a map of dimension {f.dim}")
    return vec_add(f.linear @ p, f.translation)


def conjugate_by_permutation(f: AffineMap, perm: Sequence[int]) -> AffineMap:
    """Re-express f in the coordinates ``new[j] = old[perm[j]]``."""
    n = f.dim
    if sorted(perm) != list(range(n)):
        raise ValueError(f"{perm!r} is not a permutation of range({n})")
    lin = MatrixQ.from_rows([[f.linear[perm[i], perm[j]] for j in range(n)] for i in range(n)], cols=n)
    return AffineMap(lin, tuple(f.translation[perm[i]] for i in range(n)))


@dataclass(frozen=True)
class BlockSplit:
    base_dim: int
    fiber_dim: int

    def __post_init__(self):
        if self.base_dim < 1 or self.fiber_dim < 1:
            raise ValueError("both base and fiber dimension must be at least 1")

    @property
    def dim(self) -> int:
        return self.base_dim + self.fiber_dim


@dataclass(frozen=True)
class BlockAffineMap:
    """``(x, y) -> (A x + a, B y + C x + d)`` with base coordinates first."""

    split: BlockSplit
    base_linear: MatrixQ
    fiber_linear: MatrixQ
    coupling: MatrixQ
    base_translation: Vector
    fiber_translation: Vector

    def __post_init__(self):
        m, l = self.split.base_dim, self.split.fiber_dim
        if self.base_linear.shape != (m, m) or self.fiber_linear.shape != (l, l):
            raise ValueError("diagonal blocks have the wrong shape")
        if self.coupling.shape != (l, m):
            raise ValueError("coupling block must be fiber_dim x base_dim")
        object.__setattr__(self, "base_translation", vec(self.base_translation))
        object.__setattr__(self, "fiber_translation", vec(self.fiber_translation))
        if len(self.base_translation) != m or len(self.fiber_translation) != l:
            raise ValueError("translation blocks have the wrong length")
        if self.base_linear.det() == 0 or self.fiber_linear.det() == 0:
            raise SingularLinearPart("diagonal blocks must be invertible")

    # paper-style short names
    A = property(lambda self: self.base_linear)
    B = property(lambda self: self.fiber_linear)
    C = property(lambda self: self.coupling)
    a = property(lambda self: self.base_translation)
    d = property(lambda self: self.fiber_translation)

    def is_fiber_element(self) -> bool:
        """True when the map acts trivially on the base (A = I, a = 0)."""
        return self.base_linear.is_identity() and all(x == 0 for x in self.base_translation)

    def assemble(self) -> AffineMap:
        m, l = self.split.base_dim, self.split.fiber_dim
        rows = []
        for i in range(m):
            rows.append(list(self.base_linear.row(i)) + [0] * l)
        for i in range(l):
            rows.append(list(self.coupling.row(i)) + list(self.fiber_linear.row(i)))
        return AffineMap(MatrixQ.from_rows(rows, cols=m + l),
                         self.base_translation + self.fiber_translation)


def block_decompose(f: AffineMap, split: BlockSplit) -> BlockAffineMap:
    m, l = split.base_dim, split.fiber_dim
    if f.dim != m + l:
        raise ValueError(f"map of dimension {f.dim} cannot be split as {m}+{l}")
    bad = [(i, j) for i in range(m) for j in range(m, m + l) if f.linear[i, j] != 0]
    if bad:
        raise NotBlockTriangular(bad)
    n = m + l
    return BlockAffineMap(
        split,
        f.linear.block(0, m, 0, m),
        f.linear.block(m, n, m, n),
        f.linear.block(m, n, 0, m),
        f.translation[:m],
        f.translation[m:],
    )
