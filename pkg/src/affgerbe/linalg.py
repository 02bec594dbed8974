"""Exact linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction`; there is no floating
point path.  Vectors are plain tuples of fractions, matrices are
:class:`MatrixQ` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    """Coerce ints, fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def vec(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def vec_add(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise ValueError(f"vector length mismatch: {len(u)} != {len(v)}")
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vector, v: Vector) -> Vector:
    if len(u) != len(v):
        raise ValueError(f"vector length mismatch: {len(u)} != {len(v)}")
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Vector) -> Vector:
    c = to_fraction(c)
    return tuple(c * a for a in v)


def is_zero_vector(v: Vector) -> bool:
    return all(a == 0 for a in v)


@dataclass(frozen=True)
class MatrixQ:
    """Dense rational matrix, stored flat in row-major order."""

    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.data) != self.rows * self.cols:
            raise ValueError(
                f"entry count {len(self.data)} != {self.rows}x{self.cols}"
            )

    # -- construction -------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "MatrixQ":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix literal")
        data = tuple(to_fraction(x) for r in rows for x in r)
        return cls(len(rows), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int | None = None) -> "MatrixQ":
        columns = [tuple(c) for c in columns]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        return cls.from_rows(
            [[c[i] for c in columns] for i in range(rows)], cols=len(columns)
        )

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "MatrixQ":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "MatrixQ":
        one, zero = Fraction(1), Fraction(0)
        return cls(n, n, tuple(one if i == j else zero for i in range(n) for j in range(n)))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "MatrixQ":
        n = len(entries)
        return cls.from_rows(
            [[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n
        )

    # -- access -------------------------------------------------------
    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.data[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.data[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.data[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "MatrixQ":
        return MatrixQ.from_rows(
            [self.row(i)[c0:c1] for i in range(r0, r1)], cols=c1 - c0
        )

    @property
    def T(self) -> "MatrixQ":
        return MatrixQ.from_rows([self.col(j) for j in range(self.cols)], cols=self.rows)

    # -- arithmetic ---------------------------------------------------
    def __matmul__(self, other):
        if isinstance(other, MatrixQ):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
            cols = [other.col(j) for j in range(other.cols)]
            out = []
            for i in range(self.rows):
                r = self.row(i)
                out.extend(sum((a * b for a, b in zip(r, c) if a), Fraction(0)) for c in cols)
            return MatrixQ(self.rows, other.cols, tuple(out))
        v = tuple(other)
        if len(v) != self.cols:
            raise ValueError(f"shape mismatch: {self.shape} @ vector[{len(v)}]")
        return tuple(
            sum((a * b for a, b in zip(self.row(i), v) if a), Fraction(0))
            for i in range(self.rows)
        )

    def __add__(self, other: "MatrixQ") -> "MatrixQ":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} + {other.shape}")
        return MatrixQ(self.rows, self.cols, tuple(a + b for a, b in zip(self.data, other.data)))

    def __sub__(self, other: "MatrixQ") -> "MatrixQ":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} - {other.shape}")
        return MatrixQ(self.rows, self.cols, tuple(a - b for a, b in zip(self.data, other.data)))

    def __neg__(self) -> "MatrixQ":
        return MatrixQ(self.rows, self.cols, tuple(-a for a in self.data))

    def scale(self, c) -> "MatrixQ":
        c = to_fraction(c)
        return MatrixQ(self.rows, self.cols, tuple(c * a for a in self.data))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.data)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == MatrixQ.identity(self.rows)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        m = [list(self.row(i)) for i in range(n)]
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if m[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det *= m[c][c]
            for r in range(c + 1, n):
                f = m[r][c] / m[c][c]
                if f:
                    for k in range(c, n):
                        m[r][k] -= f * m[c][k]
        return det

    def inverse(self) -> "MatrixQ":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = hstack(self, MatrixQ.identity(n))
        r, pivots = rref(aug)
        if pivots[:n] != list(range(n)) or len(pivots) < n:
            raise ZeroDivisionError("matrix is singular")
        return r.block(0, n, n, 2 * n)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"MatrixQ({self.rows}x{self.cols}: [{body}])"


def hstack(*ms: MatrixQ) -> MatrixQ:
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise ValueError("hstack row mismatch")
    cols = sum(m.cols for m in ms)
    return MatrixQ.from_rows(
        [sum((list(m.row(i)) for m in ms), []) for i in range(rows)], cols=cols
    )


def vstack(*ms: MatrixQ) -> MatrixQ:
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise ValueError("vstack column mismatch")
    return MatrixQ(sum(m.rows for m in ms), cols, sum((m.data for m in ms), ()))


def block_diag(*ms: MatrixQ) -> MatrixQ:
    rows = sum(m.rows for m in ms)
    cols = sum(m.cols for m in ms)
    out = [[Fraction(0)] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in ms:
        for i in range(m.rows):
            out[r0 + i][c0:c0 + m.cols] = m.row(i)
        r0 += m.rows
        c0 += m.cols
    return MatrixQ.from_rows(out, cols=cols)


def rref(m: MatrixQ) -> tuple:
    """Reduced row echelon form and the list of pivot columns."""
    a = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return MatrixQ.from_rows(a, cols=m.cols), pivots


def rank(m: MatrixQ) -> int:
    return len(rref(m)[1])


def nullspace(m: MatrixQ) -> list:
    """Basis of the right kernel, one vector per free column (in order)."""
    r, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -r[i, f]
        basis.append(tuple(v))
    return basis


def solve(m: MatrixQ, b: Sequence) -> Vector | None:
    """One solution of ``m x = b`` (free variables set to zero), or None."""
    b = vec(b)
    if len(b) != m.rows:
        raise ValueError("right-hand side length mismatch")
    aug = hstack(m, MatrixQ(m.rows, 1, b))
    r, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for i, p in enumerate(pivots):
        x[p] = r[i, m.cols]
    return tuple(x)


def span_basis(vectors: Sequence[Vector], dim: int) -> list:
    """Echelon basis (nonzero RREF rows) of the span of ``vectors``."""
    if not vectors:
        return []
    r, pivots = rref(MatrixQ.from_rows(vectors, cols=dim))
    return [r.row(i) for i in range(len(pivots))]


def in_span(v: Vector, basis: Sequence[Vector]) -> bool:
    if not basis:
        return is_zero_vector(v)
    return solve(MatrixQ.from_columns(basis, rows=len(v)), v) is not None


def same_span(us: Sequence[Vector], vs: Sequence[Vector], dim: int) -> bool:
    """Mutual containment of two spans, decided by rank comparisons."""
    ru = rank(MatrixQ.from_rows(us, cols=dim)) if us else 0
    rv = rank(MatrixQ.from_rows(vs, cols=dim)) if vs else 0
    both = list(us) + list(vs)
    rb = rank(MatrixQ.from_rows(both, cols=dim)) if both else 0
    return ru == rv == rb


class Quotient:
    """Coordinates on ``span(cycles) / span(boundaries)``.

    The complement of the boundary subspace is completed greedily from the
    echelon basis of the cycle space, so coordinates are reproducible.
    ``projector`` sends any vector of the cycle space to its quotient
    coordinates and kills the boundary subspace.
    """

    def __init__(self, dim: int, cycles: Sequence[Vector], boundaries: Sequence[Vector]):
        self.dim = dim
        self.boundary_basis = span_basis(boundaries, dim)
        cycle_basis = span_basis(cycles, dim)
        current = list(self.boundary_basis)
        complement = []
        for z in cycle_basis:
            if not in_span(z, current):
                complement.append(z)
                current.append(z)
        if len(current) != len(cycle_basis):
            raise ValueError("boundary subspace is not contained in the cycle space")
        self.cycle_basis = cycle_basis
        self.complement = complement
        self.projector = self._left_inverse(current)[len(self.boundary_basis):]

    def _left_inverse(self, basis: list) -> list:
        d = len(basis)
        if d == 0:
            return []
        w = MatrixQ.from_columns(basis, rows=self.dim)
        _, rows = rref(w.T)
        ws = MatrixQ.from_rows([w.row(i) for i in rows], cols=d)
        inv = ws.inverse()
        out = []
        for k in range(d):
            r = [Fraction(0)] * self.dim
            for idx, i in enumerate(rows):
                r[i] = inv[k, idx]
            out.append(tuple(r))
        return out

    @property
    def rank(self) -> int:
        return len(self.complement)

    def projector_matrix(self) -> MatrixQ:
        return MatrixQ.from_rows(self.projector, cols=self.dim)

    def coordinates(self, z: Sequence) -> Vector:
        z = vec(z)
        return tuple(sum((a * b for a, b in zip(p, z) if a), Fraction(0)) for p in self.projector)

    def lift(self, coords: Sequence) -> Vector:
        out = zero_vector(self.dim)
        for c, h in zip(vec(coords), self.complement):
            out = vec_add(out, vec_scale(c, h))
        return out

    def contains_cycle(self, z: Sequence) -> bool:
        return in_span(vec(z), self.cycle_basis)
