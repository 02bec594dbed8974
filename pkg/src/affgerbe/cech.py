"""Cech cochains on abstract nerves with flat rational coefficients.

A local system assigns to each ordered edge ``(i, j)`` an invertible
matrix ``T(i, j)`` carrying the fiber over ``i`` to the fiber over ``j``;
flatness is ``T(i, k) = T(j, k) T(i, j)`` on every triangle.  Cochain values
live in the fiber of the leading vertex, so the coboundary transports the
face that omits the leading vertex back along ``T(i1, i0)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .affine import AffineMap, compose, invert
from .exceptions import NotACocycle, NotTranslational
from .linalg import (
    MatrixQ,
    Quotient,
    Vector,
    is_zero_vector,
    nullspace,
    solve,
    vec,
    vec_add,
    vec_scale,
    vec_sub,
    zero_vector,
)
from .report import Report


def _simplex(s) -> tuple:
    s = tuple(int(v) for v in s)
    if not s or any(a >= b for a, b in zip(s, s[1:])):
        raise ValueError(f"simplex {s} is not a strictly increasing vertex tuple")
    return s


@dataclass(frozen=True)
class Nerve:
    vertex_count: int
    simplices: frozenset = frozenset()

    def __post_init__(self):
        simplices = {_simplex(s) for s in self.simplices}
        simplices.update((v,) for v in range(self.vertex_count))
        for s in simplices:
            if s[-1] >= self.vertex_count or s[0] < 0:
                raise ValueError(f"simplex {s} uses a vertex outside range({self.vertex_count})")
        object.__setattr__(self, "simplices", frozenset(simplices))
        object.__setattr__(self, "_by_degree", {})

    @classmethod
    def from_facets(cls, vertex_count: int, facets: Sequence) -> "Nerve":
        """The smallest face-closed nerve containing ``facets``."""
        out = set()
        for f in facets:
            f = _simplex(sorted(f))
            for r in range(1, len(f) + 1):
                out.update(combinations(f, r))
        return cls(vertex_count, frozenset(out))

    @property
    def dimension(self) -> int:
        return max((len(s) - 1 for s in self.simplices), default=-1)

    def of_degree(self, k: int) -> list:
        cache = self._by_degree
        if k not in cache:
            cache[k] = sorted(s for s in self.simplices if len(s) == k + 1)
        return cache[k]

    def edges(self) -> list:
        return self.of_degree(1)

    def missing_faces(self) -> list:
        out = []
        for s in sorted(self.simplices, key=lambda t: (len(t), t)):
            if len(s) > 1:
                for j in range(len(s)):
                    face = s[:j] + s[j + 1:]
                    if face not in self.simplices:
                        out.append((s, face))
        return out


@dataclass(frozen=True)
class LocalSystem:
    """Flat coefficients; ``transitions`` may list each edge in either order."""

    nerve: Nerve
    dim: int
    transitions: Mapping = field(default_factory=dict, hash=False)

    def __post_init__(self):
        given = {}
        for (i, j), m in dict(self.transitions).items():
            i, j = int(i), int(j)
            if m.shape != (self.dim, self.dim):
                raise ValueError(f"transition {(i, j)} has shape {m.shape}, expected {self.dim}x{self.dim}")
            given[(i, j)] = m
        full = {}
        for i, j in self.nerve.edges():
            if (i, j) in given:
                full[(i, j)] = given[(i, j)]
                full[(j, i)] = given[(j, i)] if (j, i) in given else given[(i, j)].inverse()
            elif (j, i) in given:
                full[(j, i)] = given[(j, i)]
                full[(i, j)] = given[(j, i)].inverse()
            else:
                raise ValueError(f"no transition for edge {(i, j)}")
        extra = set(given) - set(full)
        if extra:
            raise ValueError(f"transitions on pairs that are not edges: {sorted(extra)}")
        object.__setattr__(self, "transitions", full)
        object.__setattr__(self, "_given", given)

    @classmethod
    def constant(cls, nerve: Nerve, dim: int = 1) -> "LocalSystem":
        ident = MatrixQ.identity(dim)
        return cls(nerve, dim, {e: ident for e in nerve.edges()})

    def transition(self, i: int, j: int) -> MatrixQ:
        if i == j:
            return MatrixQ.identity(self.dim)
        return self.transitions[(i, j)]

    def __eq__(self, other) -> bool:
        return (isinstance(other, LocalSystem) and self.nerve == other.nerve
                and self.dim == other.dim and self.transitions == other.transitions)

    def __hash__(self):
        return hash((self.nerve, self.dim))


def validate_system(s: LocalSystem) -> Report:
    report = Report("cech-validate")
    for simplex, face in s.nerve.missing_faces():
        report.fail("missing-face", simplex=simplex, face=face)
    for (i, j), m in s._given.items():
        back = s._given.get((j, i))
        if i < j and back is not None and not (m @ back).is_identity():
            report.fail("not-inverse", edge=(i, j))
    for i, j, k in s.nerve.of_degree(2):
        if any(e not in s.transitions for e in ((i, j), (j, k), (i, k))):
            continue
        if s.transition(i, k) != s.transition(j, k) @ s.transition(i, j):
            report.fail("not-flat", simplex=(i, j, k))
    return report


@dataclass(frozen=True)
class Cochain:
    """Values on the k-simplices; missing simplices default to zero."""

    system: LocalSystem
    degree: int
    values: Mapping = field(default_factory=dict, hash=False)

    def __post_init__(self):
        simplices = self.system.nerve.of_degree(self.degree)
        known = set(simplices)
        given = {}
        for s, v in dict(self.values).items():
            s = _simplex(s)
            if s not in known:
                raise ValueError(f"{s} is not a {self.degree}-simplex of the nerve")
            v = vec(v)
            if len(v) != self.system.dim:
                raise ValueError(f"value on {s} has length {len(v)}, expected {self.system.dim}")
            given[s] = v
        zero = zero_vector(self.system.dim)
        object.__setattr__(self, "values", {s: given.get(s, zero) for s in simplices})

    @classmethod
    def zero(cls, system: LocalSystem, degree: int) -> "Cochain":
        return cls(system, degree, {})

    @classmethod
    def from_vector(cls, system: LocalSystem, degree: int, x: Sequence) -> "Cochain":
        x = vec(x)
        v = system.dim
        simplices = system.nerve.of_degree(degree)
        if len(x) != v * len(simplices):
            raise ValueError("stacked vector has the wrong length")
        return cls(system, degree, {s: x[n * v:(n + 1) * v] for n, s in enumerate(simplices)})

    def stacked(self) -> Vector:
        return sum((self.values[s] for s in self.system.nerve.of_degree(self.degree)), ())

    def is_zero(self) -> bool:
        return all(is_zero_vector(v) for v in self.values.values())

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.system, self.degree,
                       {s: vec_add(v, other.values[s]) for s, v in self.values.items()})

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._check(other)
        return Cochain(self.system, self.degree,
                       {s: vec_sub(v, other.values[s]) for s, v in self.values.items()})

    def __neg__(self) -> "Cochain":
        return self.scale(-1)

    def scale(self, c) -> "Cochain":
        return Cochain(self.system, self.degree, {s: vec_scale(c, v) for s, v in self.values.items()})

    def _check(self, other: "Cochain") -> None:
        if self.degree != other.degree or self.system != other.system:
            raise ValueError("cochains live in different groups")


def _coboundary_value(system: LocalSystem, values: Mapping, simplex: tuple) -> Vector:
    i0, i1 = simplex[0], simplex[1]
    out = system.transition(i1, i0) @ values[simplex[1:]]
    for j in range(1, len(simplex)):
        face = simplex[:j] + simplex[j + 1:]
        out = vec_add(out, values[face]) if j % 2 == 0 else vec_sub(out, values[face])
    return out


def coboundary(c: Cochain) -> Cochain:
    s = c.system
    return Cochain(s, c.degree + 1, {
        simplex: _coboundary_value(s, c.values, simplex)
        for simplex in s.nerve.of_degree(c.degree + 1)})


def coboundary_matrix(s: LocalSystem, k: int) -> MatrixQ:
    """Matrix of the degree-k coboundary on stacked cochain vectors."""
    v = s.dim
    src = s.nerve.of_degree(k)
    dst = s.nerve.of_degree(k + 1)
    col = {simplex: n for n, simplex in enumerate(src)}
    rows = [[Fraction(0)] * (v * len(src)) for _ in range(v * len(dst))]

    def put(r, face, block):
        c = col[face] * v
        for a in range(v):
            for b in range(v):
                if block[a, b]:
                    rows[r * v + a][c + b] += block[a, b]

    ident = MatrixQ.identity(v)
    for r, simplex in enumerate(dst):
        put(r, simplex[1:], s.transition(simplex[1], simplex[0]))
        for j in range(1, len(simplex)):
            put(r, simplex[:j] + simplex[j + 1:], ident if j % 2 == 0 else -ident)
    return MatrixQ.from_rows(rows, cols=v * len(src))


class CechCohomology:
    """Cocycles, coboundaries and quotient coordinates in one degree."""

    def __init__(self, system: LocalSystem, k: int):
        if k < 0:
            raise ValueError("degree must be nonnegative")
        self.system = system
        self.degree = k
        n = system.dim * len(system.nerve.of_degree(k))
        self.delta = coboundary_matrix(system, k)
        cycles = nullspace(self.delta) if n else []
        if k > 0 and system.nerve.of_degree(k - 1):
            d_prev = coboundary_matrix(system, k - 1)
            boundaries = [d_prev.col(j) for j in range(d_prev.cols)]
        else:
            boundaries = []
        self.quotient = Quotient(n, cycles, boundaries)

    @property
    def dim(self) -> int:
        return self.quotient.rank

    @property
    def cocycle_basis(self) -> list:
        return [Cochain.from_vector(self.system, self.degree, z) for z in self.quotient.cycle_basis]

    @property
    def coboundary_basis(self) -> list:
        return [Cochain.from_vector(self.system, self.degree, b) for b in self.quotient.boundary_basis]

    @property
    def complement_basis(self) -> list:
        return [Cochain.from_vector(self.system, self.degree, h) for h in self.quotient.complement]

    def coordinates(self, z: Cochain) -> Vector:
        if not coboundary(z).is_zero():
            raise NotACocycle(f"degree-{z.degree} cochain is not a cocycle")
        return self.quotient.coordinates(z.stacked())

    def representative(self, coords: Sequence) -> Cochain:
        return Cochain.from_vector(self.system, self.degree, self.quotient.lift(coords))


def cohomology(s: LocalSystem, k: int) -> CechCohomology:
    return CechCohomology(s, k)


@dataclass(frozen=True)
class NoSolution:
    """The cocycle is not a coboundary; ``class_coordinates`` is nonzero."""

    class_coordinates: tuple


def solve_coboundary(s: LocalSystem, z: Cochain):
    """A cochain ``a`` with ``coboundary(a) == z``, or ``NoSolution``."""
    if z.system != s:
        raise ValueError("cochain does not belong to this local system")
    if z.degree < 1:
        raise ValueError("coboundary equations need degree at least 1")
    if not coboundary(z).is_zero():
        raise NotACocycle(f"degree-{z.degree} cochain is not a cocycle")
    d = coboundary_matrix(s, z.degree - 1)
    x = solve(d, z.stacked())
    if x is not None:
        return Cochain.from_vector(s, z.degree - 1, x)
    return NoSolution(cohomology(s, z.degree).coordinates(z))


def _edge_maps(nerve: Nerve, u: Mapping) -> dict:
    maps = {}
    for (i, j), f in dict(u).items():
        maps[(int(i), int(j))] = f
    out = {}
    for i, j in nerve.edges():
        if (i, j) in maps:
            out[(i, j)] = maps[(i, j)]
            out[(j, i)] = maps[(j, i)] if (j, i) in maps else invert(maps[(i, j)])
        elif (j, i) in maps:
            out[(j, i)] = maps[(j, i)]
            out[(i, j)] = invert(maps[(j, i)])
        else:
            raise ValueError(f"no gluing map for edge {(i, j)}")
    dims = {f.dim for f in out.values()}
    if len(dims) > 1:
        raise ValueError("gluing maps have different dimensions")
    return out


def gluing_is_symmetric(nerve: Nerve, u: Mapping) -> bool:
    maps = {(int(i), int(j)): f for (i, j), f in dict(u).items()}
    return all(compose(f, maps[(j, i)]).is_identity()
               for (i, j), f in maps.items() if (j, i) in maps)


def conjugation_system(nerve: Nerve, u: Mapping, dim: int | None = None) -> LocalSystem:
    """Coefficients carried by the gluing: ``T(a, b)`` is the linear part of ``u(b, a)``.

    ``dim`` is only needed when the nerve has no edges.
    """
    maps = _edge_maps(nerve, u)
    if maps:
        dim = next(iter(maps.values())).dim
    elif dim is None:
        raise ValueError("gluing on a nerve without edges needs an explicit dimension")
    return LocalSystem(nerve, dim, {(a, b): maps[(b, a)].linear for a, b in nerve.edges()})


def translation_cochain(system: LocalSystem, u: Mapping) -> Cochain:
    """The 1-cochain of gluing translations."""
    maps = _edge_maps(system.nerve, u)
    return Cochain(system, 1, {e: maps[e].translation for e in system.nerve.edges()})


@dataclass(frozen=True)
class DefectReport:
    raw: dict = field(hash=False)
    cochain: Cochain = field(hash=False)


def nonabelian_defect(nerve: Nerve, u: Mapping, translation_dim: int | None = None,
                      system: LocalSystem | None = None) -> DefectReport:
    """Failure of the gluing maps to compose on each triangle.

    ``raw`` holds ``h_ijk = u_ik^-1 u_ij u_jk`` for each 2-simplex.  When all
    of them are translations the defect cochain is returned in the frame of
    the leading vertex, i.e. the translation of ``u_ij u_jk u_ik^-1``; it is
    a 2-cocycle of the conjugation system of the gluing.
    """
    maps = _edge_maps(nerve, u)
    if translation_dim is not None and maps and next(iter(maps.values())).dim != translation_dim:
        raise ValueError("gluing dimension differs from the translation dimension")
    raw = {}
    bad = []
    values = {}
    for i, j, k in nerve.of_degree(2):
        h = compose(invert(maps[(i, k)]), compose(maps[(i, j)], maps[(j, k)]))
        raw[(i, j, k)] = h
        if not h.is_translation():
            bad.append((i, j, k))
            continue
        lead = compose(compose(maps[(i, j)], maps[(j, k)]), maps[(k, i)])
        values[(i, j, k)] = lead.translation
    if bad:
        raise NotTranslational(bad)
    dim = translation_dim if system is None else system.dim
    if system is None:
        system = conjugation_system(nerve, maps, dim)
    elif system != conjugation_system(nerve, maps, dim):
        raise ValueError("coefficient system does not match the gluing's linear parts")
    return DefectReport(raw, Cochain(system, 2, values))


def correct_gluing(u: Mapping, w: Cochain) -> dict:
    """``u'(i, j) = translate(w_ij) o u(i, j)`` on each increasing edge."""
    maps = _edge_maps(w.system.nerve, u)
    out = {}
    for e in w.system.nerve.edges():
        f = compose(AffineMap.translation_by(w.values[e]), maps[e])
        out[e] = f
        out[(e[1], e[0])] = invert(f)
    return out


def strict_cocycle_failures(nerve: Nerve, u: Mapping) -> list:
    """Triangles where ``u_ik != u_ij o u_jk``."""
    maps = _edge_maps(nerve, u)
    return [(i, j, k) for i, j, k in nerve.of_degree(2)
            if compose(maps[(i, j)], maps[(j, k)]) != maps[(i, k)]]
