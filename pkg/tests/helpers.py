"""Random data generators and independent oracles shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

import sympy

from affgerbe.affine import AffineMap
from affgerbe.cech import Cochain, LocalSystem, Nerve, cohomology
from affgerbe.linalg import MatrixQ
from affgerbe.presentation import Presentation, Word


def rand_q(rng: random.Random, bound: int = 5) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def rand_matrix(rng, rows, cols, bound=5) -> MatrixQ:
    return MatrixQ.from_rows([[rand_q(rng, bound) for _ in range(cols)] for _ in range(rows)], cols=cols)


def rand_invertible(rng, n, bound=5) -> MatrixQ:
    while True:
        m = rand_matrix(rng, n, n, bound)
        if m.det() != 0:
            return m


def rand_unimodular(rng, n, steps=6) -> MatrixQ:
    m = MatrixQ.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        rows = m.to_rows()
        if i != j:
            c = rng.choice([-2, -1, 1, 2])
            rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
        if rng.random() < 0.3:
            rows[i] = [-a for a in rows[i]]
        m = MatrixQ.from_rows(rows, cols=n)
    return m


def rand_word(rng, k, max_len=6, min_len=1) -> Word:
    return Word(tuple((rng.randrange(k), rng.choice((1, -1)))
                      for _ in range(rng.randint(min_len, max_len))))


def rand_presentation(rng, max_gens=3, max_rels=3, max_len=6) -> Presentation:
    k = rng.randint(1, max_gens)
    rels = []
    for _ in range(rng.randint(1, max_rels)):
        for _ in range(20):
            w = rand_word(rng, k, max_len)
            try:
                Presentation(k, (w,))
            except ValueError:
                continue
            rels.append(w)
            break
    return Presentation(k, tuple(rels))


# -- independent oracle for crossed homomorphisms ----------------------------

def _sym(m: MatrixQ) -> sympy.Matrix:
    return sympy.Matrix(m.rows, m.cols, [sympy.Rational(x.numerator, x.denominator) for x in m.data])


def oracle_z1(p: Presentation, action, dim: int) -> list:
    """Crossed homomorphisms vanishing on every relator, by direct expansion.

    Each unknown (generator i, coordinate a) gets the affine maps
    ``v -> rho(g) v + c(g)`` with ``c`` the corresponding unit vector; the
    translation part of each relator image is linear in ``c``, which gives
    the constraint matrix column by column.  The kernel is taken by sympy.
    """
    k = p.generator_count
    mats = [_sym(a) for a in action]
    invs = [m.inv() for m in mats]
    n = k * dim
    columns = []
    for col in range(n):
        gi, a = divmod(col, dim)
        c = [sympy.zeros(dim, 1) for _ in range(k)]
        c[gi][a] = 1
        entries = []
        for r in p.relators:
            lin = sympy.eye(dim)
            trans = sympy.zeros(dim, 1)
            for g, s in r.letters:
                if s > 0:
                    step_lin, step_t = mats[g], c[g]
                else:
                    step_lin, step_t = invs[g], -invs[g] * c[g]
                trans = trans + lin * step_t
                lin = lin * step_lin
            entries.extend(list(trans))
        columns.append(entries)
    if not p.relators:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    constraint = sympy.Matrix(columns).T
    return [tuple(Fraction(int(x.p), int(x.q)) for x in v) for v in constraint.nullspace()]


def sympy_same_span(us, vs, n) -> bool:
    def rk(rows):
        return sympy.Matrix(rows).rank() if rows else 0
    us = [[sympy.Rational(x.numerator, x.denominator) for x in u] for u in us]
    vs = [[sympy.Rational(x.numerator, x.denominator) for x in v] for v in vs]
    return rk(us) == rk(vs) == rk(us + vs)


# -- nerves and flat systems -------------------------------------------------

def rand_nerve(rng, max_vertices=6, max_simplex=5) -> Nerve:
    n = rng.randint(2, max_vertices)
    facets = []
    for _ in range(rng.randint(1, 6)):
        size = rng.randint(1, min(max_simplex, n))
        facets.append(tuple(sorted(rng.sample(range(n), size))))
    return Nerve.from_facets(n, facets)


def _triangle_edges(nerve: Nerve) -> set:
    out = set()
    for t in nerve.of_degree(2):
        out.update(combinations(t, 2))
    return out


def rand_flat_system(rng, nerve: Nerve, dim: int, frames=None, holonomy=None) -> LocalSystem:
    """``T(i, j) = phi_j H_ij phi_i^-1`` with ``H = I`` on edges of triangles."""
    frames = frames or (lambda: rand_invertible(rng, dim, 3))
    holonomy = holonomy or (lambda: rand_invertible(rng, dim, 3))
    phi = [frames() for _ in range(nerve.vertex_count)]
    tri = _triangle_edges(nerve)
    trans = {}
    for i, j in nerve.edges():
        h = MatrixQ.identity(dim) if (i, j) in tri else holonomy()
        trans[(i, j)] = phi[j] @ h @ phi[i].inverse()
    return LocalSystem(nerve, dim, trans)


def rand_upper_block(rng, top: int, bottom: int) -> MatrixQ:
    a = rand_invertible(rng, top, 3)
    b = rand_invertible(rng, bottom, 3)
    k = rand_matrix(rng, top, bottom, 3)
    rows = [list(a.row(i)) + list(k.row(i)) for i in range(top)]
    rows += [[0] * top + list(b.row(i)) for i in range(bottom)]
    return MatrixQ.from_rows(rows, cols=top + bottom)


def rand_flat_carrier(rng, nerve: Nerve, top: int, bottom: int) -> LocalSystem:
    make = lambda: rand_upper_block(rng, top, bottom)  # noqa: E731
    return rand_flat_system(rng, nerve, top + bottom, frames=make, holonomy=make)


def rand_cochain(rng, system: LocalSystem, k: int) -> Cochain:
    return Cochain(system, k, {s: [rand_q(rng) for _ in range(system.dim)]
                               for s in system.nerve.of_degree(k)})


def rand_cocycle(rng, system: LocalSystem, k: int) -> Cochain:
    basis = cohomology(system, k).cocycle_basis
    out = Cochain.zero(system, k)
    for z in basis:
        out = out + z.scale(rand_q(rng))
    return out


def rand_translation_gluing(rng, nerve: Nerve, dim: int) -> dict:
    return {e: AffineMap.translation_by([rand_q(rng) for _ in range(dim)]) for e in nerve.edges()}


def _block_upper(a: MatrixQ, k: MatrixQ, b: MatrixQ) -> MatrixQ:
    rows = [list(a.row(i)) + list(k.row(i)) for i in range(a.rows)]
    rows += [[0] * a.cols + list(b.row(i)) for i in range(b.rows)]
    return MatrixQ.from_rows(rows, cols=a.cols + b.cols)


def rand_tower(rng, nerve: Nerve, dims) -> tuple:
    """Level systems and flat carriers whose blocks match them exactly.

    Every system comes from vertex frames and edge holonomies that are the
    identity on edges of triangles; each carrier uses block upper triangular
    frames over the two adjacent levels, so its diagonal blocks reproduce
    the level systems.
    """
    tri = _triangle_edges(nerve)
    edges = nerve.edges()
    frames, holos, systems = [], [], []
    for d in dims:
        phi = [rand_invertible(rng, d, 3) for _ in range(nerve.vertex_count)]
        hol = {e: MatrixQ.identity(d) if e in tri else rand_invertible(rng, d, 3) for e in edges}
        frames.append(phi)
        holos.append(hol)
        systems.append(LocalSystem(nerve, d, {(i, j): phi[j] @ hol[(i, j)] @ phi[i].inverse()
                                              for i, j in edges}))
    carriers = []
    for r in range(1, len(dims)):
        up, low = dims[r], dims[r - 1]
        big = [_block_upper(frames[r][i], rand_matrix(rng, up, low, 3), frames[r - 1][i])
               for i in range(nerve.vertex_count)]
        trans = {}
        for i, j in edges:
            k = MatrixQ.zeros(up, low) if (i, j) in tri else rand_matrix(rng, up, low, 3)
            h = _block_upper(holos[r][(i, j)], k, holos[r - 1][(i, j)])
            trans[(i, j)] = big[j] @ h @ big[i].inverse()
        carriers.append(LocalSystem(nerve, up + low, trans))
    return systems, carriers
