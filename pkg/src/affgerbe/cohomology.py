"""Low-degree cohomology of finitely presented groups with rational coefficients.

Cocycles follow the left convention ``c(uv) = c(u) + rho(u) c(v)``; a
1-cochain is stored as one vector per generator, and stacked
generator-major when it is viewed as a single vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exceptions import (
    InvalidModule,
    InvalidRepresentation,
    NotIntertwining,
    UnsupportedHolonomy,
)
from .linalg import (
    MatrixQ,
    Quotient,
    Vector,
    is_zero_vector,
    nullspace,
    vec,
    vec_add,
    vec_sub,
    zero_vector,
)
from .presentation import (
    AffineRepresentation,
    GroupHom,
    Presentation,
    Word,
    cyclic_reduce,
    commutator,
    fox_jacobian,
    verify_representation,
)


@dataclass(frozen=True)
class CoefficientModule:
    presentation: Presentation
    dim: int
    action: tuple

    def __post_init__(self):
        action = tuple(self.action)
        if len(action) != self.presentation.generator_count:
            raise ValueError("need one action matrix per generator")
        for a in action:
            if a.shape != (self.dim, self.dim):
                raise ValueError(f"action matrix of shape {a.shape}, expected {self.dim}x{self.dim}")
            if a.det() == 0:
                raise InvalidModule("action matrices must be invertible")
        object.__setattr__(self, "action", action)
        object.__setattr__(self, "_inverses", tuple(a.inverse() for a in action))

    @classmethod
    def trivial(cls, p: Presentation, dim: int) -> "CoefficientModule":
        return cls(p, dim, tuple(MatrixQ.identity(dim) for _ in range(p.generator_count)))

    @classmethod
    def linear_part(cls, rep: AffineRepresentation) -> "CoefficientModule":
        return cls(rep.presentation, rep.dim, rep.linear_parts())

    def act(self, w: Word) -> MatrixQ:
        out = MatrixQ.identity(self.dim)
        for g, s in w.letters:
            out = out @ (self.action[g] if s > 0 else self._inverses[g])
        return out

    def relator_failures(self) -> list:
        return [i for i, r in enumerate(self.presentation.relators)
                if not self.act(r).is_identity()]

    def is_representation(self) -> bool:
        return not self.relator_failures()

    def require_representation(self) -> None:
        bad = self.relator_failures()
        if bad:
            raise InvalidModule(f"relators {bad} do not act trivially")

    @property
    def cochain_dim(self) -> int:
        return self.presentation.generator_count * self.dim


@dataclass(frozen=True)
class Cocycle1:
    module: CoefficientModule
    values: tuple

    def __post_init__(self):
        values = tuple(vec(v) for v in self.values)
        if len(values) != self.module.presentation.generator_count:
            raise ValueError("need one value per generator")
        if any(len(v) != self.module.dim for v in values):
            raise ValueError("cocycle value of the wrong length")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_stacked(cls, module: CoefficientModule, z: Sequence) -> "Cocycle1":
        z = vec(z)
        l = module.dim
        return cls(module, tuple(z[i * l:(i + 1) * l] for i in range(module.presentation.generator_count)))

    def stacked(self) -> Vector:
        return sum(self.values, ())

    def is_cocycle(self) -> bool:
        return is_zero_vector(fox_jacobian(self.module.presentation, self.module) @ self.stacked())


def cocycle_extend(c: Cocycle1, w: Word) -> Vector:
    """Value of the crossed homomorphism on an arbitrary word."""
    m = c.module
    m.presentation.check_word(w)
    out = zero_vector(m.dim)
    prefix = MatrixQ.identity(m.dim)
    for g, s in w.letters:
        if s > 0:
            out = vec_add(out, prefix @ c.values[g])
            prefix = prefix @ m.action[g]
        else:
            prefix = prefix @ m._inverses[g]
            out = vec_sub(out, prefix @ c.values[g])
    return out


def h0(m: CoefficientModule) -> list:
    """Basis of the fixed vectors of the action."""
    if m.presentation.generator_count == 0:
        return [tuple(Fraction(int(i == j)) for j in range(m.dim)) for i in range(m.dim)]
    rows = []
    ident = MatrixQ.identity(m.dim)
    for a in m.action:
        rows.extend((a - ident).to_rows())
    return nullspace(MatrixQ.from_rows(rows, cols=m.dim))


def coboundary_cocycle(m: CoefficientModule, v: Sequence) -> Cocycle1:
    """The principal crossed homomorphism ``g -> (rho(g) - I) v``."""
    v = vec(v)
    return Cocycle1(m, tuple(vec_sub(a @ v, v) for a in m.action))


class CohomologySpaces:
    """Z^1, B^1 and quotient coordinates for one coefficient module."""

    def __init__(self, module: CoefficientModule):
        module.require_representation()
        self.module = module
        self.fox = fox_jacobian(module.presentation, module)
        n = module.cochain_dim
        z1 = nullspace(self.fox)
        b1 = []
        for j in range(module.dim):
            e = tuple(Fraction(int(i == j)) for i in range(module.dim))
            b1.append(coboundary_cocycle(module, e).stacked())
        self.quotient = Quotient(n, z1, b1)

    @property
    def z1_basis(self) -> list:
        return [Cocycle1.from_stacked(self.module, z) for z in self.quotient.cycle_basis]

    @property
    def b1_basis(self) -> list:
        return [Cocycle1.from_stacked(self.module, b) for b in self.quotient.boundary_basis]

    @property
    def z1_dim(self) -> int:
        return len(self.quotient.cycle_basis)

    @property
    def b1_dim(self) -> int:
        return len(self.quotient.boundary_basis)

    @property
    def h1_dim(self) -> int:
        return self.quotient.rank

    @property
    def h1_projector(self) -> MatrixQ:
        return self.quotient.projector_matrix()

    def is_cocycle(self, c: Cocycle1) -> bool:
        return is_zero_vector(self.fox @ c.stacked())

    def coordinates(self, c: Cocycle1) -> Vector:
        if not self.is_cocycle(c):
            raise ValueError("values do not define a crossed homomorphism")
        return self.quotient.coordinates(c.stacked())

    def representative(self, coords: Sequence) -> Cocycle1:
        return Cocycle1.from_stacked(self.module, self.quotient.lift(coords))

    def classify(self, c: Cocycle1) -> "RadianceClass":
        return RadianceClass(self, self.coordinates(c))


def h1(m: CoefficientModule) -> CohomologySpaces:
    return CohomologySpaces(m)


@dataclass(frozen=True)
class RadianceClass:
    spaces: CohomologySpaces
    coordinates: tuple

    def is_zero(self) -> bool:
        return is_zero_vector(self.coordinates)

    def representative(self) -> Cocycle1:
        return self.spaces.representative(self.coordinates)


def radiance_class(rep: AffineRepresentation, spaces: CohomologySpaces | None = None) -> RadianceClass:
    report = verify_representation(rep)
    if not report.passed:
        raise InvalidRepresentation(f"relators fail: {[i['index'] for i in report.issues]}")
    if spaces is None:
        spaces = h1(CoefficientModule.linear_part(rep))
    c = Cocycle1(spaces.module, tuple(f.translation for f in rep.images))
    return spaces.classify(c)


def _check_intertwining(m: CoefficientModule, auto: GroupHom, Bg: MatrixQ) -> None:
    if auto.source.generator_count != m.presentation.generator_count or \
            auto.target.generator_count != m.presentation.generator_count:
        raise ValueError("automorphism does not act on the module's group")
    Binv = Bg.inverse()
    for i in range(m.presentation.generator_count):
        if m.act(auto.images[i]) != Bg @ m.action[i] @ Binv:
            raise NotIntertwining(i)


def gauge_cocycle(auto: GroupHom, Bg: MatrixQ, c: Cocycle1) -> Cocycle1:
    """``gamma -> Bg c(g^-1(gamma))`` on generators; needs the inverse images."""
    m = c.module
    _check_intertwining(m, auto, Bg)
    if auto.inverse_images is None:
        raise ValueError("gauge_cocycle needs the automorphism's inverse images")
    return Cocycle1(m, tuple(Bg @ cocycle_extend(c, w) for w in auto.inverse_images))


def gauge_matrix(spaces: CohomologySpaces, auto: GroupHom, Bg: MatrixQ) -> MatrixQ:
    """Matrix of the gauge action on H^1 coordinates.

    With inverse images the defining formula is applied directly.  Without
    them the pull-back ``c -> Bg^-1 c(g(.))`` is computed and inverted,
    which only needs the forward images.
    """
    m = spaces.module
    _check_intertwining(m, auto, Bg)
    h = spaces.h1_dim
    columns = []
    if auto.inverse_images is not None:
        for j in range(h):
            c = spaces.representative([int(i == j) for i in range(h)])
            new = Cocycle1(m, tuple(Bg @ cocycle_extend(c, w) for w in auto.inverse_images))
            columns.append(spaces.coordinates(new))
        return MatrixQ.from_columns(columns, rows=h) if h else MatrixQ.zeros(0, 0)
    Binv = Bg.inverse()
    for j in range(h):
        c = spaces.representative([int(i == j) for i in range(h)])
        pulled = Cocycle1(m, tuple(Binv @ cocycle_extend(c, w) for w in auto.images))
        columns.append(spaces.coordinates(pulled))
    if not h:
        return MatrixQ.zeros(0, 0)
    pull = MatrixQ.from_columns(columns, rows=h)
    try:
        return pull.inverse()
    except ZeroDivisionError:
        raise ValueError("homomorphism does not induce an automorphism of H^1") from None


def gauge_act(auto: GroupHom, Bg: MatrixQ, cls: RadianceClass) -> RadianceClass:
    M = gauge_matrix(cls.spaces, auto, Bg)
    return RadianceClass(cls.spaces, M @ cls.coordinates)


@dataclass(frozen=True)
class GaugeVerdict:
    equivalent: bool
    candidate: int | None = None

    @property
    def status(self) -> str:
        return "EQUIVALENT" if self.equivalent else "NotFoundAmongCandidates"


def gauge_equivalent(cls1: RadianceClass, cls2: RadianceClass, candidates: Sequence) -> GaugeVerdict:
    if cls1.spaces.module != cls2.spaces.module:
        raise ValueError("classes live over different modules")
    for idx, (auto, Bg) in enumerate(candidates):
        if gauge_act(auto, Bg, cls1).coordinates == tuple(cls2.coordinates):
            return GaugeVerdict(True, idx)
    return GaugeVerdict(False, None)


def _is_free_abelian_presentation(p: Presentation) -> bool:
    k = p.generator_count
    if any(any(r.exponent_sums(k)) for r in p.relators):
        return False
    present = set()
    for r in p.relators:
        r = cyclic_reduce(r)
        for cand in (r, r.inverse()):
            letters = cand.letters
            for s in range(len(letters)):
                present.add(letters[s:] + letters[:s])
    for i in range(k):
        for j in range(i + 1, k):
            if commutator(Word.gen(i), Word.gen(j)).letters not in present:
                return False
    return True


@dataclass(frozen=True)
class DeterminantVerdict:
    det: Fraction

    @property
    def verdict(self) -> str:
        return "NONZERO" if self.det != 0 else "ZERO"


def completeness_det_test(rep: AffineRepresentation) -> DeterminantVerdict:
    """Top exterior power of the radiance class, trivial-holonomy lattice case.

    With identity linear holonomy on a rank-l free abelian group acting on
    l-space, the class is the matrix of generator translations and its top
    exterior power is that matrix's determinant.
    """
    if not all(a.is_identity() for a in rep.linear_parts()):
        raise UnsupportedHolonomy("linear holonomy is not trivial")
    p = rep.presentation
    if p.generator_count != rep.dim:
        raise UnsupportedHolonomy(f"rank {p.generator_count} differs from dimension {rep.dim}")
    if not _is_free_abelian_presentation(p):
        raise UnsupportedHolonomy("presentation is not recognisably free abelian")
    m = MatrixQ.from_columns([f.translation for f in rep.images], rows=rep.dim)
    return DeterminantVerdict(m.det())
