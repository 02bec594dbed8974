"""Holonomy data of affine bundles: validation, radiance map, a.l.t. test.

The ambient representation is written in base-first coordinates.  Fiber
subgroups, conjugation witnesses and fiber relators are explicit input;
nothing here enumerates cosets or rewrites words in a group.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .affine import BlockAffineMap, BlockSplit, block_decompose
from .cohomology import (
    Cocycle1,
    CoefficientModule,
    CohomologySpaces,
    gauge_matrix,
    h0,
    h1,
)
from .exceptions import InvalidFibration, NotBlockTriangular
from .linalg import MatrixQ, Vector, in_span, is_zero_vector, vec, vec_add
from .presentation import (
    AffineRepresentation,
    GroupHom,
    Presentation,
    Word,
    evaluate_word,
    free_reduce,
    substitute,
    verify_representation,
)
from .report import Report


@dataclass(frozen=True)
class FibrationData:
    ambient: AffineRepresentation
    split: BlockSplit
    fiber_generators: tuple
    witnesses: dict = field(default_factory=dict, hash=False, compare=False)
    fiber_relators: tuple | None = None
    quotient: GroupHom | None = None
    permutation: tuple | None = None

    def __post_init__(self):
        fg = tuple(int(g) for g in self.fiber_generators)
        k = self.ambient.presentation.generator_count
        if len(set(fg)) != len(fg) or any(g < 0 or g >= k for g in fg):
            raise ValueError(f"bad fiber generator list {fg}")
        object.__setattr__(self, "fiber_generators", fg)
        if self.split.dim != self.ambient.dim:
            raise ValueError("split does not match the representation's dimension")
        wit = {(int(a), int(b)): free_reduce(w if isinstance(w, Word) else Word(tuple(w)))
               for (a, b), w in dict(self.witnesses).items()}
        object.__setattr__(self, "witnesses", wit)
        if self.fiber_relators is None:
            fset = set(fg)
            rels = tuple(r for r in self.ambient.presentation.relators if r.generators() <= fset)
            object.__setattr__(self, "fiber_relators", rels)
        else:
            object.__setattr__(self, "fiber_relators", tuple(free_reduce(r) for r in self.fiber_relators))

    # -- fiber group ----------------------------------------------------
    def to_fiber_word(self, w: Word) -> Word:
        index = {g: i for i, g in enumerate(self.fiber_generators)}
        try:
            return Word(tuple((index[g], s) for g, s in w.letters))
        except KeyError as exc:
            raise ValueError(f"word {w} leaves the fiber generators") from exc

    def to_ambient_word(self, w: Word) -> Word:
        return Word(tuple((self.fiber_generators[g], s) for g, s in w.letters))

    def fiber_presentation(self) -> Presentation:
        return Presentation(len(self.fiber_generators),
                            tuple(self.to_fiber_word(r) for r in self.fiber_relators))

    def block(self, g: int) -> BlockAffineMap:
        return block_decompose(self.ambient.images[g], self.split)

    def block_of_word(self, w: Word) -> BlockAffineMap:
        return block_decompose(evaluate_word(self.ambient, w), self.split)

    def fiber_module(self) -> CoefficientModule:
        return CoefficientModule(self.fiber_presentation(), self.split.fiber_dim,
                                 tuple(self.block(g).fiber_linear for g in self.fiber_generators))


def validate_fibration(d: FibrationData) -> Report:
    report = Report("fibration")
    rep = d.ambient
    for issue in verify_representation(rep).issues:
        report.fail("relator", index=issue["index"], relator=issue["relator"])

    blocks = {}
    for g in range(rep.presentation.generator_count):
        try:
            blocks[g] = d.block(g)
        except NotBlockTriangular as exc:
            report.fail("not-block-triangular", generator=g, positions=exc.positions)
    for g in d.fiber_generators:
        if g in blocks and not blocks[g].is_fiber_element():
            report.fail("fiber-moves-base", generator=g)

    for r in d.fiber_relators:
        if not evaluate_word(rep, r).is_identity():
            report.fail("fiber-relator", relator=str(r))

    fiber_set = set(d.fiber_generators)
    for g in range(rep.presentation.generator_count):
        for f in d.fiber_generators:
            w = d.witnesses.get((g, f))
            if w is None:
                report.fail("witness-missing", ambient=g, fiber=f)
                continue
            if not w.generators() <= fiber_set:
                report.fail("witness-outside-fiber", ambient=g, fiber=f, word=str(w))
                continue
            conj = Word(((g, 1), (f, 1), (g, -1)))
            if evaluate_word(rep, conj) != evaluate_word(rep, w):
                report.fail("witness-mismatch", ambient=g, fiber=f, word=str(w))

    if len(blocks) == rep.presentation.generator_count:
        fixed = h0(d.fiber_module())
        for g, b in blocks.items():
            for j in range(d.split.base_dim):
                if not in_span(b.coupling.col(j), fixed):
                    report.fail("coupling-not-invariant", generator=g, column=j)

    if d.quotient is not None:
        q = d.quotient
        if q.source.generator_count != rep.presentation.generator_count:
            report.fail("quotient-source-mismatch")
        else:
            for f in d.fiber_generators:
                if len(q.images[f]):
                    report.fail("quotient-nontrivial-on-fiber", generator=f, image=str(q.images[f]))
            unverified = [i for i, ok in enumerate(q.relator_status()) if ok is None]
            if unverified:
                report.details["assumed_relators"] = unverified
    return report


def _require_valid(d: FibrationData) -> None:
    report = validate_fibration(d)
    if not report.passed:
        raise InvalidFibration(report)


@dataclass(frozen=True)
class RadianceMap:
    """``x -> constant_part + linear_part @ x`` in H^1 coordinates."""

    spaces: CohomologySpaces
    constant_part: tuple
    linear_part: MatrixQ

    def __call__(self, x: Sequence) -> Vector:
        return vec_add(self.constant_part, self.linear_part @ vec(x))

    def is_constant(self) -> bool:
        return self.linear_part.is_zero()


def radiance_cocycle(d: FibrationData, x: Sequence) -> Cocycle1:
    """The fiber cocycle ``gamma -> C_gamma x + d_gamma`` over the point x."""
    x = vec(x)
    module = d.fiber_module()
    return Cocycle1(module, tuple(
        vec_add(d.block(g).coupling @ x, d.block(g).fiber_translation)
        for g in d.fiber_generators))


def radiance_map(d: FibrationData, validate: bool = True) -> RadianceMap:
    if validate:
        _require_valid(d)
    module = d.fiber_module()
    spaces = h1(module)
    blocks = [d.block(g) for g in d.fiber_generators]
    constant = spaces.coordinates(Cocycle1(module, tuple(b.fiber_translation for b in blocks)))
    columns = [spaces.coordinates(Cocycle1(module, tuple(b.coupling.col(j) for b in blocks)))
               for j in range(d.split.base_dim)]
    linear = MatrixQ.from_columns(columns, rows=spaces.h1_dim)
    return RadianceMap(spaces, constant, linear)


def is_alt(d: FibrationData) -> bool:
    """Affinely locally trivial iff the radiance map is constant."""
    return radiance_map(d).is_constant()


def conjugation_automorphism(d: FibrationData, word) -> GroupHom:
    """Fiber automorphism ``gamma -> w gamma w^-1`` assembled from witnesses.

    ``word`` is an ambient generator index or a word of positive letters;
    conjugation by a product is the composite of the single conjugations.
    """
    if isinstance(word, int):
        word = Word.gen(word)
    p = d.fiber_presentation()
    images = [Word.gen(i) for i in range(p.generator_count)]
    for g, s in reversed(word.letters):
        if s < 0:
            raise ValueError("witnesses only cover conjugation by positive letters")
        step = []
        for f in d.fiber_generators:
            if (g, f) not in d.witnesses:
                raise ValueError(f"no witness for conjugating generator {f} by {g}")
            step.append(d.to_fiber_word(d.witnesses[(g, f)]))
        images = [substitute(w, step) for w in images]
    return GroupHom(p, p, tuple(images))


def induced_h1_action(d: FibrationData, ambient, validate: bool = True,
                      spaces: CohomologySpaces | None = None) -> MatrixQ:
    """Action of an ambient element on H^1 of the fiber, via its fiber block."""
    if validate:
        _require_valid(d)
    w = Word.gen(ambient) if isinstance(ambient, int) else ambient
    auto = conjugation_automorphism(d, w)
    Bg = d.block_of_word(w).fiber_linear
    if spaces is None:
        spaces = h1(d.fiber_module())
    return gauge_matrix(spaces, auto, Bg)


def equivariance_check(d: FibrationData, ambient_gen: int, sample_points: Sequence,
                       validate: bool = True) -> Report:
    """Check ``r(A x + a) == i(gamma) r(x)`` at each sample point."""
    if validate:
        _require_valid(d)
    r = radiance_map(d, validate=False)
    action = induced_h1_action(d, ambient_gen, validate=False, spaces=r.spaces)
    b = d.block(ambient_gen)
    report = Report("equivariance")
    results = []
    for x in sample_points:
        x = vec(x)
        lhs = r(vec_add(b.base_linear @ x, b.base_translation))
        rhs = action @ r(x)
        ok = lhs == rhs
        results.append({"point": x, "lhs": lhs, "rhs": rhs, "ok": ok})
        if not ok:
            report.fail("not-equivariant", point=x, lhs=lhs, rhs=rhs)
    report.details["points"] = results
    return report
