"""Finitely presented groups, free-group words and affine representations.

Generators are 0-based indices.  A word is a tuple of ``(index, sign)``
letters with ``sign`` in ``{+1, -1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .affine import AffineMap, compose, invert
from .linalg import MatrixQ, hstack, vstack
from .report import Report


@dataclass(frozen=True)
class Word:
    letters: tuple = ()

    def __post_init__(self):
        letters = tuple((int(g), int(s)) for g, s in self.letters)
        for g, s in letters:
            if g < 0 or s not in (1, -1):
                raise ValueError(f"bad letter {(g, s)!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Letters ``a``-``z`` are generators 0-25, capitals their inverses.

        Whitespace is ignored; ``"1"`` or ``""`` is the empty word.
        """
        letters = []
        for ch in text:
            if ch.isspace() or ch == "1":
                continue
            if not ch.isalpha():
                raise ValueError(f"unexpected character {ch!r} in word")
            letters.append((ord(ch.lower()) - ord("a"), 1 if ch.islower() else -1))
        return cls(tuple(letters))

    @classmethod
    def gen(cls, i: int, sign: int = 1) -> "Word":
        return cls(((i, sign),))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -s) for g, s in reversed(self.letters)))

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=-1)

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def exponent_sums(self, k: int) -> list:
        sums = [0] * k
        for g, s in self.letters:
            sums[g] += s
        return sums

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(
            (chr(ord("a") + g) if s > 0 else chr(ord("A") + g)) if g < 26 else f"g{g}^{s}"
            for g, s in self.letters
        )


def commutator(u: Word, v: Word) -> Word:
    """``u v u^-1 v^-1``."""
    return u * v * u.inverse() * v.inverse()


def free_reduce(w: Word) -> Word:
    out = []
    for g, s in w.letters:
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return Word(tuple(out))


def cyclic_reduce(w: Word) -> Word:
    w = free_reduce(w)
    letters = list(w.letters)
    while len(letters) >= 2 and letters[0] == (letters[-1][0], -letters[-1][1]):
        letters = letters[1:-1]
    return Word(tuple(letters))


def substitute(w: Word, images: Sequence[Word]) -> Word:
    """Image of ``w`` under the free-group map sending generator i to images[i]."""
    out = Word()
    for g, s in w.letters:
        out = out * (images[g] if s > 0 else images[g].inverse())
    return free_reduce(out)


@dataclass(frozen=True)
class Presentation:
    generator_count: int
    relators: tuple = ()

    def __post_init__(self):
        rels = []
        for r in self.relators:
            r = r if isinstance(r, Word) else Word(tuple(r))
            r = free_reduce(r)
            if r.max_generator() >= self.generator_count:
                raise ValueError(f"relator {r} uses a generator outside range({self.generator_count})")
            if len(r) == 0:
                raise ValueError("relators must be nonempty after free reduction")
            rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))

    @classmethod
    def free(cls, k: int) -> "Presentation":
        return cls(k, ())

    @classmethod
    def free_abelian(cls, k: int) -> "Presentation":
        return cls(k, tuple(commutator(Word.gen(i), Word.gen(j))
                            for i in range(k) for j in range(i + 1, k)))

    def check_word(self, w: Word) -> None:
        if w.max_generator() >= self.generator_count:
            raise ValueError(f"word {w} uses a generator outside range({self.generator_count})")


@dataclass(frozen=True)
class AffineRepresentation:
    presentation: Presentation
    images: tuple

    def __post_init__(self):
        images = tuple(self.images)
        if len(images) != self.presentation.generator_count:
            raise ValueError("need exactly one image per generator")
        dims = {f.dim for f in images}
        if len(dims) > 1:
            raise ValueError("generator images have different dimensions")
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_inverses", tuple(invert(f) for f in images))

    @property
    def dim(self) -> int:
        return self.images[0].dim if self.images else 0

    def image(self, g: int, sign: int = 1) -> AffineMap:
        return self.images[g] if sign > 0 else self._inverses[g]

    def linear_parts(self) -> tuple:
        return tuple(f.linear for f in self.images)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by generator images, optionally with its inverse."""

    source: Presentation
    target: Presentation
    images: tuple
    inverse_images: tuple | None = None

    def __post_init__(self):
        images = tuple(free_reduce(w) for w in self.images)
        if len(images) != self.source.generator_count:
            raise ValueError("need exactly one image per source generator")
        for w in images:
            self.target.check_word(w)
        object.__setattr__(self, "images", images)
        if self.inverse_images is not None:
            inv = tuple(free_reduce(w) for w in self.inverse_images)
            if len(inv) != self.target.generator_count:
                raise ValueError("need one inverse image per target generator")
            for w in inv:
                self.source.check_word(w)
            object.__setattr__(self, "inverse_images", inv)

    @classmethod
    def identity(cls, p: Presentation) -> "GroupHom":
        gens = tuple(Word.gen(i) for i in range(p.generator_count))
        return cls(p, p, gens, gens)

    def apply(self, w: Word) -> Word:
        return substitute(w, self.images)

    def apply_inverse(self, w: Word) -> Word:
        if self.inverse_images is None:
            raise ValueError("homomorphism carries no inverse images")
        return substitute(w, self.inverse_images)

    def relator_status(self) -> list:
        """Per source relator: True if its image is visibly trivial, else None.

        An image counts as trivial when it freely reduces to 1 or is a cyclic
        rotation of a target relator or of its inverse.  ``None`` means the
        check is inconclusive and the relation is recorded as an assumption.
        """
        known = set()
        for r in self.target.relators:
            for cand in (cyclic_reduce(r), cyclic_reduce(r.inverse())):
                ls = cand.letters
                known.update(ls[i:] + ls[:i] for i in range(len(ls)))
        out = []
        for r in self.source.relators:
            img = cyclic_reduce(self.apply(r))
            out.append(True if not img.letters or img.letters in known else None)
        return out


def evaluate_word(rep: AffineRepresentation, w: Word) -> AffineMap:
    rep.presentation.check_word(w)
    out = AffineMap.identity(rep.dim)
    for g, s in w.letters:
        out = compose(out, rep.image(g, s))
    return out


def verify_representation(rep: AffineRepresentation) -> Report:
    report = Report("verify-representation")
    for idx, r in enumerate(rep.presentation.relators):
        f = evaluate_word(rep, r)
        if not f.is_identity():
            report.fail("relator", index=idx, relator=str(r), value=f)
    return report


def _action_word(action: Sequence[MatrixQ], inverses: Sequence[MatrixQ], w: Word, dim: int) -> MatrixQ:
    out = MatrixQ.identity(dim)
    for g, s in w.letters:
        out = out @ (action[g] if s > 0 else inverses[g])
    return out


def fox_jacobian(p: Presentation, action: Sequence[MatrixQ], dim: int | None = None) -> MatrixQ:
    """Relator constraint matrix whose kernel is the space of crossed homomorphisms.

    Row block r, column block i holds the Fox derivative of relator r with
    respect to generator i, evaluated through ``action``.  ``action`` may be
    a sequence of matrices or anything with ``.action``/``.dim`` attributes.
    """
    if hasattr(action, "action"):
        dim = action.dim
        action = action.action
    action = list(action)
    if dim is None:
        if not action:
            raise ValueError("module dimension required when there are no generators")
        dim = action[0].rows
    k = p.generator_count
    if len(action) != k:
        raise ValueError("need one action matrix per generator")
    inverses = [a.inverse() for a in action]
    blocks = []
    for r in p.relators:
        derivs = [MatrixQ.zeros(dim, dim) for _ in range(k)]
        prefix = MatrixQ.identity(dim)
        for g, s in r.letters:
            if s > 0:
                derivs[g] = derivs[g] + prefix
                prefix = prefix @ action[g]
            else:
                prefix = prefix @ inverses[g]
                derivs[g] = derivs[g] - prefix
        blocks.append(hstack(*derivs) if k else MatrixQ.zeros(dim, 0))
    if not blocks:
        return MatrixQ.zeros(0, k * dim)
    return vstack(*blocks)
