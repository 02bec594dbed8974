"""JSON encoding of the package's objects.

Rationals are written as strings (``"3"``, ``"-1/2"``) and read back from
strings or integers.  Simplices and edges are written as ``"i-j-k"`` keys.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .affine import AffineMap, BlockSplit, conjugate_by_permutation
from .cech import Cochain, LocalSystem, Nerve
from .cohomology import CoefficientModule, h1, radiance_class
from .fibration import FibrationData
from .ladder import LadderSpec, LevelData
from .linalg import MatrixQ
from .presentation import AffineRepresentation, GroupHom, Presentation, Word


def q(x) -> str:
    return str(Fraction(x))


def parse_q(x) -> Fraction:
    if isinstance(x, bool):
        raise ValueError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float) and x.is_integer():
        return Fraction(int(x))
    raise ValueError(f"rationals must be integers or 'p/q' strings, got {x!r}")


def to_jsonable(obj: Any) -> Any:
    """Recursively convert package values to plain JSON values."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return q(obj)
    if isinstance(obj, MatrixQ):
        return matrix_to_json(obj)
    if isinstance(obj, AffineMap):
        return affine_to_json(obj)
    if isinstance(obj, Word):
        return word_to_json(obj)
    if isinstance(obj, Cochain):
        return cochain_to_json(obj)
    if isinstance(obj, dict):
        return {(key(k) if isinstance(k, tuple) else str(k)): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def key(s) -> str:
    return "-".join(str(v) for v in s)


def parse_key(k: str) -> tuple:
    try:
        return tuple(int(v) for v in str(k).split("-"))
    except ValueError:
        raise ValueError(f"bad simplex key {k!r}") from None


# -- linear algebra and words ------------------------------------------------

def matrix_to_json(m: MatrixQ) -> list:
    return [[q(x) for x in row] for row in m.to_rows()]


def matrix_from_json(rows, cols: int | None = None) -> MatrixQ:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ValueError("a matrix must be a list of rows")
    return MatrixQ.from_rows([[parse_q(x) for x in r] for r in rows], cols=cols)


def vector_from_json(v) -> tuple:
    if not isinstance(v, list):
        raise ValueError("a vector must be a list")
    return tuple(parse_q(x) for x in v)


def affine_to_json(f: AffineMap) -> dict:
    return {"linear": matrix_to_json(f.linear), "translation": [q(x) for x in f.translation]}


def affine_from_json(d: dict) -> AffineMap:
    return AffineMap(matrix_from_json(d["linear"]), vector_from_json(d["translation"]))


def word_to_json(w: Word) -> list:
    return [[g, s] for g, s in w.letters]


def word_from_json(w) -> Word:
    if isinstance(w, str):
        return Word.parse(w)
    return Word(tuple((int(g), int(s)) for g, s in w))


def presentation_to_json(p: Presentation) -> dict:
    return {"generators": p.generator_count, "relators": [word_to_json(r) for r in p.relators]}


def presentation_from_json(d: dict) -> Presentation:
    return Presentation(int(d["generators"]), tuple(word_from_json(r) for r in d.get("relators", [])))


def representation_to_json(rep: AffineRepresentation) -> dict:
    out = presentation_to_json(rep.presentation)
    out["dim"] = rep.dim
    out["images"] = [affine_to_json(f) for f in rep.images]
    return out


def representation_from_json(d: dict) -> AffineRepresentation:
    rep = AffineRepresentation(presentation_from_json(d),
                               tuple(affine_from_json(f) for f in d["images"]))
    if "dim" in d and rep.images and int(d["dim"]) != rep.dim:
        raise ValueError(f"declared dim {d['dim']} differs from the images' dimension {rep.dim}")
    return rep


def hom_from_json(d: dict, source: Presentation, target: Presentation) -> GroupHom:
    inv = d.get("inverse_images")
    return GroupHom(source, target, tuple(word_from_json(w) for w in d["images"]),
                    None if inv is None else tuple(word_from_json(w) for w in inv))


def hom_to_json(h: GroupHom) -> dict:
    out = {"images": [word_to_json(w) for w in h.images]}
    if h.inverse_images is not None:
        out["inverse_images"] = [word_to_json(w) for w in h.inverse_images]
    return out


def gauge_from_json(d: dict) -> tuple:
    """``(class, other_class, candidates)`` for a gauge-equivalence query.

    Both representations must share their linear holonomy; each candidate
    is an automorphism of the group with its matrix ``Bg``.
    """
    rep = representation_from_json(d["representation"])
    other = representation_from_json(d["other"])
    if other.presentation != rep.presentation or other.linear_parts() != rep.linear_parts():
        raise ValueError("the two representations must share presentation and linear parts")
    spaces = h1(CoefficientModule.linear_part(rep))
    p = rep.presentation
    candidates = [(hom_from_json(c, p, p), matrix_from_json(c["Bg"], cols=rep.dim))
                  for c in d.get("candidates", [])]
    return radiance_class(rep, spaces), radiance_class(other, spaces), candidates


# -- fibrations -------------------------------------------------------------

def fibration_from_json(d: dict) -> FibrationData:
    """Read fibration data; the representation is re-expressed base-first.

    ``permutation`` lists, for each new coordinate, the original coordinate
    it copies; the first ``split.base`` new coordinates span the base.
    """
    rep = representation_from_json(d["representation"])
    perm = d.get("permutation")
    if perm is not None:
        perm = tuple(int(i) for i in perm)
        rep = AffineRepresentation(rep.presentation,
                                   tuple(conjugate_by_permutation(f, perm) for f in rep.images))
    split = BlockSplit(int(d["split"]["base"]), int(d["split"]["fiber"]))
    witnesses = {}
    for w in d.get("witnesses", []):
        witnesses[(int(w["ambient"]), int(w["fiber"]))] = word_from_json(w["word"])
    rels = d.get("fiber_relators")
    quotient = None
    if d.get("quotient") is not None:
        target = presentation_from_json(d["quotient"]["target"])
        quotient = hom_from_json(d["quotient"], rep.presentation, target)
    return FibrationData(
        ambient=rep,
        split=split,
        fiber_generators=tuple(int(g) for g in d["fiber_generators"]),
        witnesses=witnesses,
        fiber_relators=None if rels is None else tuple(word_from_json(r) for r in rels),
        quotient=quotient,
        permutation=perm,
    )


# -- nerves, systems, cochains ---------------------------------------------

def nerve_to_json(n: Nerve) -> dict:
    return {"vertices": n.vertex_count,
            "simplices": [list(s) for s in sorted(n.simplices, key=lambda t: (len(t), t))]}


def nerve_from_json(d: dict) -> Nerve:
    return Nerve(int(d["vertices"]), frozenset(tuple(int(v) for v in s) for s in d.get("simplices", [])))


def system_to_json(s: LocalSystem, with_nerve: bool = True) -> dict:
    out = nerve_to_json(s.nerve) if with_nerve else {}
    out["dim"] = s.dim
    out["transitions"] = {key(e): matrix_to_json(s.transition(*e)) for e in s.nerve.edges()}
    return out


def system_from_json(d: dict, nerve: Nerve | None = None) -> LocalSystem:
    """A local system; without ``transitions`` the coefficients are constant."""
    if "vertices" in d:
        nerve = nerve_from_json(d)
    if nerve is None:
        raise ValueError("local system needs a nerve")
    dim = int(d.get("dim", 1))
    if "transitions" not in d:
        return LocalSystem.constant(nerve, dim)
    trans = {}
    for k, m in d["transitions"].items():
        e = parse_key(k)
        if len(e) != 2:
            raise ValueError(f"transition key {k!r} is not an edge")
        trans[e] = matrix_from_json(m, cols=dim)
    return LocalSystem(nerve, dim, trans)


def cochain_to_json(c: Cochain) -> dict:
    return {"degree": c.degree, "values": {key(s): [q(x) for x in v] for s, v in c.values.items()}}


def cochain_from_json(d: dict, system: LocalSystem) -> Cochain:
    return Cochain(system, int(d["degree"]),
                   {parse_key(k): vector_from_json(v) for k, v in d.get("values", {}).items()})


def gluing_from_json(d: dict) -> dict:
    out = {}
    for k, f in d.items():
        e = parse_key(k)
        if len(e) != 2:
            raise ValueError(f"gluing key {k!r} is not an edge")
        out[e] = affine_from_json(f)
    return out


def gluing_to_json(u: dict) -> dict:
    return {key(e): affine_to_json(f) for e, f in u.items() if e[0] < e[1]}


# -- ladders ----------------------------------------------------------------

def ladder_from_json(d: dict) -> LadderSpec:
    nerve = nerve_from_json(d["nerve"])
    levels = []
    for lv in d["levels"]:
        system = system_from_json(lv["system"], nerve)
        if "gluing" in lv:
            levels.append(LevelData(system, gluing=gluing_from_json(lv["gluing"])))
        else:
            levels.append(LevelData(system, cocycle=cochain_from_json(lv["cocycle"], system)))
    whitney = d.get("whitney")
    if whitney is not None:
        whitney = tuple(None if w is None else system_from_json(w, nerve) for w in whitney)
    return LadderSpec(nerve, tuple(levels), whitney)


def ladder_to_json(spec: LadderSpec) -> dict:
    levels = []
    for ld in spec.levels:
        entry = {"system": system_to_json(ld.system, with_nerve=False)}
        if ld.gluing is not None:
            entry["gluing"] = gluing_to_json(ld.gluing)
        else:
            entry["cocycle"] = cochain_to_json(ld.cocycle)
        levels.append(entry)
    return {"nerve": nerve_to_json(spec.nerve), "levels": levels,
            "whitney": [None if w is None else system_to_json(w, with_nerve=False)
                        for w in spec.whitney]}
