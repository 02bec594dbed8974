"""Built-in datasets with self-checking expected results.

``gamma3`` is the group of affine maps of 3-space generated by
``f1(x, y, z) = (x + 1, y, z)``, ``f2 = (x, y + 1, z)`` and
``f3 = (x + y, y, z + 1)``; its relators are the commutators of f1 with f2
and f3, and ``[f3, f2] f1^-1``.  The ``gamma3-*`` entries are linear
fibrations of 3-space compatible with that action.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .cech import LocalSystem, Nerve, cohomology
from .cohomology import completeness_det_test, gauge_equivalent
from .exceptions import UnknownExample
from .fibration import is_alt, validate_fibration
from .ladder import replay_corrections, run_ladder
from .presentation import verify_representation
from . import serialize as S


def _aff(rows, t) -> dict:
    return {"linear": [[str(x) for x in r] for r in rows], "translation": [str(x) for x in t]}


_I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

GAMMA3 = {
    "generators": 3,
    "relators": ["abAB", "acAC", "cbCBA"],
    "dim": 3,
    "images": [
        _aff(_I3, [1, 0, 0]),
        _aff(_I3, [0, 1, 0]),
        _aff([[1, 1, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 1]),
    ],
}


def _witnesses(table: dict) -> list:
    return [{"ambient": a, "fiber": f, "word": w} for (a, f), w in sorted(table.items())]


def _trivial_witnesses(ambient: int, fiber: list) -> dict:
    return {(ambient, f): chr(ord("a") + f) for f in fiber}


def _fibration(perm, base, fiber, fiber_gens, extra) -> dict:
    table = {}
    for g in range(3):
        table.update(_trivial_witnesses(g, fiber_gens))
    table.update(extra)
    return {
        "representation": GAMMA3,
        "permutation": list(perm),
        "split": {"base": base, "fiber": fiber},
        "fiber_generators": list(fiber_gens),
        "witnesses": _witnesses(table),
    }


# base z, fiber (x, y): conjugating f2 by f3 gives f2 f1
GAMMA3_P3 = _fibration((2, 0, 1), 1, 2, (0, 1), {(2, 1): "ba"})
# base y, fiber (x, z): conjugating f3 by f2 gives f1^-1 f3
GAMMA3_P2 = _fibration((1, 0, 2), 1, 2, (0, 2), {(1, 2): "Ac"})
# base y, fiber (z, x)
GAMMA3_P2P1 = _fibration((1, 2, 0), 1, 2, (0, 2), {(1, 2): "Ac"})
# base (y, z), fiber x
GAMMA3_P1 = _fibration((1, 2, 0), 2, 1, (0,), {})

GAMMA3_P3["quotient"] = {"target": {"generators": 1, "relators": []},
                         "images": ["", "", "a"]}

TORUS2 = {
    "generators": 2, "relators": ["abAB"], "dim": 2,
    "images": [_aff([[1, 0], [0, 1]], [1, 0]), _aff([[1, 0], [0, 1]], [0, 1])],
}

TORUS2_COLLINEAR = {
    "generators": 2, "relators": ["abAB"], "dim": 2,
    "images": [_aff([[1, 0], [0, 1]], [1, 0]), _aff([[1, 0], [0, 1]], [2, 0])],
}

TORUS2_GAUGE = {
    "representation": TORUS2,
    "other": {
        "generators": 2, "relators": ["abAB"], "dim": 2,
        "images": [_aff([[1, 0], [0, 1]], [0, 1]), _aff([[1, 0], [0, 1]], [1, 0])],
    },
    "candidates": [
        {"images": ["a", "b"], "inverse_images": ["a", "b"], "Bg": [["1", "0"], ["0", "1"]]},
        {"images": ["b", "a"], "inverse_images": ["b", "a"], "Bg": [["1", "0"], ["0", "1"]]},
    ],
}

CIRCLE3 = {"vertices": 3, "simplices": [[0], [1], [2], [0, 1], [0, 2], [1, 2]]}

TETRA4 = {
    "vertices": 4,
    "simplices": [[0], [1], [2], [3], [0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3],
                  [0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]],
}

# 2-skeleton of the 4-simplex plus three of its five tetrahedra: a 2-sphere
# up to homotopy that also has 3-simplices
SHELL5 = S.nerve_to_json(Nerve.from_facets(5, [
    (0, 1, 2, 3), (0, 1, 2, 4), (0, 1, 3, 4), (2, 3, 4)]))

TWO_POINTS = {"vertices": 2, "simplices": [[0], [1]]}


def _identity_gluing(edges, dim=1) -> dict:
    ident = [[int(i == j) for j in range(dim)] for i in range(dim)]
    return {f"{i}-{j}": _aff(ident, [0] * dim) for i, j in edges}


_TETRA_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def _perturbed(edge, t) -> dict:
    g = _identity_gluing(_TETRA_EDGES)
    g[f"{edge[0]}-{edge[1]}"] = _aff([[1]], [t])
    return g


_CONST1 = {"dim": 1}

LADDER_IDENTITY = {"nerve": TETRA4, "levels": [{"system": _CONST1, "gluing": _identity_gluing(_TETRA_EDGES)}]}
LADDER_SOLVABLE = {"nerve": TETRA4, "levels": [{"system": _CONST1, "gluing": _perturbed((0, 2), 3)}]}
LADDER_OBSTRUCTED = {
    "nerve": TETRA4,
    "levels": [{"system": _CONST1, "cocycle": {"degree": 2, "values": {"0-1-2": ["1"]}}}],
}
# carrier coupling K(i, j) = phi(j) - phi(i) with phi = (0, 1, 2, 3)
LADDER_TWO_LEVEL = {
    "nerve": TETRA4,
    "levels": [{"system": _CONST1, "gluing": _perturbed((0, 2), 3)},
               {"system": _CONST1, "gluing": _perturbed((1, 3), "1/2")}],
    "whitney": [{"dim": 2, "transitions": {
        f"{i}-{j}": [["1", str(j - i)], ["0", "1"]] for i, j in _TETRA_EDGES}}],
}


@dataclass(frozen=True)
class ExampleDataset:
    name: str
    kind: str
    description: str
    payload: dict
    expected: tuple = field(default=())

    def build(self):
        return BUILDERS[self.kind](self.payload)

    def verify(self) -> list:
        """Evaluate every expected result; returns ``(label, ok)`` pairs."""
        obj = self.build()
        return [(label, bool(check(obj))) for label, check in self.expected]


BUILDERS: dict = {
    "representation": S.representation_from_json,
    "fibration": S.fibration_from_json,
    "nerve": lambda d: LocalSystem.constant(S.nerve_from_json(d)),
    "ladder": S.ladder_from_json,
    "gauge": S.gauge_from_json,
}


def _h(ks: dict) -> Callable:
    return lambda s: all(cohomology(s, k).dim == v for k, v in ks.items())


def _ladder(label: str) -> Callable:
    def check(spec):
        v = run_ladder(spec)
        return v.label() == label and (not v.solvable or replay_corrections(spec, v).passed)
    return check


_EXAMPLES = [
    ExampleDataset("gamma3", "representation", "three-generator affine group of 3-space", GAMMA3,
                   (("relators hold", lambda r: verify_representation(r).passed),)),
    ExampleDataset("gamma3-p3", "fibration", "projection to z; fiber (x, y)", GAMMA3_P3,
                   (("valid", lambda d: validate_fibration(d).passed), ("alt", is_alt))),
    ExampleDataset("gamma3-p2", "fibration", "projection to y; fiber (x, z)", GAMMA3_P2,
                   (("valid", lambda d: validate_fibration(d).passed), ("not alt", lambda d: not is_alt(d)))),
    ExampleDataset("gamma3-p2p1", "fibration", "projection to y; fiber coordinates (z, x)", GAMMA3_P2P1,
                   (("valid", lambda d: validate_fibration(d).passed), ("not alt", lambda d: not is_alt(d)))),
    ExampleDataset("gamma3-p1", "fibration", "projection to (y, z); fiber x", GAMMA3_P1,
                   (("valid", lambda d: validate_fibration(d).passed), ("alt", is_alt))),
    ExampleDataset("torus2", "representation", "Z^2 acting by unit translations", TORUS2,
                   (("det 1", lambda r: completeness_det_test(r).det == 1),)),
    ExampleDataset("torus2-collinear", "representation", "Z^2 acting by collinear translations",
                   TORUS2_COLLINEAR, (("det 0", lambda r: completeness_det_test(r).det == 0),)),
    ExampleDataset("torus2-gauge", "gauge", "two translation lattices related by swapping generators",
                   TORUS2_GAUGE, (("equivalent", lambda g: gauge_equivalent(*g).equivalent),)),
    ExampleDataset("circle3", "nerve", "three vertices, three edges", CIRCLE3,
                   (("H0=1, H1=1", _h({0: 1, 1: 1})),)),
    ExampleDataset("tetra4", "nerve", "boundary of the tetrahedron", TETRA4,
                   (("H0=1, H1=0, H2=1", _h({0: 1, 1: 0, 2: 1})),)),
    ExampleDataset("shell5", "nerve", "2-sphere nerve with three 3-simplices", SHELL5,
                   (("H0=1, H1=0, H2=1, H3=0", _h({0: 1, 1: 0, 2: 1, 3: 0})),)),
    ExampleDataset("two-points", "nerve", "two isolated vertices", TWO_POINTS,
                   (("H0=2", _h({0: 2})),)),
    ExampleDataset("ladder-identity", "ladder", "identity gluing on tetra4", LADDER_IDENTITY,
                   (("Solvable", _ladder("Solvable")),)),
    ExampleDataset("ladder-solvable", "ladder", "one perturbed edge on tetra4", LADDER_SOLVABLE,
                   (("Solvable", _ladder("Solvable")),)),
    ExampleDataset("ladder-obstructed", "ladder", "gerbe cocycle generating H^2 of tetra4",
                   LADDER_OBSTRUCTED, (("ObstructedAtRung(1)", _ladder("ObstructedAtRung(1)")),)),
    ExampleDataset("ladder-two-level", "ladder", "two coupled levels on tetra4", LADDER_TWO_LEVEL,
                   (("Solvable", _ladder("Solvable")),)),
]

EXAMPLES = {e.name: e for e in _EXAMPLES}


def builtin_example(name: str) -> ExampleDataset:
    """Look up an example and re-verify its expected results."""
    if name not in EXAMPLES:
        raise UnknownExample(name, EXAMPLES)
    ex = EXAMPLES[name]
    failed = [label for label, ok in ex.verify() if not ok]
    if failed:
        raise RuntimeError(f"example {name!r} failed its self-check: {failed}")
    return ex
