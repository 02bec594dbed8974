"""Level defects, lifted higher cocycles and the rung-by-rung solvability ladder.

Levels are numbered from 1.  Level r carries a coefficient system S_r and
either gluing maps (whose defect is computed) or an explicit 2-cocycle.
Rung r >= 2 works in a carrier system on ``S_r (+) S_{r-1}``, listed later
level first: its transitions are block upper triangular
``[[T_r, K], [0, T_{r-1}]]`` and the block ``K`` is what couples a rung to
the one below it.  Without a declared carrier the plain direct sum is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .cech import (
    Cochain,
    LocalSystem,
    NoSolution,
    Nerve,
    cohomology,
    coboundary,
    correct_gluing,
    gluing_is_symmetric,
    nonabelian_defect,
    solve_coboundary,
    strict_cocycle_failures,
    validate_system,
)
from .exceptions import NotACocycle, NotTranslational
from .linalg import MatrixQ, block_diag, is_zero_vector, vec_add
from .report import Report


# -- carriers ------------------------------------------------------------

def direct_sum_system(upper: LocalSystem, lower: LocalSystem) -> LocalSystem:
    if upper.nerve != lower.nerve:
        raise ValueError("systems live on different nerves")
    return LocalSystem(upper.nerve, upper.dim + lower.dim, {
        e: block_diag(upper.transition(*e), lower.transition(*e)) for e in upper.nerve.edges()})


def carrier_blocks(carrier: LocalSystem, sub_dim: int) -> tuple:
    """Split a carrier into its sub system, quotient system and coupling blocks."""
    n = carrier.dim
    if not 0 < sub_dim < n:
        raise ValueError(f"sub dimension {sub_dim} does not split a carrier of dimension {n}")
    nerve = carrier.nerve
    sub, quo, coupling = {}, {}, {}
    for a, b in carrier.transitions:
        t = carrier.transition(a, b)
        if not t.block(sub_dim, n, 0, sub_dim).is_zero():
            raise ValueError(f"carrier transition {(a, b)} is not block upper triangular")
        sub[(a, b)] = t.block(0, sub_dim, 0, sub_dim)
        quo[(a, b)] = t.block(sub_dim, n, sub_dim, n)
        coupling[(a, b)] = t.block(0, sub_dim, sub_dim, n)
    edges = nerve.edges()
    return (LocalSystem(nerve, sub_dim, {e: sub[e] for e in edges}),
            LocalSystem(nerve, n - sub_dim, {e: quo[e] for e in edges}),
            coupling)


def check_carrier(carrier: LocalSystem, sub: LocalSystem, prev: LocalSystem) -> None:
    """Raise ValueError unless the carrier extends ``prev`` by ``sub``."""
    if carrier.nerve != prev.nerve or sub.nerve != prev.nerve:
        raise ValueError("carrier and level systems live on different nerves")
    if carrier.dim != sub.dim + prev.dim:
        raise ValueError(f"carrier dimension {carrier.dim} != {sub.dim} + {prev.dim}")
    s, q, _ = carrier_blocks(carrier, sub.dim)
    if s != sub:
        raise ValueError("carrier's leading block differs from the upper level's system")
    if q != prev:
        raise ValueError("carrier's trailing block differs from the lower level's system")


def split_cochain(c: Cochain, sub: LocalSystem, quo: LocalSystem) -> tuple:
    v = sub.dim
    return (Cochain(sub, c.degree, {s: x[:v] for s, x in c.values.items()}),
            Cochain(quo, c.degree, {s: x[v:] for s, x in c.values.items()}))


def join_cochain(carrier: LocalSystem, upper: Cochain, lower: Cochain) -> Cochain:
    return Cochain(carrier, upper.degree, {s: upper.values[s] + lower.values[s] for s in upper.values})


def coupling_map(carrier: LocalSystem, sub: LocalSystem, c: Cochain) -> Cochain:
    """The upper component of the carrier coboundary of ``(0, c)``.

    Its value on ``(i0, ..., i_{k+1})`` is ``K(i1, i0) c(i1, ..., i_{k+1})``.
    """
    _, _, coupling = carrier_blocks(carrier, sub.dim)
    return Cochain(sub, c.degree + 1, {
        s: coupling[(s[1], s[0])] @ c.values[s[1:]] for s in sub.nerve.of_degree(c.degree + 1)})


def lift_defect(prev: Cochain, carrier: LocalSystem, correction: Cochain | None = None) -> Cochain:
    """Lift a cocycle of the lower level to the next cocycle of the upper level.

    ``prev`` is represented in the carrier by ``(0, prev)``, or by the
    coboundary of ``(0, correction)`` when a correction with
    ``coboundary(correction) == prev`` is supplied.  The carrier coboundary
    of the representative has zero lower part, and its upper part is the
    returned cocycle.
    """
    if not coboundary(prev).is_zero():
        raise NotACocycle(f"degree-{prev.degree} input to the lift is not a cocycle")
    sub_dim = carrier.dim - prev.system.dim
    sub, quo, _ = carrier_blocks(carrier, sub_dim)
    if quo != prev.system:
        raise ValueError("carrier's trailing block differs from the cocycle's system")
    zero_up = Cochain.zero(sub, prev.degree)
    if correction is None:
        rep = join_cochain(carrier, zero_up, prev)
    else:
        if coboundary(correction) != prev:
            raise ValueError("correction does not bound the cocycle")
        rep = coboundary(join_cochain(carrier, Cochain.zero(sub, correction.degree), correction))
    upper, lower = split_cochain(coboundary(rep), sub, quo)
    assert lower.is_zero()
    return upper


# -- ladder data ---------------------------------------------------------

@dataclass(frozen=True)
class LevelData:
    """One level: its coefficient system and either gluing maps or a 2-cocycle."""

    system: LocalSystem
    gluing: Mapping | None = field(default=None, hash=False, compare=False)
    cocycle: Cochain | None = field(default=None, hash=False, compare=False)

    def __post_init__(self):
        if (self.gluing is None) == (self.cocycle is None):
            raise ValueError("a level needs exactly one of gluing maps or a defect cocycle")
        if self.cocycle is not None and (self.cocycle.degree != 2 or self.cocycle.system != self.system):
            raise ValueError("level cocycle must be a 2-cochain of the level's system")


def level_defect(ld: LevelData, rung: int | None = None) -> Cochain:
    if ld.cocycle is not None:
        return ld.cocycle
    try:
        return nonabelian_defect(ld.system.nerve, ld.gluing, system=ld.system).cochain
    except NotTranslational as exc:
        raise NotTranslational(exc.simplices, rung=rung) from None


@dataclass(frozen=True)
class LadderSpec:
    nerve: Nerve
    levels: tuple
    whitney: tuple | None = None

    def __post_init__(self):
        levels = tuple(self.levels)
        if not levels:
            raise ValueError("a ladder needs at least one level")
        object.__setattr__(self, "levels", levels)
        whitney = tuple(self.whitney) if self.whitney is not None else (None,) * (len(levels) - 1)
        if len(whitney) != len(levels) - 1:
            raise ValueError(f"need {len(levels) - 1} carrier entries, got {len(whitney)}")
        object.__setattr__(self, "whitney", whitney)

    def carrier(self, r: int) -> LocalSystem:
        """Carrier of rung r >= 2."""
        upper, lower = self.levels[r - 1].system, self.levels[r - 2].system
        declared = self.whitney[r - 2]
        return declared if declared is not None else direct_sum_system(upper, lower)


def validate_ladder(spec: LadderSpec) -> Report:
    report = Report("ladder-data")
    for r, ld in enumerate(spec.levels, start=1):
        if ld.system.nerve != spec.nerve:
            report.fail("nerve-mismatch", level=r)
            continue
        for issue in validate_system(ld.system).issues:
            report.fail("level-system", level=r, **issue)
        if ld.gluing is not None and not gluing_is_symmetric(spec.nerve, ld.gluing):
            report.fail("gluing-not-symmetric", level=r)
    if report.passed:
        for r in range(2, len(spec.levels) + 1):
            try:
                carrier = spec.carrier(r)
                check_carrier(carrier, spec.levels[r - 1].system, spec.levels[r - 2].system)
            except ValueError as exc:
                report.fail("carrier", rung=r, message=str(exc))
                continue
            for issue in validate_system(carrier).issues:
                report.fail("carrier-system", rung=r, **issue)
    return report


@dataclass
class LadderVerdict:
    status: str
    rung: int | None = None
    corrections: dict = field(default_factory=dict)
    certificate: tuple | None = None
    certificate_degree: int | None = None
    rungs: list = field(default_factory=list)

    @property
    def solvable(self) -> bool:
        return self.status == "Solvable"

    def label(self) -> str:
        return "Solvable" if self.solvable else f"ObstructedAtRung({self.rung})"


def run_ladder(spec: LadderSpec, validate: bool = True) -> LadderVerdict:
    """Decide the levels bottom-up, one rung at a time.

    Each rung records ``defect``, the lifted cocycle ``lift`` (rung >= 2),
    the adjustment ``adjust`` with ``coboundary(adjust) == -lift`` and the
    cocycle ``z`` handed to the next rung.
    """
    if validate:
        report = validate_ladder(spec)
        if not report.passed:
            raise ValueError(f"invalid ladder data: {report.issues}")
    verdict = LadderVerdict("Solvable")
    z_prev = None
    for r in range(1, len(spec.levels) + 1):
        system = spec.levels[r - 1].system
        defect = level_defect(spec.levels[r - 1], rung=r)
        if not coboundary(defect).is_zero():
            raise NotACocycle("level defect is not a cocycle", rung=r)
        info = {"rung": r, "defect": defect}
        verdict.rungs.append(info)

        if r == 1:
            a = solve_coboundary(system, defect)
            if isinstance(a, NoSolution):
                return _obstructed(verdict, r, a.class_coordinates, 2)
            verdict.corrections[1] = -a
            info["z"] = defect
            z_prev = defect
            continue

        carrier = spec.carrier(r)
        lower_system = spec.levels[r - 2].system
        lift = lift_defect(z_prev, carrier)
        info["lift"] = lift
        if lift.is_zero():
            adjust = Cochain.zero(system, 2)
        else:
            adjust = solve_coboundary(system, -lift)
            if isinstance(adjust, NoSolution):
                coords = cohomology(system, 3).coordinates(lift)
                return _obstructed(verdict, r, coords, 3)
        info["adjust"] = adjust
        top = defect + adjust
        total = join_cochain(carrier, top, z_prev)
        if not coboundary(total).is_zero():
            raise NotACocycle("rung cochain is not a cocycle in the carrier", rung=r)
        a = solve_coboundary(carrier, total)
        if isinstance(a, NoSolution):
            return _obstructed(verdict, r, a.class_coordinates, 2)
        a_up, a_low = split_cochain(a, system, lower_system)
        verdict.corrections[r] = -a_up
        verdict.corrections[r - 1] = -a_low
        z_prev = top - coupling_map(carrier, system, a_low)
        info["z"] = z_prev
    return verdict


def _obstructed(verdict: LadderVerdict, r: int, coords, degree: int) -> LadderVerdict:
    verdict.status = "ObstructedAtRung"
    verdict.rung = r
    verdict.certificate = tuple(coords)
    verdict.certificate_degree = degree
    return verdict


def replay_corrections(spec: LadderSpec, verdict: LadderVerdict) -> Report:
    """Re-check a Solvable verdict level by level.

    With the corrected data, the defect of level r plus the coupling of the
    level r-1 correction plus the rung's adjustment must vanish.  Where the
    last two terms vanish and the level has gluing maps, the corrected maps
    are also checked to compose strictly on every triangle.
    """
    report = Report("ladder-replay")
    if not verdict.solvable:
        report.fail("not-solvable", rung=verdict.rung)
        return report
    for r, ld in enumerate(spec.levels, start=1):
        w = verdict.corrections[r]
        if ld.gluing is not None:
            corrected = correct_gluing(ld.gluing, w)
            residual = nonabelian_defect(spec.nerve, corrected, system=ld.system).cochain
        else:
            corrected = None
            residual = ld.cocycle + coboundary(w)
        extra = Cochain.zero(ld.system, 2)
        if r >= 2:
            extra = coupling_map(spec.carrier(r), ld.system, verdict.corrections[r - 1])
            extra = extra + verdict.rungs[r - 1]["adjust"]
        residual = residual + extra
        if not residual.is_zero():
            bad = [s for s, v in residual.values.items() if not is_zero_vector(v)]
            report.fail("residual", level=r, simplices=bad)
        if corrected is not None and extra.is_zero():
            failures = strict_cocycle_failures(spec.nerve, corrected)
            if failures:
                report.fail("strict-cocycle", level=r, simplices=failures)
            report.details.setdefault("strict_levels", []).append(r)
    return report
