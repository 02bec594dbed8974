import random

import pytest

from affgerbe.affine import AffineMap
from affgerbe.cech import Cochain, LocalSystem, Nerve, coboundary, cohomology, validate_system
from affgerbe.examples import builtin_example
from affgerbe.exceptions import NotACocycle, NotTranslational
from affgerbe.ladder import (
    LadderSpec,
    LevelData,
    carrier_blocks,
    check_carrier,
    coupling_map,
    direct_sum_system,
    level_defect,
    lift_defect,
    replay_corrections,
    run_ladder,
    validate_ladder,
)
from affgerbe.linalg import MatrixQ

from helpers import rand_cocycle, rand_flat_carrier, rand_nerve, rand_q, rand_tower


def tetra():
    return builtin_example("tetra4").build()


def shell():
    return builtin_example("shell5").build()


def unipotent_carrier(nerve, phi):
    return LocalSystem(nerve, 2, {(i, j): MatrixQ.from_rows([[1, phi[j] - phi[i]], [0, 1]])
                                  for i, j in nerve.edges()})


def affine_gluing(rng, system):
    return {(i, j): AffineMap(system.transition(j, i), [rand_q(rng) for _ in range(system.dim)])
            for i, j in system.nerve.edges()}


def test_example_verdicts():
    for name, label in [("ladder-identity", "Solvable"), ("ladder-solvable", "Solvable"),
                        ("ladder-obstructed", "ObstructedAtRung(1)"), ("ladder-two-level", "Solvable")]:
        spec = builtin_example(name).build()
        assert run_ladder(spec).label() == label


def test_identity_gluing_gives_zero_corrections():
    v = run_ladder(builtin_example("ladder-identity").build())
    assert all(c.is_zero() for c in v.corrections.values())


def test_single_level_correction_identity():
    spec = builtin_example("ladder-solvable").build()
    v = run_ladder(spec)
    report = replay_corrections(spec, v)
    assert report.passed and report.details["strict_levels"] == [1]


def test_planted_generator_is_obstructed():
    v = run_ladder(builtin_example("ladder-obstructed").build())
    assert v.rung == 1 and v.certificate_degree == 2
    assert any(x != 0 for x in v.certificate)
    assert not replay_corrections(builtin_example("ladder-obstructed").build(), v).passed


def test_lift_of_zero_and_of_corrected_coboundary():
    rng = random.Random(3)
    nerve = shell().nerve
    carrier = rand_flat_carrier(rng, nerve, 1, 2)
    sub, quo, _ = carrier_blocks(carrier, 1)
    assert lift_defect(Cochain.zero(quo, 2), carrier).is_zero()
    a = Cochain(quo, 1, {e: [rand_q(rng), rand_q(rng)] for e in nerve.edges()})
    assert lift_defect(coboundary(a), carrier, correction=a).is_zero()
    with pytest.raises(ValueError):
        lift_defect(coboundary(a), carrier, correction=a.scale(2))


def test_planted_lift_on_shell():
    nerve = shell().nerve
    quo = LocalSystem.constant(nerve)
    generator = cohomology(quo, 2).complement_basis[0]
    carrier = unipotent_carrier(nerve, [0, 1, 3, 4, 7])
    assert validate_system(carrier).passed
    lift = lift_defect(generator, carrier)
    assert not lift.is_zero()
    assert coboundary(lift).is_zero()
    assert lift == coupling_map(carrier, carrier_blocks(carrier, 1)[0], generator)


def test_lift_requires_cocycle():
    nerve = shell().nerve
    quo = LocalSystem.constant(nerve)
    bad = Cochain(quo, 2, {(0, 1, 2): [1]})
    with pytest.raises(NotACocycle):
        lift_defect(bad, direct_sum_system(quo, quo))


def test_random_lifts_are_cocycles():
    rng = random.Random(41)
    done = 0
    while done < 25:
        nerve = rand_nerve(rng)
        if nerve.dimension < 2:
            continue
        top, bottom = rng.randint(1, 2), rng.randint(1, 2)
        carrier = rand_flat_carrier(rng, nerve, top, bottom)
        _, quo, _ = carrier_blocks(carrier, top)
        k = rng.randint(1, nerve.dimension - 1)
        prev = rand_cocycle(rng, quo, k)
        assert coboundary(lift_defect(prev, carrier)).is_zero()
        done += 1


def test_carrier_checks():
    nerve = tetra().nerve
    s1 = LocalSystem.constant(nerve)
    s2 = LocalSystem.constant(nerve, 2)
    with pytest.raises(ValueError):
        check_carrier(direct_sum_system(s1, s1), s2, s1)
    lower_left = LocalSystem(nerve, 2, {e: MatrixQ.from_rows([[1, 0], [1, 1]]) for e in nerve.edges()})
    with pytest.raises(ValueError):
        check_carrier(lower_left, s1, s1)
    twisted = LocalSystem(nerve, 1, {e: MatrixQ.from_rows([[-1]]) for e in nerve.edges()})
    with pytest.raises(ValueError):
        check_carrier(direct_sum_system(s1, s1), s1, twisted)
    spec = LadderSpec(nerve, (LevelData(s1, cocycle=Cochain.zero(s1, 2)),
                              LevelData(s1, cocycle=Cochain.zero(s1, 2))),
                      (direct_sum_system(s2, s1),))
    assert [i["kind"] for i in validate_ladder(spec).issues] == ["carrier"]


def test_level_data_needs_one_source():
    s = tetra()
    with pytest.raises(ValueError):
        LevelData(s)
    with pytest.raises(ValueError):
        LevelData(s, gluing={}, cocycle=Cochain.zero(s, 2))
    with pytest.raises(ValueError):
        LevelData(s, cocycle=Cochain.zero(s, 1))


def test_non_cocycle_level_is_reported_with_rung():
    nerve = shell().nerve
    s = LocalSystem.constant(nerve)
    ok = LevelData(s, cocycle=Cochain.zero(s, 2))
    bad = LevelData(s, cocycle=Cochain(s, 2, {(0, 1, 2): [1]}))
    with pytest.raises(NotACocycle) as exc:
        run_ladder(LadderSpec(nerve, (ok, bad)))
    assert exc.value.rung == 2


def test_nontranslational_level():
    nerve = Nerve.from_facets(3, [(0, 1, 2)])
    s = LocalSystem.constant(nerve)
    u = {(0, 1): AffineMap.from_rows([[2]], [0]), (1, 2): AffineMap.identity(1), (0, 2): AffineMap.identity(1)}
    with pytest.raises(NotTranslational) as exc:
        level_defect(LevelData(s, gluing=u), rung=1)
    assert exc.value.rung == 1


def test_obstruction_at_second_rung():
    nerve = tetra().nerve
    s = LocalSystem.constant(nerve)
    gen = Cochain(s, 2, {(0, 1, 2): [1]})
    spec = LadderSpec(nerve, (LevelData(s, gluing={e: AffineMap.translation_by([1]) for e in nerve.edges()}),
                              LevelData(s, cocycle=gen)))
    v = run_ladder(spec)
    assert v.label() == "ObstructedAtRung(2)"
    assert v.certificate_degree == 2 and any(v.certificate)


def _random_spec(rng, levels):
    nerve = rng.choice([None, tetra().nerve, shell().nerve])
    while nerve is None:
        nerve = rand_nerve(rng, max_vertices=5)
        if nerve.dimension < 2:
            nerve = None
    systems, carriers = rand_tower(rng, nerve, [rng.randint(1, 2) for _ in range(levels)])
    levels_data = tuple(LevelData(s, gluing=affine_gluing(rng, s)) if rng.random() < 0.6
                        else LevelData(s, cocycle=rand_cocycle(rng, s, 2)) for s in systems)
    return LadderSpec(nerve, levels_data, tuple(carriers))


def test_random_ladders_replay():
    rng = random.Random(101)
    solvable = 0
    for _ in range(30):
        spec = _random_spec(rng, rng.randint(1, 3))
        assert validate_ladder(spec).passed
        v = run_ladder(spec)
        if v.solvable:
            solvable += 1
            assert replay_corrections(spec, v).passed
        else:
            assert any(v.certificate)
    assert 0 < solvable < 30


def test_determinism_and_monotone_failure():
    rng = random.Random(7)
    for _ in range(6):
        spec = _random_spec(rng, 3)
        a, b = run_ladder(spec), run_ladder(spec)
        assert a.label() == b.label() and a.corrections == b.corrections
        shorter = LadderSpec(spec.nerve, spec.levels[:2], spec.whitney[:1])
        s = run_ladder(shorter)
        if s.solvable:
            assert a.rung is None or a.rung == 3
        else:
            assert a.label() == s.label()
        for r in range(len(s.rungs)):
            assert s.rungs[r]["defect"] == a.rungs[r]["defect"]
