"""Exact computations for affine representations, affine bundles and their gerbe obstructions."""

from .affine import AffineMap, BlockAffineMap, BlockSplit, block_decompose, compose, invert
from .cech import (
    Cochain,
    LocalSystem,
    Nerve,
    NoSolution,
    coboundary,
    cohomology,
    nonabelian_defect,
    solve_coboundary,
    validate_system,
)
from .cohomology import (
    CoefficientModule,
    Cocycle1,
    completeness_det_test,
    gauge_act,
    gauge_equivalent,
    h0,
    h1,
    radiance_class,
)
from .examples import builtin_example
from .fibration import (
    FibrationData,
    equivariance_check,
    induced_h1_action,
    is_alt,
    radiance_map,
    validate_fibration,
)
from .ladder import LadderSpec, LevelData, lift_defect, level_defect, replay_corrections, run_ladder
from .linalg import MatrixQ
from .presentation import (
    AffineRepresentation,
    GroupHom,
    Presentation,
    Word,
    evaluate_word,
    fox_jacobian,
    verify_representation,
)

__version__ = "0.1.0"
