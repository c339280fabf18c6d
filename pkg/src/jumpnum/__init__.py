"""Exact-arithmetic toolkit for jumping numbers of pairs.

Given the combinatorial data of a log resolution (multiplicities,
discrepancies, dual graphs, Picard-lattice data of exceptional divisors),
the package computes candidate jumping numbers, log canonical thresholds,
complete jumping-number sets for curves on surfaces, and per-divisor
contribution and contraction verdicts.  All arithmetic is exact.
"""

from .candidates import CandidateList, candidate_jumping_numbers, lct, skoda_extend
from .contribution import (
    ContractionTestResult,
    CriterionInput,
    CriterionResult,
    classify_two_infinitely_near,
    contributes_by_effectivity,
    contribution_necessary_condition,
    curve_family_contraction_test,
    decide_contribution,
    degree_criterion_blown_up_centers,
    degree_criterion_projective_space,
    derive_criterion_input,
)
from .curves import (
    node_resolution,
    ordinary_point_resolution,
    smooth_curve_resolution,
    xpyq_resolution,
)
from .errors import (
    DataError,
    FixtureError,
    InconsistentDataError,
    InternalError,
    JumpnumError,
    LatticeConfigError,
    PreconditionError,
)
from .io import parse_fixture, resolution_to_dict, resolution_to_json, validate_fixture
from .lattice import (
    BlowupHistory,
    Center,
    ComponentHistory,
    CurveFamily,
    EffectivityResult,
    ExcDivLattice,
    LatticeFlags,
    PicClass,
    canonical_class,
    floor_pullback_restriction,
    is_effective,
    nonnegative_combination,
    pair,
    self_restriction,
)
from .model import (
    ContributionVerdict,
    Diagnostic,
    DualGraphEdge,
    PrimeDivisor,
    ResolutionData,
    is_candidate_for,
    self_intersections,
    validate,
)
from .rationals import Rational, format_rational, frac, parse_rational
from .surface import (
    AntinefDivisor,
    ExceptionalDivisorProfile,
    SurfaceCriterionRow,
    exceptional_profiles,
    surface_contributes,
    surface_criterion_report,
    surface_jumping_numbers,
    unloading_closure,
)

__version__ = "0.1.0"
