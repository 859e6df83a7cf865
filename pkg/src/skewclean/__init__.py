"""Strongly clean decompositions in skew triangular matrix rings over
finite local rings: ring constructions, twisted matrix arithmetic,
constructive decomposers, a brute-force oracle and a theorem harness."""

__version__ = "0.1.0"

from .operators import AdditiveMap, lr_map, solve_nilpotent
from .rings import (
    Endomorphism,
    FiniteRing,
    RingAnalysis,
    analyze,
    endo_power,
    endomorphism_from_spec,
    get_endomorphism,
    get_ring,
    is_bleached,
    ring_from_spec,
)
from .skewtri import (
    DEFAULT_BUDGET,
    CleanDecomposition,
    MatrixSpace,
    TriMatrix,
    brute_force_strongly_clean,
    decompose_t2,
    decompose_t3,
    invert_tri,
    is_unit_tri,
    is_very_clean,
    mat_mul,
    matrix_space,
    verify_decomposition,
)
from .theorems import ClaimReport, recheck_witness, run_suite
