"""Exact word growth of finitely presented groups.

Build a presentation with :func:`build_presentation` or load one with
:func:`load_group`, enumerate spheres with :func:`enumerate_growth`, fit the
growth series with :func:`fit_rational` and run the full on-range report
with :func:`run_theorem_report`.
"""

from .asymptotics import GrowthAsymptotics, extract_asymptotics, smallest_positive_pole
from .catalog import CATALOG, load_group
from .cayley import ElementIndex, GrowthTable, distance, enumerate_growth
from .errors import GrowthLabError
from .kernels import BACKEND
from .presentation import (
    GroupPresentation,
    build_presentation,
    canonical_form,
    dehn_reduce,
    group_op,
    invert,
)
from .rewriting import RewritingSystem, kb_complete, normal_form
from .series import (
    RationalGrowthFunction,
    SeriesCoefficients,
    fit_rational,
    spherical_volume_convert,
)
from .thinness import ThinnessReport, estimate_delta
from .verify import (
    TheoremReport,
    check_ball_bounds,
    check_fiber_bounds,
    check_lemma_inequality,
    epsilon_default,
    evaluate_rhs_split,
    run_theorem_report,
    verify_purely_exponential,
)
from .words import Alphabet, free_reduce, shortlex_compare

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "BACKEND",
    "CATALOG",
    "ElementIndex",
    "GroupPresentation",
    "GrowthAsymptotics",
    "GrowthLabError",
    "GrowthTable",
    "RationalGrowthFunction",
    "RewritingSystem",
    "SeriesCoefficients",
    "TheoremReport",
    "ThinnessReport",
    "build_presentation",
    "canonical_form",
    "check_ball_bounds",
    "check_fiber_bounds",
    "check_lemma_inequality",
    "dehn_reduce",
    "distance",
    "enumerate_growth",
    "epsilon_default",
    "estimate_delta",
    "evaluate_rhs_split",
    "extract_asymptotics",
    "fit_rational",
    "free_reduce",
    "group_op",
    "invert",
    "kb_complete",
    "load_group",
    "normal_form",
    "run_theorem_report",
    "shortlex_compare",
    "smallest_positive_pole",
    "spherical_volume_convert",
    "verify_purely_exponential",
]
