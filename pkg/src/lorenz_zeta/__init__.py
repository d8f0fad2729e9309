"""Exact Williams and Sullivan zeta functions of sub-Lorenz templates."""

from .errors import *  # noqa: F401,F403
from .linkring import (
    LinkRingElement,
    Necklace,
    abelianize,
    canonical_necklace,
    exp_trace_series,
    link_det,
    star_substitute,
    verify_williams_exp,
    verify_williams_factorization,
)
from .symbolic import (
    KneadingPair,
    Word,
    common_suffix_len,
    compare_words,
    enumerate_admissible_pairs,
    finite_periodic_equivalence,
    is_admissible_pair,
    parse_pair,
    parse_word,
    shift,
    star_pair,
    star_word,
    word_stats,
)
from .template import FactorDecomposition, TemplateModel, build_template, factor_structure, partition_points
from .twist import (
    TwistCensus,
    TwistPolynomial,
    TwistSeries,
    orbit_census,
    sullivan_series,
    twist_char_poly,
    verify_sullivan_exp_identity,
    verify_sullivan_factorization,
)

__version__ = "0.1.0"
