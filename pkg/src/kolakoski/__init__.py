"""Block-pillar construction and analysis of Kolakoski sequences K(a, b).

The library builds the nested block-pillar tower for the {1, 3} sequence,
verifies its structural properties against an independent self-reading
generator, computes exact per-level statistics and their limit constants,
and searches other two-symbol alphabets for the same kind of structure.
"""

__version__ = "0.1.0"

from .analysis import (
    GrowthReport,
    GrowthRow,
    SpectralConstants,
    check_identity,
    compute_stats,
    density_difference,
    density_step,
    growth_diagnostics,
    limit_density,
    limit_matrix_spectrum,
    pisot_root,
)
from .blocks import (
    ALPHABET,
    Level,
    LemmaVerdict,
    PrefixVerdict,
    StepVerdict,
    block_chunks,
    initial_level,
    inject_block_fault,
    iter_levels,
    level_at,
    next_level,
    pillar_chunks,
    pillar_stream,
    verify_kolakoski_step,
    verify_lemma,
    verify_prefix,
)
from .errors import (
    KolakoskiError,
    MaterializationLimitError,
    RootSolverError,
    TimeBudgetError,
)
from .explore import Candidate, detect
from .stats import LevelStats, advance_stats
from .words import (
    DEFAULT_CAP,
    DEFAULT_CHUNK,
    Alphabet,
    RunLengthVector,
    Word,
    count_symbol,
    generate,
    kolakoski_chunks,
    kolakoski_stream,
    run_length_encode,
    word_as_runs,
)

__all__ = [
    "ALPHABET",
    "Alphabet",
    "Candidate",
    "DEFAULT_CAP",
    "DEFAULT_CHUNK",
    "GrowthReport",
    "GrowthRow",
    "KolakoskiError",
    "LemmaVerdict",
    "Level",
    "LevelStats",
    "MaterializationLimitError",
    "PrefixVerdict",
    "RootSolverError",
    "RunLengthVector",
    "SpectralConstants",
    "StepVerdict",
    "TimeBudgetError",
    "Word",
    "advance_stats",
    "block_chunks",
    "check_identity",
    "compute_stats",
    "count_symbol",
    "density_difference",
    "density_step",
    "detect",
    "generate",
    "growth_diagnostics",
    "initial_level",
    "inject_block_fault",
    "iter_levels",
    "kolakoski_chunks",
    "kolakoski_stream",
    "level_at",
    "limit_density",
    "limit_matrix_spectrum",
    "next_level",
    "pillar_chunks",
    "pillar_stream",
    "pisot_root",
    "run_length_encode",
    "verify_kolakoski_step",
    "verify_lemma",
    "verify_prefix",
    "word_as_runs",
]
