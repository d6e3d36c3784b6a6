"""Smoothness of affine type A Schubert varieties, exactly.

Three views of the same count live here: pattern avoidance on affine
permutations, iterated parabolic (BP) factorizations, and staircase
diagrams over the cycle graph, tied together by exact generating
functions.  See the README for the command-line interface.
"""

from .affine import (
    AffinePermutation,
    bruhat_leq,
    bruhat_lower_interval,
    coset_decompose,
    coset_decompose_left,
    from_window,
    from_word,
    identity,
    longest_element,
    longest_length,
    multiply,
    poincare_polynomial,
    simple_reflection,
)
from .bp import (
    BPDecomposition,
    GrassmannianLabel,
    complete_bp_decomposition,
    fibre_tower,
    find_grassmannian_bp,
    is_bp,
    is_smooth_partial,
)
from .errors import BudgetExceeded, CapExceeded, MalformedDiagram, NotSmooth
from .poly import Polynomial, is_palindromic
from .series import (
    FORMULA,
    IntSeries,
    SeriesFormula,
    alpha,
    asymptotic_check,
    catalan,
    series_A_assembled,
    series_A_closed,
    series_AB,
    series_Abar,
    series_AF,
    series_AM,
    series_Astar,
    sqrt_one_minus_4t,
)
from .smoothness import (
    PATTERN_3412,
    PATTERN_4231,
    SpiralSpec,
    contains_pattern,
    enumerate_smooth,
    is_rationally_smooth,
    is_smooth,
    is_twisted_spiral,
    pattern_occurrence,
    smooth_count,
    spiral,
    spiral_word,
    twisted_spiral,
)
from .staircase import (
    DECREASING,
    INCREASING,
    BrokenStaircase,
    CoxGraph,
    DyckPath,
    StaircaseDiagram,
    break_staircase,
    broken_staircases,
    cycle_decompose,
    cycle_glue,
    cycle_graph,
    dyck_paths,
    enumerate_diagrams,
    from_dyck,
    from_json,
    fully_supported_path_diagrams,
    increasing_diagrams,
    line_decompose,
    line_glue,
    path_graph,
    render,
    to_dyck,
    to_element,
    to_json,
    unbreak,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
