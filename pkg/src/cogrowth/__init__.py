"""Cogrowth series, entropy and growth of finitely generated subgroups of free groups.

Typical use::

    from cogrowth import analyze, parse_word
    report = analyze(3, [parse_word("abA"), parse_word("acA")])
    report.cogrowth.to_json()   # {'num': [1, -3, 0, 4], 'den': [1, -3]}
"""

from .automata import (
    FiniteAutomaton,
    CountMatrix,
    adjacency_matrix,
    base_automaton,
    build_free_group_dfa,
    core_to_dfa,
    count_accepted,
    essential_part,
    is_ergodic,
    minimize,
    path_count_per_word,
    product,
    subgroup_dfa,
    transfer_cogrowth,
    without_start_state,
)
from .core import (
    CoreGraph,
    PreGraph,
    build_bouquet,
    conjugacy_reduce,
    core_of,
    enumerate_count,
    extended_degree,
    fold,
    is_conjugacy_reduced,
    is_normal,
    membership,
    subgroup_index,
    subgroup_rank,
)
from .exceptions import (
    AlphabetError,
    AutomatonError,
    CogrowthError,
    ConvergenceError,
    NotNielsenError,
    TrivialSubgroupError,
    WordSyntaxError,
)
from .nielsen import (
    SpanningTree,
    check_nielsen,
    geodesic_spanning_tree,
    nielsen_cogrowth,
    nielsen_matrix,
    schreier_generators,
)
from .report import AnalysisReport, analyze
from .series import Poly, RationalFunction, cogrowth_free_group, det, poly_gcd, series_coefficients
from .spectral import SpectralResult, empirical_growth_rate, entropy_of_subgroup, perron_root
from .words import (
    beta,
    concat_reduce,
    cyclically_reduce,
    format_word,
    free_reduce,
    invert,
    parse_word,
)

__version__ = "0.1.0"
