"""Toolkit for n-move Ehrenfeucht-Fraisse equivalence of finite coloured
linear orders: deciding, classifying, canonicalising, certifying, and playing
the game live against a synthesized strategy."""

from .engine import (
    PLAYER_I,
    PLAYER_II,
    SIDE_A,
    SIDE_B,
    Character,
    GameState,
    MoveChoice,
    NType,
    TypeContext,
    alive_for_ii,
    best_move,
    characters,
    cut,
    equiv,
    game_oracle,
    interval_ntype,
    ntype,
)
from .errors import BudgetError, InfeasibleError, ParseError, effective_budget
from .orders import (
    Colour,
    ColouredOrder,
    IntervalView,
    Palette,
    colour_set,
    parse,
    read_orders,
)
from .threeequiv import (
    LEN70,
    LEN70_TEXT,
    LEN74,
    LEN74_TEXT,
    PALINDROME15,
    PALINDROME15_TEXT,
    CharacterDigraph,
    CoveringWalk,
    OptimalityCertificate,
    WalkProblem,
    WindowDigraph,
    all_cyclic_windows_distinct,
    character_digraph,
    debruijn,
    lmr_split3,
    min_covering_walk,
    validate_debruijn,
    verify74,
    verify_distinct_characters,
    verify_optimal3_bruteforce,
    window_digraph,
)
from .twoequiv import (
    Catalogue2,
    ClassDescriptor2,
    ClassRecord,
    TConfiguration,
    canon2,
    descriptor,
    enumerate2,
    feasible,
    gap_allowed_colours,
    generate_descriptors,
    is_finite_class,
    is_optimal2,
    lmr_split2,
    max_optimal_length2,
    merge_patterns,
    realize,
    tconfig_of,
)

__version__ = "0.1.0"
