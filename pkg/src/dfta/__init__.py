"""Emptiness and equivalence checking for top-down deterministic tree automata."""

from .core import Alphabet, Dfta, RankedSymbol, Rule, Tree, accepts, new_dfta
from .emptiness import NonEmptyResult, dependency_index, is_empty, nonempty_states
from .equivalence import (
    Conflict,
    EquationSystem,
    EquivalenceChecker,
    PendingEquality,
    Status,
    TrimmedDfta,
    Verdict,
    build_equation_system,
    check_equivalence,
    extract_witness,
    trim,
)
from .errors import (
    ArityMismatch,
    DftaError,
    DuplicateLhs,
    DuplicateState,
    DuplicateSymbol,
    InitialNotAState,
    ParseError,
    SourceSpan,
    UnknownState,
    UnknownSymbol,
    ValidationError,
)
from .text import parse_dfta, parse_tree, render_dfta, render_tree

__all__ = [
    "Alphabet", "Dfta", "RankedSymbol", "Rule", "Tree", "accepts", "new_dfta",
    "NonEmptyResult", "dependency_index", "is_empty", "nonempty_states",
    "Conflict", "EquationSystem", "EquivalenceChecker", "PendingEquality", "Status",
    "TrimmedDfta", "Verdict", "build_equation_system", "check_equivalence",
    "extract_witness", "trim",
    "ArityMismatch", "DftaError", "DuplicateLhs", "DuplicateState", "DuplicateSymbol",
    "InitialNotAState", "ParseError", "SourceSpan", "UnknownState", "UnknownSymbol",
    "ValidationError",
    "parse_dfta", "parse_tree", "render_dfta", "render_tree",
]
