"""
pynomkit - nominal omega-regular languages in Python

Build, run and compare history-dependent deterministic Muller automata
(hDMA) over an infinite alphabet of names. Languages are closed under
union, intersection and complement, and emptiness, equivalence and
inclusion are decidable; nonempty languages come with an ultimately
periodic witness word.

Example usage:
    >>> from pynomkit import get_example, up_member, UPWord
    >>>
    >>> session = get_example("session").automaton()
    >>> up_member(session, UPWord.of([], ["a", "a"])).accepted
    True

Comparing languages:
    >>> from pynomkit import complement, equivalent, intersect, is_empty
    >>>
    >>> is_empty(intersect(session, complement(session))).empty
    True
"""

from __future__ import annotations

__version__ = "0.1.0"

from pynomkit.automaton import (
    ACCEPT_ALL,
    ACCEPT_NOTHING,
    STAR,
    AcceptingCondition,
    Automaton,
    AutomatonDescription,
    ExplicitCondition,
    History,
    NegatedCondition,
    Transition,
    check,
    complete_with_sink,
    describe,
    validate,
)
from pynomkit.boolean_ops import (
    Combination,
    combine,
    complement,
    difference,
    intersect,
    materialize,
    symmetric_difference,
    union,
)
from pynomkit.config import DEFAULT_CONFIG, ToolkitConfig, load_config
from pynomkit.configuration import (
    Configuration,
    UPWord,
    Verdict,
    fire,
    initial_configuration,
    run_prefix,
    step,
    up_member,
)
from pynomkit.corpus import Example, get_example, list_examples, load_example_file
from pynomkit.decision import (
    Comparison,
    EmptinessResult,
    equivalent,
    find_loop,
    included,
    is_empty,
    witness,
)
from pynomkit.errors import (
    AutomatonFormatError,
    DecisionError,
    InvariantViolation,
    NominalError,
    ValidationError,
    Violation,
)
from pynomkit.fileformat import (
    load_automaton,
    parse_automaton,
    parse_upword,
    read_automaton,
    serialize_automaton,
    write_automaton,
)
from pynomkit.product import ProductStructure, build_product, project
from pynomkit.upwords import Loop, LoopAnalysis, analyze_loop, realize_loop

__all__ = [
    "ACCEPT_ALL",
    "ACCEPT_NOTHING",
    "DEFAULT_CONFIG",
    "STAR",
    "AcceptingCondition",
    "Automaton",
    "AutomatonDescription",
    "AutomatonFormatError",
    "Combination",
    "Comparison",
    "Configuration",
    "DecisionError",
    "EmptinessResult",
    "Example",
    "ExplicitCondition",
    "History",
    "InvariantViolation",
    "Loop",
    "LoopAnalysis",
    "NegatedCondition",
    "NominalError",
    "ProductStructure",
    "ToolkitConfig",
    "Transition",
    "UPWord",
    "ValidationError",
    "Verdict",
    "Violation",
    "__version__",
    "analyze_loop",
    "build_product",
    "check",
    "combine",
    "complement",
    "complete_with_sink",
    "describe",
    "difference",
    "equivalent",
    "find_loop",
    "fire",
    "get_example",
    "included",
    "initial_configuration",
    "intersect",
    "is_empty",
    "list_examples",
    "load_automaton",
    "load_config",
    "load_example_file",
    "materialize",
    "parse_automaton",
    "parse_upword",
    "project",
    "read_automaton",
    "realize_loop",
    "run_prefix",
    "serialize_automaton",
    "step",
    "symmetric_difference",
    "union",
    "up_member",
    "validate",
    "witness",
    "write_automaton",
]
