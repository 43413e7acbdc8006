"""Emptiness, witnesses, equivalence and inclusion.

Emptiness only looks at the finite transition structure: the language is
nonempty iff some reachable, strongly connected, edge-bearing set of states
is accepting. A witness word is then built by reading the access path with
fresh names and realizing a loop through exactly that set.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Mapping
from dataclasses import dataclass

import networkx as nx

from pynomkit.automaton import (
    STAR,
    AcceptingCondition,
    Automaton,
    ExplicitCondition,
    History,
    Label,
    Transition,
)
from pynomkit.boolean_ops import difference, symmetric_difference
from pynomkit.config import DEFAULT_CONFIG, ToolkitConfig
from pynomkit.configuration import FreshNames, UPWord, fire, initial_configuration, up_member
from pynomkit.errors import InvariantViolation
from pynomkit.graphs import (
    has_cycle,
    reachable_states,
    shortest_cycle,
    shortest_transitions,
    strongly_connected_subsets,
    transition_graph,
)
from pynomkit.upwords import Loop, realize_loop

logger = logging.getLogger(__name__)

Symbol = tuple[Label, History]


@dataclass(frozen=True)
class FiniteMuller:
    """The automaton read as a deterministic Muller automaton over its transition labels."""

    states: tuple[str, ...]
    initial_state: str
    alphabet: frozenset[Symbol]
    transitions: Mapping[tuple[str, Symbol], str]
    accepting: AcceptingCondition


def to_finite_muller(automaton: Automaton) -> FiniteMuller:
    """Forget names: each ``(label, history)`` pair becomes one letter."""
    transitions = {(t.source, (t.label, t.history)): t.target for t in automaton.transitions}
    return FiniteMuller(
        states=automaton.states,
        initial_state=automaton.initial_state,
        alphabet=frozenset(symbol for _, symbol in transitions),
        transitions=transitions,
        accepting=automaton.accepting,
    )


@dataclass(frozen=True)
class WitnessLoop:
    """An accepting state set with an access path and a loop covering it."""

    states: frozenset[str]
    access: tuple[Transition, ...]
    loop: tuple[Transition, ...]

    def __post_init__(self) -> None:
        if not self.loop:
            raise ValueError("Witness loop must not be empty")
        visited = frozenset(t.source for t in self.loop)
        if visited != self.states or any(t.target not in self.states for t in self.loop):
            raise InvariantViolation(
                f"Loop visits {sorted(visited)}, expected {sorted(self.states)}"
            )
        if self.access and self.access[-1].target != self.loop[0].source:
            raise InvariantViolation("Access path does not end where the loop starts")


@dataclass(frozen=True)
class EmptinessResult:
    empty: bool
    witness_loop: WitnessLoop | None = None

    @property
    def label(self) -> str:
        return "EMPTY" if self.empty else "NONEMPTY"


def _witness_loop(
    automaton: Automaton, graph: nx.DiGraph, states: frozenset[str]
) -> WitnessLoop:
    anchor = min(states)
    access = shortest_transitions(graph, automaton.initial_state, anchor)
    loop: list[Transition] = []
    if len(states) == 1:
        cycle = shortest_cycle(graph, anchor, within=states)
        assert cycle is not None
        loop = cycle
    else:
        current = anchor
        for goal in [*sorted(states - {anchor}), anchor]:
            loop += shortest_transitions(graph, current, goal, within=states)
            current = goal
    return WitnessLoop(states, tuple(access), tuple(loop))


def _is_inf_candidate(
    graph: nx.DiGraph, reachable: frozenset[str], states: frozenset[str]
) -> bool:
    """Whether ``states`` can be the Inf set of some run."""
    if not states or not states <= reachable:
        return False
    return nx.is_strongly_connected(graph.subgraph(states)) and has_cycle(graph, states)


def is_empty(automaton: Automaton, config: ToolkitConfig | None = None) -> EmptinessResult:
    """Decide whether the language of ``automaton`` is empty.

    Explicit conditions are checked set by set. Other conditions enumerate
    candidate sets, skipping those whose subsets the condition rules out.

    Raises:
        DecisionError: if more than ``config.max_candidate_sets`` sets are visited.
    """
    config = config or DEFAULT_CONFIG
    graph = transition_graph(automaton)
    reachable = reachable_states(automaton, graph)
    accepting = automaton.accepting
    if isinstance(accepting, ExplicitCondition):
        candidates: Iterable[frozenset[str]] = (
            s for s in accepting.sets if _is_inf_candidate(graph, reachable, s)
        )
    else:
        candidates = strongly_connected_subsets(
            graph, reachable, config.max_candidate_sets, promising=accepting.may_accept_within
        )
    for candidate in candidates:
        if automaton.accepting.accepts(candidate):
            logger.debug("%s is nonempty: accepting set %s", automaton.name, sorted(candidate))
            return EmptinessResult(False, _witness_loop(automaton, graph, candidate))
    logger.debug("%s is empty (%d reachable states)", automaton.name, len(reachable))
    return EmptinessResult(True)


def find_loop(automaton: Automaton, state: str) -> Loop:
    """Shortest loop through ``state``.

    Raises:
        ValueError: if ``state`` lies on no cycle.
    """
    if state not in automaton.registers:
        raise ValueError(f"Unknown state {state}")
    cycle = shortest_cycle(transition_graph(automaton), state)
    if cycle is None:
        raise ValueError(f"State {state} lies on no loop")
    return Loop(tuple(cycle))


def witness(automaton: Automaton, config: ToolkitConfig | None = None) -> UPWord | None:
    """An ultimately periodic word accepted by ``automaton``, or None if it is empty."""
    config = config or DEFAULT_CONFIG
    result = is_empty(automaton, config)
    if result.witness_loop is None:
        return None
    found = result.witness_loop

    start = initial_configuration(automaton)
    fresh = FreshNames(start.image, config.fresh_prefix)
    current = start
    u: list[str] = []
    for t in found.access:
        name = next(fresh) if t.label is STAR else current.assignment[t.label]
        current = fire(t, current, name)
        u.append(name)

    v = realize_loop(
        Loop(found.loop), current.assignment, avoid=[*start.image, *u], config=config
    )
    word = UPWord(tuple(u), v)
    if not up_member(automaton, word).accepted:
        raise InvariantViolation(f"Witness {word} is rejected by {automaton.name}")
    return word


@dataclass(frozen=True)
class Comparison:
    """Outcome of a language comparison, with a separating word when it fails."""

    holds: bool
    counterexample: UPWord | None = None


def equivalent(a1: Automaton, a2: Automaton, config: ToolkitConfig | None = None) -> Comparison:
    """Language equality; the counterexample is accepted by exactly one side."""
    word = witness(symmetric_difference(a1, a2), config)
    if word is None:
        return Comparison(True)
    if up_member(a1, word).accepted == up_member(a2, word).accepted:
        raise InvariantViolation(
            f"Counterexample {word} does not separate {a1.name} and {a2.name}"
        )
    return Comparison(False, word)


def included(a1: Automaton, a2: Automaton, config: ToolkitConfig | None = None) -> Comparison:
    """Language inclusion; the counterexample is accepted by ``a1`` only."""
    word = witness(difference(a1, a2), config)
    if word is None:
        return Comparison(True)
    if not up_member(a1, word).accepted or up_member(a2, word).accepted:
        raise InvariantViolation(f"Counterexample {word} is not in {a1.name} minus {a2.name}")
    return Comparison(False, word)


__all__ = [
    "Comparison",
    "EmptinessResult",
    "FiniteMuller",
    "WitnessLoop",
    "equivalent",
    "find_loop",
    "included",
    "is_empty",
    "to_finite_muller",
    "witness",
]
