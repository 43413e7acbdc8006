"""Brute-force reference implementations for differential testing.

Nothing here calls the stepping, product or loop code of the library; it
works on plain dictionaries and scans transition lists directly, favouring
simplicity over speed; inputs are expected to be small.
"""

from __future__ import annotations

import itertools
import logging
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field

from pynomkit.automaton import STAR, Automaton, Transition
from pynomkit.config import DEFAULT_CONFIG, ToolkitConfig
from pynomkit.configuration import UPWord, Verdict
from pynomkit.product import ProductStructure, Side, build_product
from pynomkit.upwords import Loop

logger = logging.getLogger(__name__)

Assignment = dict[str, str]
Node = tuple[int, frozenset[tuple[str, str]]]


def _find(automaton: Automaton, state: str, label: object) -> Transition:
    for t in automaton.transitions:
        if t.source == state and t.label == label:
            return t
    raise LookupError(f"{automaton.name} has no transition for {label} at {state}")


def _apply(t: Transition, assignment: Mapping[str, str], name: str) -> Assignment:
    updated: Assignment = {}
    for reg, source in t.history.items():
        updated[reg] = name if source is STAR else assignment[source]
    return updated


def _successor(
    automaton: Automaton, state: str, assignment: Mapping[str, str], name: str
) -> tuple[str, Assignment]:
    label: object = STAR
    for reg, held in assignment.items():
        if held == name:
            label = reg
    t = _find(automaton, state, label)
    return t.target, _apply(t, assignment, name)


def _freeze(assignment: Mapping[str, str]) -> frozenset[tuple[str, str]]:
    return frozenset(assignment.items())


def oracle_up_member(automaton: Automaton, word: UPWord) -> Verdict:
    """Membership by a lasso over ``(state, assignment, position in v)`` triples."""
    state, assignment = automaton.initial_state, dict(automaton.initial_assignment)
    for name in word.u:
        state, assignment = _successor(automaton, state, assignment, name)

    seen: dict[tuple[str, frozenset[tuple[str, str]], int], int] = {}
    states: list[str] = []
    position = 0
    while True:
        key = (state, _freeze(assignment), position)
        if key in seen:
            inf = frozenset(states[seen[key] :])
            return Verdict(automaton.accepting.accepts(inf), inf)
        seen[key] = len(states)
        states.append(state)
        state, assignment = _successor(automaton, state, assignment, word.v[position])
        position = (position + 1) % len(word.v)


@dataclass
class EdgeReport:
    """Outcome of checking a product against its factors edge by edge."""

    checked: int = 0
    """Number of (configuration, name) pairs examined."""

    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _outside(pool: Sequence[str]) -> str:
    candidate, k = "fresh", 0
    while candidate in pool:
        k += 1
        candidate = f"fresh{k}"
    return candidate


def _split(
    structure: ProductStructure, state: str, assignment: Mapping[str, str]
) -> tuple[tuple[str, Assignment], tuple[str, Assignment]]:
    triple = structure.components[state]
    classes = structure.register_classes[state]
    left: Assignment = {}
    right: Assignment = {}
    for reg, name in assignment.items():
        for side, member in classes[reg].members:
            (left if side is Side.LEFT else right)[member] = name
    return (triple.left, left), (triple.right, right)


def oracle_edge_correspondence(
    a1: Automaton,
    a2: Automaton,
    pool: Iterable[str],
    product: ProductStructure | None = None,
) -> EdgeReport:
    """Check every product edge over ``pool`` against the factors' edges.

    Every product state is combined with every injective assignment of its
    registers into ``pool``; each such configuration is stepped on every
    pool name and on one name outside the pool. The product successor must
    project onto both factor successors, and its register relation must
    relate exactly the factor registers holding equal names.
    """
    names_in_pool = list(pool)
    structure = product if product is not None else build_product(a1, a2)
    automaton = structure.automaton
    if len(names_in_pool) < max(a1.max_registers, a2.max_registers) + 2:
        logger.warning("Pool of %d names is smaller than recommended", len(names_in_pool))
    names = [*names_in_pool, _outside(names_in_pool)]
    report = EdgeReport()

    for state, regs in automaton.registers.items():
        for values in itertools.permutations(names_in_pool, len(regs)):
            assignment = dict(zip(regs, values))
            (q1, rho1), (q2, rho2) = _split(structure, state, assignment)
            for name in names:
                report.checked += 1
                where = f"{state} {assignment} on {name}"
                try:
                    target, after = _successor(automaton, state, assignment, name)
                except (LookupError, KeyError) as exc:
                    report.violations.append(f"{where}: product cannot step ({exc})")
                    continue
                if len(set(after.values())) != len(after):
                    report.violations.append(f"{where}: non-injective successor {after}")
                    continue
                try:
                    expected1 = _successor(a1, q1, rho1, name)
                    expected2 = _successor(a2, q2, rho2, name)
                    got1, got2 = _split(structure, target, after)
                except (LookupError, KeyError) as exc:
                    report.violations.append(f"{where}: inconsistent product data ({exc})")
                    continue
                if got1 != expected1:
                    report.violations.append(f"{where}: left projection {got1} != {expected1}")
                if got2 != expected2:
                    report.violations.append(f"{where}: right projection {got2} != {expected2}")
                equal = {
                    (x, y)
                    for x, u in expected1[1].items()
                    for y, v in expected2[1].items()
                    if u == v
                }
                if set(structure.components[target].rel.pairs) != equal:
                    report.violations.append(
                        f"{where}: relation {structure.components[target].rel} "
                        f"does not match equal names {sorted(equal)}"
                    )
    logger.debug(
        "Edge correspondence: %d checks, %d violations", report.checked, len(report.violations)
    )
    return report


def oracle_loop_search(
    loop: Loop,
    assignment: Mapping[str, str],
    bound: int,
    config: ToolkitConfig | None = None,
) -> tuple[str, ...] | None:
    """Breadth-first search for a word following the loop back to its start.

    ``*`` steps branch over the start names plus a reserve of new names (the
    largest register count along the loop plus ``oracle_reserve_extra``);
    at most ``bound`` traversals are explored.
    """
    if bound < 1:
        raise ValueError(f"bound must be at least 1, got {bound}")
    config = config or DEFAULT_CONFIG
    steps = loop.transitions
    n = len(steps)
    widest = max(len(t.history) for t in steps)
    reserve: list[str] = []
    counter = 0
    while len(reserve) < widest + config.oracle_reserve_extra:
        candidate = f"{config.fresh_prefix}r{counter}"
        counter += 1
        if candidate not in assignment.values():
            reserve.append(candidate)
    candidates = [*dict.fromkeys(assignment.values()), *reserve]

    start = _freeze(assignment)
    parents: dict[Node, tuple[Node, str]] = {}
    queue: deque[Node] = deque([(0, start)])
    visited = {(0, start)}
    while queue:
        node = queue.popleft()
        position, frozen = node
        if position and position % n == 0 and frozen == start:
            word: list[str] = []
            while node in parents:
                node, name = parents[node]
                word.append(name)
            return tuple(reversed(word))
        if position == bound * n:
            continue
        current = dict(frozen)
        t = steps[position % n]
        if t.label is STAR:
            held = set(current.values())
            options = [name for name in candidates if name not in held]
        else:
            options = [current[str(t.label)]]
        for name in options:
            child = (position + 1, _freeze(_apply(t, current, name)))
            if child not in visited:
                visited.add(child)
                parents[child] = (node, name)
                queue.append(child)
    return None


__all__ = [
    "EdgeReport",
    "oracle_edge_correspondence",
    "oracle_loop_search",
    "oracle_up_member",
]
