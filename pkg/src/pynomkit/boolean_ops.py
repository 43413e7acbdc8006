"""Boolean combinations of automata.

Binary combinators build the synchronized product and attach a condition
that projects each product Inf set onto its left and right components and
combines the factor verdicts. Complement keeps the automaton's own
transition structure and negates its condition.
"""

from __future__ import annotations

import logging
from collections.abc import Set as AbstractSet
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum

from pynomkit.automaton import AcceptingCondition, Automaton, ExplicitCondition, NegatedCondition
from pynomkit.config import DEFAULT_CONFIG, ToolkitConfig
from pynomkit.graphs import reachable_states, strongly_connected_subsets, transition_graph
from pynomkit.product import ProductState, build_product

logger = logging.getLogger(__name__)


class Combination(Enum):
    """How the two factor verdicts are combined."""

    AND = "and"
    OR = "or"
    XOR = "xor"
    AND_NOT = "minus"

    def apply(self, left: bool, right: bool) -> bool:
        if self is Combination.AND:
            return left and right
        if self is Combination.OR:
            return left or right
        if self is Combination.XOR:
            return left != right
        return left and not right


@dataclass(frozen=True)
class ProductCondition(AcceptingCondition):
    """Accepting condition over product states built from the factor conditions."""

    left: AcceptingCondition
    right: AcceptingCondition
    combination: Combination
    components: Mapping[str, ProductState] = field(hash=False, repr=False)

    def split(self, states: AbstractSet[str]) -> tuple[frozenset[str], frozenset[str]]:
        """Project product states onto their left and right components."""
        left = frozenset(self.components[s].left for s in states)
        right = frozenset(self.components[s].right for s in states)
        return left, right

    def accepts(self, states: AbstractSet[str]) -> bool:
        left, right = self.split(states)
        return self.combination.apply(self.left.accepts(left), self.right.accepts(right))

    def may_accept_within(self, states: AbstractSet[str]) -> bool:
        """Subsets of ``states`` project into the projections of ``states``."""
        left, right = self.split(states)
        may_left = self.left.may_accept_within(left)
        if self.combination is Combination.AND:
            return may_left and self.right.may_accept_within(right)
        if self.combination is Combination.AND_NOT:
            return may_left
        return may_left or self.right.may_accept_within(right)


def combine(
    a1: Automaton,
    a2: Automaton,
    combination: Combination,
    name: str | None = None,
) -> Automaton:
    """The product of ``a1`` and ``a2`` accepting according to ``combination``."""
    structure = build_product(a1, a2, name=name or f"{a1.name}_{combination.value}_{a2.name}")
    condition = ProductCondition(a1.accepting, a2.accepting, combination, structure.components)
    logger.debug(
        "Combined %s %s %s into %d states",
        a1.name,
        combination.value,
        a2.name,
        len(structure.components),
    )
    return structure.automaton.with_accepting(condition)


def intersect(a1: Automaton, a2: Automaton) -> Automaton:
    return combine(a1, a2, Combination.AND)


def union(a1: Automaton, a2: Automaton) -> Automaton:
    return combine(a1, a2, Combination.OR)


def symmetric_difference(a1: Automaton, a2: Automaton) -> Automaton:
    """Words accepted by exactly one of ``a1`` and ``a2``."""
    return combine(a1, a2, Combination.XOR)


def difference(a1: Automaton, a2: Automaton) -> Automaton:
    """Words accepted by ``a1`` but not by ``a2``."""
    return combine(a1, a2, Combination.AND_NOT)


def complement(automaton: Automaton) -> Automaton:
    """Same transition structure, inverted accepting condition."""
    return automaton.with_accepting(
        NegatedCondition(automaton.accepting), name=f"not_{automaton.name}"
    )


def materialize(automaton: Automaton, config: ToolkitConfig | None = None) -> ExplicitCondition:
    """An explicit condition equivalent to the automaton's own on every run.

    Only reachable, strongly connected, edge-bearing state sets are listed;
    no other set can be the Inf set of a run.
    """
    config = config or DEFAULT_CONFIG
    graph = transition_graph(automaton)
    candidates = strongly_connected_subsets(
        graph,
        reachable_states(automaton, graph),
        config.max_candidate_sets,
        promising=automaton.accepting.may_accept_within,
    )
    accepted = sorted(
        (s for s in candidates if automaton.accepting.accepts(s)), key=lambda s: sorted(s)
    )
    return ExplicitCondition(tuple(accepted))


__all__ = [
    "Combination",
    "ProductCondition",
    "combine",
    "complement",
    "difference",
    "intersect",
    "materialize",
    "symmetric_difference",
    "union",
]
