"""Transition graphs of automata and their strongly connected subsets.

The Inf set of any run is a strongly connected set of reachable states
carrying at least one edge, so these are the only candidates the emptiness
check and accepting-condition export have to look at.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable, Iterator

import networkx as nx

from pynomkit.automaton import Automaton, Transition
from pynomkit.errors import DecisionError

logger = logging.getLogger(__name__)


def transition_graph(automaton: Automaton) -> nx.DiGraph:
    """Directed graph over states; each edge lists the transitions it stands for."""
    graph = nx.DiGraph()
    graph.add_nodes_from(automaton.states)
    for state in automaton.states:
        for t in automaton.outgoing(state):
            if graph.has_edge(t.source, t.target):
                graph.edges[t.source, t.target]["transitions"].append(t)
            else:
                graph.add_edge(t.source, t.target, transitions=[t])
    return graph


def reachable_states(automaton: Automaton, graph: nx.DiGraph | None = None) -> frozenset[str]:
    graph = transition_graph(automaton) if graph is None else graph
    return frozenset(nx.descendants(graph, automaton.initial_state)) | {automaton.initial_state}


def has_cycle(graph: nx.DiGraph, component: frozenset[str]) -> bool:
    """Whether a strongly connected ``component`` carries an edge."""
    if len(component) > 1:
        return True
    (state,) = component
    return bool(graph.has_edge(state, state))


def strongly_connected_subsets(
    graph: nx.DiGraph,
    nodes: Iterable[str],
    limit: int,
    promising: Callable[[frozenset[str]], bool] | None = None,
) -> Iterator[frozenset[str]]:
    """Every strongly connected, edge-bearing subset of ``nodes``.

    A component is yielded before the components obtained by removing one of
    its states, so maximal sets come first. Each set is visited once. When
    ``promising`` returns False for a component, neither it nor any of its
    subsets is yielded.

    Raises:
        DecisionError: after visiting more than ``limit`` sets.
    """
    seen: set[frozenset[str]] = set()
    stack = [frozenset(c) for c in nx.strongly_connected_components(graph.subgraph(nodes))]
    stack.sort(key=sorted, reverse=True)
    while stack:
        component = stack.pop()
        if component in seen:
            continue
        seen.add(component)
        if len(seen) > limit:
            raise DecisionError(f"More than {limit} candidate state sets; raise max_candidate_sets")
        if promising is not None and not promising(component):
            continue
        if has_cycle(graph, component):
            yield component
        if len(component) == 1:
            continue
        children: list[frozenset[str]] = []
        for removed in sorted(component):
            rest = graph.subgraph(component - {removed})
            children.extend(frozenset(c) for c in nx.strongly_connected_components(rest))
        children.sort(key=sorted, reverse=True)
        stack.extend(c for c in children if c not in seen)
    logger.debug("Visited %d strongly connected subsets", len(seen))


def path_transitions(graph: nx.DiGraph, path: list[str]) -> list[Transition]:
    """The transitions along a node path, taking the first one per edge."""
    return [graph.edges[a, b]["transitions"][0] for a, b in zip(path, path[1:])]


def shortest_transitions(
    graph: nx.DiGraph,
    source: str,
    target: str,
    within: Iterable[str] | None = None,
) -> list[Transition]:
    """Shortest transition sequence from ``source`` to ``target``.

    Raises:
        networkx.NetworkXNoPath: if ``target`` cannot be reached.
    """
    view = graph if within is None else graph.subgraph(within)
    return path_transitions(view, nx.shortest_path(view, source, target))


def shortest_cycle(
    graph: nx.DiGraph,
    state: str,
    within: Iterable[str] | None = None,
) -> list[Transition] | None:
    """Shortest cycle through ``state``, or None if there is none."""
    view = graph if within is None else graph.subgraph(within)
    if view.has_edge(state, state):
        return [view.edges[state, state]["transitions"][0]]
    best: list[Transition] | None = None
    for successor in sorted(view.successors(state)):
        try:
            back = shortest_transitions(view, successor, state)
        except nx.NetworkXNoPath:
            continue
        cycle = [view.edges[state, successor]["transitions"][0], *back]
        if best is None or len(cycle) < len(best):
            best = cycle
    return best


__all__ = [
    "has_cycle",
    "path_transitions",
    "reachable_states",
    "shortest_cycle",
    "shortest_transitions",
    "strongly_connected_subsets",
    "transition_graph",
]
