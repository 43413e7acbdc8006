"""Configuration graph semantics.

A configuration pairs a state with an injective assignment of names to the
state's registers. Reading a name either follows the register holding it or,
when no register holds it, the ``*`` transition, which may store the name.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field

from pynomkit.automaton import STAR, Automaton, Transition, is_name
from pynomkit.errors import InvariantViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Configuration:
    """A state with an injective register assignment.

    ``bindings`` holds ``(register, name)`` pairs sorted by register so equal
    configurations hash equally.
    """

    state: str
    bindings: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        names = [name for _, name in self.bindings]
        if len(set(names)) != len(names):
            raise ValueError(f"Assignment of {self.state} is not injective: {dict(self.bindings)}")

    @classmethod
    def of(cls, state: str, assignment: Mapping[str, str] | None = None) -> Configuration:
        items = (assignment or {}).items()
        return cls(state, tuple(sorted(items, key=lambda item: item[0])))

    @property
    def assignment(self) -> dict[str, str]:
        return dict(self.bindings)

    @property
    def image(self) -> frozenset[str]:
        return frozenset(name for _, name in self.bindings)

    def register_holding(self, name: str) -> str | None:
        """The register assigned ``name``, or None when ``name`` is fresh here."""
        for reg, bound in self.bindings:
            if bound == name:
                return reg
        return None

    def __str__(self) -> str:
        body = ", ".join(f"{reg}={name}" for reg, name in self.bindings)
        return f"({self.state}, {{{body}}})"


def initial_configuration(automaton: Automaton) -> Configuration:
    return Configuration.of(automaton.initial_state, automaton.initial_assignment)


def check_configuration(automaton: Automaton, config: Configuration) -> None:
    """Raise ValueError unless ``config`` is a configuration of ``automaton``."""
    if config.state not in automaton.registers:
        raise ValueError(f"Unknown state {config.state} in {automaton.name}")
    expected = sorted(automaton.registers[config.state])
    actual = sorted(config.assignment)
    if expected != actual:
        raise ValueError(f"Configuration {config} assigns {actual}, expected registers {expected}")


def step_transition(automaton: Automaton, config: Configuration, name: str) -> Transition:
    """The transition taken when ``name`` is read in ``config``."""
    reg = config.register_holding(name)
    return automaton.transition(config.state, STAR if reg is None else reg)


def fire(transition: Transition, config: Configuration, name: str) -> Configuration:
    """Follow ``transition`` from ``config`` reading ``name``.

    Raises:
        InvariantViolation: if ``name`` is inconsistent with the label, i.e. a
            register label whose register does not hold ``name``, or a ``*``
            label while some register holds ``name``.
    """
    if transition.source != config.state:
        raise InvariantViolation(f"Transition {transition} does not leave {config.state}")
    assignment = config.assignment
    if transition.label is STAR:
        if name in assignment.values():
            raise InvariantViolation(f"{name} is not fresh in {config}")
    elif assignment.get(transition.label) != name:
        raise InvariantViolation(f"Register {transition.label} does not hold {name} in {config}")

    target: dict[str, str] = {}
    for reg, source in transition.history.items():
        target[reg] = name if source is STAR else assignment[source]
    return Configuration.of(transition.target, target)


def step(automaton: Automaton, config: Configuration, name: str) -> Configuration:
    """The unique successor of ``config`` on ``name``."""
    return fire(step_transition(automaton, config, name), config, name)


@dataclass(frozen=True)
class RunRecord:
    """The path of a finite word: its last configuration and visited states."""

    final: Configuration
    visited: tuple[str, ...]
    path: tuple[Configuration, ...] = field(default=(), compare=False)
    """Every configuration along the path, start included."""


def run_prefix(automaton: Automaton, start: Configuration, word: Iterable[str]) -> RunRecord:
    """Fold :func:`step` over ``word`` starting from ``start``."""
    config = start
    path = [start]
    for name in word:
        config = step(automaton, config, name)
        path.append(config)
    return RunRecord(final=config, visited=tuple(c.state for c in path), path=tuple(path))


@dataclass(frozen=True)
class UPWord:
    """The ultimately periodic word ``u v v v ...``."""

    u: tuple[str, ...]
    v: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "v", tuple(self.v))
        if not self.v:
            raise ValueError("The periodic part of an ultimately periodic word must be nonempty")
        for name in (*self.u, *self.v):
            if not is_name(name):
                raise ValueError(f"Invalid name {name!r}")

    @classmethod
    def of(cls, u: Sequence[str], v: Sequence[str]) -> UPWord:
        return cls(tuple(u), tuple(v))

    @property
    def names(self) -> frozenset[str]:
        return frozenset(self.u) | frozenset(self.v)

    def __str__(self) -> str:
        periodic = " ".join(self.v)
        return f"{' '.join(self.u)} ; {periodic}" if self.u else f"; {periodic}"


@dataclass(frozen=True)
class Verdict:
    """Membership outcome with the Inf set of the run."""

    accepted: bool
    inf: frozenset[str]

    @property
    def label(self) -> str:
        return "ACCEPT" if self.accepted else "REJECT"


def _block_bound(automaton: Automaton, pool_size: int) -> int:
    return sum(math.perm(pool_size, len(regs)) for regs in automaton.registers.values())


def up_member(automaton: Automaton, word: UPWord) -> Verdict:
    """Decide whether ``automaton`` accepts ``word``.

    After reading ``u`` the periodic part is read block by block; the run is
    ultimately periodic as soon as a block-boundary configuration repeats, and
    the Inf set is the union of the states visited in the repeating blocks.
    """
    start = initial_configuration(automaton)
    config = run_prefix(automaton, start, word.u).final

    pool = set(automaton.initial_assignment.values()) | word.names
    bound = _block_bound(automaton, len(pool))
    seen: dict[Configuration, int] = {config: 0}
    blocks: list[frozenset[str]] = []
    while True:
        record = run_prefix(automaton, config, word.v)
        blocks.append(frozenset(record.visited))
        config = record.final
        if config in seen:
            first = seen[config]
            break
        if len(blocks) > bound:
            raise InvariantViolation(
                f"No repeated block boundary within {bound} blocks for {word}"
            )
        seen[config] = len(blocks)

    inf = frozenset().union(*blocks[first:])
    verdict = Verdict(automaton.accepting.accepts(inf), inf)
    logger.debug(
        "%s on %s: lasso after %d blocks, cycle of %d, Inf=%s",
        automaton.name,
        word,
        len(blocks),
        len(blocks) - first,
        sorted(inf),
    )
    return verdict


def permute_word(word: UPWord, permutation: Mapping[str, str]) -> UPWord:
    """Apply a finite name permutation (identity off its domain) to ``word``."""
    images = list(permutation.values())
    if len(set(images)) != len(images):
        raise ValueError(f"Permutation is not injective: {dict(permutation)}")
    if set(images) != set(permutation):
        raise ValueError(f"Mapping does not permute its own domain: {dict(permutation)}")

    def apply(name: str) -> str:
        return permutation.get(name, name)

    return UPWord(tuple(map(apply, word.u)), tuple(map(apply, word.v)))


class FreshNames(Iterator[str]):
    """Deterministic generator of names ``#0``, ``#1``, ... skipping an avoid set.

    Every name handed out is added to the avoid set, so a generator never
    repeats itself.
    """

    def __init__(self, avoid: Iterable[str] = (), prefix: str = "#") -> None:
        self._avoid = set(avoid)
        self._prefix = prefix
        self._counter = 0

    def avoid(self, names: Iterable[str]) -> None:
        self._avoid.update(names)

    def __next__(self) -> str:
        while True:
            candidate = f"{self._prefix}{self._counter}"
            self._counter += 1
            if candidate not in self._avoid:
                self._avoid.add(candidate)
                return candidate


__all__ = [
    "Configuration",
    "FreshNames",
    "RunRecord",
    "UPWord",
    "Verdict",
    "check_configuration",
    "fire",
    "initial_configuration",
    "permute_word",
    "run_prefix",
    "step",
    "step_transition",
    "up_member",
]
