"""History-dependent deterministic Muller automata.

An automaton has finitely many states, each owning a finite set of registers.
Every transition is labelled either by a register of its source state or by
the fresh marker ``*``, and carries a history mapping each register of the
target state to a register of the source state (or to ``*`` when the
register receives the freshly consumed name).

Descriptions produced by the file parser, or assembled by hand, are turned
into :class:`Automaton` objects by :func:`validate`, which reports every
broken constraint at once.
"""

from __future__ import annotations

import logging
import re
from abc import ABC, abstractmethod
from collections import Counter
from collections.abc import Set as AbstractSet
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Union

from pynomkit.errors import ValidationError, Violation

logger = logging.getLogger(__name__)

NAME_PATTERN = re.compile(r"[A-Za-z0-9_#]+")


class Star(Enum):
    """The fresh marker used as a transition label and as a history source."""

    STAR = "*"

    def __str__(self) -> str:
        return self.value

    def __repr__(self) -> str:
        return "STAR"


STAR = Star.STAR

Label = Union[str, Star]
"""A register of the source state, or :data:`STAR`."""

Source = Union[str, Star]
"""What a target register is bound to in a history."""


def is_name(token: str) -> bool:
    """Check whether ``token`` is a valid name or identifier."""
    return bool(NAME_PATTERN.fullmatch(token))


def label_sort_key(label: Label) -> tuple[int, str]:
    """Order registers alphabetically, with ``*`` last."""
    return (1, "") if label is STAR else (0, str(label))


@dataclass(frozen=True)
class History:
    """Injective map from target registers to source registers or ``*``.

    Stored as sorted ``(target, source)`` pairs so histories are hashable and
    can serve as alphabet symbols of the finite Muller reduction.
    """

    pairs: tuple[tuple[str, Source], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, Source]) -> History:
        """Build a history from a ``target -> source`` mapping."""
        return cls(tuple(sorted(mapping.items(), key=lambda item: item[0])))

    def __getitem__(self, target: str) -> Source:
        for reg, source in self.pairs:
            if reg == target:
                return source
        raise KeyError(target)

    def __iter__(self) -> Iterator[str]:
        return (reg for reg, _ in self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def get(self, target: str) -> Source | None:
        """Return the source bound to ``target``, or None."""
        for reg, source in self.pairs:
            if reg == target:
                return source
        return None

    def items(self) -> tuple[tuple[str, Source], ...]:
        return self.pairs

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(reg for reg, _ in self.pairs)

    @property
    def image(self) -> frozenset[Source]:
        return frozenset(source for _, source in self.pairs)

    def preimage(self, source: Source) -> str | None:
        """The target register bound to ``source`` (unique by injectivity)."""
        for reg, bound in self.pairs:
            if bound == source:
                return reg
        return None

    def as_dict(self) -> dict[str, Source]:
        return dict(self.pairs)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{reg}={source}" for reg, source in self.pairs) + "}"


@dataclass(frozen=True)
class Transition:
    """A quadruple ``source --label/history--> target``."""

    source: str
    label: Label
    target: str
    history: History = History()

    def __str__(self) -> str:
        return f"{self.source} {self.label} {self.target} {self.history}"


class AcceptingCondition(ABC):
    """A Muller accepting condition, used only through its membership test."""

    @abstractmethod
    def accepts(self, states: AbstractSet[str]) -> bool:
        """Decide whether ``states`` (an Inf set) is accepting."""

    def may_accept_within(self, states: AbstractSet[str]) -> bool:
        """False only if no nonempty subset of ``states`` is accepting."""
        return True


@dataclass(frozen=True)
class ExplicitCondition(AcceptingCondition):
    """An explicitly listed family of accepting state sets."""

    sets: tuple[frozenset[str], ...] = ()

    def __post_init__(self) -> None:
        unique: list[frozenset[str]] = []
        for members in self.sets:
            members = frozenset(members)
            if members not in unique:
                unique.append(members)
        object.__setattr__(self, "sets", tuple(unique))

    @classmethod
    def of(cls, *sets: Iterable[str]) -> ExplicitCondition:
        return cls(tuple(frozenset(s) for s in sets))

    def accepts(self, states: AbstractSet[str]) -> bool:
        return frozenset(states) in self.sets

    def may_accept_within(self, states: AbstractSet[str]) -> bool:
        return any(members and members.issubset(states) for members in self.sets)

    @property
    def state_ids(self) -> frozenset[str]:
        return frozenset().union(*self.sets) if self.sets else frozenset()


@dataclass(frozen=True)
class NegatedCondition(AcceptingCondition):
    """Accepts exactly the sets rejected by ``inner``."""

    inner: AcceptingCondition

    def accepts(self, states: AbstractSet[str]) -> bool:
        return not self.inner.accepts(states)


ACCEPT_NOTHING = ExplicitCondition()
ACCEPT_ALL = NegatedCondition(ACCEPT_NOTHING)


@dataclass(frozen=True)
class Automaton:
    """A validated history-dependent deterministic Muller automaton.

    Instances are immutable; build them with :func:`validate` (or the file
    parser) rather than directly, since the constructor only indexes the
    transitions and does not check determinism.
    """

    name: str
    registers: Mapping[str, tuple[str, ...]]
    """Register tuple of every state, in declaration order."""

    initial_state: str
    initial_assignment: Mapping[str, str]
    transitions: tuple[Transition, ...]
    accepting: AcceptingCondition = ACCEPT_NOTHING
    _index: dict[tuple[str, Label], Transition] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self) -> None:
        index = {(t.source, t.label): t for t in self.transitions}
        object.__setattr__(self, "_index", index)

    @property
    def states(self) -> tuple[str, ...]:
        return tuple(self.registers)

    @property
    def max_registers(self) -> int:
        return max((len(regs) for regs in self.registers.values()), default=0)

    def registers_of(self, state: str) -> tuple[str, ...]:
        return self.registers[state]

    def transition(self, state: str, label: Label) -> Transition:
        """The unique transition leaving ``state`` with ``label``."""
        try:
            return self._index[(state, label)]
        except KeyError:
            raise KeyError(f"No transition for label {label} at {state}") from None

    def outgoing(self, state: str) -> list[Transition]:
        """Transitions leaving ``state``, registers first, then ``*``."""
        labels = [*self.registers[state], STAR]
        return [self._index[(state, label)] for label in labels if (state, label) in self._index]

    def with_accepting(self, accepting: AcceptingCondition, name: str | None = None) -> Automaton:
        """Same transition structure under another accepting condition."""
        return replace(self, accepting=accepting, name=name or self.name)


@dataclass
class RawTransition:
    """A transition as written, before validation."""

    source: str
    label: Label
    target: str
    history: list[tuple[str, Source]] = field(default_factory=list)
    line: int = 0

    def __str__(self) -> str:
        body = ", ".join(f"{reg}={src}" for reg, src in self.history)
        return f"trans {self.source} {self.label} {self.target} {{{body}}}"


@dataclass
class AutomatonDescription:
    """An automaton as written, possibly violating any constraint.

    ``condition`` overrides ``accepting_sets``/``negated`` when set; it lets
    predicate-based conditions survive a :func:`describe` / :func:`validate`
    round trip.
    """

    name: str
    states: list[tuple[str, list[str]]] = field(default_factory=list)
    inits: list[tuple[str, list[tuple[str, str]]]] = field(default_factory=list)
    accepting_sets: list[list[str]] = field(default_factory=list)
    negated: bool = False
    transitions: list[RawTransition] = field(default_factory=list)
    condition: AcceptingCondition | None = None

    def state_ids(self) -> list[str]:
        return [state for state, _ in self.states]

    def accepting_condition(self) -> AcceptingCondition:
        if self.condition is not None:
            return self.condition
        explicit = ExplicitCondition(tuple(frozenset(s) for s in self.accepting_sets))
        return NegatedCondition(explicit) if self.negated else explicit


def _label_text(label: Label) -> str:
    return str(label)


def check(description: AutomatonDescription) -> list[Violation]:
    """Collect every structural violation in ``description``."""
    violations: list[Violation] = []

    def report(invariant: str, location: str, message: str) -> None:
        violations.append(Violation(invariant, location, message))

    registers: dict[str, list[str]] = {}
    for state, regs in description.states:
        if state in registers:
            report("duplicate-state", state, f"state {state} declared more than once")
            continue
        registers[state] = list(regs)
        for reg, count in Counter(regs).items():
            if count > 1:
                report("register-unique", state, f"register {reg} declared {count} times")

    if len(description.inits) != 1:
        report("single-init", description.name, "expected exactly one init")
    for init_state, pairs in description.inits:
        if init_state not in registers:
            report("dangling-state", f"init {init_state}", f"unknown state {init_state}")
            continue
        domain = [reg for reg, _ in pairs]
        if sorted(domain) != sorted(registers[init_state]):
            report(
                "init-domain",
                f"init {init_state}",
                f"assignment domain {sorted(domain)} differs from registers "
                f"{sorted(registers[init_state])}",
            )
        values = [name for _, name in pairs]
        if len(set(values)) != len(values):
            report("init-injective", f"init {init_state}", "initial assignment is not injective")
        for name in values:
            if not is_name(name):
                report("name-syntax", f"init {init_state}", f"invalid name {name!r}")

    condition_states: set[str] = set()
    for members in description.accepting_sets:
        condition_states.update(members)
    if description.condition is None:
        for state in sorted(condition_states - set(registers)):
            report("dangling-state", "accept", f"unknown state {state} in accepting set")

    seen: Counter[tuple[str, Label]] = Counter()
    for raw in description.transitions:
        location = str(raw)
        for end in (raw.source, raw.target):
            if end not in registers:
                report("dangling-state", location, f"unknown state {end}")
        if raw.source not in registers or raw.target not in registers:
            continue
        seen[(raw.source, raw.label)] += 1
        source_regs = registers[raw.source]
        if raw.label is not STAR and raw.label not in source_regs:
            report(
                "label-register", location, f"label {raw.label} is not a register of {raw.source}"
            )
        targets = [reg for reg, _ in raw.history]
        for reg, count in Counter(targets).items():
            if count > 1:
                report("history-function", location, f"register {reg} bound {count} times")
        if sorted(set(targets)) != sorted(registers[raw.target]):
            report(
                "history-domain",
                location,
                f"history domain {sorted(set(targets))} differs from registers "
                f"{sorted(registers[raw.target])} of {raw.target}",
            )
        sources = [src for _, src in raw.history]
        for src in sources:
            if src is STAR:
                if raw.label is not STAR:
                    report(
                        "history-fresh",
                        location,
                        "* in history image of a register-labelled transition",
                    )
            elif src not in source_regs:
                report("history-codomain", location, f"{src} is not a register of {raw.source}")
        if len(set(sources)) != len(sources):
            report("history-injective", location, "history is not injective")

    for state, regs in registers.items():
        for label in [*regs, STAR]:
            count = seen[(state, label)]
            text = _label_text(label)
            if count == 0:
                report("determinism", state, f"missing transition for label {text} at {state}")
            elif count > 1:
                report("determinism", state, f"duplicate transition for label {text} at {state}")
    return violations


def validate(description: AutomatonDescription) -> Automaton:
    """Turn a description into an :class:`Automaton`.

    Raises:
        ValidationError: listing every violation, if any.
    """
    violations = check(description)
    if violations:
        raise ValidationError(violations)
    registers = {state: tuple(regs) for state, regs in description.states}
    init_state, pairs = description.inits[0]
    transitions = tuple(
        Transition(raw.source, raw.label, raw.target, History.from_mapping(dict(raw.history)))
        for raw in description.transitions
    )
    automaton = Automaton(
        name=description.name,
        registers=registers,
        initial_state=init_state,
        initial_assignment=dict(pairs),
        transitions=transitions,
        accepting=description.accepting_condition(),
    )
    logger.debug(
        "Validated automaton %s: %d states, %d transitions",
        automaton.name,
        len(registers),
        len(transitions),
    )
    return automaton


def describe(automaton: Automaton) -> AutomatonDescription:
    """The description an automaton was (or could have been) built from."""
    condition = automaton.accepting
    description = AutomatonDescription(
        name=automaton.name,
        states=[(state, list(regs)) for state, regs in automaton.registers.items()],
        inits=[(automaton.initial_state, list(automaton.initial_assignment.items()))],
        transitions=[
            RawTransition(t.source, t.label, t.target, list(t.history.items()))
            for t in automaton.transitions
        ],
    )
    if isinstance(condition, ExplicitCondition):
        description.accepting_sets = [sorted(s) for s in condition.sets]
    elif isinstance(condition, NegatedCondition) and isinstance(condition.inner, ExplicitCondition):
        description.accepting_sets = [sorted(s) for s in condition.inner.sets]
        description.negated = True
    else:
        description.condition = condition
    return description


def complete_with_sink(description: AutomatonDescription, sink: str = "sink") -> Automaton:
    """Add a register-free sink absorbing every missing ``(state, label)`` pair.

    The sink gets a ``*`` self-loop and belongs to no accepting set. Its id is
    made fresh by suffixing ``_1``, ``_2``, ... when ``sink`` is taken.
    """
    taken = set(description.state_ids())
    sink_id, suffix = sink, 0
    while sink_id in taken:
        suffix += 1
        sink_id = f"{sink}_{suffix}"

    present = {(raw.source, raw.label) for raw in description.transitions}
    missing: list[RawTransition] = []
    for state, regs in description.states:
        for label in [*regs, STAR]:
            if (state, label) not in present:
                missing.append(RawTransition(state, label, sink_id, []))
    if not missing:
        return validate(description)

    completed = replace(
        description,
        states=[*description.states, (sink_id, [])],
        transitions=[*description.transitions, *missing, RawTransition(sink_id, STAR, sink_id, [])],
    )
    logger.debug("Added sink %s with %d transitions", sink_id, len(missing))
    return validate(completed)


__all__ = [
    "ACCEPT_ALL",
    "ACCEPT_NOTHING",
    "AcceptingCondition",
    "Automaton",
    "AutomatonDescription",
    "ExplicitCondition",
    "History",
    "Label",
    "NAME_PATTERN",
    "NegatedCondition",
    "RawTransition",
    "STAR",
    "Source",
    "Star",
    "Transition",
    "check",
    "complete_with_sink",
    "describe",
    "is_name",
    "label_sort_key",
    "validate",
]
