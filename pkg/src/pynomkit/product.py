"""Synchronized product of two automata.

Product states are triples ``(q1, q2, R)`` where ``R`` relates the registers
of the two components that currently hold the same name. Related registers
are merged into a single quotient register, so a product configuration is
injective exactly when both projections are.

Only states reachable from the initial product state are built.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Set as AbstractSet
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import Enum

from pynomkit.automaton import (
    ACCEPT_ALL,
    STAR,
    Automaton,
    History,
    Label,
    Source,
    Star,
    Transition,
)
from pynomkit.configuration import Configuration
from pynomkit.errors import InvariantViolation

logger = logging.getLogger(__name__)


class Side(Enum):
    """Which factor of a product a register or state belongs to."""

    LEFT = "L"
    RIGHT = "R"

    @property
    def other(self) -> Side:
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


@dataclass(frozen=True)
class RegRelation:
    """A partial bijection between left and right registers."""

    pairs: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self) -> None:
        pairs = frozenset(self.pairs)
        object.__setattr__(self, "pairs", pairs)
        lefts = [x for x, _ in pairs]
        rights = [y for _, y in pairs]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValueError(f"Register relation is not a partial bijection: {sorted(pairs)}")

    @classmethod
    def of(cls, *pairs: tuple[str, str]) -> RegRelation:
        return cls(frozenset(pairs))

    def partner(self, side: Side, reg: str) -> str | None:
        """The register related to ``reg`` on the other side, if any."""
        for x, y in self.pairs:
            if side is Side.LEFT and x == reg:
                return y
            if side is Side.RIGHT and y == reg:
                return x
        return None

    def __len__(self) -> int:
        return len(self.pairs)

    def __str__(self) -> str:
        return "{" + ", ".join(f"({x},{y})" for x, y in sorted(self.pairs)) + "}"


@dataclass(frozen=True)
class QuotientRegister:
    """A class of related registers: one register, or one from each side."""

    members: frozenset[tuple[Side, str]]

    def __post_init__(self) -> None:
        members = frozenset(self.members)
        object.__setattr__(self, "members", members)
        sides = [side for side, _ in members]
        if not members or len(sides) != len(set(sides)):
            raise ValueError(f"Invalid quotient register: {sorted(members, key=str)}")

    @classmethod
    def single(cls, side: Side, reg: str) -> QuotientRegister:
        return cls(frozenset({(side, reg)}))

    @classmethod
    def joint(cls, left: str, right: str) -> QuotientRegister:
        return cls(frozenset({(Side.LEFT, left), (Side.RIGHT, right)}))

    def on(self, side: Side) -> str | None:
        """This class's register on ``side``, if it has one."""
        for member_side, reg in self.members:
            if member_side is side:
                return reg
        return None

    @property
    def is_joint(self) -> bool:
        return len(self.members) == 2

    @property
    def name(self) -> str:
        """Canonical register token: ``x#L``, ``y#R`` or ``x#L#y#R``.

        A ``#`` inside a factor register is doubled, so a lone ``#`` always
        precedes a side marker and distinct classes get distinct tokens.
        """
        parts: list[str] = []
        for side in Side:
            reg = self.on(side)
            if reg is not None:
                parts.append(reg.replace("#", "##") + "#" + side.value)
        return "#".join(parts)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class ProductState:
    """A product state ``(left, right, rel)``."""

    left: str
    right: str
    rel: RegRelation = RegRelation()

    def __str__(self) -> str:
        return f"({self.left}, {self.right}, {self.rel})"


def register_classes(
    a1: Automaton, a2: Automaton, state: ProductState
) -> tuple[QuotientRegister, ...]:
    """The quotient registers of ``state``, sorted by name."""
    classes = [QuotientRegister.joint(x, y) for x, y in state.rel.pairs]
    related_left = {x for x, _ in state.rel.pairs}
    related_right = {y for _, y in state.rel.pairs}
    classes += [
        QuotientRegister.single(Side.LEFT, x)
        for x in a1.registers_of(state.left)
        if x not in related_left
    ]
    classes += [
        QuotientRegister.single(Side.RIGHT, y)
        for y in a2.registers_of(state.right)
        if y not in related_right
    ]
    classes.sort(key=lambda c: c.name)
    names = [c.name for c in classes]
    if len(set(names)) != len(names):
        raise InvariantViolation(f"Quotient register names collide at {state}: {names}")
    return tuple(classes)


def class_of(state: ProductState, side: Side, reg: str) -> QuotientRegister:
    """The quotient register ``[reg]`` containing ``reg`` of ``side``."""
    partner = state.rel.partner(side, reg)
    if partner is None:
        return QuotientRegister.single(side, reg)
    if side is Side.LEFT:
        return QuotientRegister.joint(reg, partner)
    return QuotientRegister.joint(partner, reg)


def initial_product_state(
    a1: Automaton, a2: Automaton
) -> tuple[ProductState, dict[QuotientRegister, str]]:
    """The initial product state and its assignment on quotient registers.

    Registers are related exactly when the two initial assignments give them
    the same name.
    """
    rho1, rho2 = a1.initial_assignment, a2.initial_assignment
    by_name = {name: reg for reg, name in rho2.items()}
    rel = RegRelation(frozenset((x, by_name[name]) for x, name in rho1.items() if name in by_name))
    state = ProductState(a1.initial_state, a2.initial_state, rel)
    assignment: dict[QuotientRegister, str] = {}
    for cls in register_classes(a1, a2, state):
        side, reg = min(cls.members, key=lambda member: member[0].value)
        assignment[cls] = (rho1 if side is Side.LEFT else rho2)[reg]
    return state, assignment


@dataclass(frozen=True)
class ProductStep:
    """One product transition with the component transitions it synchronizes."""

    target: ProductState
    history: dict[QuotientRegister, QuotientRegister | Star] = field(hash=False)
    left: Transition
    right: Transition


def component_labels(label: QuotientRegister | Star) -> tuple[Label, Label]:
    """The labels ``(l1, l2)`` fired by the factors on a product label."""
    if label is STAR:
        return STAR, STAR
    assert isinstance(label, QuotientRegister)
    l1, l2 = label.on(Side.LEFT), label.on(Side.RIGHT)
    return (STAR if l1 is None else l1), (STAR if l2 is None else l2)


def product_transition(
    a1: Automaton,
    a2: Automaton,
    state: ProductState,
    label: QuotientRegister | Star,
) -> ProductStep:
    """The unique product transition from ``state`` labelled ``label``.

    A joint class fires both register transitions; a one-sided class fires
    that register on its side and ``*`` on the other; ``*`` fires ``*`` on
    both sides and allocates.
    """
    l1, l2 = component_labels(label)
    t1 = a1.transition(state.left, l1)
    t2 = a2.transition(state.right, l2)
    sigma1, sigma2 = t1.history, t2.history
    allocating = label is STAR

    related: set[tuple[Source, Source]] = set(state.rel.pairs)
    related.add((l1, l2))
    target_rel = RegRelation(
        frozenset(
            (x, y)
            for x in a1.registers_of(t1.target)
            for y in a2.registers_of(t2.target)
            if (sigma1[x], sigma2[y]) in related
        )
    )
    target = ProductState(t1.target, t2.target, target_rel)

    labels = {Side.LEFT: l1, Side.RIGHT: l2}
    sigmas = {Side.LEFT: sigma1, Side.RIGHT: sigma2}
    history: dict[QuotientRegister, QuotientRegister | Star] = {}
    for cls in register_classes(a1, a2, target):
        sources: set[QuotientRegister | Star] = set()
        for side, reg in cls.members:
            origin = sigmas[side][reg]
            if origin is not STAR:
                sources.add(class_of(state, side, origin))
            elif allocating:
                sources.add(STAR)
            else:
                other = labels[side.other]
                if other is STAR:
                    raise InvariantViolation(
                        f"Register transition from {state} on {label} "
                        "stores a fresh name on both sides"
                    )
                sources.add(class_of(state, side.other, other))
        if len(sources) != 1:
            raise InvariantViolation(
                f"Members of {cls} disagree on their source at {state}: {sources}"
            )
        history[cls] = sources.pop()
    return ProductStep(target, history, t1, t2)


@dataclass(frozen=True)
class ProductStructure:
    """A built product: the automaton plus the bookkeeping to read it back."""

    automaton: Automaton
    components: Mapping[str, ProductState]
    """Product state id to its ``(q1, q2, R)`` triple."""

    register_classes: Mapping[str, Mapping[str, QuotientRegister]]
    """Product state id to register token to quotient register."""

    left: Automaton
    right: Automaton

    def state_id(self, state: ProductState) -> str:
        for sid, triple in self.components.items():
            if triple == state:
                return sid
        raise KeyError(str(state))

    def project_states(self, states: AbstractSet[str], side: Side) -> frozenset[str]:
        """The ``side`` component of each product state in ``states``."""
        attr = "left" if side is Side.LEFT else "right"
        return frozenset(getattr(self.components[s], attr) for s in states)

    def project(self, config: Configuration, side: Side) -> Configuration:
        """Project a configuration of the product automaton onto a factor."""
        triple = self.components[config.state]
        classes = self.register_classes[config.state]
        assignment = {classes[reg]: name for reg, name in config.bindings}
        return project(triple, assignment, side)


def project(
    state: ProductState,
    assignment: Mapping[QuotientRegister, str],
    side: Side,
) -> Configuration:
    """The ``side`` configuration: ``rho_i(x) = rho([x])``."""
    component = state.left if side is Side.LEFT else state.right
    projected: dict[str, str] = {}
    for cls, name in assignment.items():
        reg = cls.on(side)
        if reg is not None:
            projected[reg] = name
    return Configuration.of(component, projected)


def _fresh_id(left: str, right: str, used: set[str]) -> str:
    k = 0
    while f"{left}#{right}#{k}" in used:
        k += 1
    return f"{left}#{right}#{k}"


def build_product(a1: Automaton, a2: Automaton, name: str | None = None) -> ProductStructure:
    """Breadth-first closure of the product from its initial state.

    The resulting automaton accepts every Inf set; boolean combinators attach
    the real accepting condition.
    """
    initial, init_assignment = initial_product_state(a1, a2)
    ids: dict[ProductState, str] = {}
    used: set[str] = set()

    def identify(state: ProductState) -> str:
        if state not in ids:
            sid = _fresh_id(state.left, state.right, used)
            ids[state] = sid
            used.add(sid)
            queue.append(state)
        return ids[state]

    queue: deque[ProductState] = deque()
    identify(initial)
    transitions: list[Transition] = []
    registers: dict[str, tuple[str, ...]] = {}
    classes_by_state: dict[str, dict[str, QuotientRegister]] = {}
    while queue:
        state = queue.popleft()
        sid = ids[state]
        classes = register_classes(a1, a2, state)
        registers[sid] = tuple(c.name for c in classes)
        classes_by_state[sid] = {c.name: c for c in classes}
        for label in (*classes, STAR):
            move = product_transition(a1, a2, state, label)
            target_id = identify(move.target)
            history = History.from_mapping(
                {
                    cls.name: src.name if isinstance(src, QuotientRegister) else STAR
                    for cls, src in move.history.items()
                }
            )
            product_label: Label = label.name if isinstance(label, QuotientRegister) else STAR
            transitions.append(Transition(sid, product_label, target_id, history))

    automaton = Automaton(
        name=name or f"{a1.name}_x_{a2.name}",
        registers=registers,
        initial_state=ids[initial],
        initial_assignment={cls.name: value for cls, value in init_assignment.items()},
        transitions=tuple(transitions),
        accepting=ACCEPT_ALL,
    )
    logger.debug(
        "Product %s: %d reachable states, %d transitions",
        automaton.name,
        len(registers),
        len(transitions),
    )
    return ProductStructure(
        automaton=automaton,
        components={sid: state for state, sid in ids.items()},
        register_classes=classes_by_state,
        left=a1,
        right=a2,
    )


__all__ = [
    "ProductState",
    "ProductStep",
    "ProductStructure",
    "QuotientRegister",
    "RegRelation",
    "Side",
    "build_product",
    "class_of",
    "component_labels",
    "initial_product_state",
    "product_transition",
    "project",
    "register_classes",
]
