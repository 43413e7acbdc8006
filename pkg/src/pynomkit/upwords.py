"""Realizing transition loops as finite words.

Given a loop ``p0 -> p1 -> ... -> p0`` of transitions and an assignment of
names to the registers of ``p0``, :func:`realize_loop` builds a word whose
path follows the loop some number of times and ends in exactly the starting
configuration. It works in two phases:

* the forget phase traverses the loop until no register holds an old value
  of a register that does not survive the loop, and
* the initialization phase feeds those old values back at the ``*`` steps
  whose fresh name flows into the right register by the end.

Registers that survive the loop only get permuted; the total number of
traversals is chosen as a multiple of that permutation's order.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from pynomkit.automaton import STAR, Transition
from pynomkit.config import DEFAULT_CONFIG, ToolkitConfig
from pynomkit.configuration import Configuration, FreshNames, fire
from pynomkit.errors import InvariantViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Loop:
    """A nonempty sequence of chained transitions returning to its start."""

    transitions: tuple[Transition, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "transitions", tuple(self.transitions))
        if not self.transitions:
            raise ValueError("A loop needs at least one transition")
        for i, t in enumerate(self.transitions):
            following = self.transitions[(i + 1) % len(self.transitions)]
            if t.target != following.source:
                raise ValueError(
                    f"Transition {i} ends in {t.target}, next starts at {following.source}"
                )

    @property
    def n(self) -> int:
        return len(self.transitions)

    @property
    def start(self) -> str:
        return self.transitions[0].source

    @property
    def registers(self) -> frozenset[str]:
        """Registers of the start state, read off the closing history."""
        return self.transitions[-1].history.domain

    @property
    def states(self) -> frozenset[str]:
        return frozenset(t.source for t in self.transitions)

    def rotate(self, state: str) -> Loop:
        """The same cycle read from the first visit of ``state``."""
        for i, t in enumerate(self.transitions):
            if t.source == state:
                return Loop(self.transitions[i:] + self.transitions[:i])
        raise ValueError(f"State {state} is not on the loop")

    def __len__(self) -> int:
        return self.n

    def __str__(self) -> str:
        return " ; ".join(str(t) for t in self.transitions)


def sigma_hat(loop: Loop) -> dict[str, str]:
    """Where each start register's value was one traversal earlier.

    Composes the histories with the fresh parts removed, last transition
    first; registers whose value is fresh within one traversal are absent.
    """
    result: dict[str, str] = {}
    for reg in sorted(loop.registers):
        current = reg
        for t in reversed(loop.transitions):
            source = t.history[current]
            if source is STAR:
                break
            current = source
        else:
            result[reg] = current
    return result


def survivors(loop: Loop) -> tuple[frozenset[str], frozenset[str]]:
    """Split the start registers into surviving (``I``) and transient (``T``).

    ``I`` is the greatest subset of the domain of :func:`sigma_hat` mapped
    onto itself.
    """
    hat = sigma_hat(loop)
    kept = set(hat)
    while True:
        shrunk = {reg for reg in kept if hat[reg] in kept}
        if shrunk == kept:
            break
        kept = shrunk
    surviving = frozenset(kept)
    return surviving, loop.registers - surviving


def _cycle_lengths(hat: Mapping[str, str], regs: Iterable[str]) -> list[int]:
    lengths: list[int] = []
    pending = set(regs)
    while pending:
        first = min(pending)
        current, length = hat[first], 1
        pending.discard(first)
        while current != first:
            pending.discard(current)
            current = hat[current]
            length += 1
        lengths.append(length)
    return lengths


def theta(loop: Loop) -> int:
    """Order of the surviving-register permutation."""
    surviving, _ = survivors(loop)
    return math.lcm(*_cycle_lengths(sigma_hat(loop), surviving)) if surviving else 1


def _chain_bound(loop: Loop) -> int:
    return loop.n * len(loop.registers) + loop.n


def forward_chain(loop: Loop, reg: str) -> list[str]:
    """Registers successively holding the start value of ``reg``.

    Raises:
        InvariantViolation: if the value outlives the step bound.
    """
    chain = [reg]
    bound = _chain_bound(loop)
    while True:
        sigma = loop.transitions[(len(chain) - 1) % loop.n].history
        successor = sigma.preimage(chain[-1])
        if successor is None:
            return chain
        chain.append(successor)
        if len(chain) > bound:
            raise InvariantViolation(f"Value of {reg} survives more than {bound} steps of {loop}")


def chain_lengths(loop: Loop) -> dict[str, int]:
    """Length of the forward chain of every transient register."""
    _, transient = survivors(loop)
    return {reg: len(forward_chain(loop, reg)) for reg in sorted(transient)}


def epsilon(loop: Loop) -> int:
    """Traversals after which no transient start value is held anywhere."""
    lengths = chain_lengths(loop)
    longest = max(lengths.values(), default=0) + 1
    return -(-longest // loop.n)


def zeta_tuples(loop: Loop) -> tuple[frozenset[tuple[str, int, int]], int]:
    """Where each transient register's final value enters the loop.

    For every transient register ``x`` returns ``(x, i, j)``: the name read
    at transition ``i``, ``j`` traversals before the end, is the value of
    ``x`` when the loop closes. The second result is the largest ``j``.
    """
    _, transient = survivors(loop)
    bound = _chain_bound(loop)
    tuples: set[tuple[str, int, int]] = set()
    for reg in sorted(transient):
        current, steps = reg, 0
        while True:
            steps += 1
            if steps > bound:
                raise InvariantViolation(
                    f"No fresh origin for {reg} within {bound} steps of {loop}"
                )
            index = -steps % loop.n
            source = loop.transitions[index].history[current]
            if source is STAR:
                tuples.add((reg, index, -(-steps // loop.n)))
                break
            current = source
    zeta = max((j for _, _, j in tuples), default=1)
    return frozenset(tuples), zeta


@dataclass(frozen=True)
class LoopAnalysis:
    """Everything :func:`realize_loop` needs to know about a loop."""

    sigma_hat: dict[str, str]
    surviving: frozenset[str]
    """Registers whose values keep cycling (``I``)."""

    transient: frozenset[str]
    """Registers whose values are eventually dropped (``T``)."""

    theta: int
    chain_lengths: dict[str, int]
    epsilon: int
    x_tuples: frozenset[tuple[str, int, int]]
    zeta: int


def analyze_loop(loop: Loop) -> LoopAnalysis:
    surviving, transient = survivors(loop)
    x_tuples, zeta = zeta_tuples(loop)
    return LoopAnalysis(
        sigma_hat=sigma_hat(loop),
        surviving=surviving,
        transient=transient,
        theta=theta(loop),
        chain_lengths=chain_lengths(loop),
        epsilon=epsilon(loop),
        x_tuples=x_tuples,
        zeta=zeta,
    )


@dataclass(frozen=True)
class PhaseRun:
    """Word produced by one phase and the configuration it leads to."""

    word: tuple[str, ...]
    final: Configuration


def _check_start(loop: Loop, config: Configuration) -> None:
    if config.state != loop.start:
        raise ValueError(f"Configuration {config} is not at the loop start {loop.start}")
    if frozenset(config.assignment) != loop.registers:
        raise ValueError(f"Configuration {config} does not assign the registers of {loop.start}")


def forget_phase(
    loop: Loop,
    config: Configuration,
    gamma: int,
    avoid: Iterable[str] = (),
    prefix: str = DEFAULT_CONFIG.fresh_prefix,
) -> PhaseRun:
    """Traverse ``loop`` ``gamma`` times reading fresh names at ``*`` steps.

    Fresh names avoid the start image, ``avoid`` and everything read so far,
    so after ``epsilon(loop)`` traversals no transient start value remains.
    """
    _check_start(loop, config)
    minimum = epsilon(loop)
    if gamma < minimum:
        raise ValueError(f"gamma must be at least {minimum}, got {gamma}")
    fresh = FreshNames([*config.image, *avoid], prefix)
    word: list[str] = []
    current = config
    for _ in range(gamma):
        for t in loop.transitions:
            name = next(fresh) if t.label is STAR else current.assignment[t.label]
            current = fire(t, current, name)
            word.append(name)
    return PhaseRun(tuple(word), current)


def init_phase(
    loop: Loop,
    config: Configuration,
    target: Mapping[str, str],
    avoid: Iterable[str] = (),
    prefix: str = DEFAULT_CONFIG.fresh_prefix,
) -> PhaseRun:
    """Traverse ``loop`` ``zeta`` times so transient registers end as in ``target``.

    Raises:
        ValueError: if some register of ``config`` already holds a value
            ``target`` assigns to a transient register.
    """
    _check_start(loop, config)
    _, transient = survivors(loop)
    x_tuples, zeta = zeta_tuples(loop)
    reserved = {target[reg] for reg in transient}
    clash = sorted(config.image & reserved)
    if clash:
        raise ValueError(f"Configuration {config} still holds transient values {clash}")

    installs = {(index, j): target[reg] for reg, index, j in x_tuples}
    fresh = FreshNames([*config.image, *target.values(), *avoid], prefix)
    word: list[str] = []
    current = config
    for k in range(zeta):
        for index, t in enumerate(loop.transitions):
            if (index, zeta - k) in installs:
                name = installs[(index, zeta - k)]
            elif t.label is STAR:
                name = next(fresh)
            else:
                name = current.assignment[t.label]
            current = fire(t, current, name)
            word.append(name)
            fresh.avoid([name])

    restored = {reg: current.assignment[reg] for reg in transient}
    if restored != {reg: target[reg] for reg in transient}:
        raise InvariantViolation(
            f"Transient registers ended as {restored}, expected {dict(target)}"
        )
    return PhaseRun(tuple(word), current)


def choose_gamma(analysis: LoopAnalysis) -> int:
    """Smallest forget count keeping the total traversal count a multiple of theta."""
    offset = analysis.zeta if analysis.transient else 0
    gamma = analysis.epsilon
    while (gamma + offset) % analysis.theta:
        gamma += 1
    return gamma


def realize_loop(
    loop: Loop,
    assignment: Mapping[str, str],
    avoid: Iterable[str] = (),
    config: ToolkitConfig | None = None,
) -> tuple[str, ...]:
    """A word whose path follows ``loop`` back to ``(start, assignment)``.

    Raises:
        InvariantViolation: if the constructed path does not close.
    """
    config = config or DEFAULT_CONFIG
    avoid = list(avoid)
    start = Configuration.of(loop.start, assignment)
    _check_start(loop, start)
    analysis = analyze_loop(loop)
    gamma = choose_gamma(analysis)

    forget = forget_phase(loop, start, gamma, avoid, config.fresh_prefix)
    word, final = forget.word, forget.final
    if analysis.transient:
        init = init_phase(loop, final, assignment, [*avoid, *word], config.fresh_prefix)
        word, final = word + init.word, init.final

    if final != start:
        raise InvariantViolation(f"Loop realization ended in {final}, expected {start}")
    logger.debug(
        "Realized loop at %s: theta=%d epsilon=%d zeta=%d gamma=%d, %d symbols",
        loop.start,
        analysis.theta,
        analysis.epsilon,
        analysis.zeta,
        gamma,
        len(word),
    )
    return word


def traverse(loop: Loop, config: Configuration, word: Sequence[str]) -> Configuration:
    """Follow ``loop`` (repeatedly) reading ``word``; each name must fit its step."""
    current = config
    for position, name in enumerate(word):
        current = fire(loop.transitions[position % loop.n], current, name)
    return current


__all__ = [
    "Loop",
    "LoopAnalysis",
    "PhaseRun",
    "analyze_loop",
    "chain_lengths",
    "choose_gamma",
    "epsilon",
    "forget_phase",
    "forward_chain",
    "init_phase",
    "realize_loop",
    "sigma_hat",
    "survivors",
    "theta",
    "traverse",
]
