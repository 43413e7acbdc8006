"""Pytest configuration and fixtures."""

from __future__ import annotations

import random
from collections.abc import Callable

import pytest

from pynomkit.automaton import (
    STAR,
    Automaton,
    AutomatonDescription,
    History,
    RawTransition,
    Source,
    Transition,
    validate,
)
from pynomkit.configuration import UPWord
from pynomkit.corpus import corpus_automata, get_example
from pynomkit.upwords import Loop

NAME_POOL = ("a", "b", "c", "d", "e")


def pytest_configure(config: pytest.Config) -> None:
    """Configure pytest markers."""
    config.addinivalue_line("markers", "slow: marks tests as slow running")


@pytest.fixture
def session() -> Automaton:
    return get_example("session").automaton()  # type: ignore[union-attr]


@pytest.fixture
def universal() -> Automaton:
    return get_example("universal").automaton()  # type: ignore[union-attr]


@pytest.fixture
def swap3() -> Automaton:
    """Three-register loop automaton completed with a sink."""
    return get_example("swap3").automaton()  # type: ignore[union-attr]


@pytest.fixture
def constant() -> Automaton:
    return get_example("constant").automaton()  # type: ignore[union-attr]


@pytest.fixture
def empty_automaton() -> Automaton:
    return get_example("empty").automaton()  # type: ignore[union-attr]


@pytest.fixture
def corpus() -> dict[str, Automaton]:
    """Every built-in example, built."""
    return corpus_automata()


@pytest.fixture
def swap3_loop(swap3: Automaton) -> Loop:
    """The q0 -> q1 -> q2 -> q0 loop of swap3."""
    return Loop(
        (
            swap3.transition("q0", "z0"),
            swap3.transition("q1", STAR),
            swap3.transition("q2", "x2"),
        )
    )


@pytest.fixture
def rng() -> random.Random:
    """Seeded random source for the randomized suites."""
    return random.Random(20240611)


def _random_word(rng: random.Random) -> UPWord:
    u = [rng.choice(NAME_POOL) for _ in range(rng.randint(0, 4))]
    v = [rng.choice(NAME_POOL) for _ in range(rng.randint(1, 4))]
    return UPWord.of(u, v)


@pytest.fixture
def random_word() -> Callable[[random.Random], UPWord]:
    """Factory for ultimately periodic words over a small name pool."""
    return _random_word


def _random_loop(rng: random.Random) -> Loop:
    while True:
        n = rng.randint(1, 4)
        counts = [rng.randint(0, 3) for _ in range(n)]
        regs = [[f"r{i}_{k}" for k in range(count)] for i, count in enumerate(counts)]
        transitions: list[Transition] = []
        for i in range(n):
            j = (i + 1) % n
            source, target = regs[i], regs[j]
            if len(target) > len(source) + 1:
                break
            if len(target) > len(source) or not source or rng.random() < 0.5:
                label: str | object = STAR
            else:
                label = rng.choice(source)
            pool: list[object] = list(source)
            if label is STAR:
                pool.append(STAR)
            if len(target) > len(pool):
                break
            chosen = rng.sample(pool, len(target))
            history = History.from_mapping(dict(zip(target, chosen)))  # type: ignore[arg-type]
            transitions.append(Transition(f"p{i}", label, f"p{j}", history))  # type: ignore[arg-type]
        else:
            return Loop(tuple(transitions))


@pytest.fixture
def random_loop() -> Callable[[random.Random], Loop]:
    """Factory for valid loops with up to four states and three registers each."""
    return _random_loop


def _random_automaton(rng: random.Random) -> Automaton:
    n = rng.randint(1, 4)
    states = [f"s{i}" for i in range(n)]
    # s0 has at most one register, so every transition has a legal target.
    registers = {
        state: ["x", "y"][: rng.randint(0, 1 if i == 0 else 2)] for i, state in enumerate(states)
    }
    description = AutomatonDescription(
        name="random",
        states=[(state, regs) for state, regs in registers.items()],
        inits=[("s0", list(zip(registers["s0"], NAME_POOL)))],
    )
    for source, regs in registers.items():
        for label in [*regs, STAR]:
            pool: list[Source] = [*regs, STAR] if label is STAR else list(regs)
            target = rng.choice([s for s in states if len(registers[s]) <= len(pool)])
            chosen = rng.sample(pool, len(registers[target]))
            history = list(zip(registers[target], chosen))
            description.transitions.append(RawTransition(source, label, target, history))
    for _ in range(rng.randint(0, 2)):
        description.accepting_sets.append(rng.sample(states, rng.randint(1, n)))
    description.negated = rng.random() < 0.2
    return validate(description)


@pytest.fixture
def random_automaton() -> Callable[[random.Random], Automaton]:
    """Factory for small complete automata with up to two registers per state."""
    return _random_automaton
