"""Built-in example automata.

Examples are kept as source text in the file format so they double as
documentation; ``corpus --dump NAME`` prints them.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from pynomkit.automaton import Automaton, complete_with_sink, validate
from pynomkit.fileformat import parse_automaton


@dataclass
class Example:
    """A named automaton with its source text."""

    name: str
    """Example name, also the automaton name."""

    description: str
    """One-line description of the language."""

    source: str
    """Automaton file text."""

    partial: bool = False
    """Whether missing transitions go to an implicit sink."""

    def automaton(self) -> Automaton:
        """Parse and validate the source, completing it with a sink if partial."""
        description = parse_automaton(self.source)
        return complete_with_sink(description) if self.partial else validate(description)


_BUILTIN_EXAMPLES: dict[str, Example] = {}


def _init_builtin_examples() -> None:
    """Initialize built-in examples."""
    _BUILTIN_EXAMPLES["universal"] = Example(
        name="universal",
        description="Every infinite word",
        source="""\
automaton universal
state q0 []
init q0 {}
accept {q0}
trans q0 * q0 {}
""",
    )

    _BUILTIN_EXAMPLES["session"] = Example(
        name="session",
        description="Infinitely many sessions: a name is opened, later closed by repeating it",
        source="""\
automaton session
state q0 []
state q1 [x]
init q0 {}
accept {q0,q1}
trans q0 * q1 {x=*}
trans q1 * q1 {x=x}
trans q1 x q0 {}
""",
    )

    _BUILTIN_EXAMPLES["swap3"] = Example(
        name="swap3",
        description="Three-register loop that swaps two names and refreshes a third",
        source="""\
automaton swap3
state q0 [x0 y0 z0]
state q1 [x1 y1 z1]
state q2 [x2 y2 z2]
init q0 {x0=a,y0=b,z0=c}
accept {q0,q1,q2}
trans q0 z0 q1 {x1=y0,y1=x0,z1=z0}
trans q1 * q2 {x2=x1,y2=y1,z2=*}
trans q2 x2 q0 {x0=x2,y0=y2,z0=z2}
""",
        partial=True,
    )

    _BUILTIN_EXAMPLES["empty"] = Example(
        name="empty",
        description="No word at all",
        source="""\
automaton empty
state q0 []
init q0 {}
trans q0 * q0 {}
""",
    )

    _BUILTIN_EXAMPLES["constant"] = Example(
        name="constant",
        description="Ultimately constant words",
        source="""\
automaton constant
state q0 []
state q1 [x]
state q2 [x]
init q0 {}
accept {q1}
trans q0 * q1 {x=*}
trans q1 x q1 {x=x}
trans q1 * q2 {x=*}
trans q2 x q1 {x=x}
trans q2 * q2 {x=*}
""",
    )


_init_builtin_examples()


def get_example(name: str) -> Example | None:
    """Get an example by name.

    Example:
        >>> from pynomkit.corpus import get_example
        >>> get_example("session").automaton().states
        ('q0', 'q1')
    """
    return _BUILTIN_EXAMPLES.get(name)


def list_examples() -> list[Example]:
    return list(_BUILTIN_EXAMPLES.values())


def corpus_automata() -> dict[str, Automaton]:
    """Every registered example, built."""
    return {name: example.automaton() for name, example in _BUILTIN_EXAMPLES.items()}


def register_example(example: Example) -> None:
    """Register a custom example, replacing any example of the same name."""
    _BUILTIN_EXAMPLES[example.name] = example


def load_example_file(path: str | Path, partial: bool = False) -> Example:
    """Load an automaton file as an example and register it.

    Raises:
        AutomatonFormatError: if the file does not parse.
        ValidationError: if it does not describe a valid automaton.
    """
    source = Path(path).read_text(encoding="utf-8")
    name = parse_automaton(source).name
    example = Example(
        name=name,
        description=f"Loaded from {Path(path).name}",
        source=source,
        partial=partial,
    )
    example.automaton()
    register_example(example)
    return example


__all__ = [
    "Example",
    "corpus_automata",
    "get_example",
    "list_examples",
    "load_example_file",
    "register_example",
]
