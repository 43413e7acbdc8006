"""Textual automaton format.

A file is a sequence of whitespace-separated tokens::

    automaton session
    state q0 []
    state q1 [x]
    init q0 {}
    accept {q0,q1}
    trans q0 * q1 {x=*}
    trans q1 * q1 {x=x}
    trans q1 x q0 {} #closes the session

Nothing may follow a closing ``]`` or ``}`` except another accepting set,
so a ``#`` there starts a comment. Elsewhere ``#`` starts a comment only at
the beginning of a line or standing alone between whitespace; otherwise it
is part of a name (``#0``, ``x#L``).

``accept complement-of {...}`` negates the listed family.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from pathlib import Path

from pynomkit.automaton import (
    STAR,
    Automaton,
    AutomatonDescription,
    ExplicitCondition,
    Label,
    NegatedCondition,
    RawTransition,
    Source,
    is_name,
    validate,
)
from pynomkit.boolean_ops import materialize
from pynomkit.config import ToolkitConfig
from pynomkit.configuration import UPWord
from pynomkit.errors import AutomatonFormatError

logger = logging.getLogger(__name__)

_TOKEN = re.compile(
    r"(?P<complement>complement-of)|(?P<ident>[A-Za-z0-9_#]+)|(?P<punct>[*{}\[\],=])"
)
_KEYWORDS = ("state", "init", "accept", "trans")


@dataclass(frozen=True)
class Token:
    kind: str
    """``ident``, ``complement``, the punctuation character itself, or ``eof``."""

    text: str
    line: int
    column: int


def _is_comment(line: str, index: int) -> bool:
    if not line[:index].strip():
        return True
    if line[:index].rstrip()[-1] in "]}":
        return True
    before = line[index - 1]
    after = line[index + 1] if index + 1 < len(line) else " "
    return before.isspace() and after.isspace()


def tokenize(text: str) -> list[Token]:
    """Split ``text`` into positioned tokens, dropping comments."""
    tokens: list[Token] = []
    lineno = 0
    for lineno, line in enumerate(text.splitlines(), start=1):
        index = 0
        while index < len(line):
            char = line[index]
            if char.isspace():
                index += 1
                continue
            if char == "#" and _is_comment(line, index):
                break
            match = _TOKEN.match(line, index)
            if match is None:
                raise AutomatonFormatError(
                    f"unexpected character {char!r}", lineno, index + 1, "a name or punctuation"
                )
            kind = match.lastgroup or "punct"
            value = match.group()
            tokens.append(Token(value if kind == "punct" else kind, value, lineno, index + 1))
            index = match.end()
    tokens.append(Token("eof", "", lineno + 1, 1))
    return tokens


class _Parser:
    """Recursive-descent parser over the token list."""

    def __init__(self, text: str) -> None:
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def fail(self, expected: str, token: Token | None = None) -> AutomatonFormatError:
        token = token or self.current
        found = "end of input" if token.kind == "eof" else repr(token.text)
        return AutomatonFormatError(
            f"expected {expected}, found {found}", token.line, token.column, expected
        )

    def take(self, kind: str, expected: str | None = None) -> Token:
        token = self.current
        if token.kind != kind:
            raise self.fail(expected or repr(kind))
        self.pos += 1
        return token

    def ident(self, what: str) -> str:
        return self.take("ident", what).text

    def keyword(self, word: str) -> None:
        token = self.current
        if token.kind != "ident" or token.text != word:
            raise self.fail(repr(word))
        self.pos += 1

    def parse(self) -> AutomatonDescription:
        self.keyword("automaton")
        description = AutomatonDescription(name=self.ident("an automaton name"))
        plain_accept = negated_accept = False
        init_token: Token | None = None
        while self.current.kind != "eof":
            token = self.current
            if token.kind != "ident" or token.text not in _KEYWORDS:
                raise self.fail("state, init, accept or trans")
            self.pos += 1
            if token.text == "state":
                description.states.append(self.state())
            elif token.text == "init":
                if init_token is not None:
                    raise AutomatonFormatError(
                        "expected exactly one init", token.line, token.column, "a single init line"
                    )
                init_token = token
                description.inits.append(self.init())
            elif token.text == "accept":
                if self.current.kind == "complement":
                    self.pos += 1
                    negated_accept = True
                else:
                    plain_accept = True
                if plain_accept and negated_accept:
                    raise AutomatonFormatError(
                        "cannot mix accept and accept complement-of",
                        token.line,
                        token.column,
                        "accept lines of one kind",
                    )
                description.accepting_sets.extend(self.accept_sets())
            else:
                description.transitions.append(self.transition(token.line))
        if init_token is None:
            end = self.current
            raise AutomatonFormatError(
                "expected exactly one init", end.line, end.column, "an init line"
            )
        description.negated = negated_accept
        return description

    def state(self) -> tuple[str, list[str]]:
        state = self.ident("a state id")
        self.take("[")
        registers: list[str] = []
        while self.current.kind == "ident":
            registers.append(self.ident("a register"))
        self.take("]", "a register or ']'")
        return state, registers

    def init(self) -> tuple[str, list[tuple[str, str]]]:
        state = self.ident("a state id")
        pairs: list[tuple[str, str]] = []
        for reg, value in self.bindings(allow_star=False):
            assert isinstance(value, str)
            pairs.append((reg, value))
        return state, pairs

    def accept_sets(self) -> list[list[str]]:
        sets = [self.state_set()]
        while self.current.kind == "{":
            sets.append(self.state_set())
        return sets

    def state_set(self) -> list[str]:
        self.take("{")
        members: list[str] = []
        if self.current.kind != "}":
            members.append(self.ident("a state id"))
            while self.current.kind == ",":
                self.pos += 1
                members.append(self.ident("a state id"))
        self.take("}", "',' or '}'")
        return members

    def label(self) -> Label:
        if self.current.kind == "*":
            self.pos += 1
            return STAR
        return self.ident("a register or '*'")

    def transition(self, line: int) -> RawTransition:
        source = self.ident("a source state")
        label = self.label()
        target = self.ident("a target state")
        return RawTransition(source, label, target, self.bindings(allow_star=True), line)

    def bindings(self, allow_star: bool) -> list[tuple[str, Source]]:
        self.take("{")
        pairs: list[tuple[str, Source]] = []
        if self.current.kind != "}":
            pairs.append(self.binding(allow_star))
            while self.current.kind == ",":
                self.pos += 1
                pairs.append(self.binding(allow_star))
        self.take("}", "',' or '}'")
        return pairs

    def binding(self, allow_star: bool) -> tuple[str, Source]:
        reg = self.ident("a register")
        self.take("=")
        if allow_star and self.current.kind == "*":
            self.pos += 1
            return reg, STAR
        return reg, self.ident("a register or '*'" if allow_star else "a name")


def parse_automaton(text: str) -> AutomatonDescription:
    """Parse an automaton file into an unvalidated description.

    Raises:
        AutomatonFormatError: with the line, column and expected token.
    """
    return _Parser(text).parse()


def read_automaton(text: str) -> Automaton:
    """Parse and validate."""
    return validate(parse_automaton(text))


def load_automaton(path: str | Path) -> Automaton:
    automaton = read_automaton(Path(path).read_text(encoding="utf-8"))
    logger.debug("Loaded %s from %s", automaton.name, path)
    return automaton


def _format_set(states: frozenset[str] | list[str]) -> str:
    return "{" + ",".join(sorted(states)) + "}"


def _accept_line(automaton: Automaton, config: ToolkitConfig | None) -> str | None:
    condition = automaton.accepting
    negated = False
    while isinstance(condition, NegatedCondition):
        negated = not negated
        condition = condition.inner
    if not isinstance(condition, ExplicitCondition):
        negated = False
        condition = materialize(automaton, config)

    sets = " ".join(_format_set(s) for s in condition.sets)
    if negated:
        return f"accept complement-of {sets or '{}'}"
    return f"accept {sets}" if sets else None


def serialize_automaton(automaton: Automaton, config: ToolkitConfig | None = None) -> str:
    """Render an automaton in the file format.

    Conditions that are not (negated) explicit families are written as the
    explicit family of strongly connected reachable sets they accept.
    """
    lines = [f"automaton {automaton.name}"]
    for state, regs in automaton.registers.items():
        lines.append(f"state {state} [{' '.join(regs)}]")
    init = ",".join(f"{reg}={name}" for reg, name in sorted(automaton.initial_assignment.items()))
    lines.append(f"init {automaton.initial_state} {{{init}}}")
    accept = _accept_line(automaton, config)
    if accept is not None:
        lines.append(accept)
    for t in automaton.transitions:
        history = ",".join(f"{reg}={source}" for reg, source in t.history.items())
        lines.append(f"trans {t.source} {t.label} {t.target} {{{history}}}")
    return "\n".join(lines) + "\n"


def write_automaton(
    automaton: Automaton, path: str | Path, config: ToolkitConfig | None = None
) -> None:
    Path(path).write_text(serialize_automaton(automaton, config), encoding="utf-8")
    logger.debug("Wrote %s to %s", automaton.name, path)


def parse_upword(text: str) -> UPWord:
    """Parse ``"u ; v"``; ``u`` may be empty, ``v`` may not.

    Raises:
        AutomatonFormatError: on a missing or repeated ``;``, an empty
            periodic part or an invalid name.
    """
    if text.count(";") != 1:
        raise AutomatonFormatError(
            "word must contain exactly one ';'", 1, max(text.find(";"), 0) + 1, "'u ; v'"
        )
    head, tail = text.split(";")
    u, v = head.split(), tail.split()
    if not v:
        raise AutomatonFormatError(
            "periodic part of the word is empty", 1, len(text) + 1, "at least one name after ';'"
        )
    for name in (*u, *v):
        if not is_name(name):
            raise AutomatonFormatError(
                f"invalid name {name!r}", 1, text.find(name) + 1, "a name over [A-Za-z0-9_#]"
            )
    return UPWord(tuple(u), tuple(v))


def parse_names(text: str) -> tuple[str, ...]:
    """Parse a whitespace-separated finite word."""
    names = tuple(text.split())
    for name in names:
        if not is_name(name):
            raise AutomatonFormatError(
                f"invalid name {name!r}", 1, text.find(name) + 1, "a name over [A-Za-z0-9_#]"
            )
    return names


__all__ = [
    "Token",
    "load_automaton",
    "parse_automaton",
    "parse_names",
    "parse_upword",
    "read_automaton",
    "serialize_automaton",
    "tokenize",
    "write_automaton",
]
