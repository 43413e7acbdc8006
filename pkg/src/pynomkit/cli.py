"""Command-line interface for pynomkit.

Verdicts go to standard output, diagnostics to standard error. The exit
status reports process health, not the verdict: 0 when a decision was
completed, 1 on usage errors, 2 when an input file or word is malformed.
"""

from __future__ import annotations

import functools
import json
import logging
import sys
from collections.abc import Callable
from typing import Any, TypeVar

import click

from pynomkit import __version__
from pynomkit.automaton import Automaton
from pynomkit.boolean_ops import complement as complement_automaton
from pynomkit.boolean_ops import intersect as intersect_automata
from pynomkit.boolean_ops import symmetric_difference, union as union_automata
from pynomkit.config import ToolkitConfig, load_config
from pynomkit.configuration import initial_configuration, run_prefix, up_member
from pynomkit.decision import equivalent, find_loop, included as included_in, is_empty, witness
from pynomkit.errors import AutomatonFormatError, NominalError, ValidationError
from pynomkit.fileformat import load_automaton, parse_names, parse_upword, serialize_automaton
from pynomkit.product import build_product
from pynomkit.upwords import analyze_loop

logger = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])


def reports_input_errors(func: F) -> F:
    """Exit with status 2 on malformed input, 1 on other toolkit failures."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except (AutomatonFormatError, ValidationError) as e:
            logger.debug("%s failed on input", func.__name__, exc_info=True)
            click.echo(f"Error: {e}", err=True)
            sys.exit(2)
        except NominalError as e:
            logger.debug("%s failed", func.__name__, exc_info=True)
            click.echo(f"Error: {e}", err=True)
            sys.exit(1)

    return wrapper  # type: ignore[return-value]


def _emit(automaton: Automaton, output: str | None, config: ToolkitConfig) -> None:
    text = serialize_automaton(automaton, config)
    if output is None:
        click.echo(text, nl=False)
        return
    with open(output, "w", encoding="utf-8") as handle:
        handle.write(text)
    click.echo(f"Wrote {automaton.name} ({len(automaton.states)} states) to {output}", err=True)


def _braced(items: Any) -> str:
    return "{" + ",".join(sorted(items)) + "}"


@click.group()
@click.version_option(version=__version__, prog_name="pynomkit")
@click.option("--verbose", "-v", is_flag=True, help="Log debug output to standard error")
@click.option(
    "--config",
    "config_path",
    type=click.Path(exists=True, dir_okay=False),
    help="YAML configuration file",
)
@click.pass_context
def main(ctx: click.Context, verbose: bool, config_path: str | None) -> None:
    """pynomkit - nominal omega-regular languages from the command line.

    Work with history-dependent deterministic Muller automata over an
    infinite alphabet of names.

    Examples:

        # Check an automaton file
        pynomkit validate session.aut

        # Decide membership of a·b·b·b...
        pynomkit member session.aut --word "a ; b"

        # Compare two languages
        pynomkit equiv session.aut universal.aut
    """
    config = load_config(config_path) if config_path else ToolkitConfig()
    logging.basicConfig(
        level=logging.DEBUG if verbose else config.logging_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    ctx.obj = config


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@reports_input_errors
def validate(file: str) -> None:
    """Check that FILE describes a valid automaton.

    Examples:

        pynomkit validate session.aut
    """
    automaton = load_automaton(file)
    click.echo("VALID")
    click.echo(
        f"{automaton.name}: {len(automaton.states)} states, "
        f"{len(automaton.transitions)} transitions",
        err=True,
    )


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--word", "-w", required=True, help='Ultimately periodic word "u ; v"')
@click.option("--inf", "show_inf", is_flag=True, help="Also print the Inf set of the run")
@reports_input_errors
def member(file: str, word: str, show_inf: bool) -> None:
    """Decide whether FILE accepts the word u·v·v·v...

    Examples:

        pynomkit member session.aut --word "; a a"
        pynomkit member session.aut --word "a ; b" --inf
    """
    automaton = load_automaton(file)
    verdict = up_member(automaton, parse_upword(word))
    click.echo(verdict.label)
    if show_inf:
        click.echo(f"Inf: {_braced(verdict.inf)}")


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--prefix", "-p", default="", help='Finite word, e.g. "a b c"')
@click.option("--trace", is_flag=True, help="Print every configuration along the path")
@reports_input_errors
def run(file: str, prefix: str, trace: bool) -> None:
    """Run FILE on a finite word from its initial configuration.

    Examples:

        pynomkit run swap3.aut --prefix "c d b"
        pynomkit run swap3.aut --prefix "c d b" --trace
    """
    automaton = load_automaton(file)
    names = parse_names(prefix)
    record = run_prefix(automaton, initial_configuration(automaton), names)
    if trace:
        click.echo(f"  {record.path[0]}")
        for name, config in zip(names, record.path[1:]):
            click.echo(f"{name} {config}")
    click.echo(f"final: {record.final}")
    click.echo(f"visited: {' '.join(record.visited)}")


def _binary_command(
    name: str, build: Callable[[Automaton, Automaton], Automaton], summary: str
) -> None:
    @main.command(name=name, help=summary)
    @click.argument("file1", type=click.Path(exists=True, dir_okay=False))
    @click.argument("file2", type=click.Path(exists=True, dir_okay=False))
    @click.option("--output", "-o", type=click.Path(), help="Output file (default: stdout)")
    @click.pass_obj
    @reports_input_errors
    def command(config: ToolkitConfig, file1: str, file2: str, output: str | None) -> None:
        _emit(build(load_automaton(file1), load_automaton(file2)), output, config)


_binary_command(
    "product",
    lambda a1, a2: build_product(a1, a2).automaton,
    "Synchronized product of FILE1 and FILE2, accepting every run.",
)
_binary_command("intersect", intersect_automata, "Automaton for the intersection of two languages.")
_binary_command("union", union_automata, "Automaton for the union of two languages.")
_binary_command(
    "symdiff", symmetric_difference, "Automaton for the words accepted by exactly one input."
)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--output", "-o", type=click.Path(), help="Output file (default: stdout)")
@click.pass_obj
@reports_input_errors
def complement(config: ToolkitConfig, file: str, output: str | None) -> None:
    """Automaton for the complement of FILE's language.

    Examples:

        pynomkit complement session.aut -o not_session.aut
    """
    _emit(complement_automaton(load_automaton(file)), output, config)


@main.command()
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--witness", "show_witness", is_flag=True, help="Print an accepted word")
@click.pass_obj
@reports_input_errors
def empty(config: ToolkitConfig, file: str, show_witness: bool) -> None:
    """Decide whether FILE accepts no word.

    Examples:

        pynomkit empty session.aut --witness
    """
    automaton = load_automaton(file)
    if not show_witness:
        click.echo(is_empty(automaton, config).label)
        return
    word = witness(automaton, config)
    if word is None:
        click.echo("EMPTY")
    else:
        click.echo("NONEMPTY")
        click.echo(str(word))


@main.command()
@click.argument("file1", type=click.Path(exists=True, dir_okay=False))
@click.argument("file2", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
@reports_input_errors
def equiv(config: ToolkitConfig, file1: str, file2: str) -> None:
    """Decide whether FILE1 and FILE2 accept the same words.

    Examples:

        pynomkit equiv session.aut session.aut
    """
    result = equivalent(load_automaton(file1), load_automaton(file2), config)
    click.echo("EQUIV" if result.holds else "NOTEQUIV")
    if result.counterexample is not None:
        click.echo(str(result.counterexample))


@main.command()
@click.argument("file1", type=click.Path(exists=True, dir_okay=False))
@click.argument("file2", type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
@reports_input_errors
def included(config: ToolkitConfig, file1: str, file2: str) -> None:
    """Decide whether every word accepted by FILE1 is accepted by FILE2.

    Examples:

        pynomkit included session.aut universal.aut
    """
    result = included_in(load_automaton(file1), load_automaton(file2), config)
    click.echo("INCLUDED" if result.holds else "NOTINCLUDED")
    if result.counterexample is not None:
        click.echo(str(result.counterexample))


@main.command("analyze-loop")
@click.argument("file", type=click.Path(exists=True, dir_okay=False))
@click.option("--from", "state", required=True, help="State the loop starts from")
@click.pass_obj
@reports_input_errors
def analyze_loop_command(config: ToolkitConfig, file: str, state: str) -> None:
    """Print the register analysis of a loop through STATE.

    Uses the accepting witness loop when it passes through STATE, otherwise
    the shortest loop through STATE.

    Examples:

        pynomkit analyze-loop swap3.aut --from q0
    """
    from pynomkit.upwords import Loop

    automaton = load_automaton(file)
    if state not in automaton.registers:
        raise click.UsageError(f"Unknown state {state}")
    found = is_empty(automaton, config).witness_loop
    if found is not None and state in found.states:
        loop = Loop(found.loop).rotate(state)
    else:
        try:
            loop = find_loop(automaton, state)
        except ValueError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(1)

    analysis = analyze_loop(loop)
    click.echo(f"loop: {loop}")
    click.echo(
        "sigma_hat: {"
        + ", ".join(f"{x}->{y}" for x, y in sorted(analysis.sigma_hat.items()))
        + "}"
    )
    click.echo(f"I: {_braced(analysis.surviving)}")
    click.echo(f"T: {_braced(analysis.transient)}")
    click.echo(f"theta: {analysis.theta}")
    click.echo(f"epsilon: {analysis.epsilon}")
    click.echo(f"zeta: {analysis.zeta}")
    click.echo("X: " + " ".join(f"({x},{i},{j})" for x, i, j in sorted(analysis.x_tuples)))


@main.command()
@click.option(
    "--format", "-f", "output_format", type=click.Choice(["table", "json"]), default="table"
)
@click.option("--dump", metavar="NAME", help="Print the source of one example")
def corpus(output_format: str, dump: str | None) -> None:
    """List the built-in example automata.

    --dump prints a loadable file; partial examples are written completed
    with their sink.

    Examples:

        pynomkit corpus
        pynomkit corpus --format json
        pynomkit corpus --dump session > session.aut
    """
    from pynomkit.corpus import get_example, list_examples

    if dump is not None:
        example = get_example(dump)
        if example is None:
            click.echo(f"Error: Example '{dump}' not found", err=True)
            sys.exit(1)
        if example.partial:
            click.echo(serialize_automaton(example.automaton()), nl=False)
        else:
            click.echo(example.source, nl=False)
        return

    examples = list_examples()
    if output_format == "json":
        data = [
            {
                "name": e.name,
                "description": e.description,
                "states": len(e.automaton().states),
            }
            for e in examples
        ]
        click.echo(json.dumps(data, indent=2))
    else:
        click.echo(f"{'Name':<12} {'States':<7} Description")
        click.echo("-" * 80)
        for e in examples:
            click.echo(f"{e.name:<12} {len(e.automaton().states):<7} {e.description}")


def cli_main(argv: list[str] | None = None) -> int:
    """Run the CLI and return its exit status instead of exiting."""
    try:
        result = main.main(args=argv, prog_name="pynomkit", standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return 1
    except click.ClickException as e:
        e.show()
        return 1
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 1
    return result if isinstance(result, int) else 0


def run_cli() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    run_cli()
