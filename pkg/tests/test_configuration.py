"""Tests for configuration stepping and membership."""

from __future__ import annotations

import random

import hypothesis.strategies as st
import pytest
from hypothesis import HealthCheck, given, settings


class TestConfiguration:
    """Tests for the Configuration value type."""

    def test_bindings_are_sorted(self) -> None:
        """Test that equal assignments give equal configurations."""
        from pynomkit.configuration import Configuration

        a = Configuration.of("q0", {"y": "b", "x": "a"})
        b = Configuration.of("q0", {"x": "a", "y": "b"})
        assert a == b
        assert str(a) == "(q0, {x=a, y=b})"
        assert a.register_holding("b") == "y"
        assert a.register_holding("c") is None

    def test_non_injective_assignment_rejected(self) -> None:
        """Test that two registers may not hold the same name."""
        from pynomkit.configuration import Configuration

        with pytest.raises(ValueError, match="not injective"):
            Configuration.of("q0", {"x": "a", "y": "a"})

    def test_check_configuration(self, swap3) -> None:  # type: ignore[no-untyped-def]
        """Test that configurations must assign exactly the state's registers."""
        from pynomkit.configuration import Configuration, check_configuration

        check_configuration(swap3, Configuration.of("q1", {"x1": "a", "y1": "b", "z1": "c"}))
        with pytest.raises(ValueError):
            check_configuration(swap3, Configuration.of("q1", {"x1": "a"}))
        with pytest.raises(ValueError, match="Unknown state"):
            check_configuration(swap3, Configuration.of("q9"))


class TestStep:
    """Tests for single steps."""

    def test_register_step(self, swap3) -> None:  # type: ignore[no-untyped-def]
        """Test that reading a held name follows its register."""
        from pynomkit.configuration import Configuration, initial_configuration, step

        after = step(swap3, initial_configuration(swap3), "c")
        assert after == Configuration.of("q1", {"x1": "b", "y1": "a", "z1": "c"})

    def test_fresh_step_stores_name(self, session) -> None:  # type: ignore[no-untyped-def]
        """Test that a fresh name takes the star transition and is stored."""
        from pynomkit.configuration import Configuration, initial_configuration, step

        after = step(session, initial_configuration(session), "a")
        assert after == Configuration.of("q1", {"x": "a"})
        assert step(session, after, "b") == after
        assert step(session, after, "a") == Configuration.of("q0")

    def test_fresh_step_to_sink(self, swap3) -> None:  # type: ignore[no-untyped-def]
        """Test that completed automata route missing labels to the sink."""
        from pynomkit.configuration import Configuration, initial_configuration, step

        assert step(swap3, initial_configuration(swap3), "d") == Configuration.of("sink")

    def test_fire_rejects_inconsistent_names(self, session) -> None:  # type: ignore[no-untyped-def]
        """Test that fire checks the name against the label."""
        from pynomkit.automaton import STAR
        from pynomkit.configuration import Configuration, fire
        from pynomkit.errors import InvariantViolation

        config = Configuration.of("q1", {"x": "a"})
        with pytest.raises(InvariantViolation, match="not fresh"):
            fire(session.transition("q1", STAR), config, "a")
        with pytest.raises(InvariantViolation, match="does not hold"):
            fire(session.transition("q1", "x"), config, "b")
        with pytest.raises(InvariantViolation, match="does not leave"):
            fire(session.transition("q0", STAR), config, "b")


class TestStepProperties:
    """Randomized checks of single steps over generated automata."""

    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    @settings(
        max_examples=100, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture]
    )
    def test_exactly_one_successor(self, random_automaton, seed: int) -> None:  # type: ignore[no-untyped-def]
        """Test that each configuration and name enable exactly one transition."""
        from pynomkit.configuration import fire, initial_configuration, step
        from pynomkit.errors import InvariantViolation

        rng = random.Random(seed)
        automaton = random_automaton(rng)
        config = initial_configuration(automaton)
        for _ in range(12):
            name = rng.choice("abcdef")
            successors = []
            for t in automaton.outgoing(config.state):
                try:
                    successors.append(fire(t, config, name))
                except InvariantViolation:
                    continue
            assert successors == [step(automaton, config, name)]
            config = successors[0]

    @given(seed=st.integers(min_value=0, max_value=2**32 - 1))
    @settings(
        max_examples=100, deadline=None, suppress_health_check=[HealthCheck.function_scoped_fixture]
    )
    def test_image_grows_by_read_name_only(self, random_automaton, seed: int) -> None:  # type: ignore[no-untyped-def]
        """Test that a step stores no name besides the old ones and the one read."""
        from pynomkit.configuration import check_configuration, initial_configuration, step

        rng = random.Random(seed)
        automaton = random_automaton(rng)
        config = initial_configuration(automaton)
        for _ in range(12):
            name = rng.choice("abcdef")
            after = step(automaton, config, name)
            check_configuration(automaton, after)
            assert after.image <= config.image | {name}
            config = after


class TestRunPrefix:
    """Tests for finite runs."""

    def test_run_through_loop(self, swap3) -> None:  # type: ignore[no-untyped-def]
        """Test the intermediate configurations of c d b."""
        from pynomkit.configuration import Configuration, initial_configuration, run_prefix

        record = run_prefix(swap3, initial_configuration(swap3), ["c", "d", "b"])
        assert record.path[1:] == (
            Configuration.of("q1", {"x1": "b", "y1": "a", "z1": "c"}),
            Configuration.of("q2", {"x2": "b", "y2": "a", "z2": "d"}),
            Configuration.of("q0", {"x0": "b", "y0": "a", "z0": "d"}),
        )
        assert record.visited == ("q0", "q1", "q2", "q0")

    def test_two_traversals_return_to_start(self, swap3) -> None:  # type: ignore[no-untyped-def]
        """Test that c d b d c a ends in the initial configuration."""
        from pynomkit.configuration import initial_configuration, run_prefix

        start = initial_configuration(swap3)
        assert run_prefix(swap3, start, "c d b d c a".split()).final == start

    def test_empty_prefix(self, session) -> None:  # type: ignore[no-untyped-def]
        """Test that the empty word stays put."""
        from pynomkit.configuration import initial_configuration, run_prefix

        start = initial_configuration(session)
        record = run_prefix(session, start, [])
        assert record.final == start
        assert record.visited == ("q0",)


class TestUPWord:
    """Tests for ultimately periodic words."""

    def test_string_form(self) -> None:
        """Test the u ; v rendering."""
        from pynomkit.configuration import UPWord

        assert str(UPWord.of(["a"], ["b", "c"])) == "a ; b c"
        assert str(UPWord.of([], ["a"])) == "; a"

    def test_empty_period_rejected(self) -> None:
        """Test that v must be nonempty."""
        from pynomkit.configuration import UPWord

        with pytest.raises(ValueError, match="nonempty"):
            UPWord.of(["a"], [])

    def test_invalid_name_rejected(self) -> None:
        """Test that names are restricted to the name alphabet."""
        from pynomkit.configuration import UPWord

        with pytest.raises(ValueError, match="Invalid name"):
            UPWord.of([], ["a-b"])


class TestMembership:
    """Tests for up_member."""

    @pytest.mark.parametrize(
        ("u", "v", "accepted"),
        [
            ([], ["a", "a"], True),
            (["a"], ["b"], False),
            ([], ["a", "b", "a", "b"], True),
        ],
    )
    def test_session_words(self, session, u, v, accepted) -> None:  # type: ignore[no-untyped-def]
        """Test membership of the session words."""
        from pynomkit.configuration import UPWord, up_member

        assert up_member(session, UPWord.of(u, v)).accepted is accepted

    def test_inf_set(self, session) -> None:  # type: ignore[no-untyped-def]
        """Test that the verdict reports the Inf set."""
        from pynomkit.configuration import UPWord, up_member

        verdict = up_member(session, UPWord.of(["a"], ["b"]))
        assert verdict.inf == frozenset({"q1"})
        assert verdict.label == "REJECT"

    def test_constant_words(self, constant) -> None:  # type: ignore[no-untyped-def]
        """Test the ultimately constant language."""
        from pynomkit.configuration import UPWord, up_member

        assert up_member(constant, UPWord.of(["a", "b"], ["b"])).accepted
        assert not up_member(constant, UPWord.of([], ["a", "b"])).accepted
        assert not up_member(constant, UPWord.of(["a"], ["b", "b", "c", "c"])).accepted

    def test_swap3_replayed_loop(self, swap3) -> None:  # type: ignore[no-untyped-def]
        """Test that repeating the two-traversal word is accepted."""
        from pynomkit.configuration import UPWord, up_member

        verdict = up_member(swap3, UPWord.of([], "c d b d c a".split()))
        assert verdict.accepted
        assert verdict.inf == frozenset({"q0", "q1", "q2"})

    def test_agrees_with_oracle(self, corpus, rng, random_word) -> None:  # type: ignore[no-untyped-def]
        """Test exact agreement with the lasso oracle on randomized pairs."""
        from pynomkit.configuration import up_member
        from pynomkit.oracle import oracle_up_member

        automata = list(corpus.values())
        for _ in range(500):
            automaton = rng.choice(automata)
            word = random_word(rng)
            assert up_member(automaton, word) == oracle_up_member(automaton, word), (
                automaton.name,
                str(word),
            )


class TestEquivariance:
    """Tests for permuting words."""

    def test_permute_word(self) -> None:
        """Test that names are swapped consistently."""
        from pynomkit.configuration import UPWord, permute_word

        word = UPWord.of(["a"], ["b", "c"])
        assert permute_word(word, {"a": "b", "b": "a"}) == UPWord.of(["b"], ["a", "c"])

    def test_permutation_must_be_bijective(self) -> None:
        """Test that non-bijective mappings are refused."""
        from pynomkit.configuration import UPWord, permute_word

        word = UPWord.of([], ["a"])
        with pytest.raises(ValueError, match="not injective"):
            permute_word(word, {"a": "c", "b": "c"})
        with pytest.raises(ValueError, match="own domain"):
            permute_word(word, {"a": "b"})

    def test_verdicts_are_invariant(self, corpus, rng, random_word) -> None:  # type: ignore[no-untyped-def]
        """Test that permutations fixing the initial names preserve membership."""
        from pynomkit.configuration import permute_word, up_member

        for automaton in corpus.values():
            fixed = set(automaton.initial_assignment.values())
            for _ in range(50):
                word = random_word(rng)
                movable = sorted((word.names | {"e", "f", "g"}) - fixed)
                images = movable[:]
                rng.shuffle(images)
                permuted = permute_word(word, dict(zip(movable, images)))
                assert up_member(automaton, word).accepted == up_member(
                    automaton, permuted
                ).accepted, (automaton.name, str(word), str(permuted))


class TestFreshNames:
    """Tests for the fresh name generator."""

    def test_skips_avoided_names(self) -> None:
        """Test that avoided names are never produced."""
        from pynomkit.configuration import FreshNames

        fresh = FreshNames(["#0", "#2"])
        assert [next(fresh) for _ in range(3)] == ["#1", "#3", "#4"]
        fresh.avoid(["#5"])
        assert next(fresh) == "#6"

    def test_prefix(self) -> None:
        """Test that the prefix is configurable."""
        from pynomkit.configuration import FreshNames

        assert next(FreshNames(prefix="n")) == "n0"
