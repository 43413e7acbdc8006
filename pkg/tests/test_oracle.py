"""Tests for the brute-force reference implementations."""

from __future__ import annotations

import dataclasses
import itertools
import random

import pytest

POOL = ("a", "b", "c", "d")


def _mutations(structure):  # type: ignore[no-untyped-def]
    """Every single-entry history change that alters some product step."""
    from pynomkit.automaton import STAR

    automaton = structure.automaton
    found = []
    for index, t in enumerate(automaton.transitions):
        regs = automaton.registers_of(t.source)
        for target, source in t.history.items():
            if source is STAR:
                replacements: list[object] = list(regs)
            else:
                replacements = [reg for reg in regs if reg != source]
                if t.label is STAR:
                    replacements.append(STAR)
            found.extend((index, target, replacement) for replacement in replacements)
    return found


def _mutate(structure, index, target, replacement):  # type: ignore[no-untyped-def]
    from pynomkit.automaton import History

    automaton = structure.automaton
    t = automaton.transitions[index]
    history = History.from_mapping({**t.history.as_dict(), target: replacement})
    transitions = list(automaton.transitions)
    transitions[index] = dataclasses.replace(t, history=history)
    mutated = dataclasses.replace(automaton, transitions=tuple(transitions))
    return dataclasses.replace(structure, automaton=mutated)


class TestOracleMembership:
    """Tests for oracle_up_member."""

    def test_session_words(self, session) -> None:  # type: ignore[no-untyped-def]
        """Test the oracle on the session words."""
        from pynomkit.configuration import UPWord
        from pynomkit.oracle import oracle_up_member

        assert oracle_up_member(session, UPWord.of([], ["a", "a"])).accepted
        assert not oracle_up_member(session, UPWord.of(["a"], ["b"])).accepted
        assert oracle_up_member(session, UPWord.of([], ["a", "b", "a", "b"])).accepted

    def test_inf_set(self, swap3) -> None:  # type: ignore[no-untyped-def]
        """Test that the oracle reports the Inf set of the run."""
        from pynomkit.configuration import UPWord
        from pynomkit.oracle import oracle_up_member

        verdict = oracle_up_member(swap3, UPWord.of(["d"], ["e"]))
        assert verdict.inf == frozenset({"sink"})
        assert not verdict.accepted


class TestEdgeCorrespondence:
    """Tests for oracle_edge_correspondence."""

    def test_session_square(self, session) -> None:  # type: ignore[no-untyped-def]
        """Test that the product of session with itself passes."""
        from pynomkit.oracle import oracle_edge_correspondence

        report = oracle_edge_correspondence(session, session, POOL)
        assert report.ok, report.violations
        assert report.checked == 5 + 4 * 5

    @pytest.mark.slow
    def test_corpus_pairs(self, corpus) -> None:  # type: ignore[no-untyped-def]
        """Test every corpus pair over an exhaustive pool of four names."""
        from pynomkit.oracle import oracle_edge_correspondence

        for a1, a2 in itertools.product(corpus.values(), repeat=2):
            report = oracle_edge_correspondence(a1, a2, POOL)
            assert report.ok, (a1.name, a2.name, report.violations[:3])
            assert report.checked > 0

    def test_small_pool_warns(self, swap3, caplog) -> None:  # type: ignore[no-untyped-def]
        """Test that a pool below the recommended size logs a warning."""
        from pynomkit.oracle import oracle_edge_correspondence

        with caplog.at_level("WARNING", logger="pynomkit.oracle"):
            oracle_edge_correspondence(swap3, swap3, POOL)
        assert "smaller than recommended" in caplog.text

    def test_detects_seeded_mutations(self, session, constant, swap3) -> None:  # type: ignore[no-untyped-def]
        """Test that 20 random history mutations are all detected."""
        from pynomkit.oracle import oracle_edge_correspondence
        from pynomkit.product import build_product

        pairs = [(constant, session), (session, constant), (swap3, session), (constant, constant)]
        candidates = []
        for a1, a2 in pairs:
            structure = build_product(a1, a2)
            candidates.extend((a1, a2, structure, m) for m in _mutations(structure))

        rng = random.Random(7)
        chosen = rng.sample(candidates, 20)
        for a1, a2, structure, (index, target, replacement) in chosen:
            mutated = _mutate(structure, index, target, replacement)
            report = oracle_edge_correspondence(a1, a2, POOL, product=mutated)
            assert not report.ok, (a1.name, a2.name, index, target, replacement)


class TestLoopSearch:
    """Tests for oracle_loop_search."""

    def test_swap3_loop(self, swap3_loop) -> None:  # type: ignore[no-untyped-def]
        """Test that two traversals are found for the swap3 loop."""
        from pynomkit.configuration import Configuration
        from pynomkit.oracle import oracle_loop_search
        from pynomkit.upwords import traverse

        start = {"x0": "a", "y0": "b", "z0": "c"}
        word = oracle_loop_search(swap3_loop, start, 2)
        assert word is not None
        assert len(word) == 6
        config = Configuration.of("q0", start)
        assert traverse(swap3_loop, config, word) == config

    def test_bound_too_small(self, swap3_loop) -> None:  # type: ignore[no-untyped-def]
        """Test that one traversal cannot swap the names back."""
        from pynomkit.oracle import oracle_loop_search

        assert oracle_loop_search(swap3_loop, {"x0": "a", "y0": "b", "z0": "c"}, 1) is None

    def test_invalid_bound(self, swap3_loop) -> None:  # type: ignore[no-untyped-def]
        """Test that the bound must be positive."""
        from pynomkit.oracle import oracle_loop_search

        with pytest.raises(ValueError):
            oracle_loop_search(swap3_loop, {"x0": "a", "y0": "b", "z0": "c"}, 0)

    def test_agrees_with_realization(self, rng, random_loop) -> None:  # type: ignore[no-untyped-def]
        """Test that the search finds a word whenever realization needs few traversals."""
        from pynomkit.oracle import oracle_loop_search
        from pynomkit.upwords import analyze_loop, choose_gamma

        for _ in range(20):
            loop = random_loop(rng)
            analysis = analyze_loop(loop)
            traversals = choose_gamma(analysis) + (analysis.zeta if analysis.transient else 0)
            if traversals > 3 or len(loop.registers) > 2:
                continue
            names = {reg: f"s{k}" for k, reg in enumerate(sorted(loop.registers))}
            assert oracle_loop_search(loop, names, traversals) is not None, str(loop)
