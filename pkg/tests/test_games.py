"""Finite tree games, negation, disjunction, offender and won_by."""

from __future__ import annotations


import pytest

from colgames import (
    BOT,
    TOP,
    EnumBounds,
    FiniteGame,
    GameNode,
    LabMove,
    Offender,
    disjoin,
    finite_game_interface,
    leaf,
    negate,
    offender,
    split_disjunction,
    won_by,
)
from colgames.suite import STATIC_SUITE, bot_choice, first_mover_wins, leaf_top, top_choice

from _util import all_runs, first_difference

BOUNDS = EnumBounds(max_address_len=2, max_run_len=5)


def lm(label, move):
    return LabMove(label, move)


class TestFiniteGameInterface:
    def test_leaf_game(self):
        g = finite_game_interface(leaf_top())
        assert g.is_legal(())
        assert g.winner(()) is TOP
        assert not g.is_legal((lm(TOP, "x"),))

    def test_child_winner(self):
        g = finite_game_interface(bot_choice())
        assert g.winner((lm(BOT, "b"),)) is BOT

    def test_winner_defined_at_every_node(self):
        g = finite_game_interface(bot_choice())
        assert g.winner(()) is TOP  # stopping early is a completed play

    def test_duplicate_edges_rejected(self):
        child = leaf(TOP)
        with pytest.raises(ValueError):
            GameNode(TOP, ((lm(BOT, "m"), child), (lm(BOT, "m"), child)))

    def test_legal_moves_by_player(self):
        g = finite_game_interface(first_mover_wins())
        assert g.legal_moves((), TOP, BOUNDS) == {"a"}
        assert g.legal_moves((), BOT, BOUNDS) == {"b"}

    def test_prefix_closure_exhaustive(self):
        for suite_game in STATIC_SUITE:
            g = finite_game_interface(suite_game)
            pool = g.probe_moves(BOUNDS)
            for run in all_runs(pool, 5):
                if g.is_legal(run):
                    for cut in range(len(run)):
                        assert g.is_legal(run[:cut])


class TestOffender:
    def test_legal_run_has_no_offender(self):
        g = finite_game_interface(bot_choice())
        assert offender(g, (lm(BOT, "b"),)) is None

    def test_leaf_game_first_move_offends(self):
        g = finite_game_interface(leaf_top())
        assert offender(g, (lm(TOP, "x"),)) == Offender(0, TOP)

    def test_agrees_with_prefix_scan(self):
        g = finite_game_interface(first_mover_wins())
        pool = g.probe_moves(BOUNDS)
        for run in all_runs(pool, 4):
            expected = None
            for i in range(len(run)):
                if not g.is_legal(run[: i + 1]):
                    expected = Offender(i, run[i].label)
                    break
            assert offender(g, run) == expected


class TestWonBy:
    def test_leaf_trivials(self):
        g = finite_game_interface(leaf_top())
        assert won_by(g, (), TOP)
        assert won_by(g, (lm(BOT, "junk"),), TOP)  # the environment offends

    def test_first_mover_winner_table(self):
        g = finite_game_interface(first_mover_wins())
        table = {
            (): BOT,
            (lm(TOP, "a"),): TOP,
            (lm(BOT, "b"),): BOT,
            (lm(TOP, "a"), lm(BOT, "b")): TOP,
            (lm(BOT, "b"), lm(TOP, "a")): BOT,
        }
        for run, expected in table.items():
            assert won_by(g, run, expected)
            assert not won_by(g, run, TOP if expected is BOT else BOT)

    def test_exclusivity_exhaustive(self):
        for suite_game in STATIC_SUITE + (first_mover_wins(),):
            g = finite_game_interface(suite_game)
            pool = g.probe_moves(BOUNDS)
            for run in all_runs(pool, 4):
                assert won_by(g, run, TOP) != won_by(g, run, BOT)


class TestNegate:
    def test_leaf(self):
        g = negate(finite_game_interface(leaf_top()))
        assert g.winner(()) is BOT

    def test_legality_matches_flip_label_oracle(self):
        inner = finite_game_interface(first_mover_wins())
        neg = negate(inner)
        pool = inner.probe_moves(BOUNDS)
        for run in all_runs(pool, 3):
            flipped = tuple(LabMove(BOT if x.label is TOP else TOP, x.move) for x in run)
            assert neg.is_legal(run) == inner.is_legal(flipped)

    def test_involution_behavioral(self):
        for suite_game in STATIC_SUITE:
            g = finite_game_interface(suite_game)
            double = negate(negate(g))
            assert first_difference(g, double, g.probe_moves(BOUNDS), 4) is None

    def test_legal_moves_role_swapped(self):
        g = negate(finite_game_interface(first_mover_wins()))
        assert g.legal_moves((), TOP, BOUNDS) == {"b"}
        assert g.legal_moves((), BOT, BOUNDS) == {"a"}


class TestDisjoin:
    def test_winner_trivials(self):
        bot_leaf = finite_game_interface(FiniteGame("bl", leaf(BOT)))
        top_leaf = finite_game_interface(leaf_top())
        assert disjoin(bot_leaf, bot_leaf).winner(()) is BOT
        assert disjoin(top_leaf, bot_leaf).winner(()) is TOP
        assert disjoin(bot_leaf, top_leaf).winner(()) is TOP

    def test_moves_need_component_prefix(self):
        g = disjoin(
            finite_game_interface(top_choice()), finite_game_interface(bot_choice())
        )
        assert g.is_legal((lm(TOP, "1.a"),))
        assert g.is_legal((lm(BOT, "2.b"),))
        assert not g.is_legal((lm(TOP, "a"),))
        assert offender(g, (lm(TOP, "a"),)) == Offender(0, TOP)

    def test_legality_is_conjunction_of_components(self):
        left = finite_game_interface(top_choice())
        right = finite_game_interface(bot_choice())
        g = disjoin(left, right)
        pool = g.probe_moves(BOUNDS)
        for run in all_runs(pool, 4):
            parts = split_disjunction(run)
            expected = (
                parts is not None
                and left.is_legal(parts[0])
                and right.is_legal(parts[1])
            )
            assert g.is_legal(run) == expected

    def test_split_concatenation_identity(self):
        # Splitting then re-tagging each component reproduces the original
        # interleaving move for move; checked against an independent splitter.
        left = finite_game_interface(top_choice())
        right = finite_game_interface(bot_choice())
        g = disjoin(left, right)
        pool = g.probe_moves(BOUNDS)
        for run in all_runs(pool, 5):
            parts = split_disjunction(run)
            oracle_first = tuple(
                LabMove(x.label, x.move[2:]) for x in run if x.move.startswith("1.")
            )
            oracle_second = tuple(
                LabMove(x.label, x.move[2:]) for x in run if x.move.startswith("2.")
            )
            if parts is None:
                assert any(not x.move.startswith(("1.", "2.")) for x in run)
            else:
                assert parts == (oracle_first, oracle_second)

    def test_legal_moves_are_prefixed_union(self):
        g = disjoin(
            finite_game_interface(top_choice()), finite_game_interface(bot_choice())
        )
        assert g.legal_moves((), TOP, BOUNDS) == {"1.a"}
        assert g.legal_moves((), BOT, BOUNDS) == {"2.b"}
