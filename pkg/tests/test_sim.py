"""Interaction harness, trace audits, and the verification drivers."""

from __future__ import annotations

import pytest

from colgames import (
    BOT,
    TOP,
    Direction,
    EnumBounds,
    FiniteGame,
    LabMove,
    PreconditionError,
    MirrorStrategy,
    RemapStrategy,
    audit_trace,
    disjoin,
    finite_game_interface,
    leaf,
    offender,
    pass_strategy,
    random_adversary,
    run_interaction,
    scripted_adversary,
    translation_compound,
    verify_static_preservation,
    verify_translation,
    won_by,
)
from colgames.suite import (
    alternating,
    bot_choice,
    first_mover_wins,
    leaf_top,
    top_choice,
)

from _util import BrokenRemapStrategy

BOUNDS = EnumBounds(max_address_len=2, max_run_len=12)


def lm(label, move):
    return LabMove(label, move)


class TestRunInteraction:
    def test_mutual_pass_on_disjoined_leaves(self):
        game = disjoin(
            finite_game_interface(FiniteGame("lb", leaf(BOT))),
            finite_game_interface(leaf_top()),
        )
        trace = run_interaction(pass_strategy(), pass_strategy(), game, 10)
        assert trace.moves == ()
        assert trace.outcome is TOP
        assert trace.offender is None

    def test_outcome_recomputes_from_run(self):
        game = translation_compound(finite_game_interface(bot_choice()), Direction.TIGHT_TO_LOOSE)
        machine = MirrorStrategy(game)
        trace = run_interaction(machine, scripted_adversary(["2.0", "2..b"]), game, 30)
        assert (trace.outcome is TOP) == won_by(game, trace.moves, TOP)
        assert trace.offender == offender(game, trace.moves)

    def test_first_illegal_adversary_move_is_flagged(self):
        game = translation_compound(finite_game_interface(bot_choice()), Direction.TIGHT_TO_LOOSE)
        machine = MirrorStrategy(game)
        trace = run_interaction(machine, scripted_adversary(["2.0", "1.0"]), game, 30)
        # "1.0" is a switch in the tight-co component, which belongs to the
        # machine there; index 2 because the machine mirrored the first switch
        assert trace.offender is not None
        assert trace.offender.culprit is BOT
        assert trace.outcome is TOP

    def test_truncation_is_recorded(self):
        game = translation_compound(finite_game_interface(bot_choice()), Direction.TIGHT_TO_LOOSE)
        machine = MirrorStrategy(game)
        trace = run_interaction(machine, scripted_adversary(["2.0", "2.0", "2.0"]), game, 2)
        assert trace.truncated
        assert len(trace.moves) == 2

    def test_replaying_a_trace_reproduces_it(self):
        game = translation_compound(finite_game_interface(bot_choice()), Direction.LOOSE_TO_TIGHT)
        machine = RemapStrategy(game)
        adversary = random_adversary(game, seed=7, bounds=BOUNDS, budget=3)
        golden = run_interaction(machine, adversary, game, 40)
        script = [x.move for x in golden.moves if x.label is BOT]
        replayed = run_interaction(machine, scripted_adversary(script), game, 40)
        assert replayed == golden
        # and the serialized forms are byte-identical
        from colgames.files import TraceFile, dumps_trace

        def serialize(trace):
            return dumps_trace(TraceFile(
                game=game.name, version="0.1.0", seed=None, bounds=BOUNDS,
                moves=trace.moves, outcome=trace.outcome, offender=trace.offender,
                truncated=trace.truncated,
            ))

        assert serialize(replayed) == serialize(golden)

    def test_thousand_seeded_adversaries_all_lose(self):
        game = translation_compound(finite_game_interface(bot_choice()), Direction.LOOSE_TO_TIGHT)
        machine = RemapStrategy(game)
        won = 0
        for seed in range(1000):
            adversary = random_adversary(game, seed, BOUNDS, budget=3)
            trace = run_interaction(machine, adversary, game, 40)
            won += trace.outcome is TOP
        assert won == 1000

    def test_notes_align_with_machine_batches(self):
        game = translation_compound(finite_game_interface(bot_choice()), Direction.LOOSE_TO_TIGHT)
        machine = RemapStrategy(game)
        trace = run_interaction(machine, scripted_adversary(["2.:", "2.1"]), game, 30)
        env_moves = [i for i, x in enumerate(trace.moves) if x.label is BOT]
        assert [n.reacted_to for n in trace.notes] == env_moves
        assert sum(n.emitted for n in trace.notes) == sum(
            1 for x in trace.moves if x.label is TOP
        )


class TestVerifyTranslation:
    def test_leaf_base_budget_zero(self):
        report = verify_translation(leaf_top(), Direction.TIGHT_TO_LOOSE, BOUNDS, budget=0)
        assert report.adversaries == 1
        assert report.ok

    @pytest.mark.parametrize("direction", list(Direction))
    @pytest.mark.parametrize("base", [bot_choice(), top_choice(), alternating()])
    def test_small_budget_suites_pass(self, base, direction):
        report = verify_translation(base, direction, BOUNDS, budget=2, max_steps=64)
        assert report.adversaries > 1
        assert report.failures == ()

    def test_non_static_base_aborts(self):
        with pytest.raises(PreconditionError):
            verify_translation(first_mover_wins(), Direction.TIGHT_TO_LOOSE, BOUNDS, budget=1)

    def test_corrupted_routine_is_caught(self):
        compound = translation_compound(
            finite_game_interface(bot_choice()), Direction.LOOSE_TO_TIGHT
        )
        report = verify_translation(
            bot_choice(),
            Direction.LOOSE_TO_TIGHT,
            BOUNDS,
            budget=2,
            machine=BrokenRemapStrategy(compound),
        )
        assert len(report.failures) >= 1

    def test_reports_are_deterministic(self):
        first = verify_translation(bot_choice(), Direction.LOOSE_TO_TIGHT, BOUNDS, budget=2)
        second = verify_translation(bot_choice(), Direction.LOOSE_TO_TIGHT, BOUNDS, budget=2)
        assert first == second


class TestAuditTrace:
    def test_flags_wrong_outcome_traces(self):
        # hand-build a legal but machine-lost trace: the adversary plays its
        # base move in the loose component and the machine never answers
        game = translation_compound(finite_game_interface(bot_choice()), Direction.TIGHT_TO_LOOSE)
        trace = run_interaction(pass_strategy(), scripted_adversary(["2..b"]), game, 10)
        problems = audit_trace(trace, Direction.TIGHT_TO_LOOSE, game)
        assert any("outcome" in p for p in problems)


class TestVerifyStaticPreservation:
    def test_leaf_base(self):
        report = verify_static_preservation(leaf_top(), EnumBounds(2, 4))
        assert report.ok

    def test_suite_base(self):
        report = verify_static_preservation(bot_choice(), EnumBounds(2, 4))
        assert report.failures == ()

    def test_non_static_base_is_a_precondition_flag(self):
        report = verify_static_preservation(first_mover_wins(), EnumBounds(2, 4))
        assert not report.ok
        assert all(f.kind == "precondition" for f in report.failures)
