"""Game definition and trace file formats."""

from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from colgames import BOT, TOP, EnumBounds, LabMove, Offender, finite_game_interface
from colgames.files import (
    FileFormatError,
    TraceFile,
    dump_game_defs,
    dumps_trace,
    load_game_defs,
    loads_trace,
)
from colgames.suite import suite_defs

from _util import all_runs

moves_strategy = st.lists(
    st.tuples(st.sampled_from([TOP, BOT]), st.text(alphabet="01.:ab", max_size=6)),
    max_size=8,
).map(lambda pairs: tuple(LabMove(p, m) for p, m in pairs))

trace_files = st.builds(
    TraceFile,
    game=st.sampled_from(["A", "or(cbr_t(not(A)), tbr_l(A))"]),
    version=st.just("0.1.0"),
    seed=st.one_of(st.none(), st.integers(0, 2**31)),
    bounds=st.one_of(st.none(), st.builds(EnumBounds, st.integers(0, 4), st.integers(0, 9))),
    moves=moves_strategy,
    outcome=st.sampled_from([TOP, BOT]),
    offender=st.one_of(
        st.none(), st.builds(Offender, st.integers(0, 7), st.sampled_from([TOP, BOT]))
    ),
    truncated=st.booleans(),
)


class TestGameDefs:
    def test_round_trip_preserves_behavior(self):
        defs = suite_defs()
        reloaded = load_game_defs(dump_game_defs(defs))
        assert set(reloaded) == set(defs)
        for name in defs:
            original = finite_game_interface(defs[name])
            copy = finite_game_interface(reloaded[name])
            pool = original.probe_moves(EnumBounds(2, 3))
            for run in all_runs(pool, 3):
                assert original.is_legal(run) == copy.is_legal(run)
                if original.is_legal(run):
                    assert original.winner(run) == copy.winner(run)

    def test_duplicate_edges_rejected(self):
        text = """
        {"bad": {"winner": "T", "moves": [
            {"label": "B", "move": "m", "child": {"winner": "T"}},
            {"label": "B", "move": "m", "child": {"winner": "B"}}
        ]}}
        """
        with pytest.raises(FileFormatError):
            load_game_defs(text)

    def test_bad_winner_tag(self):
        with pytest.raises(FileFormatError):
            load_game_defs('{"bad": {"winner": "X"}}')

    def test_missing_child(self):
        with pytest.raises(FileFormatError):
            load_game_defs('{"bad": {"winner": "T", "moves": [{"label": "B", "move": "m"}]}}')

    def test_not_json(self):
        with pytest.raises(FileFormatError):
            load_game_defs("not json at all")


class TestTraceFiles:
    @given(trace_files)
    def test_round_trip_identity(self, tf):
        assert loads_trace(dumps_trace(tf)) == tf

    @given(trace_files)
    def test_serialization_is_canonical(self, tf):
        text = dumps_trace(tf)
        assert dumps_trace(loads_trace(text)) == text

    def test_empty_move_is_representable(self):
        tf = TraceFile(
            game="tbr_t(leaf_top)",
            version="0.1.0",
            seed=None,
            bounds=None,
            moves=(LabMove(BOT, ""),),
            outcome=TOP,
            offender=None,
        )
        assert loads_trace(dumps_trace(tf)).moves == (LabMove(BOT, ""),)

    def test_rejects_malformed_records(self):
        with pytest.raises(FileFormatError):
            loads_trace('{"game": "A", "version": "0", "moves": [["T"]], "outcome": "T"}')
        with pytest.raises(FileFormatError):
            loads_trace('{"game": "A", "version": "0", "moves": [], "outcome": "Q"}')
