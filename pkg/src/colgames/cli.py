"""Command-line front end: projection, evaluation, delay queries, static
checks, strategy-vs-adversary simulation, and an interactive play mode.

Exit codes: 0 success, 1 property failure (lost plays, static
counterexamples, verification failures), 2 parse/format errors, 3
precondition violations (non-static base, guard limits).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .core import (
    BOT,
    TOP,
    LabMove,
    Player,
    Ray,
    Run,
    format_run,
    is_bitstring,
    project,
)
from .delay import enumerate_delays, is_delay, is_static
from .dsl import (
    Atom,
    CbrL,
    CbrT,
    ElaborationError,
    ExprParseError,
    Not,
    Or,
    TbrL,
    TbrT,
    elaborate,
    format_game_expr,
    parse_game_expr,
    translation_shape,
)
from .files import FileFormatError, TraceFile, dumps_trace, load_game_defs, loads_trace
from .games import EnumBounds, finite_game_interface, offender, split_disjunction, won_by
from .recurrence import actual_nodes
from .sim import (
    Direction,
    PreconditionError,
    Trace,
    audit_trace,
    run_interaction,
    translation_compound,
    verify_translation,
)
from .strategy import MirrorStrategy, RemapStrategy, random_adversary, scripted_adversary
from .suite import suite_defs

_PLAYERS = {"T": TOP, "B": BOT}


def _load_defs(path: str | None):
    if path is None:
        return suite_defs()
    return load_game_defs(Path(path).read_text())


def _load_trace(path: str) -> TraceFile:
    return loads_trace(Path(path).read_text())


def _player_arg(tag: str) -> Player:
    return _PLAYERS[tag]


def _bounds(args) -> EnumBounds:
    return EnumBounds(args.max_addr, args.max_run)


def cmd_project(args) -> int:
    trace = _load_trace(args.trace)
    if not is_bitstring(args.ray):
        raise FileFormatError(f"--ray must be a bitstring, got {args.ray!r}")
    print(format_run(project(trace.moves, Ray(args.ray))))
    return 0


def cmd_eval(args) -> int:
    defs = _load_defs(args.defs)
    game = elaborate(parse_game_expr(args.game), defs)
    run = _load_trace(args.trace).moves
    off = offender(game, run)
    if off is None:
        print(f"legal; winner: {game.winner(run).value}")
    else:
        winner = TOP if won_by(game, run, TOP) else BOT
        print(
            f"illegal; offender: index {off.index} by {off.culprit.value}; "
            f"won by {winner.value}"
        )
    return 0


def cmd_nodes(args) -> int:
    run = _load_trace(args.trace).moves
    tree = actual_nodes(run, _player_arg(args.structural))
    def show(nodes):
        return "{" + ", ".join(f'"{n}"' for n in sorted(nodes)) + "}"
    print(f"actual: {show(tree.nodes())}")
    print(f"outer:  {show(tree.outer())}")
    return 0


def cmd_delays(args) -> int:
    run = _load_trace(args.trace).moves
    player = _player_arg(args.player)
    if args.check is not None:
        other = _load_trace(args.check).moves
        verdict = is_delay(other, run, player)
        print("yes" if verdict else "no")
        return 0 if verdict else 1
    if len(run) > 8:
        raise PreconditionError("delay enumeration is limited to runs of length <= 8")
    def ordering(delayed_run):
        return tuple((x.label.value, x.move) for x in delayed_run)

    for delayed in sorted(enumerate_delays(run, player), key=ordering):
        print(format_run(delayed))
    return 0


def cmd_static(args) -> int:
    defs = _load_defs(args.defs)
    game = elaborate(parse_game_expr(args.game), defs)
    verdict = is_static(game, _bounds(args))
    if verdict.static:
        print("static: yes")
        return 0
    gamma, delta, p = verdict.counterexample
    print("static: no")
    print(f"counterexample player: {p.value}")
    print(f"original: {format_run(gamma)}")
    print(f"delayed:  {format_run(delta)}")
    return 1


def _compound_expr_text(direction: Direction, atom: str) -> str:
    inner = Atom(atom)
    if direction is Direction.TIGHT_TO_LOOSE:
        return format_game_expr(Or(CbrT(Not(inner)), TbrL(inner)))
    return format_game_expr(Or(CbrL(Not(inner)), TbrT(inner)))


def _write_trace(path: str, trace: Trace, game_text: str, seed: int | None, bounds: EnumBounds) -> None:
    tf = TraceFile(
        game=game_text,
        version=__version__,
        seed=seed,
        bounds=bounds,
        moves=trace.moves,
        outcome=trace.outcome,
        offender=trace.offender,
        truncated=trace.truncated,
    )
    Path(path).write_text(dumps_trace(tf))


def cmd_simulate(args) -> int:
    defs = _load_defs(args.defs)
    if args.atom not in defs:
        raise ElaborationError(f"unknown atom {args.atom!r}")
    base = defs[args.atom]
    direction = Direction(args.direction)
    bounds = _bounds(args)
    game_text = _compound_expr_text(direction, args.atom)

    if args.adversary == "exhaustive":
        report = verify_translation(
            base, direction, bounds, budget=args.budget, max_steps=args.max_steps
        )
        print(f"game: {game_text}")
        print(f"adversaries: {report.adversaries}")
        print(f"failures: {len(report.failures)}")
        for failure in report.failures[:20]:
            print(f"  {failure.kind}: {failure.detail}")
        return 0 if report.ok else 1

    compound = translation_compound(finite_game_interface(base), direction)
    machine = (
        MirrorStrategy(compound) if direction is Direction.TIGHT_TO_LOOSE else RemapStrategy(compound)
    )
    if args.adversary == "random":
        adversary = random_adversary(compound, args.seed, bounds, args.budget)
        seed: int | None = args.seed
    elif args.adversary.startswith("script:"):
        script_trace = _load_trace(args.adversary.split(":", 1)[1])
        adversary = scripted_adversary(
            [lm.move for lm in script_trace.moves if lm.label is BOT]
        )
        seed = None
    else:
        raise FileFormatError(
            f"--adversary must be exhaustive, random or script:FILE, got {args.adversary!r}"
        )
    trace = run_interaction(machine, adversary, compound, args.max_steps)
    problems = audit_trace(trace, direction, compound)
    print(f"game: {game_text}")
    print(f"run: {format_run(trace.moves)}")
    print(f"outcome: {trace.outcome.value}")
    if trace.offender is not None:
        print(f"offender: index {trace.offender.index} by {trace.offender.culprit.value}")
    for problem in problems:
        print(f"failure: {problem}")
    if args.out:
        _write_trace(args.out, trace, game_text, seed, bounds)
    return 0 if not problems else 1


def _print_position(game, run: Run, expr) -> None:
    print(f"position: {format_run(run)}")
    shape = translation_shape(expr) if expr is not None else None
    if shape is not None:
        parts = split_disjunction(run)
        if parts is not None:
            direction = shape[0]
            tight_index, structural = (
                (0, TOP) if direction is Direction.TIGHT_TO_LOOSE else (1, BOT)
            )
            tree = actual_nodes(parts[tight_index], structural)
            print(f"tight component actual: {sorted(tree.nodes())}")
            print(f"tight component outer:  {sorted(tree.outer())}")
            for index, component in enumerate(parts):
                # switches belong to the machine in component 1 (the
                # corecurrence) and to the environment in component 2
                stem = _last_switch(component, TOP if index == 0 else BOT)
                print(
                    f"component {index + 1} along last switch"
                    f" ({stem or 'root'}): {format_run(project(component, Ray(stem)))}"
                )
    elif isinstance(expr, (TbrT, TbrL, CbrT, CbrL)):
        structural = BOT if isinstance(expr, (TbrT, TbrL)) else TOP
        tree = actual_nodes(run, structural)
        print(f"actual: {sorted(tree.nodes())}")
        print(f"outer:  {sorted(tree.outer())}")
        stem = _last_switch(run, structural)
        print(f"along last switch ({stem or 'root'}): {format_run(project(run, Ray(stem)))}")


def _last_switch(run: Run, structural: Player) -> str:
    from .core import ShapeKind, parse_move

    for lm in reversed(run):
        if lm.label is structural and parse_move(lm.move).kind is ShapeKind.SWITCH:
            return parse_move(lm.move).address
    return ""


def cmd_play(args) -> int:
    defs = _load_defs(args.defs)
    expr = parse_game_expr(args.game)
    game = elaborate(expr, defs)
    shape = translation_shape(expr)
    if shape is None:
        machine = None
        print("no machine strategy for this expression; you play the environment")
    else:
        machine = MirrorStrategy(game) if shape[0] is Direction.TIGHT_TO_LOOSE else RemapStrategy(game)
        print(f"machine plays the {shape[0].value} translation strategy")
    machine_state = machine.init() if machine is not None else None
    run: Run = ()
    while True:
        _print_position(game, run, expr)
        try:
            entered = input('environment move (blank to stop): ')
        except EOFError:
            print()
            break
        if entered == "":
            break
        run = run + (LabMove(BOT, entered),)
        if machine is not None:
            machine_state, replies = machine.react(machine_state, run, run[-1])
            for reply in replies:
                print(f"machine plays: {reply!r}")
                run = run + (LabMove(TOP, reply),)
    off = offender(game, run)
    winner = TOP if won_by(game, run, TOP) else BOT
    if off is not None:
        print(f"offender: index {off.index} by {off.culprit.value}")
    print(f"outcome: won by {winner.value}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colgames",
        description="Constant games with toggling-branching (co)recurrences.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="project a recorded run along a ray")
    p.add_argument("--trace", required=True)
    p.add_argument("--ray", required=True, help="bitstring stem of the ray")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("eval", help="legality, offender and winner of a recorded run")
    p.add_argument("--game", required=True, help="game expression")
    p.add_argument("--defs", default=None, help="definitions file (default: built-ins)")
    p.add_argument("--trace", required=True)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("nodes", help="actual and outer nodes of a recorded position")
    p.add_argument("--trace", required=True)
    p.add_argument("--structural", choices=["T", "B"], default="B",
                   help="who owns replication moves (default B)")
    p.set_defaults(func=cmd_nodes)

    p = sub.add_parser("delays", help="check or enumerate move delays")
    p.add_argument("--trace", required=True)
    p.add_argument("--player", choices=["T", "B"], required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--check", default=None, help="trace file to test as a delay")
    group.add_argument("--enumerate", action="store_true")
    p.set_defaults(func=cmd_delays)

    p = sub.add_parser("static", help="brute-force static check of a game expression")
    p.add_argument("--game", required=True)
    p.add_argument("--defs", default=None)
    p.add_argument("--max-run", type=int, default=5, dest="max_run")
    p.add_argument("--max-addr", type=int, default=2, dest="max_addr")
    p.set_defaults(func=cmd_static)

    p = sub.add_parser("simulate", help="play a translation strategy against adversaries")
    p.add_argument("--direction", choices=[d.value for d in Direction], required=True)
    p.add_argument("--defs", default=None)
    p.add_argument("--atom", required=True, help="base game name")
    p.add_argument("--adversary", default="exhaustive",
                   help="exhaustive | random | script:FILE")
    p.add_argument("--budget", type=int, default=3)
    p.add_argument("--seed", type=int,
                   default=int(os.environ.get("COL_SEED", "0")))
    p.add_argument("--max-steps", type=int, default=64, dest="max_steps")
    p.add_argument("--max-run", type=int, default=5, dest="max_run")
    p.add_argument("--max-addr", type=int, default=2, dest="max_addr")
    p.add_argument("--out", default=None, help="write the trace file here")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("play", help="interactive play; you are the environment")
    p.add_argument("--game", required=True)
    p.add_argument("--defs", default=None)
    p.set_defaults(func=cmd_play)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ExprParseError, ElaborationError, FileFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PreconditionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
