"""Interaction harness and batch property-verification drivers.

``run_interaction`` pits a reactive machine strategy against an
environment strategy over a game, recording a trace: the run, one
annotation per machine reaction, the outcome and the first offender.
The environment moves first in each round; the play ends when the
environment passes (the machine is reactive, so that is a mutual pass)
or when the step limit is hit.

``verify_translation`` builds one of the two translation compounds over
a finite base game, plays the matching routine against every exhaustive
adversary, and audits each trace: machine-won, machine never the first
offender, the decisive projections of the two components mirror each
other, and (for the map-maintaining routine) the node map stays
prefix-free with domain equal to the tight component's outer nodes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .core import (
    BOT,
    TOP,
    LabMove,
    Player,
    Ray,
    Run,
    ShapeKind,
    flip_labels,
    parse_move,
    project,
)
from .delay import is_static, static_and_lemma
from .games import (
    EnumBounds,
    FiniteGame,
    Game,
    Offender,
    disjoin,
    finite_game_interface,
    negate,
    offender,
    split_disjunction,
    won_by,
)
from .recurrence import (
    ALL_KINDS,
    LOOSE_CORECURRENCE,
    LOOSE_RECURRENCE,
    TIGHT_CORECURRENCE,
    TIGHT_RECURRENCE,
    actual_nodes,
    make_recurrence,
)
from .strategy import MirrorStrategy, RemapStrategy, exhaustive_adversaries, fmap_prefix_free


class PreconditionError(RuntimeError):
    """A verification driver was fed inputs violating its preconditions."""


class Direction(enum.Enum):
    TIGHT_TO_LOOSE = "tight-to-loose"
    LOOSE_TO_TIGHT = "loose-to-tight"


@dataclass(frozen=True)
class StepNote:
    """Annotation for one machine reaction (one batch)."""

    reacted_to: int  # index in the run of the adversary move reacted to
    case: str | None
    fmap: tuple[tuple[str, str], ...] | None
    emitted: int


@dataclass(frozen=True)
class Trace:
    """A completed interaction: run, per-batch notes, outcome, offender."""

    game_name: str
    moves: Run
    notes: tuple[StepNote, ...]
    outcome: Player
    offender: Offender | None
    truncated: bool = False


def run_interaction(machine, env, game: Game, max_steps: int) -> Trace:
    """Alternate environment and machine reactions from the empty run.

    Environment moves carry the environment label, machine moves the
    machine label.  Stops when the environment passes or ``max_steps``
    labeled moves have been recorded (recorded as truncation, not an
    error).
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    run: Run = ()
    notes: list[StepNote] = []
    first_offender: Offender | None = None
    truncated = False
    m_state = machine.init()
    e_state = env.init()
    latest_for_env: LabMove | None = None

    def append(lm: LabMove) -> bool:
        nonlocal run, first_offender, truncated
        if len(run) >= max_steps:
            truncated = True
            return False
        if first_offender is None and not game.extend_legal(run, lm):
            first_offender = Offender(len(run), lm.label)
        run = run + (lm,)
        return True

    running = True
    while running:
        e_state, env_moves = env.react(e_state, run, latest_for_env)
        if not env_moves:
            break
        for move in env_moves:
            if not append(LabMove(BOT, move)):
                running = False
                break
            m_state, machine_moves = machine.react(m_state, run, run[-1])
            notes.append(
                StepNote(
                    reacted_to=len(run) - 1,
                    case=getattr(m_state, "last_case", None),
                    fmap=getattr(m_state, "fmap", None),
                    emitted=len(machine_moves),
                )
            )
            for reply in machine_moves:
                if not append(LabMove(TOP, reply)):
                    running = False
                    break
            if not running:
                break
        latest_for_env = run[-1] if run and run[-1].label is TOP else None

    outcome = TOP if won_by(game, run, TOP) else BOT
    return Trace(game.name, run, tuple(notes), outcome, first_offender, truncated)


def translation_compound(base: Game, direction: Direction) -> Game:
    """The compound game the corresponding translation routine plays."""
    if direction is Direction.TIGHT_TO_LOOSE:
        return disjoin(
            make_recurrence(negate(base), TIGHT_CORECURRENCE),
            make_recurrence(base, LOOSE_RECURRENCE),
        )
    return disjoin(
        make_recurrence(negate(base), LOOSE_CORECURRENCE),
        make_recurrence(base, TIGHT_RECURRENCE),
    )


def strategy_for(compound: Game, direction: Direction):
    return MirrorStrategy(compound) if direction is Direction.TIGHT_TO_LOOSE else RemapStrategy(compound)


def _last_switch_stem(run: Run, structural: Player) -> str:
    for lm in reversed(run):
        if lm.label is structural:
            sh = parse_move(lm.move)
            if sh.kind is ShapeKind.SWITCH:
                return sh.address
    return ""


def _switch_count(run: Run, structural: Player) -> int:
    return sum(
        1
        for lm in run
        if lm.label is structural and parse_move(lm.move).kind is ShapeKind.SWITCH
    )


def audit_trace(trace: Trace, direction: Direction, game: Game) -> tuple[str, ...]:
    """Check one trace against the routine invariants; returns violations."""
    problems: list[str] = []
    if trace.outcome is not TOP:
        problems.append("outcome: machine did not win")
    if offender(game, trace.moves) != trace.offender:
        problems.append("offender: recorded offender disagrees with recomputation")
    if trace.offender is not None and trace.offender.culprit is TOP:
        problems.append("offender: machine made the first illegal move")
    if trace.offender is not None:
        return tuple(problems)

    parts = split_disjunction(trace.moves)
    assert parts is not None  # legal compound runs always split
    sigma, pi = parts
    sigma_ray = Ray(_last_switch_stem(sigma, TOP))
    pi_ray = Ray(_last_switch_stem(pi, BOT))
    if direction is Direction.TIGHT_TO_LOOSE:
        if sigma_ray != pi_ray:
            problems.append("identity: components disagree on the last switch")
        if project(sigma, pi_ray) != flip_labels(project(pi, pi_ray)):
            problems.append("identity: decisive projections do not mirror")
    else:
        if _switch_count(sigma, TOP) != _switch_count(pi, BOT):
            problems.append("identity: switch counts differ between components")
        if project(sigma, sigma_ray) != flip_labels(project(pi, pi_ray)):
            problems.append("identity: decisive projections do not mirror")
        for note in trace.notes:
            if note.fmap is None:
                continue
            if not fmap_prefix_free(note.fmap):
                problems.append(f"fmap: values not prefix-free after step {note.reacted_to}")
                break
            prefix = trace.moves[: note.reacted_to + 1]
            prefix_parts = split_disjunction(prefix)
            assert prefix_parts is not None
            expected = actual_nodes(prefix_parts[1], BOT).outer()
            if frozenset(k for k, _ in note.fmap) != expected:
                problems.append(f"fmap: domain is not the outer nodes after step {note.reacted_to}")
                break
    return tuple(problems)


@dataclass(frozen=True)
class Failure:
    kind: str
    detail: str
    trace: Trace | None = None


@dataclass(frozen=True)
class VerificationReport:
    game: str
    bounds: EnumBounds
    adversaries: int
    failures: tuple[Failure, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures


def verify_translation(
    base: FiniteGame,
    direction: Direction,
    bounds: EnumBounds,
    budget: int,
    machine=None,
    max_steps: int = 64,
) -> VerificationReport:
    """Play the translation routine against every exhaustive adversary.

    The base must be static; this is verified up front over runs of
    length up to 4 (plenty for desk-scale bases, and independent of the
    interaction bound in ``bounds``), and violating bases abort with a
    diagnostic.  Every resulting trace is audited; the report aggregates
    all violations.
    """
    iface = finite_game_interface(base)
    precheck = EnumBounds(bounds.max_address_len, min(bounds.max_run_len, 4))
    verdict = is_static(iface, precheck)
    if not verdict.static:
        raise PreconditionError(
            f"base game {base.name!r} is not static; counterexample: {verdict.counterexample}"
        )
    compound = translation_compound(iface, direction)
    mach = machine if machine is not None else strategy_for(compound, direction)
    failures: list[Failure] = []
    count = 0
    for adversary in exhaustive_adversaries(compound, mach, bounds, budget, max_steps=max_steps):
        trace = run_interaction(mach, adversary, compound, max_steps)
        count += 1
        for problem in audit_trace(trace, direction, compound):
            failures.append(Failure("trace-audit", problem, trace))
    return VerificationReport(compound.name, bounds, count, tuple(failures))


def verify_static_preservation(base: FiniteGame, bounds: EnumBounds) -> VerificationReport:
    """Static preservation and illegality propagation for all four kinds.

    A non-static base is reported as a precondition failure, not as a
    property violation.
    """
    iface = finite_game_interface(base)
    base_verdict = is_static(iface, bounds)
    if not base_verdict.static:
        failure = Failure(
            "precondition",
            f"base game {base.name!r} is not static; counterexample: {base_verdict.counterexample}",
        )
        return VerificationReport(base.name, bounds, 0, (failure,))
    failures: list[Failure] = []
    for kind in ALL_KINDS:
        rec = make_recurrence(iface, kind)
        verdict, lemma = static_and_lemma(rec, bounds)
        if not verdict.static:
            failures.append(
                Failure("static-preservation", f"{rec.name}: {verdict.counterexample}")
            )
        for gamma, delta, p in lemma.violations:
            failures.append(
                Failure(
                    "illegality-lemma",
                    f"{rec.name}: delay pair {gamma} / {delta} for {p.name}",
                )
            )
    return VerificationReport(base.name, bounds, 0, tuple(failures))
