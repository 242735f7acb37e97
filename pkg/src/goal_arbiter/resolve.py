"""Worth-driven resolution of conflict sets, with residual resource accounting.

Two strategies produce a :class:`Resolution`:

* the algorithmic one walks the conflicting goals greedily (per-set argmax
  for disjoint conflict sets, descending-worth traversal with a residual
  ledger otherwise), and
* the argumentation one keeps the members of an acceptable extension.

Both leave non-conflicting enabled goals untouched: they are always part of
the consistent set.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .argue import (
    Semantics,
    acceptable_goals,
    build_framework,
    grounded_extension,
    select_extension,
)
from .detect import IncompatibilityKind, IncompatibilityReport
from .feasibility import eval_resources, resolve_plan
from .model import AgentSpec, Quantity

STRATEGY_ALGORITHMIC = "algorithmic"
STRATEGY_ARGUMENTATION = "argumentation"

NeedFn = Callable[[str, str], Quantity]


class WrongKindError(ValueError):
    """The report's incompatibility kind does not match the algorithm."""


@dataclass(frozen=True)
class TieBreak:
    """Deterministic stand-in for an arbitrary choice among equal worths.

    ``by_id`` prefers the lexicographically smallest goal id; ``seeded``
    prefers according to a reproducible shuffle of the goal ids.
    """

    mode: str = "id"
    seed: int | None = None

    @classmethod
    def by_id(cls) -> "TieBreak":
        return cls(mode="id")

    @classmethod
    def seeded(cls, seed: int) -> "TieBreak":
        return cls(mode="seed", seed=seed)

    @classmethod
    def parse(cls, text: str) -> "TieBreak":
        """Parse the CLI form: ``id`` or ``seed:N``."""
        if text == "id":
            return cls.by_id()
        if text.startswith("seed:"):
            try:
                return cls.seeded(int(text[len("seed:"):]))
            except ValueError:
                pass
        raise ValueError(f"invalid tiebreak {text!r}; expected 'id' or 'seed:N'")

    def ranks(self, goal_ids: Iterable[str]) -> dict[str, int]:
        """Rank map over the given ids; lower rank wins a tie."""
        ordered = sorted(goal_ids)
        if self.mode == "seed":
            random.Random(self.seed).shuffle(ordered)
        return {g: i for i, g in enumerate(ordered)}


@dataclass(frozen=True)
class Decision:
    """One audit entry: what happened to a goal and why."""

    goal: str
    kept: bool
    reason: str
    residual: tuple[tuple[str, Quantity], ...] | None = None
    note: str | None = None


@dataclass(frozen=True)
class Resolution:
    """The consistent goal set plus the trail of how it was chosen."""

    consistent_goals: frozenset[str]
    strategy: str
    audit: tuple[Decision, ...]
    extensions: tuple[frozenset[str], ...] = ()
    semantics: str | None = None


def _free_goal_decisions(
    enabled: Iterable[str] | None, conflicting: frozenset[str]
) -> tuple[set[str], list[Decision]]:
    free = set(enabled or ()) - conflicting
    return free, [Decision(goal=g, kept=True, reason="no_conflict") for g in sorted(free)]


def eval_simple(
    report: IncompatibilityReport,
    worth: Mapping[str, Quantity],
    tiebreak: TieBreak | None = None,
    *,
    enabled: Iterable[str] | None = None,
) -> Resolution:
    """Keep exactly the most valuable goal of each (disjoint) conflict set.

    Worth ties are resolved by the tiebreak policy. When ``enabled`` is
    given, enabled goals outside every conflict set are added to the result.
    """
    if report.kind is not IncompatibilityKind.SIMPLE:
        raise WrongKindError(f"expected a simple report, got kind {report.kind.value!r}")
    tiebreak = tiebreak or TieBreak.by_id()
    ranks = tiebreak.ranks(report.incompatible_goals)

    kept: set[str] = set()
    decisions: list[Decision] = []
    for cs in report.sets:
        winner = min(cs.goals, key=lambda g: (-worth[g], ranks[g]))
        kept.add(winner)
        decisions.append(
            Decision(goal=winner, kept=True, reason=f"most_valuable_in_set:{cs.resource}")
        )
        for loser in sorted(cs.goals - {winner}):
            decisions.append(
                Decision(goal=loser, kept=False, reason=f"outranked_in_set:{cs.resource}")
            )

    free, free_decisions = _free_goal_decisions(enabled, report.incompatible_goals)
    return Resolution(
        consistent_goals=frozenset(kept | free),
        strategy=STRATEGY_ALGORITHMIC,
        audit=tuple(decisions + free_decisions),
    )


def eval_complex(
    report: IncompatibilityReport,
    worth: Mapping[str, Quantity],
    summary: Mapping[str, Quantity],
    needs: NeedFn,
    tiebreak: TieBreak | None = None,
    *,
    enabled: Iterable[str] | None = None,
) -> Resolution:
    """Traverse conflicting goals in strictly descending worth against a ledger.

    A goal is kept iff, in every conflict set it still belongs to, no
    strictly more valuable goal remains and its need fits the residual
    quantity. Keeping a goal deducts all of its needs; either way the goal
    then leaves every set, and emptied sets are dropped. Removing a dropped
    goal from its sets can hand the set to a less valuable survivor later,
    which is deliberate and flagged in the audit.
    """
    tiebreak = tiebreak or TieBreak.by_id()
    ranks = tiebreak.ranks(report.incompatible_goals)
    order = sorted(report.incompatible_goals, key=lambda g: (-worth[g], ranks[g]))

    ledger: dict[str, Quantity] = dict(summary)
    remaining: dict[str, set[str]] = {cs.resource: set(cs.goals) for cs in report.sets}

    kept: set[str] = set()
    dropped: set[str] = set()
    decisions: list[Decision] = []
    for g in order:
        member_of = sorted(res for res, members in remaining.items() if g in members)
        failures: list[str] = []
        for res in member_of:
            if any(worth[other] > worth[g] for other in remaining[res]):
                failures.append(f"outranked:{res}")
            elif needs(g, res) > ledger[res]:
                failures.append(f"insufficient_residual:{res}")
        keep = bool(member_of) and not failures

        note = None
        if keep:
            kept.add(g)
            for res in ledger:
                ledger[res] -= needs(g, res)
            benefactors = sorted(
                {
                    other
                    for cs in report.sets
                    if g in cs.goals
                    for other in cs.goals
                    if other in dropped and worth[other] > worth[g]
                }
            )
            if benefactors:
                note = "kept after dropping more valuable " + ", ".join(benefactors)
        else:
            dropped.add(g)
        for res in member_of:
            remaining[res].discard(g)
            if not remaining[res]:
                del remaining[res]
        decisions.append(
            Decision(
                goal=g,
                kept=keep,
                reason="most_valuable_affordable" if keep else ";".join(failures),
                residual=tuple(sorted(ledger.items())),
                note=note,
            )
        )

    free, free_decisions = _free_goal_decisions(enabled, report.incompatible_goals)
    return Resolution(
        consistent_goals=frozenset(kept | free),
        strategy=STRATEGY_ALGORITHMIC,
        audit=tuple(decisions + free_decisions),
    )


def _need_fn(spec: AgentSpec, goals: Iterable[str]) -> NeedFn:
    requirements = {g: resolve_plan(spec, g).requires for g in goals}

    def needs(goal_id: str, resource: str) -> Quantity:
        return requirements[goal_id].get(resource, Quantity(0))

    return needs


def solve_algorithmic(
    spec: AgentSpec, report: IncompatibilityReport, tiebreak: TieBreak | None = None
) -> Resolution:
    """Dispatch on the report kind: nothing to do, per-set argmax, or ledger walk."""
    enabled = eval_resources(spec).goals
    worth = spec.worths()
    if report.kind is IncompatibilityKind.NONE:
        _, decisions = _free_goal_decisions(enabled, frozenset())
        return Resolution(
            consistent_goals=frozenset(enabled),
            strategy=STRATEGY_ALGORITHMIC,
            audit=tuple(decisions),
        )
    if report.kind is IncompatibilityKind.SIMPLE:
        return eval_simple(report, worth, tiebreak, enabled=enabled)
    needs = _need_fn(spec, report.incompatible_goals)
    return eval_complex(report, worth, spec.resources, needs, tiebreak, enabled=enabled)


def solve_argumentation(
    spec: AgentSpec,
    report: IncompatibilityReport,
    semantics: Semantics = Semantics.AUTO,
    max_goals: int | None = None,
) -> Resolution:
    """Resolve by acceptability: keep the chosen extension plus free goals.

    All extensions under the requested semantics are recorded; the single
    consistent set uses the extension of maximal total worth (ties broken
    lexicographically).
    """
    enabled = eval_resources(spec).goals
    worth = spec.worths()
    if report.kind is IncompatibilityKind.NONE:
        _, decisions = _free_goal_decisions(enabled, frozenset())
        return Resolution(
            consistent_goals=frozenset(enabled),
            strategy=STRATEGY_ARGUMENTATION,
            audit=tuple(decisions),
        )

    gf = build_framework(report, worth)
    kwargs = {} if max_goals is None else {"max_goals": max_goals}
    extensions = acceptable_goals(gf, semantics, **kwargs)
    if semantics is Semantics.AUTO:
        effective = Semantics.GROUNDED if grounded_extension(gf) else Semantics.PREFERRED
    else:
        effective = semantics
    chosen = select_extension(gf, extensions)

    decisions = [
        Decision(
            goal=g,
            kept=g in chosen,
            reason="in_extension" if g in chosen else "not_in_extension",
        )
        for g in sorted(report.incompatible_goals)
    ]
    free, free_decisions = _free_goal_decisions(enabled, report.incompatible_goals)
    return Resolution(
        consistent_goals=frozenset(chosen | free),
        strategy=STRATEGY_ARGUMENTATION,
        audit=tuple(decisions + free_decisions),
        extensions=extensions,
        semantics=effective.value,
    )
