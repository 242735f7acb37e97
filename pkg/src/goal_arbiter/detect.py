"""Resource conflict detection: per-resource conflict sets and their kind."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .feasibility import EnabledGoals, resolve_plan
from .model import AgentSpec, Quantity


class IncompatibilityKind(enum.Enum):
    NONE = "none"
    SIMPLE = "simple"
    COMPLEX = "complex"


@dataclass(frozen=True)
class ConflictSet:
    """Goals whose combined need of one resource strictly exceeds its availability."""

    resource: str
    goals: frozenset[str]
    total_need: Quantity
    available: Quantity

    def __post_init__(self) -> None:
        if len(self.goals) < 2:
            raise ValueError(f"conflict set for {self.resource!r} needs >= 2 goals")
        if not self.total_need > self.available:
            raise ValueError(
                f"conflict set for {self.resource!r} is affordable "
                f"({self.total_need} <= {self.available})"
            )


@dataclass(frozen=True)
class IncompatibilityReport:
    """All conflict sets (ordered by resource id) plus the derived goal set and kind."""

    sets: tuple[ConflictSet, ...]
    incompatible_goals: frozenset[str]
    kind: IncompatibilityKind


def classify(sets: Iterable[ConflictSet | frozenset[str] | set[str]]) -> IncompatibilityKind:
    """SIMPLE when every conflicting goal sits in exactly one set, COMPLEX when
    some goal sits in several, NONE for an empty family.

    Accepts either :class:`ConflictSet` instances or plain goal-id sets.
    """
    counts: dict[str, int] = {}
    for s in sets:
        for g in getattr(s, "goals", s):
            counts[g] = counts.get(g, 0) + 1
    if not counts:
        return IncompatibilityKind.NONE
    if max(counts.values()) > 1:
        return IncompatibilityKind.COMPLEX
    return IncompatibilityKind.SIMPLE


def resource_incom(spec: AgentSpec, enabled: EnabledGoals) -> IncompatibilityReport:
    """Collect, per resource, the enabled goals that jointly overload it.

    For each resource in the summary, the candidate set holds every enabled
    goal with positive need of it. The set is kept iff it has at least two
    members and their total need strictly exceeds the available quantity;
    empty sets, singletons, and affordable sets are dropped. Output is
    deterministic: sets ordered by resource id.
    """
    plans = {g: resolve_plan(spec, g) for g in enabled.goals}
    sets: list[ConflictSet] = []
    for res in sorted(spec.resources):
        members = frozenset(g for g, plan in plans.items() if plan.requires.get(res, 0) > 0)
        if len(members) < 2:
            continue
        total = sum((plans[g].requires[res] for g in members), Fraction(0))
        if total > spec.resources[res]:
            sets.append(
                ConflictSet(
                    resource=res,
                    goals=members,
                    total_need=total,
                    available=spec.resources[res],
                )
            )
    all_goals = frozenset().union(*(s.goals for s in sets)) if sets else frozenset()
    return IncompatibilityReport(
        sets=tuple(sets), incompatible_goals=all_goals, kind=classify(sets)
    )
