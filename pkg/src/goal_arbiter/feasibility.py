"""Per-goal affordability: resource queries, plan selection, the enabled filter.

A goal is *enabled* when, considered in isolation, every resource its
selected plan requires is available in sufficient quantity. Joint conflicts
between enabled goals are the business of :mod:`goal_arbiter.detect`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .model import AgentSpec, Plan, Quantity

REASON_INSUFFICIENT = "insufficient_resources"
REASON_NO_PLAN = "no_applicable_plan"

_ZERO = Fraction(0)


class NoApplicablePlanError(LookupError):
    """No plan for the goal has a context that holds, and no inline requirements exist."""

    def __init__(self, goal_id: str):
        super().__init__(goal_id)
        self.goal_id = goal_id

    def __str__(self) -> str:
        return f"no applicable plan for goal {self.goal_id!r}"


@dataclass(frozen=True)
class Shortfall:
    """One unaffordable requirement: the goal needs more than is available."""

    resource: str
    needed: Quantity
    available: Quantity


@dataclass(frozen=True)
class Exclusion:
    """Why a goal was filtered out, with the violating triples when resource-bound."""

    reason: str
    shortfalls: tuple[Shortfall, ...] = ()


@dataclass(frozen=True)
class EnabledGoals:
    """Partition of the input goals into enabled ones and excluded ones."""

    goals: frozenset[str]
    excluded: Mapping[str, Exclusion]

    def __post_init__(self) -> None:
        overlap = self.goals & self.excluded.keys()
        if overlap:
            raise ValueError(f"goals both enabled and excluded: {sorted(overlap)}")


def availa_res(summary: Mapping[str, Quantity], resource: str) -> Quantity:
    """Available quantity of ``resource``; absent resources count as 0."""
    return summary.get(resource, _ZERO)


def _context_holds(context: tuple[str, ...], beliefs: frozenset[str]) -> bool:
    for literal in context:
        if literal.startswith("~"):
            if literal[1:] in beliefs:
                return False
        elif literal not in beliefs:
            return False
    return True


def resolve_plan(spec: AgentSpec, goal_id: str) -> Plan:
    """Select the plan whose requirements the goal is charged for.

    Inline requirements act as a single always-applicable plan and take
    precedence. Otherwise the first declared plan for the goal whose
    context holds against the belief base wins (declaration order is the
    deterministic tie rule).
    """
    goal = spec.goal(goal_id)
    if goal.requires is not None:
        return Plan(id=f"__inline__:{goal_id}", goal=goal_id, requires=goal.requires)
    for plan in spec.plans:
        if plan.goal == goal_id and _context_holds(plan.context, spec.beliefs):
            return plan
    raise NoApplicablePlanError(goal_id)


def need_res(spec: AgentSpec, goal_id: str, resource: str) -> Quantity:
    """Amount of ``resource`` the goal's selected plan requires (0 if unlisted)."""
    return resolve_plan(spec, goal_id).requires.get(resource, _ZERO)


def eval_resources(spec: AgentSpec) -> EnabledGoals:
    """Filter the goal set down to the individually affordable ones.

    Each goal is checked in isolation: it survives iff every requirement of
    its selected plan is within the available quantity (need equal to
    availability is feasible). Goals without an applicable plan are excluded
    with a distinct reason; resource exclusions report only the violating
    (resource, needed, available) triples.
    """
    enabled: set[str] = set()
    excluded: dict[str, Exclusion] = {}
    for goal in spec.goals:
        try:
            plan = resolve_plan(spec, goal.id)
        except NoApplicablePlanError:
            excluded[goal.id] = Exclusion(reason=REASON_NO_PLAN)
            continue
        shortfalls = tuple(
            Shortfall(res, need, availa_res(spec.resources, res))
            for res, need in sorted(plan.requires.items())
            if need > availa_res(spec.resources, res)
        )
        if shortfalls:
            excluded[goal.id] = Exclusion(reason=REASON_INSUFFICIENT, shortfalls=shortfalls)
        else:
            enabled.add(goal.id)
    return EnabledGoals(goals=frozenset(enabled), excluded=excluded)
