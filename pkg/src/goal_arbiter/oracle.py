"""Brute-force reference results for validating the main pipeline on small inputs.

Everything here is deliberately naive and reimplemented from scratch: plan
selection, per-resource sums, and the acceptability notions are all spelled
out locally rather than calling into the other modules, so an agreement
test between the two paths actually means something.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .argue import GoalFramework
from .feasibility import EnabledGoals
from .model import AgentSpec, Quantity

FEASIBLE_GOAL_CAP = 20
SEMANTICS_GOAL_CAP = 12


class TooManyGoalsError(RuntimeError):
    """Exhaustive subset enumeration was refused above the cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"{size} goals exceed the enumeration cap of {cap}")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class FeasibleSubsetReport:
    """Every jointly affordable subset of the enabled goals, with the extremes."""

    feasible: tuple[frozenset[str], ...]
    maximal: tuple[frozenset[str], ...]
    best_worth: tuple[frozenset[str], ...]


@dataclass(frozen=True)
class DefinitionalSemantics:
    """Subset-by-subset classification of a framework, straight from the definitions."""

    grounded: frozenset[str]
    preferred: tuple[frozenset[str], ...]
    complete: tuple[frozenset[str], ...]
    admissible: tuple[frozenset[str], ...]


def _selected_requirements(spec: AgentSpec, goal_id: str) -> dict[str, Quantity] | None:
    # Local re-derivation of the charged requirements: inline list wins,
    # otherwise the first declared plan whose context holds.
    goal = next(g for g in spec.goals if g.id == goal_id)
    if goal.requires is not None:
        return dict(goal.requires)
    for plan in spec.plans:
        if plan.goal != goal_id:
            continue
        holds = True
        for literal in plan.context:
            if literal.startswith("~"):
                holds = literal[1:] not in spec.beliefs
            else:
                holds = literal in spec.beliefs
            if not holds:
                break
        if holds:
            return dict(plan.requires)
    return None


def _sorted_sets(sets: list[frozenset[str]]) -> tuple[frozenset[str], ...]:
    return tuple(sorted(sets, key=lambda s: tuple(sorted(s))))


def enumerate_feasible(
    spec: AgentSpec, enabled: EnabledGoals, max_goals: int = FEASIBLE_GOAL_CAP
) -> FeasibleSubsetReport:
    """Exhaustively test every subset of the enabled goals for joint affordability."""
    ids = sorted(enabled.goals)
    if len(ids) > max_goals:
        raise TooManyGoalsError(len(ids), max_goals)
    needs = {g: _selected_requirements(spec, g) or {} for g in ids}
    worth = {g.id: g.worth for g in spec.goals}

    feasible: list[frozenset[str]] = []
    feasible_keys: set[frozenset[str]] = set()
    for size in range(len(ids) + 1):
        for combo in combinations(ids, size):
            totals: dict[str, Quantity] = {}
            for g in combo:
                for res, amount in needs[g].items():
                    totals[res] = totals.get(res, Fraction(0)) + amount
            if all(total <= spec.resources.get(res, Fraction(0)) for res, total in totals.items()):
                subset = frozenset(combo)
                feasible.append(subset)
                feasible_keys.add(subset)

    others = set(ids)
    maximal = [
        s
        for s in feasible
        if not any(s | {g} in feasible_keys for g in others - s)
    ]
    best_total = max(
        (sum((worth[g] for g in s), Fraction(0)) for s in feasible), default=Fraction(0)
    )
    best = [s for s in feasible if sum((worth[g] for g in s), Fraction(0)) == best_total]
    return FeasibleSubsetReport(
        feasible=_sorted_sets(feasible),
        maximal=_sorted_sets(maximal),
        best_worth=_sorted_sets(best),
    )


def recompute_conflict_sets(
    spec: AgentSpec, enabled: EnabledGoals
) -> tuple[tuple[str, frozenset[str], Quantity, Quantity], ...]:
    """Re-derive the per-resource conflict sets as plain tuples.

    Returns (resource, goals, total_need, available) rows ordered by
    resource id, applying the same three exclusions: empty, singleton,
    affordable.
    """
    needs = {g: _selected_requirements(spec, g) or {} for g in enabled.goals}
    mentioned = set(spec.resources)
    for mapping in needs.values():
        mentioned.update(mapping)
    rows = []
    for res in sorted(mentioned):
        members = frozenset(g for g, mapping in needs.items() if mapping.get(res, 0) > 0)
        if len(members) < 2:
            continue
        total = sum((needs[g][res] for g in members), Fraction(0))
        available = spec.resources.get(res, Fraction(0))
        if total > available:
            rows.append((res, members, total, available))
    return tuple(rows)


def semantics_by_definition(
    gf: GoalFramework, max_goals: int = SEMANTICS_GOAL_CAP
) -> DefinitionalSemantics:
    """Classify every subset of the framework literally against the definitions.

    A subset is conflict-free when no internal ordered pair is a defeat,
    admissible when additionally every member is defended, and complete when
    it contains exactly the goals it defends. The grounded extension is the
    unique inclusion-minimal complete set; the preferred extensions are the
    inclusion-maximal ones.
    """
    ids = sorted(gf.goals)
    if len(ids) > max_goals:
        raise TooManyGoalsError(len(ids), max_goals)

    def beats(a: str, b: str) -> bool:
        return frozenset((a, b)) in gf.incompatibility and gf.worth[a] >= gf.worth[b]

    def conflict_free(subset: frozenset[str]) -> bool:
        return not any(beats(a, b) for a in subset for b in subset if a != b)

    def defended_by(subset: frozenset[str], goal: str) -> bool:
        for attacker in ids:
            if beats(attacker, goal) and not any(beats(d, attacker) for d in subset):
                return False
        return True

    admissible: list[frozenset[str]] = []
    complete: list[frozenset[str]] = []
    for size in range(len(ids) + 1):
        for combo in combinations(ids, size):
            subset = frozenset(combo)
            if not conflict_free(subset):
                continue
            defended = frozenset(g for g in ids if defended_by(subset, g))
            if subset <= defended:
                admissible.append(subset)
            if subset == defended:
                complete.append(subset)

    minimal = [c for c in complete if not any(other < c for other in complete)]
    if len(minimal) != 1:
        raise AssertionError(f"expected a unique minimal complete set, got {minimal}")
    preferred = [c for c in complete if not any(other > c for other in complete)]
    return DefinitionalSemantics(
        grounded=minimal[0],
        preferred=_sorted_sets(preferred),
        complete=_sorted_sets(complete),
        admissible=_sorted_sets(admissible),
    )
