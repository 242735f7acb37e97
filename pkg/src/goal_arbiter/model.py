"""Declarative agent state: resources, beliefs, goals, plans, and validation.

All quantities and worth values are kept as exact rationals
(:class:`fractions.Fraction`) parsed from the decimal literals of the input
document. Comparisons and sums are therefore exact; no epsilon is involved
anywhere in the pipeline.

Every type in this module is immutable after validation and safe to share
across threads. All operations are pure functions.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping

Quantity = Fraction

# Resource ids: no whitespace or control characters.
_RESOURCE_ID_RE = re.compile(r"[^\s\x00-\x1f\x7f]+\Z")
# Belief atoms: identifier with optional argument list, e.g. "at(home)".
_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*(\([^()]*\))?\Z")


class UnknownGoalError(KeyError):
    """A goal id was requested that the agent spec does not declare."""

    def __init__(self, goal_id: str):
        super().__init__(goal_id)
        self.goal_id = goal_id

    def __str__(self) -> str:
        return f"unknown goal: {self.goal_id!r}"


@dataclass(frozen=True)
class ValidationIssue:
    """One invariant violation found while validating a spec document."""

    code: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.where}: {self.message}"


@dataclass(frozen=True)
class SpecWarning:
    """A non-fatal oddity, e.g. a required resource missing from the summary."""

    code: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"[{self.code}] {self.where}: {self.message}"


class SpecValidationError(ValueError):
    """Raised by :func:`validate_spec`; carries every violation, not just the first."""

    def __init__(self, issues: Iterable[ValidationIssue]):
        self.issues = tuple(issues)
        super().__init__("\n".join(str(i) for i in self.issues))


@dataclass(frozen=True)
class Goal:
    """A pursued goal with its worth in [0, 1] and optional inline requirements.

    Inline requirements are shorthand for a single always-applicable plan, so
    per-goal resource needs can be declared without writing plan syntax.
    """

    id: str
    worth: Quantity
    requires: Mapping[str, Quantity] | None = None


@dataclass(frozen=True)
class Plan:
    """A plan: relevance goal, context condition, opaque body, requirements.

    Context literals are belief atoms, negated by a single leading ``~``.
    The body is stored but never interpreted.
    """

    id: str
    goal: str
    context: tuple[str, ...] = ()
    body: str = ""
    requires: Mapping[str, Quantity] = field(default_factory=dict)


@dataclass(frozen=True)
class AgentSpec:
    """The validated, canonical form of an agent specification.

    ``resources`` maps each resource id to the quantity still available;
    each id appears exactly once (the summary is normalised). Goals and
    plans keep their declaration order, which plan selection relies on.
    """

    resources: Mapping[str, Quantity]
    beliefs: frozenset[str]
    goals: tuple[Goal, ...]
    plans: tuple[Plan, ...]
    warnings: tuple[SpecWarning, ...] = ()

    def goal(self, goal_id: str) -> Goal:
        for g in self.goals:
            if g.id == goal_id:
                return g
        raise UnknownGoalError(goal_id)

    def goal_ids(self) -> tuple[str, ...]:
        return tuple(g.id for g in self.goals)

    def worths(self) -> dict[str, Quantity]:
        """Worth of every declared goal, as an id -> value mapping."""
        return {g.id: g.worth for g in self.goals}


def as_quantity(value: Any) -> Quantity:
    """Convert a parsed number to an exact rational.

    Floats go through their shortest decimal repr, so a literal ``0.1``
    becomes exactly 1/10 rather than the nearest binary float.
    """
    if isinstance(value, bool):
        raise ValueError(f"expected a number, got {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"quantity must be finite, got {value!r}")
        return Fraction(repr(value))
    raise ValueError(f"expected a number, got {type(value).__name__}")


def quantity_to_number(q: Quantity) -> int | float:
    """Inverse of :func:`as_quantity` for JSON output: int when whole."""
    return int(q) if q.denominator == 1 else float(q)


def worth_of(spec: AgentSpec, goal_id: str) -> Quantity:
    """Return the declared worth of ``goal_id``; total over declared goals."""
    return spec.goal(goal_id).worth


_TOP_KEYS = {"resources", "beliefs", "goals", "plans"}
_RESOURCE_KEYS = {"id", "amount"}
_GOAL_KEYS = {"id", "worth", "requires"}
_PLAN_KEYS = {"id", "goal", "context", "body", "requires"}


class _Issues:
    def __init__(self) -> None:
        self.items: list[ValidationIssue] = []

    def add(self, code: str, where: str, message: str) -> None:
        self.items.append(ValidationIssue(code, where, message))


def _parse_quantity(value: Any, where: str, issues: _Issues) -> Quantity | None:
    try:
        q = as_quantity(value)
    except ValueError as exc:
        issues.add("invalid_quantity", where, str(exc))
        return None
    if q < 0:
        issues.add("negative_quantity", where, f"quantity must be >= 0, got {q}")
        return None
    return q


def _parse_requirements(
    raw: Any, where: str, issues: _Issues
) -> dict[str, Quantity] | None:
    """Parse a list of {"id", "amount"} pairs into a normalised mapping."""
    if not isinstance(raw, list):
        issues.add("invalid_structure", where, "requirements must be an array")
        return None
    entries: dict[str, Quantity] = {}
    for i, item in enumerate(raw):
        loc = f"{where}[{i}]"
        if not isinstance(item, Mapping):
            issues.add("invalid_structure", loc, "requirement entry must be an object")
            continue
        for key in item.keys() - _RESOURCE_KEYS:
            issues.add("unknown_key", loc, f"unknown key {key!r}")
        res = item.get("id")
        if not isinstance(res, str) or not _RESOURCE_ID_RE.fullmatch(res):
            issues.add("invalid_identifier", loc, f"invalid resource id {res!r}")
            continue
        amount = _parse_quantity(item.get("amount"), f"{loc}.amount", issues)
        if amount is None:
            continue
        if amount == 0:
            issues.add("zero_requirement", loc, f"requirement for {res!r} must be > 0")
            continue
        if res in entries:
            issues.add("duplicate_resource", loc, f"resource {res!r} listed twice")
            continue
        entries[res] = amount
    return entries


def validate_spec(raw: Mapping[str, Any] | AgentSpec) -> AgentSpec:
    """Validate a spec-shaped document into a canonical :class:`AgentSpec`.

    Raises :class:`SpecValidationError` listing every violation found.
    Validation is idempotent: feeding an already-canonical spec back in
    returns an equal spec.
    """
    if isinstance(raw, AgentSpec):
        raw = spec_to_document(raw)

    issues = _Issues()
    if not isinstance(raw, Mapping):
        raise SpecValidationError(
            [ValidationIssue("invalid_structure", "$", "document must be an object")]
        )
    for key in raw.keys() - _TOP_KEYS:
        issues.add("unknown_key", "$", f"unknown key {key!r}")

    # Resource summary.
    resources: dict[str, Quantity] = {}
    raw_resources = raw.get("resources", [])
    if not isinstance(raw_resources, list):
        issues.add("invalid_structure", "$.resources", "must be an array")
        raw_resources = []
    for i, item in enumerate(raw_resources):
        loc = f"$.resources[{i}]"
        if not isinstance(item, Mapping):
            issues.add("invalid_structure", loc, "resource entry must be an object")
            continue
        for key in item.keys() - _RESOURCE_KEYS:
            issues.add("unknown_key", loc, f"unknown key {key!r}")
        res = item.get("id")
        if not isinstance(res, str) or not _RESOURCE_ID_RE.fullmatch(res):
            issues.add("invalid_identifier", loc, f"invalid resource id {res!r}")
            continue
        if res in resources:
            issues.add("duplicate_resource", loc, f"resource {res!r} declared twice")
            continue
        amount = _parse_quantity(item.get("amount"), f"{loc}.amount", issues)
        if amount is not None:
            resources[res] = amount

    # Belief base (set semantics, duplicates collapse).
    beliefs: set[str] = set()
    raw_beliefs = raw.get("beliefs", [])
    if not isinstance(raw_beliefs, list):
        issues.add("invalid_structure", "$.beliefs", "must be an array")
        raw_beliefs = []
    for i, atom in enumerate(raw_beliefs):
        if not isinstance(atom, str) or not _ATOM_RE.fullmatch(atom):
            issues.add("invalid_atom", f"$.beliefs[{i}]", f"invalid belief atom {atom!r}")
            continue
        beliefs.add(atom)

    # Goals.
    goals: list[Goal] = []
    seen_goal_ids: set[str] = set()
    raw_goals = raw.get("goals", [])
    if not isinstance(raw_goals, list):
        issues.add("invalid_structure", "$.goals", "must be an array")
        raw_goals = []
    for i, item in enumerate(raw_goals):
        loc = f"$.goals[{i}]"
        if not isinstance(item, Mapping):
            issues.add("invalid_structure", loc, "goal entry must be an object")
            continue
        for key in item.keys() - _GOAL_KEYS:
            issues.add("unknown_key", loc, f"unknown key {key!r}")
        gid = item.get("id")
        if not isinstance(gid, str) or not gid:
            issues.add("invalid_identifier", loc, f"invalid goal id {gid!r}")
            continue
        if gid in seen_goal_ids:
            issues.add("duplicate_goal_id", loc, f"goal id {gid!r} declared twice")
            continue
        seen_goal_ids.add(gid)
        worth: Quantity | None = None
        try:
            worth = as_quantity(item.get("worth"))
        except ValueError as exc:
            issues.add("invalid_quantity", f"{loc}.worth", str(exc))
        if worth is not None and not 0 <= worth <= 1:
            issues.add(
                "worth_out_of_range", f"{loc}.worth", f"worth must be in [0, 1], got {worth}"
            )
            worth = None
        requires: dict[str, Quantity] | None = None
        if "requires" in item:
            requires = _parse_requirements(item["requires"], f"{loc}.requires", issues)
        if worth is not None:
            goals.append(Goal(id=gid, worth=worth, requires=requires))

    # Plans.
    plans: list[Plan] = []
    seen_plan_ids: set[str] = set()
    raw_plans = raw.get("plans", [])
    if not isinstance(raw_plans, list):
        issues.add("invalid_structure", "$.plans", "must be an array")
        raw_plans = []
    for i, item in enumerate(raw_plans):
        loc = f"$.plans[{i}]"
        if not isinstance(item, Mapping):
            issues.add("invalid_structure", loc, "plan entry must be an object")
            continue
        for key in item.keys() - _PLAN_KEYS:
            issues.add("unknown_key", loc, f"unknown key {key!r}")
        pid = item.get("id")
        if not isinstance(pid, str) or not pid:
            issues.add("invalid_identifier", loc, f"invalid plan id {pid!r}")
            continue
        if pid in seen_plan_ids:
            issues.add("duplicate_plan_id", loc, f"plan id {pid!r} declared twice")
            continue
        seen_plan_ids.add(pid)
        goal_ref = item.get("goal")
        if not isinstance(goal_ref, str) or not goal_ref:
            issues.add("invalid_identifier", f"{loc}.goal", f"invalid goal ref {goal_ref!r}")
            continue
        if goal_ref not in seen_goal_ids:
            issues.add(
                "dangling_plan_goal_ref", f"{loc}.goal", f"plan names undeclared goal {goal_ref!r}"
            )
        context: list[str] = []
        raw_context = item.get("context", [])
        if not isinstance(raw_context, list):
            issues.add("invalid_structure", f"{loc}.context", "must be an array")
            raw_context = []
        for j, lit in enumerate(raw_context):
            atom = lit[1:] if isinstance(lit, str) and lit.startswith("~") else lit
            if not isinstance(atom, str) or not _ATOM_RE.fullmatch(atom):
                issues.add(
                    "invalid_literal", f"{loc}.context[{j}]", f"invalid context literal {lit!r}"
                )
                continue
            context.append(lit)
        body = item.get("body", "")
        if not isinstance(body, str):
            issues.add("invalid_structure", f"{loc}.body", "body must be a string")
            body = ""
        requires = _parse_requirements(item.get("requires", []), f"{loc}.requires", issues)
        plans.append(
            Plan(id=pid, goal=goal_ref, context=tuple(context), body=body, requires=requires or {})
        )

    # Every goal needs a requirement source: inline requirements or a plan.
    plan_goals = {p.goal for p in plans}
    for g in goals:
        if g.requires is None and g.id not in plan_goals:
            issues.add(
                "goal_without_requirements",
                f"$.goals[{g.id}]",
                f"goal {g.id!r} has neither inline requirements nor any plan",
            )

    if issues.items:
        raise SpecValidationError(issues.items)

    # Resources required anywhere but absent from the summary: warn, treat as 0.
    warnings: list[SpecWarning] = []
    mentioned: set[str] = set()
    for g in goals:
        mentioned.update(g.requires or {})
    for p in plans:
        mentioned.update(p.requires)
    for res in sorted(mentioned - resources.keys()):
        warnings.append(
            SpecWarning(
                "missing_resource",
                res,
                f"resource {res!r} is required but not in the summary; treated as 0 available",
            )
        )

    return AgentSpec(
        resources=resources,
        beliefs=frozenset(beliefs),
        goals=tuple(goals),
        plans=tuple(plans),
        warnings=tuple(warnings),
    )


def spec_to_document(spec: AgentSpec) -> dict[str, Any]:
    """Serialise a canonical spec back to its JSON document form."""

    def reqs(mapping: Mapping[str, Quantity]) -> list[dict[str, Any]]:
        return [{"id": r, "amount": quantity_to_number(q)} for r, q in mapping.items()]

    doc: dict[str, Any] = {
        "resources": reqs(spec.resources),
        "beliefs": sorted(spec.beliefs),
        "goals": [],
        "plans": [],
    }
    for g in spec.goals:
        entry: dict[str, Any] = {"id": g.id, "worth": quantity_to_number(g.worth)}
        if g.requires is not None:
            entry["requires"] = reqs(g.requires)
        doc["goals"].append(entry)
    for p in spec.plans:
        doc["plans"].append(
            {
                "id": p.id,
                "goal": p.goal,
                "context": list(p.context),
                "body": p.body,
                "requires": reqs(p.requires),
            }
        )
    return doc


def load_agent_spec(path: str | Path) -> AgentSpec:
    """Load and validate an agent spec file (UTF-8 JSON).

    Decimal literals are parsed exactly. Malformed JSON is reported as a
    validation error so callers can treat file syntax and schema problems
    uniformly.
    """
    text = Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text, parse_float=Fraction)
    except json.JSONDecodeError as exc:
        raise SpecValidationError(
            [ValidationIssue("malformed_json", f"{path}:{exc.lineno}:{exc.colno}", exc.msg)]
        ) from exc
    return validate_spec(raw)
