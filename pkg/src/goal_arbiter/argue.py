"""Argumentation-style selection among incompatible goals.

The conflicting goals and their pairwise incompatibilities form a framework
in which a goal attacks an incompatible neighbour whenever its worth is at
least as high; equal worth leaves the attack mutual. Acceptance is then the
usual business of extensions: the grounded extension (least fixpoint of the
defense operator, always unique) or the preferred extensions (maximal
admissible sets, enumerated exhaustively for the small frameworks this
engine targets).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping

from .detect import IncompatibilityReport
from .model import Quantity

Extension = frozenset

DEFAULT_ENUMERATION_CAP = 25


class Semantics(enum.Enum):
    GROUNDED = "grounded"
    PREFERRED = "preferred"
    AUTO = "auto"


class FrameworkTooLargeError(RuntimeError):
    """Exhaustive extension enumeration was refused above the configured cap."""

    def __init__(self, size: int, cap: int):
        super().__init__(f"framework has {size} goals; enumeration cap is {cap}")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class GoalFramework:
    """Conflicting goals, their symmetric incompatibility pairs, and worths."""

    goals: frozenset[str]
    incompatibility: frozenset[frozenset[str]]
    worth: Mapping[str, Quantity]

    def __post_init__(self) -> None:
        for pair in self.incompatibility:
            if len(pair) != 2:
                raise ValueError(f"incompatibility pair must have 2 goals: {set(pair)}")
            if not pair <= self.goals:
                raise ValueError(f"pair {set(pair)} mentions goals outside the framework")

    def neighbours(self, goal: str) -> frozenset[str]:
        return frozenset(g for pair in self.incompatibility if goal in pair for g in pair - {goal})


def build_framework(
    report: IncompatibilityReport, worth: Mapping[str, Quantity]
) -> GoalFramework:
    """Expand every conflict set into the clique of its goal pairs.

    All goals of one conflict set compete for the same resource, so each
    unordered pair of them is incompatible; this is what guarantees that a
    conflict-free extension never jointly overloads a single resource.
    """
    pairs: set[frozenset[str]] = set()
    for cs in report.sets:
        for a, b in combinations(sorted(cs.goals), 2):
            pairs.add(frozenset((a, b)))
    goals = report.incompatible_goals
    return GoalFramework(
        goals=goals,
        incompatibility=frozenset(pairs),
        worth={g: worth[g] for g in goals},
    )


def defeats(gf: GoalFramework, attacker: str, target: str) -> bool:
    """True iff the pair is incompatible and the attacker's worth is >= the target's.

    Strictly higher worth breaks the symmetry one way; equal worth keeps the
    attack in both directions, which is what empties the grounded extension
    when nothing separates the contenders.
    """
    if frozenset((attacker, target)) not in gf.incompatibility:
        return False
    return gf.worth[attacker] >= gf.worth[target]


def attackers_of(gf: GoalFramework, goal: str) -> frozenset[str]:
    return frozenset(g for g in gf.neighbours(goal) if defeats(gf, g, goal))


def is_conflict_free(gf: GoalFramework, extension: Extension) -> bool:
    """No ordered pair inside the extension is a defeat."""
    for a in extension:
        for b in extension:
            if a != b and defeats(gf, a, b):
                return False
    return True


def defends(gf: GoalFramework, extension: Extension, goal: str) -> bool:
    """Every defeater of ``goal`` is itself defeated by some extension member."""
    for attacker in attackers_of(gf, goal):
        if not any(defeats(gf, defender, attacker) for defender in extension):
            return False
    return True


def grounded_extension(gf: GoalFramework) -> Extension:
    """Least fixpoint of the defense operator, starting from the empty set.

    The operator is monotone on a finite lattice, so iteration terminates
    and the result is unique (possibly empty).
    """
    current: frozenset[str] = frozenset()
    while True:
        nxt = frozenset(g for g in gf.goals if defends(gf, current, g))
        if nxt == current:
            return current
        current = nxt


def _canonical(extensions: Iterable[frozenset[str]]) -> tuple[Extension, ...]:
    return tuple(sorted(extensions, key=lambda e: tuple(sorted(e))))


def preferred_extensions(
    gf: GoalFramework, max_goals: int = DEFAULT_ENUMERATION_CAP
) -> tuple[Extension, ...]:
    """All inclusion-maximal admissible sets, canonically ordered.

    Enumerates conflict-free sets by a backtracking walk (conflict-freeness
    is hereditary, so pruning is sound), keeps the admissible ones, and
    filters to the maximal members. Goals without any incompatibility are
    in every preferred extension and are factored out up front.
    """
    if len(gf.goals) > max_goals:
        raise FrameworkTooLargeError(len(gf.goals), max_goals)

    contested = sorted({g for pair in gf.incompatibility for g in pair})
    isolated = frozenset(gf.goals) - frozenset(contested)
    n = len(contested)
    if n == 0:
        return (frozenset(gf.goals),)

    index = {g: i for i, g in enumerate(contested)}
    attacks_in = [0] * n  # bitmask of attackers of i
    attacks_out = [0] * n  # bitmask of goals i attacks
    for pair in gf.incompatibility:
        a, b = tuple(pair)
        for x, y in ((a, b), (b, a)):
            if gf.worth[x] >= gf.worth[y]:
                attacks_out[index[x]] |= 1 << index[y]
                attacks_in[index[y]] |= 1 << index[x]

    admissible: list[int] = []

    def walk(i: int, members: int, closed: int, attackers: int, victims: int) -> None:
        if i == n:
            # Admissible iff every member's attacker is counter-attacked.
            if attackers & ~victims == 0:
                admissible.append(members)
            return
        bit = 1 << i
        if not closed & bit:  # adding goal i keeps the set conflict-free
            walk(
                i + 1,
                members | bit,
                closed | attacks_in[i] | attacks_out[i],
                attackers | attacks_in[i],
                victims | attacks_out[i],
            )
        walk(i + 1, members, closed, attackers, victims)

    walk(0, 0, 0, 0, 0)

    admissible.sort(key=lambda m: bin(m).count("1"), reverse=True)
    maximal: list[int] = []
    for mask in admissible:
        if not any(mask & kept == mask for kept in maximal):
            maximal.append(mask)

    result = [
        frozenset(contested[i] for i in range(n) if mask & (1 << i)) | isolated
        for mask in maximal
    ]
    return _canonical(result)


def acceptable_goals(
    gf: GoalFramework,
    semantics: Semantics = Semantics.AUTO,
    max_goals: int = DEFAULT_ENUMERATION_CAP,
) -> tuple[Extension, ...]:
    """The extensions whose members count as acceptable.

    GROUNDED yields a single extension (possibly empty); PREFERRED yields
    all preferred extensions; AUTO falls back from grounded to preferred
    when the grounded extension is empty, which is when the preferred view
    actually discriminates.
    """
    if semantics is Semantics.GROUNDED:
        return (grounded_extension(gf),)
    if semantics is Semantics.PREFERRED:
        return preferred_extensions(gf, max_goals)
    grounded = grounded_extension(gf)
    if grounded:
        return (grounded,)
    return preferred_extensions(gf, max_goals)


def total_worth(worth: Mapping[str, Quantity], goals: Iterable[str]) -> Quantity:
    return sum((worth[g] for g in goals), Fraction(0))


def select_extension(gf: GoalFramework, extensions: Iterable[Extension]) -> Extension:
    """Single-answer policy: maximal total worth, ties broken by sorted goal ids."""
    candidates = list(extensions)
    if not candidates:
        return frozenset()
    return min(candidates, key=lambda e: (-total_worth(gf.worth, e), tuple(sorted(e))))


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _fmt_worth(q: Quantity) -> str:
    return str(q.numerator) if q.denominator == 1 else format(float(q), "g")


def to_dot(gf: GoalFramework) -> str:
    """Render the defeat digraph in DOT.

    Nodes are labelled ``id (worth)`` and ordered by goal id; a mutual
    defeat is drawn as one double-headed edge. Deterministic output.
    """
    lines = ["digraph goal_defeats {"]
    if gf.goals:
        lines.append("  rankdir=LR;")
        for g in sorted(gf.goals):
            lines.append(f"  {_quote(g)} [label=\"{g} ({_fmt_worth(gf.worth[g])})\"];")
        for pair in sorted(gf.incompatibility, key=lambda p: tuple(sorted(p))):
            a, b = sorted(pair)
            forward = defeats(gf, a, b)
            backward = defeats(gf, b, a)
            if forward and backward:
                lines.append(f"  {_quote(a)} -> {_quote(b)} [dir=both];")
            elif forward:
                lines.append(f"  {_quote(a)} -> {_quote(b)};")
            elif backward:
                lines.append(f"  {_quote(b)} -> {_quote(a)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
