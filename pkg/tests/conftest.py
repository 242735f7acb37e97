"""Shared fixtures: the canonical example specs and a random spec generator."""

from __future__ import annotations

import json
import random
from fractions import Fraction

import pytest

from goal_arbiter import ConflictSet, IncompatibilityReport, classify, validate_spec


def req(**amounts) -> list[dict]:
    return [{"id": res, "amount": amount} for res, amount in amounts.items()]


def example1_document() -> dict:
    """Two affordable goals plus one that overshoots the energy budget."""
    return {
        "resources": req(energy=60, time=4),
        "beliefs": [],
        "goals": [
            {"id": "g1", "worth": 0.5, "requires": req(energy=70)},
            {"id": "g2", "worth": 0.8, "requires": req(energy=35, time=2)},
            {"id": "g3", "worth": 0.6, "requires": req(time=3)},
        ],
        "plans": [],
    }


def table1_document() -> dict:
    """Seven goals over four overloaded resources, worths strictly descending."""
    return {
        "resources": req(res_A=50, res_B=10, res_C=10, res_D=25),
        "beliefs": [],
        "goals": [
            {"id": "g1", "worth": 0.9, "requires": req(res_A=30, res_C=5)},
            {"id": "g2", "worth": 0.8, "requires": req(res_A=20, res_B=10)},
            {"id": "g4", "worth": 0.7, "requires": req(res_C=7)},
            {"id": "g6", "worth": 0.6, "requires": req(res_B=7)},
            {"id": "g7", "worth": 0.5, "requires": req(res_D=15)},
            {"id": "g8", "worth": 0.4, "requires": req(res_A=50)},
            {"id": "g9", "worth": 0.3, "requires": req(res_D=20)},
        ],
        "plans": [],
    }


# The five-set conflict family used throughout the argumentation tests.
CLIQUE_FAMILY = [
    {"g1", "g2"},
    {"g2", "g4"},
    {"g3", "g4"},
    {"g1", "g5", "g6", "g7"},
    {"g2", "g8"},
]

# A worth assignment consistent with the framework's narrative: g1 strictly
# maximal, g2 above g8, g3 above g4.
W_STAR = {
    "g1": Fraction("0.9"),
    "g2": Fraction("0.8"),
    "g3": Fraction("0.7"),
    "g4": Fraction("0.6"),
    "g8": Fraction("0.5"),
    "g5": Fraction("0.4"),
    "g6": Fraction("0.3"),
    "g7": Fraction("0.2"),
}


def clique_document() -> dict:
    """A spec whose conflict sets are exactly CLIQUE_FAMILY, plus a free goal g9.

    Each set gets its own resource; every member needs a slice that is
    individually affordable but jointly not.
    """
    resources = {}
    goal_needs: dict[str, dict[str, int]] = {g: {} for g in W_STAR}
    for i, members in enumerate(CLIQUE_FAMILY, start=1):
        res = f"r{i}"
        per_goal = 6 if len(members) == 2 else 3
        resources[res] = 10
        for g in members:
            goal_needs[g][res] = per_goal
    resources["r9"] = 5
    doc = {
        "resources": req(**resources),
        "beliefs": [],
        "goals": [
            {"id": g, "worth": float(W_STAR[g]), "requires": req(**goal_needs[g])}
            for g in sorted(W_STAR)
        ],
        "plans": [],
    }
    doc["goals"].append({"id": "g9", "worth": 0.1, "requires": req(r9=2)})
    return doc


def make_report(family, available=1, per_set_total=2) -> IncompatibilityReport:
    """Wrap plain goal-id sets into a synthetic conflict report."""
    sets = tuple(
        ConflictSet(
            resource=f"r{i}",
            goals=frozenset(members),
            total_need=Fraction(per_set_total),
            available=Fraction(available),
        )
        for i, members in enumerate(family, start=1)
    )
    goals = frozenset().union(*family) if family else frozenset()
    return IncompatibilityReport(sets=sets, incompatible_goals=goals, kind=classify(sets))


def random_spec_document(rng: random.Random) -> dict:
    """A small random spec: <= 6 goals, <= 4 resources, integer quantities 0..100.

    Needs are mostly drawn below the availability so that goals tend to be
    individually affordable and conflicts have to be joint ones.
    """
    n_res = rng.randint(1, 4)
    resources = {f"r{i}": rng.randint(0, 100) for i in range(n_res)}
    n_goals = rng.randint(1, 6)
    goals = []
    for i in range(n_goals):
        needs = {}
        for res, available in resources.items():
            if rng.random() >= 0.6:
                continue
            if available > 0 and rng.random() < 0.85:
                needs[res] = rng.randint(1, available)
            else:
                needs[res] = rng.randint(1, 100)
        goals.append(
            {
                "id": f"g{i}",
                "worth": rng.randint(0, 20) / 20,
                "requires": req(**needs),
            }
        )
    return {
        "resources": req(**resources),
        "beliefs": [],
        "goals": goals,
        "plans": [],
    }


@pytest.fixture
def example1_spec():
    return validate_spec(example1_document())


@pytest.fixture
def table1_spec():
    return validate_spec(table1_document())


@pytest.fixture
def clique_spec():
    return validate_spec(clique_document())


@pytest.fixture
def write_spec(tmp_path):
    def _write(doc, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return _write
