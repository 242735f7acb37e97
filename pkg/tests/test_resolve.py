"""The greedy resolution algorithms and the resolution audit trail."""

from fractions import Fraction

import pytest

from goal_arbiter import (
    IncompatibilityKind,
    IncompatibilityReport,
    Semantics,
    TieBreak,
    WrongKindError,
    eval_complex,
    eval_resources,
    eval_simple,
    resource_incom,
    solve_algorithmic,
    solve_argumentation,
    validate_spec,
)

from conftest import example1_document, make_report, req


def dict_needs(table):
    def needs(goal, resource):
        return table.get(goal, {}).get(resource, Fraction(0))

    return needs


def test_eval_simple_per_set_argmax():
    report = make_report([{"g1", "g2"}, {"g3", "g4"}])
    worth = {"g1": Fraction(2, 10), "g2": Fraction(1, 10), "g3": Fraction(1, 10), "g4": Fraction(3, 10)}
    resolution = eval_simple(report, worth)
    assert resolution.consistent_goals == {"g1", "g4"}


def test_eval_simple_tiebreak_by_id_prefers_smaller_id():
    report = make_report([{"g_a", "g_b"}])
    worth = {"g_a": Fraction(1, 2), "g_b": Fraction(1, 2)}
    resolution = eval_simple(report, worth)
    assert resolution.consistent_goals == {"g_a"}


def test_eval_simple_seeded_tiebreak_is_reproducible():
    report = make_report([{"g_a", "g_b"}])
    worth = {"g_a": Fraction(1, 2), "g_b": Fraction(1, 2)}
    first = eval_simple(report, worth, TieBreak.seeded(11))
    second = eval_simple(report, worth, TieBreak.seeded(11))
    assert first == second
    assert len(first.consistent_goals) == 1


def test_eval_simple_example1_set(example1_spec):
    report = resource_incom(example1_spec, eval_resources(example1_spec))
    resolution = eval_simple(report, example1_spec.worths())
    assert resolution.consistent_goals == {"g2"}


def test_eval_simple_includes_free_enabled_goals():
    report = make_report([{"g1", "g2"}])
    worth = {"g1": Fraction(2, 10), "g2": Fraction(1, 10)}
    resolution = eval_simple(report, worth, enabled={"g1", "g2", "g5"})
    assert resolution.consistent_goals == {"g1", "g5"}
    free = [d for d in resolution.audit if d.goal == "g5"]
    assert free and free[0].reason == "no_conflict"


def test_eval_simple_rejects_other_kinds():
    report = make_report([{"g1", "g2"}, {"g2", "g3"}])
    assert report.kind is IncompatibilityKind.COMPLEX
    with pytest.raises(WrongKindError):
        eval_simple(report, {g: Fraction(1, 2) for g in "g1 g2 g3".split()})


def table1_pipeline(table1_spec):
    enabled = eval_resources(table1_spec)
    report = resource_incom(table1_spec, enabled)
    needs = {
        g: dict(
            (res, table1_spec.goal(g).requires.get(res, Fraction(0)))
            for res in table1_spec.resources
        )
        for g in report.incompatible_goals
    }
    return enabled, report, dict_needs(needs)


def test_eval_complex_table1(table1_spec):
    _, report, needs = table1_pipeline(table1_spec)
    resolution = eval_complex(report, table1_spec.worths(), table1_spec.resources, needs)
    assert resolution.consistent_goals == {"g1", "g2", "g7"}


def test_eval_complex_table1_audit_and_residuals(table1_spec):
    _, report, needs = table1_pipeline(table1_spec)
    resolution = eval_complex(report, table1_spec.worths(), table1_spec.resources, needs)
    by_goal = {d.goal: d for d in resolution.audit}
    assert by_goal["g1"].kept and by_goal["g2"].kept and by_goal["g7"].kept
    # After keeping g1 and g2, res_A is exhausted: 50 - 30 - 20.
    assert dict(by_goal["g2"].residual)["res_A"] == 0
    assert by_goal["g8"].reason == "insufficient_residual:res_A"
    assert by_goal["g4"].reason == "insufficient_residual:res_C"
    # Processing follows strictly descending worth.
    processed = [d.goal for d in resolution.audit if d.residual is not None]
    assert processed == ["g1", "g2", "g4", "g6", "g7", "g8", "g9"]


def test_eval_complex_full_consumption_drops_runner_up():
    report = make_report([{"g_a", "g_b"}], available=50, per_set_total=80)
    worth = {"g_a": Fraction(9, 10), "g_b": Fraction(1, 10)}
    needs = dict_needs({"g_a": {"r1": Fraction(50)}, "g_b": {"r1": Fraction(30)}})
    resolution = eval_complex(report, worth, {"r1": Fraction(50)}, needs)
    assert resolution.consistent_goals == {"g_a"}


def test_eval_complex_partial_allocation_keeps_two_of_three():
    # One resource with 50 units; needs 20/30/50 in descending worth order.
    report = make_report([{"g_i", "g_j", "g_k"}], available=50, per_set_total=100)
    worth = {"g_i": Fraction(9, 10), "g_j": Fraction(5, 10), "g_k": Fraction(2, 10)}
    needs = dict_needs(
        {
            "g_i": {"r1": Fraction(20)},
            "g_j": {"r1": Fraction(30)},
            "g_k": {"r1": Fraction(50)},
        }
    )
    resolution = eval_complex(report, worth, {"r1": Fraction(50)}, needs)
    assert resolution.consistent_goals == {"g_i", "g_j"}


def test_eval_complex_flags_keeps_that_follow_a_drop():
    # g_top loses r2's residue to the stronger g_rival and is dropped, which
    # frees r1 for the less valuable g_low.
    report = make_report([{"g_top", "g_low"}, {"g_top", "g_rival"}])
    assert report.kind is IncompatibilityKind.COMPLEX
    worth = {"g_top": Fraction(8, 10), "g_low": Fraction(2, 10), "g_rival": Fraction(9, 10)}
    needs = dict_needs(
        {
            "g_top": {"r1": Fraction(6), "r2": Fraction(6)},
            "g_low": {"r1": Fraction(6)},
            "g_rival": {"r2": Fraction(6)},
        }
    )
    summary = {"r1": Fraction(10), "r2": Fraction(10)}
    resolution = eval_complex(report, worth, summary, needs)
    assert resolution.consistent_goals == {"g_rival", "g_low"}
    by_goal = {d.goal: d for d in resolution.audit}
    assert by_goal["g_top"].reason == "insufficient_residual:r2"
    assert by_goal["g_low"].note == "kept after dropping more valuable g_top"


def test_solve_algorithmic_dispatch_none(example1_spec):
    doc = example1_document()
    doc["goals"][0]["requires"] = req(energy=1)
    doc["goals"][1]["requires"] = req(energy=1)
    doc["goals"][2]["requires"] = req(time=1)
    spec = validate_spec(doc)
    report = resource_incom(spec, eval_resources(spec))
    assert report.kind is IncompatibilityKind.NONE
    resolution = solve_algorithmic(spec, report)
    assert resolution.consistent_goals == {"g1", "g2", "g3"}


def test_solve_algorithmic_dispatch_simple(example1_spec):
    report = resource_incom(example1_spec, eval_resources(example1_spec))
    assert report.kind is IncompatibilityKind.SIMPLE
    resolution = solve_algorithmic(example1_spec, report)
    assert resolution.consistent_goals == {"g2"}
    assert resolution.strategy == "algorithmic"


def test_solve_algorithmic_dispatch_complex(table1_spec):
    report = resource_incom(table1_spec, eval_resources(table1_spec))
    assert report.kind is IncompatibilityKind.COMPLEX
    resolution = solve_algorithmic(table1_spec, report)
    assert resolution.consistent_goals == {"g1", "g2", "g7"}


def test_no_overconsumption_invariant(table1_spec):
    from goal_arbiter import need_res

    report = resource_incom(table1_spec, eval_resources(table1_spec))
    resolution = solve_algorithmic(table1_spec, report)
    for res, available in table1_spec.resources.items():
        used = sum(
            (need_res(table1_spec, g, res) for g in resolution.consistent_goals), Fraction(0)
        )
        assert used <= available


def test_solve_argumentation_star_spec(clique_spec):
    report = resource_incom(clique_spec, eval_resources(clique_spec))
    resolution = solve_argumentation(clique_spec, report, Semantics.GROUNDED)
    # The free goal g9 rides along with the grounded extension.
    assert resolution.consistent_goals == {"g1", "g3", "g8", "g9"}
    assert resolution.semantics == "grounded"
    assert resolution.extensions == (frozenset({"g1", "g3", "g8"}),)


def test_solve_argumentation_records_all_preferred_extensions(clique_spec):
    report = resource_incom(clique_spec, eval_resources(clique_spec))
    resolution = solve_argumentation(clique_spec, report, Semantics.PREFERRED)
    assert resolution.extensions == (frozenset({"g1", "g3", "g8"}),)
    assert resolution.semantics == "preferred"


def test_solve_argumentation_auto_reports_effective_semantics(clique_spec):
    report = resource_incom(clique_spec, eval_resources(clique_spec))
    resolution = solve_argumentation(clique_spec, report, Semantics.AUTO)
    assert resolution.semantics == "grounded"


def test_both_strategies_keep_everything_when_conflict_free():
    doc = {
        "resources": req(energy=100),
        "beliefs": [],
        "goals": [
            {"id": "a", "worth": 0.1, "requires": req(energy=10)},
            {"id": "b", "worth": 0.9, "requires": req(energy=10)},
        ],
        "plans": [],
    }
    spec = validate_spec(doc)
    report = resource_incom(spec, eval_resources(spec))
    assert solve_algorithmic(spec, report).consistent_goals == {"a", "b"}
    assert solve_argumentation(spec, report).consistent_goals == {"a", "b"}


def test_simple_resolution_is_subset_of_complex_resolution(example1_spec):
    # The ledger walk can keep strictly more than the per-set argmax.
    report = resource_incom(example1_spec, eval_resources(example1_spec))
    worth = example1_spec.worths()
    needs = dict_needs(
        {
            g: dict(example1_spec.goal(g).requires)
            for g in report.incompatible_goals
        }
    )
    simple = eval_simple(report, worth)
    complex_ = eval_complex(report, worth, example1_spec.resources, needs)
    assert simple.consistent_goals <= complex_.consistent_goals


def test_tiebreak_parse():
    assert TieBreak.parse("id") == TieBreak.by_id()
    assert TieBreak.parse("seed:42") == TieBreak.seeded(42)
    with pytest.raises(ValueError):
        TieBreak.parse("coin-flip")


def test_determinism_same_seed_same_resolution(table1_spec):
    report = resource_incom(table1_spec, eval_resources(table1_spec))
    a = solve_algorithmic(table1_spec, report, TieBreak.seeded(3))
    b = solve_algorithmic(table1_spec, report, TieBreak.seeded(3))
    assert a == b


def test_worth_monotone_transform_preserves_resolution(table1_spec):
    from conftest import table1_document

    doc = table1_document()
    for goal in doc["goals"]:
        goal["worth"] = (goal["worth"] + 1) / 2
    transformed = validate_spec(doc)
    before = solve_algorithmic(
        table1_spec, resource_incom(table1_spec, eval_resources(table1_spec))
    )
    after = solve_algorithmic(
        transformed, resource_incom(transformed, eval_resources(transformed))
    )
    assert before.consistent_goals == after.consistent_goals
