"""Render a full pipeline run to files: delimited summaries plus figures.

The report directory receives two CSV tables (per-goal decisions and
per-resource budgets) and two PNG figures: the defeat graph with the kept
goals filled in, and a bar view of each resource's availability against the
demand of the enabled and the kept goals.
"""

from __future__ import annotations

import csv
from fractions import Fraction
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import networkx as nx

from .argue import GoalFramework, Semantics, build_framework, defeats
from .detect import IncompatibilityKind, IncompatibilityReport, resource_incom
from .feasibility import EnabledGoals, eval_resources, need_res
from .model import AgentSpec, quantity_to_number
from .resolve import (
    STRATEGY_ALGORITHMIC,
    Resolution,
    TieBreak,
    solve_algorithmic,
    solve_argumentation,
)

KEPT_COLOR = "#9fd49f"
DROPPED_COLOR = "#ffffff"


def _num(q) -> str:
    return str(quantity_to_number(q))


def _goal_rows(
    spec: AgentSpec, enabled: EnabledGoals, report: IncompatibilityReport, resolution: Resolution
) -> list[dict[str, str]]:
    reasons = {d.goal: d.reason for d in resolution.audit}
    rows = []
    for goal in sorted(spec.goals, key=lambda g: g.id):
        if goal.id in enabled.excluded:
            reason = enabled.excluded[goal.id].reason
        else:
            reason = reasons.get(goal.id, "")
        rows.append(
            {
                "goal": goal.id,
                "worth": _num(goal.worth),
                "enabled": "yes" if goal.id in enabled.goals else "no",
                "conflicting": "yes" if goal.id in report.incompatible_goals else "no",
                "kept": "yes" if goal.id in resolution.consistent_goals else "no",
                "reason": reason,
            }
        )
    return rows


def _resource_rows(
    spec: AgentSpec, enabled: EnabledGoals, report: IncompatibilityReport, resolution: Resolution
) -> list[dict[str, str]]:
    conflicted = {cs.resource for cs in report.sets}
    rows = []
    for res in sorted(spec.resources):
        enabled_demand = sum(
            (need_res(spec, g, res) for g in enabled.goals), Fraction(0)
        )
        kept_demand = sum(
            (need_res(spec, g, res) for g in resolution.consistent_goals), Fraction(0)
        )
        rows.append(
            {
                "resource": res,
                "available": _num(spec.resources[res]),
                "enabled_demand": _num(enabled_demand),
                "kept_demand": _num(kept_demand),
                "conflicted": "yes" if res in conflicted else "no",
            }
        )
    return rows


def _write_csv(path: Path, rows: list[dict[str, str]], fields: list[str]) -> None:
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(handle, fieldnames=fields)
        writer.writeheader()
        writer.writerows(rows)


def _draw_defeat_graph(
    path: Path, gf: GoalFramework | None, resolution: Resolution
) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    ax.set_axis_off()
    if gf is None or not gf.goals:
        ax.text(0.5, 0.5, "no resource conflicts", ha="center", va="center")
        fig.savefig(path, dpi=150, bbox_inches="tight")
        plt.close(fig)
        return

    graph = nx.DiGraph()
    ordered = sorted(gf.goals)
    graph.add_nodes_from(ordered)
    for pair in sorted(gf.incompatibility, key=lambda p: tuple(sorted(p))):
        a, b = sorted(pair)
        if defeats(gf, a, b):
            graph.add_edge(a, b)
        if defeats(gf, b, a):
            graph.add_edge(b, a)

    pos = nx.circular_layout(ordered)
    colors = [
        KEPT_COLOR if g in resolution.consistent_goals else DROPPED_COLOR for g in ordered
    ]
    nx.draw_networkx_nodes(
        graph, pos, nodelist=ordered, node_color=colors, edgecolors="black", node_size=900, ax=ax
    )
    nx.draw_networkx_labels(
        graph,
        pos,
        labels={g: f"{g}\n{float(gf.worth[g]):g}" for g in ordered},
        font_size=8,
        ax=ax,
    )
    nx.draw_networkx_edges(
        graph, pos, ax=ax, connectionstyle="arc3,rad=0.08", node_size=900, arrowsize=14
    )
    ax.set_title("defeats among conflicting goals (kept goals filled)")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def _draw_resource_usage(path: Path, rows: list[dict[str, str]]) -> None:
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    if not rows:
        ax.set_axis_off()
        ax.text(0.5, 0.5, "no resources declared", ha="center", va="center")
    else:
        names = [r["resource"] for r in rows]
        available = [float(r["available"]) for r in rows]
        enabled_demand = [float(r["enabled_demand"]) for r in rows]
        kept_demand = [float(r["kept_demand"]) for r in rows]
        xs = range(len(names))
        width = 0.27
        ax.bar([x - width for x in xs], available, width, label="available", color="#7f7f7f")
        ax.bar(xs, enabled_demand, width, label="enabled demand", color="#d62728")
        ax.bar([x + width for x in xs], kept_demand, width, label="kept demand", color="#2ca02c")
        ax.set_xticks(list(xs))
        ax.set_xticklabels(names, rotation=30, ha="right")
        ax.set_ylabel("quantity")
        ax.legend()
        ax.set_title("resource budgets")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_report(
    spec: AgentSpec,
    out_dir: str | Path,
    strategy: str = STRATEGY_ALGORITHMIC,
    semantics: Semantics = Semantics.AUTO,
    tiebreak: TieBreak | None = None,
) -> list[Path]:
    """Run the pipeline and write the CSV tables and figures into ``out_dir``.

    Returns the written paths in a fixed order.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    enabled = eval_resources(spec)
    report = resource_incom(spec, enabled)
    if strategy == STRATEGY_ALGORITHMIC:
        resolution = solve_algorithmic(spec, report, tiebreak)
    else:
        resolution = solve_argumentation(spec, report, semantics)

    gf = None
    if report.kind is not IncompatibilityKind.NONE:
        gf = build_framework(report, spec.worths())

    goal_rows = _goal_rows(spec, enabled, report, resolution)
    resource_rows = _resource_rows(spec, enabled, report, resolution)

    paths = [
        out / "goals.csv",
        out / "resources.csv",
        out / "defeat_graph.png",
        out / "resource_usage.png",
    ]
    _write_csv(paths[0], goal_rows, ["goal", "worth", "enabled", "conflicting", "kept", "reason"])
    _write_csv(
        paths[1],
        resource_rows,
        ["resource", "available", "enabled_demand", "kept_demand", "conflicted"],
    )
    _draw_defeat_graph(paths[2], gf, resolution)
    _draw_resource_usage(paths[3], resource_rows)
    return paths
