"""Goal arbiter: resource-conflict detection and goal selection for agents.

The pipeline runs in three stages over a declarative agent spec:

1. feasibility, keeping the goals that are individually affordable,
2. detection of per-resource conflict sets and their kind, and
3. resolution, either by argumentation-style acceptability or by a greedy
   worth-ordered walk with residual resource accounting.
"""

from .argue import (
    DEFAULT_ENUMERATION_CAP,
    Extension,
    FrameworkTooLargeError,
    GoalFramework,
    Semantics,
    acceptable_goals,
    build_framework,
    defeats,
    defends,
    grounded_extension,
    is_conflict_free,
    preferred_extensions,
    select_extension,
    to_dot,
    total_worth,
)
from .detect import (
    ConflictSet,
    IncompatibilityKind,
    IncompatibilityReport,
    classify,
    resource_incom,
)
from .feasibility import (
    EnabledGoals,
    Exclusion,
    NoApplicablePlanError,
    Shortfall,
    availa_res,
    eval_resources,
    need_res,
    resolve_plan,
)
from .model import (
    AgentSpec,
    Goal,
    Plan,
    Quantity,
    SpecValidationError,
    SpecWarning,
    UnknownGoalError,
    ValidationIssue,
    as_quantity,
    load_agent_spec,
    spec_to_document,
    validate_spec,
    worth_of,
)
from .oracle import (
    DefinitionalSemantics,
    FeasibleSubsetReport,
    TooManyGoalsError,
    enumerate_feasible,
    recompute_conflict_sets,
    semantics_by_definition,
)
from .resolve import (
    STRATEGY_ALGORITHMIC,
    STRATEGY_ARGUMENTATION,
    Decision,
    Resolution,
    TieBreak,
    WrongKindError,
    eval_complex,
    eval_simple,
    solve_algorithmic,
    solve_argumentation,
)

__version__ = "0.1.0"

__all__ = [
    "AgentSpec",
    "ConflictSet",
    "DEFAULT_ENUMERATION_CAP",
    "Decision",
    "DefinitionalSemantics",
    "EnabledGoals",
    "Exclusion",
    "Extension",
    "FeasibleSubsetReport",
    "FrameworkTooLargeError",
    "Goal",
    "GoalFramework",
    "IncompatibilityKind",
    "IncompatibilityReport",
    "NoApplicablePlanError",
    "Plan",
    "Quantity",
    "Resolution",
    "STRATEGY_ALGORITHMIC",
    "STRATEGY_ARGUMENTATION",
    "Semantics",
    "Shortfall",
    "SpecValidationError",
    "SpecWarning",
    "TieBreak",
    "TooManyGoalsError",
    "UnknownGoalError",
    "ValidationIssue",
    "WrongKindError",
    "acceptable_goals",
    "as_quantity",
    "availa_res",
    "build_framework",
    "classify",
    "defeats",
    "defends",
    "enumerate_feasible",
    "eval_complex",
    "eval_resources",
    "eval_simple",
    "grounded_extension",
    "is_conflict_free",
    "load_agent_spec",
    "need_res",
    "preferred_extensions",
    "recompute_conflict_sets",
    "resolve_plan",
    "resource_incom",
    "select_extension",
    "semantics_by_definition",
    "solve_algorithmic",
    "solve_argumentation",
    "spec_to_document",
    "to_dot",
    "total_worth",
    "validate_spec",
    "worth_of",
]
