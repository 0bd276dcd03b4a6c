"""Frequent-itemset and association-rule mining with TID-indexed counting."""

from .dataset import (
    GeneratorConfig,
    TransactionDb,
    generate_synthetic,
    load_transactions,
)
from .errors import (
    ArithmeticDomainError,
    ConfigurationError,
    ContractViolationError,
    IngestionError,
    TidmineError,
    UnknownItemError,
)
from .metrics import (
    ComparisonReport,
    RunTiming,
    ScanLedger,
    mean_rate,
    median_seconds,
    reduction_rate,
    render_report,
    round_percent,
)
from .mining import (
    CandidateSet,
    Itemset,
    L1Index,
    MiningResult,
    compute_l1,
    count_support_full,
    count_support_restricted,
    generate_candidates_combinations,
    generate_candidates_join,
    min_support_item,
    resolve_min_support,
    run_apriori,
    target_tids,
)
from .rules import AssociationRule, generate_rules

__version__ = "0.1.0"

__all__ = [
    "ArithmeticDomainError",
    "AssociationRule",
    "CandidateSet",
    "ComparisonReport",
    "ConfigurationError",
    "ContractViolationError",
    "GeneratorConfig",
    "IngestionError",
    "Itemset",
    "L1Index",
    "MiningResult",
    "RunTiming",
    "ScanLedger",
    "TidmineError",
    "TransactionDb",
    "UnknownItemError",
    "compute_l1",
    "count_support_full",
    "count_support_restricted",
    "generate_candidates_combinations",
    "generate_candidates_join",
    "generate_rules",
    "generate_synthetic",
    "load_transactions",
    "mean_rate",
    "median_seconds",
    "min_support_item",
    "reduction_rate",
    "render_report",
    "resolve_min_support",
    "round_percent",
    "run_apriori",
    "target_tids",
]
