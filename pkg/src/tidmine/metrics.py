"""Scan accounting, run timing, reduction-rate arithmetic, and report rendering.

The scan ledger counts transaction examinations: for every candidate itemset,
each transaction inspected while counting that candidate adds one examination
to the candidate's level. Level 1 is a full pass, so it always records
`num_transactions * num_distinct_items` regardless of the counting variant.
"""

import json
import statistics
import time
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Callable, Mapping, Sequence, TypeVar

from .errors import ArithmeticDomainError, ConfigurationError

REPORT_SCHEMA_VERSION = 1

T = TypeVar("T")


class ScanLedger:
    """Per-level tally of transaction examinations during a mining run.

    Entries only increase; totals are the sum over levels.
    """

    __slots__ = ("_per_level",)

    def __init__(self, per_level: Mapping[int, int] | None = None):
        self._per_level: dict[int, int] = {}
        if per_level:
            for level, scanned in per_level.items():
                self.add(level, scanned)

    def add(self, level: int, scanned: int) -> None:
        if level < 1:
            raise ConfigurationError(f"ledger level must be >= 1, got {level}")
        if scanned < 0:
            raise ConfigurationError("ledger entries only increase")
        self._per_level[level] = self._per_level.get(level, 0) + scanned

    def absorb(self, other: "ScanLedger") -> None:
        """Merge another ledger's increments into this one."""
        for level, scanned in other._per_level.items():
            self.add(level, scanned)

    def level(self, k: int) -> int:
        return self._per_level.get(k, 0)

    @property
    def per_level(self) -> dict[int, int]:
        return dict(sorted(self._per_level.items()))

    @property
    def total(self) -> int:
        return sum(self._per_level.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScanLedger):
            return NotImplemented
        return self._per_level == other._per_level

    def __repr__(self) -> str:
        return f"ScanLedger({self.per_level}, total={self.total})"


def reduction_rate(original: float, improved: float) -> float:
    """Percent reduction (original - improved) / original * 100, full precision.

    `original` must be positive; `improved` may exceed it, in which case the
    rate is negative. Applies to any positive magnitude (seconds, scan counts).
    """
    if original <= 0:
        raise ArithmeticDomainError(f"original must be positive, got {original}")
    if improved < 0:
        raise ArithmeticDomainError(f"improved must be non-negative, got {improved}")
    return (original - improved) / original * 100.0


def mean_rate(rates: Sequence[float]) -> float:
    """Arithmetic mean of a non-empty sequence of percentages, full precision."""
    if not rates:
        raise ArithmeticDomainError("mean_rate needs at least one rate")
    return statistics.fmean(rates)


def round_percent(value: float) -> float:
    """Display rounding: two decimals, ties away from zero."""
    return float(Decimal(repr(float(value))).quantize(Decimal("0.01"), ROUND_HALF_UP))


def median_seconds(fn: Callable[[], T], repetitions: int = 5) -> tuple[T, float | None]:
    """Run `fn` `repetitions` times; return (first result, median wall seconds).

    With repetitions=0 the callable runs once untimed and the median is None.
    """
    if repetitions < 0:
        raise ConfigurationError("repetitions must be non-negative")
    if repetitions == 0:
        return fn(), None
    result = None
    laps = []
    for i in range(repetitions):
        start = time.perf_counter()
        out = fn()
        laps.append(time.perf_counter() - start)
        if i == 0:
            result = out
    return result, statistics.median(laps)


@dataclass(frozen=True)
class RunTiming:
    """Wall-clock measurement of one mining run (None when untimed)."""

    variant: str
    dataset: str
    min_support: int | float
    wall_seconds: float | None

    def __post_init__(self):
        if self.wall_seconds is not None and self.wall_seconds < 0:
            raise ConfigurationError("wall_seconds must be non-negative")


@dataclass(frozen=True)
class ComparisonReport:
    """Scan ledgers and timings of a classic run and an improved run.

    Both runs must have used the same database, min_support, and candidate
    strategy; the timings echo those labels and are validated for agreement.
    """

    classic_ledger: ScanLedger
    classic_timing: RunTiming
    improved_ledger: ScanLedger
    improved_timing: RunTiming
    candidate_strategy: str
    min_support_count: int

    def __post_init__(self):
        if self.classic_timing.dataset != self.improved_timing.dataset:
            raise ConfigurationError("compared runs must share a dataset")
        if self.classic_timing.min_support != self.improved_timing.min_support:
            raise ConfigurationError("compared runs must share min_support")

    @property
    def dataset(self) -> str:
        return self.classic_timing.dataset

    @property
    def min_support(self) -> int | float:
        return self.classic_timing.min_support

    @property
    def reduction_rate_percent(self) -> float | None:
        """Time-based reduction rate; None when either run is untimed."""
        original = self.classic_timing.wall_seconds
        improved = self.improved_timing.wall_seconds
        if original is None or improved is None or original == 0:
            return None
        return reduction_rate(original, improved)

    @property
    def scan_reduction_percent(self) -> float | None:
        """Ledger-based reduction rate; deterministic for a given input."""
        if self.classic_ledger.total == 0:
            return None
        return reduction_rate(self.classic_ledger.total, self.improved_ledger.total)

    def levels(self) -> list[int]:
        keys = set(self.classic_ledger.per_level) | set(self.improved_ledger.per_level)
        return sorted(keys)


def _format_min_support(value: int | float) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def _percent_cell(value: float | None) -> str:
    return "n/a" if value is None else f"{round_percent(value):.2f}%"


def render_report(report: ComparisonReport, format: str = "human") -> str:
    """Serialize a ComparisonReport; ends with a newline in both formats.

    Human format mirrors the per-level scan table with a sum row plus timing
    lines. Machine format is versioned JSON (see README for the schema) and is
    byte-stable for identical reports.
    """
    if format == "machine":
        return _render_machine(report)
    if format != "human":
        raise ConfigurationError(f"unknown report format: {format!r}")
    return _render_human(report)


def _render_human(report: ComparisonReport) -> str:
    lines = [
        f"comparison: {report.dataset}",
        (
            f"min_support: {_format_min_support(report.min_support)} "
            f"(count {report.min_support_count})  candidates: {report.candidate_strategy}"
        ),
        "",
        f"{'level':<14}{'classic':>12}{'improved':>12}",
    ]
    for k in report.levels():
        lines.append(
            f"{f'{k}-itemset':<14}{report.classic_ledger.level(k):>12}"
            f"{report.improved_ledger.level(k):>12}"
        )
    lines.append(
        f"{'sum':<14}{report.classic_ledger.total:>12}{report.improved_ledger.total:>12}"
    )
    lines.append("")
    lines.append(f"scan reduction rate: {_percent_cell(report.scan_reduction_percent)}")
    classic_wall = report.classic_timing.wall_seconds
    improved_wall = report.improved_timing.wall_seconds
    if classic_wall is None or improved_wall is None:
        lines.append("wall seconds: not measured")
    else:
        lines.append(
            f"wall seconds: classic {classic_wall:.6f}, improved {improved_wall:.6f}"
        )
        lines.append(
            f"time reduction rate: {_percent_cell(report.reduction_rate_percent)}"
        )
    return "".join(line + "\n" for line in lines)


def _render_machine(report: ComparisonReport) -> str:
    payload = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "command": "compare",
        "dataset": report.dataset,
        "min_support": report.min_support,
        "min_support_count": report.min_support_count,
        "candidate_strategy": report.candidate_strategy,
        "variants": [
            _variant_payload(report.classic_timing, report.classic_ledger),
            _variant_payload(report.improved_timing, report.improved_ledger),
        ],
        "reduction_rate_percent": report.reduction_rate_percent,
        "scan_reduction_percent": report.scan_reduction_percent,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _variant_payload(timing: RunTiming, ledger: ScanLedger) -> dict:
    return {
        "variant": timing.variant,
        "per_level_scans": {str(k): v for k, v in ledger.per_level.items()},
        "total_scans": ledger.total,
        "wall_seconds": timing.wall_seconds,
    }
