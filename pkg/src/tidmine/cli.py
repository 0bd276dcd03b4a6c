"""Command-line front end: mine, rules, compare, and bench subcommands.

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error. Reports go to
standard output, diagnostics to standard error. Machine-format output is
byte-identical for identical flags, input, and seed, regardless of --threads.
"""

import argparse
import json
import sys
from typing import Sequence

from . import metrics, rules
from .dataset import GeneratorConfig, TransactionDb, generate_synthetic, load_transactions
from .errors import ConfigurationError, IngestionError
from .metrics import ComparisonReport, RunTiming, round_percent
from .mining import MiningResult, run_apriori

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already printed its message
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.handler(args)
    except ConfigurationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (IngestionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tidmine",
        description="Frequent-itemset and association-rule mining with "
        "TID-indexed candidate counting.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    mine = sub.add_parser("mine", help="mine frequent itemsets from one dataset")
    _add_common(mine)
    _add_variant(mine)
    mine.set_defaults(handler=_cmd_mine)

    rules_p = sub.add_parser("rules", help="mine itemsets and emit association rules")
    _add_common(rules_p)
    _add_variant(rules_p)
    rules_p.add_argument(
        "--min-confidence",
        required=True,
        type=float,
        metavar="Y",
        help="confidence threshold in (0, 1]",
    )
    rules_p.set_defaults(handler=_cmd_rules)

    compare = sub.add_parser(
        "compare", help="run both counting variants on one dataset and compare"
    )
    _add_common(compare)
    compare.add_argument(
        "--reps",
        type=int,
        default=5,
        metavar="R",
        help="timing repetitions per variant (median reported); 0 skips timing "
        "and makes the output fully deterministic (default: 5)",
    )
    compare.set_defaults(handler=_cmd_compare)

    bench = sub.add_parser(
        "bench", help="time both variants across several datasets"
    )
    _add_common(bench, multi_input=True)
    bench.add_argument(
        "--reps",
        type=int,
        default=5,
        metavar="R",
        help="timing repetitions per variant per dataset (default: 5)",
    )
    bench.set_defaults(handler=_cmd_bench)
    return parser


def _add_common(parser: argparse.ArgumentParser, multi_input: bool = False) -> None:
    group = parser.add_argument_group("input (exactly one source kind)")
    extra = {"action": "append"} if multi_input else {}
    group.add_argument(
        "--input",
        metavar="PATH",
        help="transaction file, one transaction per line" + (" (repeatable)" if multi_input else ""),
        **extra,
    )
    group.add_argument(
        "--generate",
        metavar="N,ITEMS,AVGLEN",
        help="synthetic dataset: transactions, universe size, mean length"
        + (" (repeatable)" if multi_input else ""),
        **extra,
    )
    parser.add_argument(
        "--min-support",
        required=True,
        metavar="X",
        help="absolute count, or fraction of the database when X contains a decimal point",
    )
    parser.add_argument(
        "--candidates",
        choices=["join", "join-unpruned", "combinations"],
        default="join",
        help="candidate generation strategy (default: join)",
    )
    parser.add_argument(
        "--format", choices=["human", "machine"], default="human",
        help="report format (default: human)",
    )
    parser.add_argument(
        "--delimiter", choices=["whitespace", "comma"], default="whitespace",
        help="token delimiter for --input files (default: whitespace)",
    )
    parser.add_argument("--seed", type=int, default=0, help="generator seed (default: 0)")
    parser.add_argument(
        "--threads", type=int, default=1,
        help="worker cap for candidate counting; never changes output (default: 1)",
    )


def _add_variant(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--variant", choices=["classic", "improved"], default="improved",
        help="counting variant (default: improved)",
    )


def _parse_min_support(text: str) -> int | float:
    try:
        return float(text) if "." in text else int(text)
    except ValueError:
        raise ConfigurationError(f"cannot parse min_support {text!r}") from None


def _strategy(flag_value: str) -> str:
    return flag_value.replace("-", "_")


def _parse_generate(value: str, seed: int) -> GeneratorConfig:
    parts = value.split(",")
    if len(parts) != 3:
        raise ConfigurationError(
            f"--generate expects N,ITEMS,AVGLEN, got {value!r}"
        )
    try:
        n, items, avg_len = int(parts[0]), int(parts[1]), float(parts[2])
    except ValueError:
        raise ConfigurationError(f"cannot parse --generate value {value!r}") from None
    return GeneratorConfig(
        num_transactions=n, num_items=items, avg_transaction_len=avg_len, seed=seed
    )


def _generate_label(config: GeneratorConfig) -> str:
    return (
        f"generated(n={config.num_transactions},items={config.num_items},"
        f"avg_len={config.avg_transaction_len:g},seed={config.seed})"
    )


def _load_single(args: argparse.Namespace) -> tuple[TransactionDb, str]:
    if (args.input is None) == (args.generate is None):
        raise ConfigurationError("exactly one of --input or --generate is required")
    if args.input is not None:
        return load_transactions(args.input, args.delimiter), args.input
    config = _parse_generate(args.generate, args.seed)
    return generate_synthetic(config), _generate_label(config)


def _load_many(args: argparse.Namespace) -> list[tuple[TransactionDb, str]]:
    if (args.input is None) == (args.generate is None):
        raise ConfigurationError(
            "exactly one source kind is required: --input files or --generate configs"
        )
    if args.input is not None:
        return [(load_transactions(path, args.delimiter), path) for path in args.input]
    out = []
    for value in args.generate:
        config = _parse_generate(value, args.seed)
        out.append((generate_synthetic(config), _generate_label(config)))
    return out


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _dump_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _format_min_support(value: int | float) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def _scan_summary(result: MiningResult) -> str:
    parts = [f"{k}-itemset {v}" for k, v in result.ledger.per_level.items()]
    parts.append(f"total {result.ledger.total}")
    return ", ".join(parts)


def _mine_payload(result: MiningResult, db: TransactionDb, label: str) -> dict:
    return {
        "schema_version": metrics.REPORT_SCHEMA_VERSION,
        "command": "mine",
        "dataset": label,
        "num_transactions": len(db),
        "num_items": db.num_items,
        "min_support": result.min_support,
        "min_support_count": result.min_support_count,
        "variant": result.variant,
        "candidate_strategy": result.candidate_strategy,
        "levels": [
            {
                "k": k,
                "itemsets": [
                    {"items": list(db.tokens_of(itemset)), "support": support}
                    for itemset, support in result.levels[k].items()
                ],
            }
            for k in sorted(result.levels)
        ],
        "per_level_scans": {str(k): v for k, v in result.ledger.per_level.items()},
        "total_scans": result.ledger.total,
        "total_frequent_itemsets": result.total_frequent,
    }


def _mine_text(result: MiningResult, db: TransactionDb, label: str) -> str:
    lines = [
        f"dataset: {label} ({len(db)} transactions, {db.num_items} items)",
        (
            f"min_support: {_format_min_support(result.min_support)} "
            f"(count {result.min_support_count})  variant: {result.variant}  "
            f"candidates: {result.candidate_strategy}"
        ),
        "",
    ]
    for k in sorted(result.levels):
        level = result.levels[k]
        lines.append(f"L{k}: {len(level)} itemsets")
        for itemset, support in level.items():
            lines.append(f"  {', '.join(db.tokens_of(itemset))}  (support {support})")
    if result.levels:
        lines.append("")
    lines.append(f"{result.total_frequent} frequent itemsets")
    lines.append(f"transactions scanned: {_scan_summary(result)}")
    return "".join(line + "\n" for line in lines)


def _cmd_mine(args: argparse.Namespace) -> int:
    db, label = _load_single(args)
    result = run_apriori(
        db,
        _parse_min_support(args.min_support),
        variant=args.variant,
        candidate_strategy=_strategy(args.candidates),
        threads=args.threads,
    )
    if args.format == "machine":
        _emit(_dump_json(_mine_payload(result, db, label)))
    else:
        _emit(_mine_text(result, db, label))
    return EXIT_OK


def _rule_line(rule: rules.AssociationRule, db: TransactionDb) -> str:
    left = ", ".join(db.tokens_of(rule.antecedent))
    right = ", ".join(db.tokens_of(rule.consequent))
    return f"{left} => {right} (support {rule.support}, confidence {rule.confidence:.2f})"


def _cmd_rules(args: argparse.Namespace) -> int:
    db, label = _load_single(args)
    result = run_apriori(
        db,
        _parse_min_support(args.min_support),
        variant=args.variant,
        candidate_strategy=_strategy(args.candidates),
        threads=args.threads,
    )
    found = rules.generate_rules(result, args.min_confidence)
    if args.format == "machine":
        payload = _mine_payload(result, db, label)
        payload["command"] = "rules"
        payload["min_confidence"] = args.min_confidence
        payload["rules"] = [
            {
                "antecedent": list(db.tokens_of(rule.antecedent)),
                "consequent": list(db.tokens_of(rule.consequent)),
                "support": rule.support,
                "confidence": rule.confidence,
            }
            for rule in found
        ]
        _emit(_dump_json(payload))
        return EXIT_OK
    lines = [
        f"dataset: {label} ({len(db)} transactions, {db.num_items} items)",
        (
            f"min_support: {_format_min_support(result.min_support)} "
            f"(count {result.min_support_count})  min_confidence: {args.min_confidence:g}"
        ),
        f"{len(found)} rules",
    ]
    lines.extend(_rule_line(rule, db) for rule in found)
    _emit("".join(line + "\n" for line in lines))
    return EXIT_OK


def _compare_on(
    db: TransactionDb,
    label: str,
    min_support: int | float,
    strategy: str,
    reps: int,
    threads: int,
) -> ComparisonReport:
    def runner(variant: str):
        return lambda: run_apriori(
            db, min_support, variant=variant, candidate_strategy=strategy, threads=threads
        )

    classic, classic_wall = metrics.median_seconds(runner("classic"), reps)
    improved, improved_wall = metrics.median_seconds(runner("improved"), reps)
    return ComparisonReport(
        classic_ledger=classic.ledger,
        classic_timing=RunTiming("classic", label, min_support, classic_wall),
        improved_ledger=improved.ledger,
        improved_timing=RunTiming("improved", label, min_support, improved_wall),
        candidate_strategy=strategy,
        min_support_count=classic.min_support_count,
    )


def _cmd_compare(args: argparse.Namespace) -> int:
    if args.reps < 0:
        raise ConfigurationError("--reps must be non-negative")
    db, label = _load_single(args)
    report = _compare_on(
        db,
        label,
        _parse_min_support(args.min_support),
        _strategy(args.candidates),
        args.reps,
        args.threads,
    )
    _emit(metrics.render_report(report, args.format))
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.reps < 1:
        raise ConfigurationError("--reps must be at least 1 for bench")
    sources = _load_many(args)
    min_support = _parse_min_support(args.min_support)
    strategy = _strategy(args.candidates)
    reports = [
        _compare_on(db, label, min_support, strategy, args.reps, args.threads)
        for db, label in sources
    ]
    time_rates = [r.reduction_rate_percent for r in reports]
    scan_rates = [r.scan_reduction_percent for r in reports if r.scan_reduction_percent is not None]
    mean_time = metrics.mean_rate(time_rates)
    mean_scan = metrics.mean_rate(scan_rates) if scan_rates else None
    if args.format == "machine":
        payload = {
            "schema_version": metrics.REPORT_SCHEMA_VERSION,
            "command": "bench",
            "min_support": min_support,
            "candidate_strategy": strategy,
            "repetitions": args.reps,
            "datasets": [
                {
                    "dataset": report.dataset,
                    "min_support_count": report.min_support_count,
                    "classic": {
                        "per_level_scans": {
                            str(k): v for k, v in report.classic_ledger.per_level.items()
                        },
                        "total_scans": report.classic_ledger.total,
                        "wall_seconds": report.classic_timing.wall_seconds,
                    },
                    "improved": {
                        "per_level_scans": {
                            str(k): v for k, v in report.improved_ledger.per_level.items()
                        },
                        "total_scans": report.improved_ledger.total,
                        "wall_seconds": report.improved_timing.wall_seconds,
                    },
                    "reduction_rate_percent": report.reduction_rate_percent,
                    "scan_reduction_percent": report.scan_reduction_percent,
                }
                for report in reports
            ],
            "mean_reduction_rate_percent": mean_time,
            "mean_scan_reduction_percent": mean_scan,
        }
        _emit(_dump_json(payload))
        return EXIT_OK
    width = max(len("dataset"), max(len(r.dataset) for r in reports)) + 2
    lines = [
        (
            f"min_support: {_format_min_support(min_support)}  candidates: {strategy}  "
            f"reps: {args.reps}"
        ),
        "",
        f"{'dataset':<{width}}{'classic (s)':>14}{'improved (s)':>14}{'reduction (%)':>15}",
    ]
    for report in reports:
        rate = report.reduction_rate_percent
        lines.append(
            f"{report.dataset:<{width}}"
            f"{report.classic_timing.wall_seconds:>14.6f}"
            f"{report.improved_timing.wall_seconds:>14.6f}"
            f"{round_percent(rate):>15.2f}"
        )
    lines.append("")
    lines.append(f"mean reduction rate: {round_percent(mean_time):.2f}%")
    if mean_scan is not None:
        lines.append(f"mean scan reduction rate: {round_percent(mean_scan):.2f}%")
    _emit("".join(line + "\n" for line in lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
