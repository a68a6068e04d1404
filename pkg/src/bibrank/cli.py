"""Command-line front end.

One subcommand per pipeline stage::

    bibrank ingest     validate a record stream, report problems
    bibrank count      per-country scores under one counting method
    bibrank collab     collaboration indicators per country
    bibrank rank       ranked country table
    bibrank correlate  rank-correlation matrix across subject slices
    bibrank subjects   per-group counts and ranks in one long table
    bibrank replicate  recompute the bundled reference tables
    bibrank synth      generate a deterministic synthetic corpus

Data goes to stdout (or ``--output``), diagnostics to stderr. Exit codes:
0 success, 1 validation or usage error, 2 I/O error. All configuration is
flags; no environment variables are consulted. Output for a fixed input
and flag set is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

import numpy as np

from . import replication
from .collaboration import ReductionBasis, country_metrics
from .counting import (
    CountMethod,
    FractionalMode,
    ScoreTable,
    fractional_count,
    slice_corpus,
    subject_group_count,
    whole_count,
)
from .errors import SchemaError, UndefinedInputError, UnknownGroupError
from .ingest import (
    DEFAULT_DOC_TYPES,
    ValidationReport,
    apply_filter,
    parse_csv,
    parse_jsonl,
    to_csv,
    to_jsonl,
)
from .model import ALL_FIELDS, Corpus, DocType, SubjectScheme, EMPTY_SCHEME
from .rankstats import assign_ranks, pearson, spearman, srcc_matrix
from .synth import SynthParams, generate
from .tables import FORMATS, write_table


class UsageError(Exception):
    """Bad flags or arguments; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage problems; the contract here reserves 2 for
    # I/O, so route usage failures through the normal error path instead
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


# ---------------------------------------------------------------------------
# shared plumbing


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)


def _sniff_format(path: str, text: str) -> str:
    if path.endswith(".csv"):
        return "csv"
    if path.endswith(".jsonl") or path.endswith(".json"):
        return "jsonl"
    for line in text.splitlines():
        if line.strip():
            return "jsonl" if line.lstrip()[0] in "{[" else "csv"
    return "jsonl"


def _load_scheme(path: str | None) -> SubjectScheme:
    if path is None:
        return EMPTY_SCHEME
    with open(path, "r", encoding="utf-8") as f:
        raw = json.load(f)
    if not isinstance(raw, dict) or not all(
        isinstance(k, str)
        and isinstance(v, list)
        and all(isinstance(c, str) for c in v)
        for k, v in raw.items()
    ):
        raise SchemaError("scheme file must map group names to arrays of subject codes")
    return SubjectScheme({k: frozenset(v) for k, v in raw.items()})


def _parse_years(arg: str | None) -> set[int] | None:
    if arg is None:
        return None
    try:
        return {int(tok) for tok in arg.split(",") if tok.strip()}
    except ValueError:
        raise UsageError(f"--years expects comma-separated integers, got {arg!r}")


def _parse_doc_types(arg: str) -> set[DocType] | None:
    if arg == "all":
        return None
    if arg == "default":
        return set(DEFAULT_DOC_TYPES)
    wire = {d.value: d for d in DocType}
    out = set()
    for tok in arg.split(","):
        tok = tok.strip()
        if tok not in wire:
            raise UsageError(
                f"unknown doc type {tok!r}; expected names from "
                f"{sorted(wire)}, 'default' or 'all'"
            )
        out.add(wire[tok])
    return out


def _load_corpus(args: argparse.Namespace) -> tuple[Corpus, ValidationReport]:
    text = _read_input(args.input)
    fmt = args.input_format
    if fmt == "auto":
        fmt = _sniff_format(args.input, text)
    scheme = _load_scheme(args.scheme)
    parse = parse_jsonl if fmt == "jsonl" else parse_csv
    corpus, report = parse(text, scheme=scheme, provenance=args.input)
    for ref, message in report.errors:
        print(f"error: {ref}: {message}", file=sys.stderr)
    return corpus, report


def _filtered_corpus(args: argparse.Namespace) -> Corpus:
    corpus, report = _load_corpus(args)
    if not report.ok:
        raise UsageError(
            f"{len(report.errors)} record error(s) in {args.input}; "
            "run 'bibrank ingest' for the full report"
        )
    return apply_filter(
        corpus, _parse_years(args.years), _parse_doc_types(args.doc_types)
    )


def _add_io_flags(p: argparse.ArgumentParser, corpus_input: bool = True) -> None:
    if corpus_input:
        p.add_argument("--input", required=True, help="record stream path, or - for stdin")
        p.add_argument(
            "--input-format",
            choices=["auto", "jsonl", "csv"],
            default="auto",
            help="input layout; auto sniffs from the extension or first line",
        )
        p.add_argument("--scheme", help="JSON file mapping group names to subject codes")
    p.add_argument("--output", help="output path; default stdout")
    p.add_argument("--format", choices=list(FORMATS), default="csv", help="table format")


def _add_filter_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--years", help="comma-separated publication years to keep")
    p.add_argument(
        "--doc-types",
        default="default",
        help="comma-separated doc types to keep, 'default' "
        "(article,review,conference_paper) or 'all'",
    )


def _add_method_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--method", choices=["whole", "fractional"], default="whole", help="counting method"
    )
    p.add_argument(
        "--mode",
        choices=[m.value for m in FractionalMode],
        default="author",
        help="fractional credit split (ignored for whole counting)",
    )


def _count_table(corpus: Corpus, args: argparse.Namespace) -> ScoreTable:
    if args.method == "whole":
        return whole_count(corpus)
    return fractional_count(corpus, FractionalMode(args.mode))


def _score_decimals(method: CountMethod) -> int | None:
    return 0 if method is CountMethod.WHOLE else 2


# ---------------------------------------------------------------------------
# subcommands


def _cmd_ingest(args: argparse.Namespace) -> int:
    corpus, report = _load_corpus(args)
    if args.emit == "jsonl":
        _write_output(to_jsonl(corpus), args.output)
    elif args.emit == "csv":
        _write_output(to_csv(corpus), args.output)
    else:
        rows = [["error", ref, msg] for ref, msg in report.errors]
        rows += [["warning", ref, msg] for ref, msg in report.warnings]
        _write_output(
            write_table(["severity", "record", "message"], rows, args.format),
            args.output,
        )
    print(
        f"accepted {report.records_accepted}, rejected {report.records_rejected}, "
        f"{len(report.errors)} error(s), {len(report.warnings)} warning(s)",
        file=sys.stderr,
    )
    return 0 if report.ok else 1


def _cmd_count(args: argparse.Namespace) -> int:
    corpus = _filtered_corpus(args)
    if args.group:
        corpus = slice_corpus(corpus, args.group)
    table = _count_table(corpus, args)
    rows = [[c, table.scores[c]] for c in table.countries(include_unresolved=True)]
    text = write_table(
        ["country", table.method.value],
        rows,
        args.format,
        precision=[None, _score_decimals(table.method)],
    )
    _write_output(text, args.output)
    print(f"{table.records_counted} records counted", file=sys.stderr)
    return 0


def _cmd_collab(args: argparse.Namespace) -> int:
    corpus = _filtered_corpus(args)
    basis = ReductionBasis.FC_BASIS if args.basis == "fc" else ReductionBasis.WC_BASIS
    metrics = country_metrics(corpus, basis, FractionalMode(args.mode))
    rows = [
        [m.country, m.wc, m.fc, m.icp, m.icp_pct, m.reduction_pct, m.ratio]
        for m in metrics
    ]
    text = write_table(
        ["country", "wc", "fc", "icp", "icp_pct", "reduction_pct", "ratio"],
        rows,
        args.format,
        precision=[None, 0, 2, 0, 1, 1, 2],
    )
    _write_output(text, args.output)
    return 0


def _cmd_rank(args: argparse.Namespace) -> int:
    corpus = _filtered_corpus(args)
    if args.group:
        corpus = slice_corpus(corpus, args.group)
    table = _count_table(corpus, args)
    ranked = assign_ranks(table, include_unresolved=args.include_unresolved)
    rows = [[e.rank, e.country, e.score, e.tie_rank] for e in ranked.entries]
    text = write_table(
        ["rank", "country", "score", "tie_rank"],
        rows,
        args.format,
        precision=[None, None, _score_decimals(table.method), 1],
    )
    _write_output(text, args.output)
    return 0


def _slice_tables(corpus: Corpus, args: argparse.Namespace) -> dict[str, ScoreTable]:
    method = (
        CountMethod.WHOLE
        if args.method == "whole"
        else (
            CountMethod.FRACTIONAL_AUTHOR
            if args.mode == "author"
            else CountMethod.FRACTIONAL_COUNTRY
        )
    )
    names = [tok.strip() for tok in args.slices.split(",") if tok.strip()]
    if not names:
        raise UsageError("--slices must name at least one subject group")
    groups = [ALL_FIELDS if n.lower() == "all" else n for n in names]
    return subject_group_count(corpus, method, groups)


def _cmd_correlate(args: argparse.Namespace) -> int:
    corpus = _filtered_corpus(args)
    tables = _slice_tables(corpus, args)
    labels = list(tables.keys())
    if args.stat == "spearman":
        matrix = srcc_matrix(tables)
        values = matrix.values
        countries = matrix.countries
    else:
        common: set[str] = set(next(iter(tables.values())).countries())
        for t in tables.values():
            common &= set(t.countries())
        countries = tuple(sorted(common))
        if len(countries) < 2:
            raise UndefinedInputError("correlation needs at least two shared countries")
        values = np.eye(len(labels))
        for i in range(len(labels)):
            for j in range(i + 1, len(labels)):
                values[i, j] = values[j, i] = pearson(
                    [tables[labels[i]].score(c) for c in countries],
                    [tables[labels[j]].score(c) for c in countries],
                )
    rows = [[label, *[float(v) for v in values[i]]] for i, label in enumerate(labels)]
    text = write_table(
        ["group", *labels],
        rows,
        args.format,
        precision=[None] + [3] * len(labels),
    )
    _write_output(text, args.output)
    print(f"correlated over {len(countries)} countries", file=sys.stderr)
    return 0


def _cmd_subjects(args: argparse.Namespace) -> int:
    corpus = _filtered_corpus(args)
    method = (
        CountMethod.WHOLE
        if args.method == "whole"
        else (
            CountMethod.FRACTIONAL_AUTHOR
            if args.mode == "author"
            else CountMethod.FRACTIONAL_COUNTRY
        )
    )
    tables = subject_group_count(corpus, method)
    rows: list[list[Any]] = []
    for group, table in tables.items():
        for entry in assign_ranks(table).entries:
            rows.append([entry.country, group, entry.score, entry.rank])
    text = write_table(
        ["country", "group", "tp", "rank"],
        rows,
        args.format,
        precision=[None, None, _score_decimals(method), None],
    )
    _write_output(text, args.output)
    return 0


def _cmd_replicate(args: argparse.Namespace) -> int:
    fixtures = replication.load_fixtures()
    target = args.target

    if target == "table2":
        report = replication.replicate_table2(fixtures)
        rows = []
        for row in report.rows:
            c, p = row.computed, row.printed
            rows.append(
                [
                    c.country,
                    c.reduction_pct,
                    c.icp_pct,
                    c.ratio,
                    p.reduction_pct,
                    p.icp_pct,
                    p.ratio,
                    "yes" if row.within_tolerance else "no",
                ]
            )
        text = write_table(
            [
                "country",
                "reduction_pct",
                "icp_pct",
                "ratio",
                "printed_reduction_pct",
                "printed_icp_pct",
                "printed_ratio",
                "within_tolerance",
            ],
            rows,
            args.format,
            precision=[None, 1, 1, 2, 1, 1, 2, None],
        )
        passed = report.passed
    elif target == "correlations":
        report = replication.replicate_rank_correlations(fixtures)
        rows = [
            [
                c.name,
                c.computed,
                c.expected_low,
                c.expected_high,
                "yes" if c.within_tolerance else "no",
                c.note,
            ]
            for c in report.coefficients
        ]
        text = write_table(
            ["name", "computed", "expected_low", "expected_high", "within_tolerance", "note"],
            rows,
            args.format,
            precision=[None, 3, 3, 3, None, None],
        )
        passed = report.passed
    elif target == "table4":
        report = replication.replicate_table4(fixtures)
        rows = [
            [
                cell.row_group,
                cell.col_group,
                cell.computed,
                cell.printed,
                cell.delta,
                cell.avg_rank_spearman,
                "yes" if cell.delta > replication.TOL_CELL else "no",
            ]
            for cell in report.cells
        ]
        text = write_table(
            [
                "row_group",
                "col_group",
                "computed",
                "printed",
                "delta",
                "avg_rank_spearman",
                "outlier",
            ],
            rows,
            args.format,
            precision=[None, None, 3, 3, 3, 3, None],
        )
        passed = report.passed
    elif target == "fig1":
        curves = replication.fig1_curves(fixtures)
        rows = [["reduction_pct", c, v] for c, v in curves.reduction_series]
        rows += [["icp_pct", c, v] for c, v in curves.icp_series]
        text = write_table(
            ["series", "country", "value"], rows, args.format, precision=[None, None, 1]
        )
        passed = True
    else:
        t2 = replication.replicate_table2(fixtures)
        rc = replication.replicate_rank_correlations(fixtures)
        t4 = replication.replicate_table4(fixtures)
        rows = [
            ["table2", "yes" if t2.passed else "no", f"{len(t2.failures)} rows out of tolerance"],
            [
                "correlations",
                "yes" if rc.passed else "no",
                "; ".join(f"{c.name}={c.computed:.3f}" for c in rc.coefficients),
            ],
            [
                "table4",
                "yes" if t4.passed else "no",
                f"{len(t4.outliers)} of {len(t4.cells)} cells beyond per-cell tolerance",
            ],
        ]
        text = write_table(["target", "passed", "detail"], rows, args.format)
        passed = t2.passed and rc.passed and t4.passed

    _write_output(text, args.output)
    if not passed:
        print(f"replication target {target!r} outside tolerance", file=sys.stderr)
    return 0 if passed else 1


def _parse_weights(arg: str | None) -> dict[str, float] | None:
    if arg is None:
        return None
    weights = {}
    for tok in arg.split(","):
        tok = tok.strip()
        if not tok:
            continue
        code, sep, value = tok.partition(":")
        if not sep:
            raise UsageError(f"--countries expects CODE:WEIGHT pairs, got {tok!r}")
        try:
            weights[code.strip()] = float(value)
        except ValueError:
            raise UsageError(f"bad weight {value!r} for {code.strip()!r}")
    if not weights:
        raise UsageError("--countries must name at least one country")
    return weights


def _cmd_synth(args: argparse.Namespace) -> int:
    weights = _parse_weights(args.countries)
    kwargs: dict[str, Any] = dict(
        seed=args.seed,
        n_records=args.n_records,
        authors_min=args.authors_min,
        authors_max=args.authors_max,
        collab_prob=args.collab_prob,
        subjects_min=args.subjects_min,
        subjects_max=args.subjects_max,
        year=args.year,
    )
    if weights is not None:
        kwargs["country_weights"] = weights
    if args.subject_pool is not None:
        pool = tuple(tok.strip() for tok in args.subject_pool.split(",") if tok.strip())
        if not pool:
            raise UsageError("--subject-pool must name at least one subject code")
        kwargs["subject_pool"] = pool
    try:
        params = SynthParams(**kwargs)
    except ValueError as exc:
        raise UsageError(str(exc))
    corpus = generate(params)
    _write_output(to_jsonl(corpus), args.output)
    print(f"generated {len(corpus)} records (seed {args.seed})", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bibrank", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate a record stream and report problems")
    _add_io_flags(p)
    p.add_argument(
        "--emit",
        choices=["report", "jsonl", "csv"],
        default="report",
        help="emit the validation report or re-serialize the accepted records",
    )
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("count", help="per-country scores under one counting method")
    _add_io_flags(p)
    _add_filter_flags(p)
    _add_method_flags(p)
    p.add_argument("--group", help="restrict to one subject group before counting")
    p.set_defaults(func=_cmd_count)

    p = sub.add_parser("collab", help="collaboration indicators per country")
    _add_io_flags(p)
    _add_filter_flags(p)
    p.add_argument(
        "--basis",
        choices=["fc", "wc"],
        default="fc",
        help="denominator for reduction_pct: (wc-fc)/fc or (wc-fc)/wc",
    )
    p.add_argument(
        "--mode",
        choices=[m.value for m in FractionalMode],
        default="author",
        help="fractional credit split",
    )
    p.set_defaults(func=_cmd_collab)

    p = sub.add_parser("rank", help="ranked country table")
    _add_io_flags(p)
    _add_filter_flags(p)
    _add_method_flags(p)
    p.add_argument("--group", help="restrict to one subject group before ranking")
    p.add_argument(
        "--include-unresolved",
        action="store_true",
        help="rank the ZZ bucket alongside real countries",
    )
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("correlate", help="rank-correlation matrix across subject slices")
    _add_io_flags(p)
    _add_filter_flags(p)
    _add_method_flags(p)
    p.add_argument(
        "--slices",
        required=True,
        help="comma-separated subject groups ('all' for the unrestricted slice)",
    )
    p.add_argument(
        "--stat", choices=["spearman", "pearson"], default="spearman", help="correlation statistic"
    )
    p.set_defaults(func=_cmd_correlate)

    p = sub.add_parser("subjects", help="per-group counts and ranks in one long table")
    _add_io_flags(p)
    _add_filter_flags(p)
    _add_method_flags(p)
    p.set_defaults(func=_cmd_subjects)

    p = sub.add_parser("replicate", help="recompute the bundled reference tables")
    _add_io_flags(p, corpus_input=False)
    p.add_argument(
        "--target",
        choices=["table2", "correlations", "table4", "fig1", "all"],
        default="all",
        help="which derived quantity to recompute",
    )
    p.set_defaults(func=_cmd_replicate)

    p = sub.add_parser("synth", help="generate a deterministic synthetic corpus (JSONL)")
    p.add_argument("--seed", type=int, required=True, help="PRNG seed")
    p.add_argument("--n-records", type=int, required=True, help="number of records")
    p.add_argument("--countries", help="CODE:WEIGHT pairs, comma-separated")
    p.add_argument("--authors-min", type=int, default=1)
    p.add_argument("--authors-max", type=int, default=6)
    p.add_argument("--collab-prob", type=float, default=0.25, help="international share")
    p.add_argument("--subject-pool", help="comma-separated subject codes to draw from")
    p.add_argument("--subjects-min", type=int, default=1)
    p.add_argument("--subjects-max", type=int, default=2)
    p.add_argument("--year", type=int, default=2016)
    p.add_argument("--output", help="output path; default stdout")
    p.set_defaults(func=_cmd_synth)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Execute one invocation; returns the exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return int(args.func(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (SchemaError, UnknownGroupError, UndefinedInputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
