"""Record ingestion: JSONL and CSV parsing, validation, filtering, writing.

Two record stream formats are supported and round-trip into identical
analysis results:

JSONL, one object per line::

    {"id": "p1", "year": 2016, "doc_type": "article",
     "subjects": ["PHYS"], "authors": [{"countries": ["IN", "US"]}]}

CSV with the exact header ``id,year,doc_type,subjects,author_countries``,
subjects separated by ``;``, authors by ``|``, and countries within one
author by ``+``. An author with no resolvable country is written as the
literal ``ZZ``::

    id,year,doc_type,subjects,author_countries
    p1,2016,article,PHYS;CHEM,IN+US|GB|ZZ

Malformed rows are rejected individually and listed in the validation
report; only a broken header is fatal.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from .errors import SchemaError
from .model import (
    AuthorRef,
    Corpus,
    DocType,
    EMPTY_SCHEME,
    PublicationRecord,
    SubjectScheme,
    UNRESOLVED,
    is_country_code,
    normalize_country,
)

CSV_HEADER = ["id", "year", "doc_type", "subjects", "author_countries"]
AGGREGATE_HEADER = ["country", "wc", "fc", "icp"]
GROUP_RANKS_HEADER = ["country", "group", "tp", "rank"]

DEFAULT_DOC_TYPES = frozenset(
    {DocType.ARTICLE, DocType.REVIEW, DocType.CONFERENCE_PAPER}
)
"""Document types kept by the default analysis filter."""

_WIRE_DOC_TYPES = {d.value: d for d in DocType}


@dataclass
class ValidationReport(object):
    """Outcome of parsing a record stream.

    ``errors`` and ``warnings`` are ``(record_ref, message)`` pairs where
    ``record_ref`` is the record id when available and a ``line N`` / ``row N``
    marker otherwise. Accepted plus rejected always equals the number of
    non-blank input records.
    """

    errors: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[tuple[str, str]] = field(default_factory=list)
    records_accepted: int = 0
    records_rejected: int = 0

    @property
    def ok(self) -> bool:
        return not self.errors


def _as_lines(source: str | Iterable[str]) -> list[str]:
    if isinstance(source, str):
        return source.splitlines()
    return [line.rstrip("\n").rstrip("\r") for line in source]


def _take_doc_type(raw: Any, ref: str, report: ValidationReport) -> DocType:
    # unknown or missing types degrade to OTHER with a warning: they are
    # representable, just excluded by the default analysis filter
    if raw is None or raw == "":
        report.warnings.append((ref, "missing doc_type; treated as 'other'"))
        return DocType.OTHER
    if not isinstance(raw, str):
        report.warnings.append((ref, f"doc_type {raw!r} is not a string; treated as 'other'"))
        return DocType.OTHER
    dt = _WIRE_DOC_TYPES.get(raw.strip().lower())
    if dt is None:
        report.warnings.append((ref, f"unknown doc_type {raw!r}; treated as 'other'"))
        return DocType.OTHER
    return dt


def _take_authors(
    raw_sets: list[list[str]], ref: str, report: ValidationReport
) -> tuple[AuthorRef, ...]:
    authors = []
    for raw in raw_sets:
        for code in raw:
            norm = normalize_country(code)
            if norm != UNRESOLVED and not is_country_code(norm):
                report.warnings.append(
                    (ref, f"country {code!r} is not a recognized name or two-letter code")
                )
        author = AuthorRef.from_raw(raw)
        if author.unresolved:
            report.warnings.append(
                (ref, "author with no resolvable country; credited to ZZ")
            )
        authors.append(author)
    return tuple(authors)


def parse_jsonl(
    source: str | Iterable[str],
    *,
    scheme: SubjectScheme | None = None,
    provenance: str = "jsonl",
) -> tuple[Corpus, ValidationReport]:
    """Parse a JSONL record stream.

    Returns the corpus of accepted records plus a validation report. Rows
    missing ``id`` or ``authors`` are rejected; missing ``year``/``doc_type``
    degrade with a warning. Blank lines are ignored.
    """
    report = ValidationReport()
    records: list[PublicationRecord] = []
    seen_ids: set[str] = set()

    for lineno, line in enumerate(_as_lines(source), start=1):
        if not line.strip():
            continue
        ref = f"line {lineno}"
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            report.errors.append((ref, f"malformed JSON: {exc.msg}"))
            report.records_rejected += 1
            continue
        if not isinstance(obj, dict):
            report.errors.append((ref, "record is not a JSON object"))
            report.records_rejected += 1
            continue

        rec_id = obj.get("id")
        if not isinstance(rec_id, str) or not rec_id.strip():
            report.errors.append((ref, "missing or empty id"))
            report.records_rejected += 1
            continue
        rec_id = rec_id.strip()
        ref = rec_id
        if rec_id in seen_ids:
            report.errors.append((ref, "duplicate record id; first occurrence kept"))
            report.records_rejected += 1
            continue

        raw_authors = obj.get("authors")
        if not isinstance(raw_authors, list) or not raw_authors:
            report.errors.append((ref, "missing or empty authors"))
            report.records_rejected += 1
            continue
        raw_sets: list[list[str]] = []
        bad = None
        for entry in raw_authors:
            if not isinstance(entry, dict):
                bad = "author entry is not an object"
                break
            countries = entry.get("countries", [])
            if not isinstance(countries, list) or not all(
                isinstance(c, str) for c in countries
            ):
                bad = "author countries must be a list of strings"
                break
            raw_sets.append(countries)
        if bad is not None:
            report.errors.append((ref, bad))
            report.records_rejected += 1
            continue

        year = obj.get("year")
        if year is None:
            report.warnings.append((ref, "missing year; defaulting to 0"))
            year = 0
        elif isinstance(year, bool) or not isinstance(year, int):
            report.errors.append((ref, f"year {year!r} is not an integer"))
            report.records_rejected += 1
            continue

        raw_subjects = obj.get("subjects", [])
        if not isinstance(raw_subjects, list) or not all(
            isinstance(s, str) for s in raw_subjects
        ):
            report.errors.append((ref, "subjects must be a list of strings"))
            report.records_rejected += 1
            continue

        records.append(
            PublicationRecord(
                id=rec_id,
                year=year,
                doc_type=_take_doc_type(obj.get("doc_type"), ref, report),
                subjects=frozenset(s.strip() for s in raw_subjects if s.strip()),
                authors=_take_authors(raw_sets, ref, report),
            )
        )
        seen_ids.add(rec_id)
        report.records_accepted += 1

    corpus = Corpus(tuple(records), scheme or EMPTY_SCHEME, provenance)
    return corpus, report


def parse_csv(
    source: str | Iterable[str],
    *,
    scheme: SubjectScheme | None = None,
    provenance: str = "csv",
) -> tuple[Corpus, ValidationReport]:
    """Parse the CSV record format; see the module docstring for the layout.

    A header differing from ``id,year,doc_type,subjects,author_countries``
    raises :class:`SchemaError`; row-level problems reject only that row.
    """
    report = ValidationReport()
    records: list[PublicationRecord] = []
    seen_ids: set[str] = set()

    reader = csv.reader(_as_lines(source))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty input: expected a CSV header row") from None
    if [h.strip() for h in header] != CSV_HEADER:
        raise SchemaError(
            f"bad CSV header {header!r}; expected {','.join(CSV_HEADER)}"
        )

    for rownum, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        ref = f"row {rownum}"
        if len(row) != len(CSV_HEADER):
            report.errors.append((ref, f"expected {len(CSV_HEADER)} columns, got {len(row)}"))
            report.records_rejected += 1
            continue
        rec_id, raw_year, raw_doc, raw_subjects, raw_authors = (c.strip() for c in row)
        if not rec_id:
            report.errors.append((ref, "missing or empty id"))
            report.records_rejected += 1
            continue
        ref = rec_id
        if rec_id in seen_ids:
            report.errors.append((ref, "duplicate record id; first occurrence kept"))
            report.records_rejected += 1
            continue

        if not raw_year:
            report.warnings.append((ref, "missing year; defaulting to 0"))
            year = 0
        else:
            try:
                year = int(raw_year)
            except ValueError:
                report.errors.append((ref, f"year {raw_year!r} is not an integer"))
                report.records_rejected += 1
                continue

        if not raw_authors:
            report.errors.append((ref, "missing or empty authors"))
            report.records_rejected += 1
            continue
        raw_sets = [
            [c for c in token.split("+") if c.strip()]
            for token in raw_authors.split("|")
        ]

        subjects = frozenset(s.strip() for s in raw_subjects.split(";") if s.strip())
        records.append(
            PublicationRecord(
                id=rec_id,
                year=year,
                doc_type=_take_doc_type(raw_doc, ref, report),
                subjects=subjects,
                authors=_take_authors(raw_sets, ref, report),
            )
        )
        seen_ids.add(rec_id)
        report.records_accepted += 1

    corpus = Corpus(tuple(records), scheme or EMPTY_SCHEME, provenance)
    return corpus, report


# ---------------------------------------------------------------------------
# writers


def _check_clean(value: str, what: str, reserved: str) -> str:
    for ch in reserved:
        if ch in value:
            raise ValueError(
                f"{what} {value!r} contains reserved delimiter {ch!r}; "
                "cannot be serialized losslessly"
            )
    return value


def to_jsonl(corpus: Corpus) -> str:
    """Serialize a corpus to JSONL, one record per line.

    Subjects and per-author countries are emitted sorted so that equal
    corpora serialize to identical bytes.
    """
    lines = []
    for record in corpus.records:
        obj = {
            "id": record.id,
            "year": record.year,
            "doc_type": record.doc_type.value,
            "subjects": sorted(record.subjects),
            "authors": [{"countries": sorted(a.countries)} for a in record.authors],
        }
        lines.append(json.dumps(obj, separators=(",", ":"), ensure_ascii=False))
    return "".join(line + "\n" for line in lines)


def to_csv(corpus: Corpus) -> str:
    """Serialize a corpus to the CSV record format.

    Unresolved authors are written as the literal ``ZZ``. Subject codes and
    country codes must not contain the ``;``, ``|`` or ``+`` delimiters.
    """
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for record in corpus.records:
        subjects = ";".join(
            _check_clean(s, "subject code", ";|+") for s in sorted(record.subjects)
        )
        authors = "|".join(
            "+".join(_check_clean(c, "country code", ";|+") for c in sorted(a.countries))
            or UNRESOLVED
            for a in record.authors
        )
        writer.writerow(
            [record.id, record.year, record.doc_type.value, subjects, authors]
        )
    return buf.getvalue()


# ---------------------------------------------------------------------------
# filtering


def apply_filter(
    corpus: Corpus,
    years: Iterable[int] | None = None,
    doc_types: Iterable[DocType] | None = None,
) -> Corpus:
    """Restrict a corpus to the given years and document types.

    An empty or ``None`` dimension means no constraint on it. Record order
    is preserved and the scheme/provenance carry over.
    """
    year_set = set(years) if years else None
    type_set = set(doc_types) if doc_types else None
    kept = tuple(
        r
        for r in corpus.records
        if (year_set is None or r.year in year_set)
        and (type_set is None or r.doc_type in type_set)
    )
    return Corpus(kept, corpus.scheme, corpus.provenance)


# ---------------------------------------------------------------------------
# aggregate fixture schemas


@dataclass(frozen=True)
class CountryAggregate(object):
    """One row of a ``country,wc,fc,icp`` aggregate table."""

    country: str
    wc: float
    fc: float
    icp: int


@dataclass(frozen=True)
class GroupRankRow(object):
    """One row of a ``country,group,tp,rank`` table."""

    country: str
    group: str
    tp: float
    rank: float


def _strict_rows(
    source: str | Iterable[str], expected_header: list[str]
) -> Iterable[list[str]]:
    reader = csv.reader(_as_lines(source))
    try:
        header = next(reader)
    except StopIteration:
        raise SchemaError("empty input: expected a CSV header row") from None
    if [h.strip() for h in header] != expected_header:
        raise SchemaError(
            f"bad header {header!r}; expected {','.join(expected_header)}"
        )
    for rownum, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(expected_header):
            raise SchemaError(
                f"row {rownum}: expected {len(expected_header)} columns, got {len(row)}"
            )
        yield row


def parse_aggregate_csv(source: str | Iterable[str]) -> list[CountryAggregate]:
    """Parse a ``country,wc,fc,icp`` table. Any malformed row is fatal."""
    out = []
    for row in _strict_rows(source, AGGREGATE_HEADER):
        country, wc, fc, icp = (c.strip() for c in row)
        try:
            out.append(CountryAggregate(country, float(wc), float(fc), int(icp)))
        except ValueError as exc:
            raise SchemaError(f"bad aggregate row for {country!r}: {exc}") from None
    return out


def parse_group_ranks_csv(source: str | Iterable[str]) -> list[GroupRankRow]:
    """Parse a ``country,group,tp,rank`` table. Any malformed row is fatal."""
    out = []
    for row in _strict_rows(source, GROUP_RANKS_HEADER):
        country, group, tp, rank = (c.strip() for c in row)
        try:
            out.append(GroupRankRow(country, group, float(tp), float(rank)))
        except ValueError as exc:
            raise SchemaError(f"bad rank row for {country!r}/{group!r}: {exc}") from None
    return out
