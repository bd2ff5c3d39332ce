"""Publication corpus model: record parsing, validation and region mapping.

Input corpora are UTF-8 files with one JSON object per line::

    {"id": "p1", "year": 2010, "subjects": ["PHYS"], "countries": ["NL", "ES"]}

Unknown extra fields are ignored. Country identities are alpha-2 codes;
any free-text -> code resolution happens upstream of this module.
"""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass, replace
from typing import Iterable, Iterator

log = logging.getLogger(__name__)

DEFAULT_YEAR_WINDOW = (1900, 2100)

# defect-handling actions
SKIP = "skip"
FAIL = "fail"
KEEP = "keep"

# defect categories carried by RecordError
MALFORMED = "malformed"
MISSING_COUNTRY = "missing_country"
MISSING_SUBJECT = "missing_subject"

_COUNTRY_CODE = re.compile(r"^[A-Z]{2}$")


class CorpusError(Exception):
    """A corpus defect escalated by a fail-fast validation policy."""


class RegionMapError(Exception):
    """The region mapping file is unreadable or inconsistent."""


class RecordError(ValueError):
    """One input line could not be parsed into a valid record."""

    def __init__(self, message: str, line_no: int | None = None,
                 category: str = MALFORMED):
        self.line_no = line_no
        self.category = category
        prefix = f"line {line_no}: " if line_no is not None else ""
        super().__init__(prefix + message)


def normalize_country(code: str) -> str:
    """Normalize a country identifier to upper-case form (idempotent)."""
    return code.strip().upper()


@dataclass(frozen=True)
class PublicationRecord:
    """One publication: identifier, year, subject codes, author countries."""

    id: str
    year: int
    subjects: frozenset[str]
    countries: frozenset[str]


def parse_record(line: str, line_no: int | None = None) -> PublicationRecord:
    """Parse one JSON line into a :class:`PublicationRecord`.

    Country codes are normalized to upper case and deduplicated; subject
    codes are stripped and deduplicated. Key order in the input object is
    irrelevant. Raises :class:`RecordError` with ``category`` set to
    ``malformed``, ``missing_country`` or ``missing_subject``.
    """
    if not line.strip():
        raise RecordError("blank line", line_no)
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(f"invalid JSON: {exc.msg}", line_no) from exc
    if not isinstance(obj, dict):
        raise RecordError("record is not a JSON object", line_no)

    rec_id = obj.get("id")
    if not isinstance(rec_id, str) or not rec_id:
        raise RecordError("missing or invalid field 'id'", line_no)

    year = obj.get("year")
    if isinstance(year, bool) or not isinstance(year, int):
        raise RecordError("missing or invalid field 'year'", line_no)

    raw_subjects = obj.get("subjects")
    if raw_subjects is None:
        raise RecordError("missing field 'subjects'", line_no, MISSING_SUBJECT)
    if not isinstance(raw_subjects, list):
        raise RecordError("field 'subjects' is not an array", line_no)
    subjects = set()
    for item in raw_subjects:
        if not isinstance(item, str):
            raise RecordError("subject codes must be strings", line_no)
        code = item.strip()
        if not code:
            raise RecordError("empty subject code", line_no)
        subjects.add(code)
    if not subjects:
        raise RecordError("empty subjects", line_no, MISSING_SUBJECT)

    raw_countries = obj.get("countries")
    if raw_countries is None:
        raise RecordError("missing field 'countries'", line_no, MISSING_COUNTRY)
    if not isinstance(raw_countries, list):
        raise RecordError("field 'countries' is not an array", line_no)
    countries = set()
    for item in raw_countries:
        if not isinstance(item, str):
            raise RecordError("country codes must be strings", line_no)
        code = normalize_country(item)
        if not _COUNTRY_CODE.match(code):
            raise RecordError(f"invalid country code {item!r}", line_no)
        countries.add(code)
    if not countries:
        raise RecordError("empty countries", line_no, MISSING_COUNTRY)

    return PublicationRecord(rec_id, year, frozenset(subjects),
                             frozenset(countries))


def record_to_line(record: PublicationRecord) -> str:
    """Serialize a record to its canonical one-line JSON form."""
    return json.dumps(
        {
            "id": record.id,
            "year": record.year,
            "subjects": sorted(record.subjects),
            "countries": sorted(record.countries),
        },
        separators=(",", ":"),
    )


@dataclass
class CorpusStats:
    """Validation counters for one pass over a corpus.

    Stats merge field-wise (``a + b``), so shard-local counters from a
    partitioned scan combine in any order. The accounting identity
    ``accepted + sum(skipped_*) == total_lines`` holds for every input.
    """

    total_lines: int = 0
    accepted: int = 0
    skipped_missing_country: int = 0
    skipped_missing_subject: int = 0
    skipped_unmapped_country: int = 0
    skipped_malformed: int = 0
    year_min: int | None = None
    year_max: int | None = None

    @property
    def skipped_total(self) -> int:
        return (self.skipped_missing_country + self.skipped_missing_subject
                + self.skipped_unmapped_country + self.skipped_malformed)

    @property
    def year_range(self) -> tuple[int, int] | None:
        if self.year_min is None:
            return None
        return (self.year_min, self.year_max)

    def balanced(self) -> bool:
        return self.accepted + self.skipped_total == self.total_lines

    def observe_year(self, year: int) -> None:
        self.year_min = year if self.year_min is None else min(self.year_min, year)
        self.year_max = year if self.year_max is None else max(self.year_max, year)

    def merge(self, other: "CorpusStats") -> "CorpusStats":
        def lo(a, b):
            return b if a is None else (a if b is None else min(a, b))

        def hi(a, b):
            return b if a is None else (a if b is None else max(a, b))

        return CorpusStats(
            total_lines=self.total_lines + other.total_lines,
            accepted=self.accepted + other.accepted,
            skipped_missing_country=(self.skipped_missing_country
                                     + other.skipped_missing_country),
            skipped_missing_subject=(self.skipped_missing_subject
                                     + other.skipped_missing_subject),
            skipped_unmapped_country=(self.skipped_unmapped_country
                                      + other.skipped_unmapped_country),
            skipped_malformed=self.skipped_malformed + other.skipped_malformed,
            year_min=lo(self.year_min, other.year_min),
            year_max=hi(self.year_max, other.year_max),
        )

    __add__ = merge

    def as_dict(self) -> dict:
        return {
            "total_lines": self.total_lines,
            "accepted": self.accepted,
            "skipped_missing_country": self.skipped_missing_country,
            "skipped_missing_subject": self.skipped_missing_subject,
            "skipped_unmapped_country": self.skipped_unmapped_country,
            "skipped_malformed": self.skipped_malformed,
            "year_range": list(self.year_range) if self.year_range else None,
        }


@dataclass(frozen=True)
class ValidationPolicy:
    """Per-defect-class handling: ``skip`` (count and drop) or ``fail``.

    Unmapped countries additionally support ``keep``: accept the record and
    let downstream stages put it in an unknown-region bucket. Records whose
    year falls outside ``year_window`` count as malformed (the window bounds
    plausible calendar years, not the analysis period).
    """

    malformed: str = SKIP
    missing_country: str = SKIP
    missing_subject: str = SKIP
    unmapped_country: str = SKIP
    year_window: tuple[int, int] = DEFAULT_YEAR_WINDOW

    @classmethod
    def fail_fast(cls) -> "ValidationPolicy":
        return cls(malformed=FAIL, missing_country=FAIL,
                   missing_subject=FAIL, unmapped_country=FAIL)

    def with_unmapped(self, action: str) -> "ValidationPolicy":
        return replace(self, unmapped_country=action)


def iter_accepted(lines: Iterable[str], region_map: "RegionMap | None" = None,
                  policy: ValidationPolicy | None = None,
                  stats: CorpusStats | None = None,
                  ) -> Iterator[PublicationRecord]:
    """Yield validated records from an iterable of JSON lines.

    ``stats`` is updated in place while the stream is consumed, so callers
    that stop early still get exact counters for the consumed prefix.
    Parsing is pure per line; the stream may be partitioned arbitrarily and
    the per-shard stats merged afterwards.
    """
    policy = policy or ValidationPolicy()
    stats = stats if stats is not None else CorpusStats()
    lo, hi = policy.year_window
    for line_no, line in enumerate(lines, start=1):
        stats.total_lines += 1
        try:
            record = parse_record(line, line_no)
        except RecordError as exc:
            if getattr(policy, exc.category) == FAIL:
                raise CorpusError(str(exc)) from exc
            if exc.category == MISSING_COUNTRY:
                stats.skipped_missing_country += 1
            elif exc.category == MISSING_SUBJECT:
                stats.skipped_missing_subject += 1
            else:
                stats.skipped_malformed += 1
            continue
        if not lo <= record.year <= hi:
            message = (f"line {line_no}: year {record.year} outside accepted "
                       f"window {lo}-{hi}")
            if policy.malformed == FAIL:
                raise CorpusError(message)
            stats.skipped_malformed += 1
            continue
        if region_map is not None and policy.unmapped_country != KEEP:
            unmapped = sorted(c for c in record.countries if c not in region_map)
            if unmapped:
                if policy.unmapped_country == FAIL:
                    raise CorpusError(
                        f"line {line_no}: unmapped countries {unmapped}")
                stats.skipped_unmapped_country += 1
                continue
        stats.accepted += 1
        stats.observe_year(record.year)
        yield record


def validate_corpus(lines: Iterable[str],
                    region_map: "RegionMap | None" = None,
                    policy: ValidationPolicy | None = None) -> CorpusStats:
    """Run one full validation pass and return the counters."""
    stats = CorpusStats()
    for _ in iter_accepted(lines, region_map, policy, stats):
        pass
    return stats


@dataclass(frozen=True)
class RegionMap:
    """Country code -> region name, loaded from a two-column CSV."""

    entries: dict[str, str]

    def region_of(self, country: str, default: str | None = None) -> str | None:
        return self.entries.get(country, default)

    @property
    def regions(self) -> tuple[str, ...]:
        return tuple(sorted(set(self.entries.values())))

    def __contains__(self, country: str) -> bool:
        return country in self.entries

    def __len__(self) -> int:
        return len(self.entries)


def load_region_map(path) -> RegionMap:
    """Load a ``country,region`` CSV into a :class:`RegionMap`.

    Repeated rows with the same region are tolerated; the same country code
    mapped to two different regions is an error. An empty file yields an
    empty map with a warning.
    """
    entries: dict[str, str] = {}
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None:
                log.warning("region map %s is empty", path)
                return RegionMap({})
            if [cell.strip().lower() for cell in header[:2]] != ["country", "region"]:
                raise RegionMapError(
                    f"{path}: expected header 'country,region', got {header!r}")
            for row_no, row in enumerate(reader, start=2):
                if not row or not any(cell.strip() for cell in row):
                    continue
                if len(row) < 2:
                    raise RegionMapError(f"{path}:{row_no}: expected 2 columns")
                code = normalize_country(row[0])
                region = row[1].strip()
                if not _COUNTRY_CODE.match(code):
                    raise RegionMapError(
                        f"{path}:{row_no}: invalid country code {row[0]!r}")
                if not region:
                    raise RegionMapError(f"{path}:{row_no}: empty region name")
                if code in entries and entries[code] != region:
                    raise RegionMapError(
                        f"{path}:{row_no}: conflicting region for {code}")
                entries[code] = region
    except OSError as exc:
        raise RegionMapError(f"cannot read region map {path}: {exc}") from exc
    if not entries:
        log.warning("region map %s has no entries", path)
    return RegionMap(entries)
