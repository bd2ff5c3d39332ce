"""Per-country disciplinary and partner profiles built by whole counting.

A publication contributes one count per (country, subject) pair and one per
ordered (country, partner) pair; there is no fractionalization. All counts
are integers, so shard-local tables merge exactly and the build is
deterministic for any record order or partitioning.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .classify import CollabKind, CollaborationType, TypeCounts, classify
from .corpus import PublicationRecord

SUBJECT_SPACE = "subject"
PARTNER_SPACE = "partner"

DOMESTIC = "domestic"
INTERNATIONAL = "international"
BIRC = "birc"
MIRC = "mirc"
MEGA = "mega"

DISC_FAMILIES = (DOMESTIC, INTERNATIONAL, BIRC, MIRC, MEGA)
PARTNER_FAMILIES = (INTERNATIONAL, BIRC, MIRC, MEGA)

_FAMILY_BY_KIND = {
    CollabKind.DOMESTIC: DOMESTIC,
    CollabKind.BILATERAL: BIRC,
    CollabKind.MULTILATERAL: MIRC,
    CollabKind.MEGA: MEGA,
}


@dataclass
class Profile:
    """Sparse non-negative count vector over one dimension namespace.

    Zero counts are never stored, so equality means identical support and
    counts. The namespace tag ("subject" or "partner") guards against
    comparing vectors from different key spaces.
    """

    namespace: str
    counts: dict[str, int] = field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def is_empty(self) -> bool:
        return not self.counts

    def increment(self, key: str, by: int = 1) -> None:
        if by < 0:
            raise ValueError("profile counts are non-negative")
        if by:
            self.counts[key] = self.counts.get(key, 0) + by

    def merge(self, other: "Profile") -> "Profile":
        if self.namespace != other.namespace:
            raise ValueError(
                f"namespace mismatch: {self.namespace!r} vs {other.namespace!r}")
        merged = dict(self.counts)
        for key, n in other.counts.items():
            merged[key] = merged.get(key, 0) + n
        return Profile(self.namespace, merged)

    __add__ = merge

    def sorted_items(self) -> list[tuple[str, int]]:
        return sorted(self.counts.items())


@dataclass
class CountryProfileSet:
    """All profiles of one country plus its publication counts.

    ``disciplinary`` holds subject-count profiles per collaboration family
    (domestic, pooled international, birc, mirc, mega); ``partner`` holds
    partner-country counts for the international families. The mega buckets
    stay empty unless the mega class was enabled during classification.
    """

    country: str
    disciplinary: dict[str, Profile]
    partner: dict[str, Profile]
    pub_counts: TypeCounts

    @classmethod
    def empty(cls, country: str) -> "CountryProfileSet":
        return cls(
            country=country,
            disciplinary={f: Profile(SUBJECT_SPACE) for f in DISC_FAMILIES},
            partner={f: Profile(PARTNER_SPACE) for f in PARTNER_FAMILIES},
            pub_counts=TypeCounts(),
        )

    def merge(self, other: "CountryProfileSet") -> "CountryProfileSet":
        if self.country != other.country:
            raise ValueError(
                f"cannot merge profiles of {self.country} and {other.country}")
        return CountryProfileSet(
            country=self.country,
            disciplinary={f: self.disciplinary[f] + other.disciplinary[f]
                          for f in DISC_FAMILIES},
            partner={f: self.partner[f] + other.partner[f]
                     for f in PARTNER_FAMILIES},
            pub_counts=self.pub_counts + other.pub_counts,
        )

    __add__ = merge

    def decomposition_ok(self) -> bool:
        """Check the sum identities: birc + mirc + mega == international for
        both profile families, and the country never partners itself."""
        disc_sum = (self.disciplinary[BIRC] + self.disciplinary[MIRC]
                    + self.disciplinary[MEGA])
        part_sum = self.partner[BIRC] + self.partner[MIRC] + self.partner[MEGA]
        return (disc_sum == self.disciplinary[INTERNATIONAL]
                and part_sum == self.partner[INTERNATIONAL]
                and self.country not in self.partner[INTERNATIONAL].counts)


def accumulate(table: dict[str, CountryProfileSet], record: PublicationRecord,
               ctype: CollaborationType) -> None:
    """Fold one classified record into the per-country table.

    Every listed country gains one count per subject in the family matching
    the collaboration type; international types also feed the pooled
    international family and add one partner count per co-country.
    """
    family = _FAMILY_BY_KIND[ctype.kind]
    international = ctype.is_international
    for country in record.countries:
        ps = table.get(country)
        if ps is None:
            ps = table[country] = CountryProfileSet.empty(country)
        disc = ps.disciplinary[family]
        disc_int = ps.disciplinary[INTERNATIONAL]
        for subject in record.subjects:
            disc.increment(subject)
            if international:
                disc_int.increment(subject)
        if international:
            part = ps.partner[family]
            part_int = ps.partner[INTERNATIONAL]
            for partner in record.countries:
                if partner != country:
                    part.increment(partner)
                    part_int.increment(partner)
        ps.pub_counts.add(record.year, ctype.kind)


@dataclass(frozen=True)
class BuildConfig:
    """Build-time knobs: analysis year slice and the mega class threshold."""

    year_min: int | None = None
    year_max: int | None = None
    mega_threshold: int | None = None

    def keeps(self, year: int) -> bool:
        return ((self.year_min is None or year >= self.year_min)
                and (self.year_max is None or year <= self.year_max))


def build_profiles(records: Iterable[PublicationRecord],
                   config: BuildConfig | None = None,
                   ) -> dict[str, CountryProfileSet]:
    """Single-pass profile build over validated records.

    Records outside the configured year slice are ignored. The result
    covers exactly the countries appearing in the kept records.
    """
    config = config or BuildConfig()
    table: dict[str, CountryProfileSet] = {}
    for record in records:
        if not config.keeps(record.year):
            continue
        accumulate(table, record, classify(record, config.mega_threshold))
    return table


def merge_tables(a: dict[str, CountryProfileSet],
                 b: dict[str, CountryProfileSet],
                 ) -> dict[str, CountryProfileSet]:
    """Merge two per-country tables (parallel-fold combiner).

    Entries present in only one input are shared, not copied; treat the
    inputs as frozen once merged.
    """
    merged = dict(a)
    for country, ps in b.items():
        merged[country] = merged[country] + ps if country in merged else ps
    return merged


def dump_rows(table: dict[str, CountryProfileSet],
              ) -> Iterator[tuple[str, str, str, str, int]]:
    """Profile dump rows (country, family, collab type, dimension, count)
    in lexicographic sort order for deterministic export."""
    for country in sorted(table):
        ps = table[country]
        rows = []
        for family_name, profiles in (("disciplinary", ps.disciplinary),
                                      ("partner", ps.partner)):
            for collab in sorted(profiles):
                for dimension, count in profiles[collab].sorted_items():
                    rows.append((country, family_name, collab, dimension, count))
        yield from sorted(rows)
