"""Pipeline wiring and deterministic file outputs for the command line.

All CSV files use fixed 6-decimal float formatting with empty cells for
undefined values, and rows in canonical sort order, so identical inputs and
configuration produce byte-identical outputs. Files are staged to
temporary names and renamed only after every output has been written.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .aggregates import (
    CAGR,
    GROWTH_METHODS,
    REGION_COUNTING_MODES,
    REGION_DEDUP,
    SHARE_DENOMINATORS,
    SHARE_OF_INTERNATIONAL,
    RegionYearCounts,
    birc_share_points,
    growth_table,
    region_boxplot,
    scatter_dataset,
    threshold_flags,
)
from .classify import classify
from .corpus import (
    CorpusStats,
    RegionMap,
    ValidationPolicy,
    iter_accepted,
    load_region_map,
)
from .profiles import CountryProfileSet, accumulate, dump_rows
from .similarity import (
    INDICATORS,
    CountrySimilarityReport,
    WorldBaseline,
    deviation,
    five_indicators,
    world_baseline,
)
from .synthgen import Scenario, generate, region_map_for, write_jsonl

FLOAT_FORMAT = "{:.6f}"

COUNTRIES_CSV = "countries.csv"
REGIONS_CSV = "regions.csv"
GROWTH_CSV = "growth.csv"
FLAGGED_CSV = "flagged.csv"
PROFILES_CSV = "profiles.csv"
MANIFEST_JSON = "manifest.json"

# named scatter configurations; file name is scatter_<name>.csv
SCATTER_PRESETS = {
    "int_vs_domestic": {"x": "international_share", "y": "sim_dom_int",
                        "size": "n_pub_total"},
    "birc_vs_mirc": {"x": "sim_birc_mirc_disc", "y": "sim_birc_mirc_partner",
                     "size": "n_int"},
}

# the two metrics whose low values get highlighted
FLAG_METRICS = ("sim_dom_birc", "sim_dom_mirc")

BOXPLOT_METRICS = ("birc_share",) + INDICATORS


class UsageError(Exception):
    """Bad flags or configuration (exit code 1)."""


@dataclass
class RunConfig:
    """Everything one analysis run needs; validated before any work."""

    input: Path
    regions: Path | None
    out: Path
    year_min: int = 2008
    year_max: int = 2017
    mega_threshold: int | None = None
    min_pubs: int = 1
    threshold: float = 0.5
    growth_method: str = CAGR
    fig2_denominator: str = SHARE_OF_INTERNATIONAL
    region_counting: str = REGION_DEDUP
    scatter_region: str | None = None
    fail_fast: bool = False
    unmapped_policy: str = "skip"

    def validate(self) -> None:
        if self.year_min > self.year_max:
            raise UsageError(f"year filter {self.year_min}:{self.year_max} "
                             "has min > max")
        if not 0.0 <= self.threshold <= 1.0:
            raise UsageError("threshold must lie in [0, 1]")
        if self.mega_threshold is not None and self.mega_threshold < 3:
            raise UsageError("mega threshold must be >= 3")
        if self.min_pubs < 0:
            raise UsageError("min-pubs must be >= 0")
        if self.growth_method not in GROWTH_METHODS:
            raise UsageError(f"unknown growth method {self.growth_method!r}")
        if self.fig2_denominator not in SHARE_DENOMINATORS:
            raise UsageError(
                f"unknown fig2 denominator {self.fig2_denominator!r}")
        if self.region_counting not in REGION_COUNTING_MODES:
            raise UsageError(
                f"unknown region counting mode {self.region_counting!r}")
        if self.unmapped_policy not in ("skip", "keep", "fail"):
            raise UsageError(f"unknown unmapped policy {self.unmapped_policy!r}")

    def policy(self) -> ValidationPolicy:
        policy = (ValidationPolicy.fail_fast() if self.fail_fast
                  else ValidationPolicy())
        return policy.with_unmapped(self.unmapped_policy)

    def public_dict(self) -> dict:
        return {
            "input": str(self.input),
            "regions": str(self.regions),
            "out": str(self.out),
            "years": [self.year_min, self.year_max],
            "mega_threshold": self.mega_threshold,
            "min_pubs": self.min_pubs,
            "threshold": self.threshold,
            "growth_method": self.growth_method,
            "fig2_denominator": self.fig2_denominator,
            "region_counting": self.region_counting,
            "scatter_region": self.scatter_region,
            "fail_fast": self.fail_fast,
            "unmapped_policy": self.unmapped_policy,
        }


@dataclass
class PipelineResult:
    region_map: RegionMap
    stats: CorpusStats
    n_year_filtered: int
    table: dict[str, CountryProfileSet]
    region_counts: RegionYearCounts
    reports: list[CountrySimilarityReport]
    baseline: WorldBaseline


def run_pipeline(cfg: RunConfig) -> PipelineResult:
    """Stream the corpus once: validate, classify, accumulate profiles and
    region counts, then derive the similarity reports and world baseline."""
    region_map = load_region_map(cfg.regions)
    stats = CorpusStats()
    table: dict[str, CountryProfileSet] = {}
    region_counts = RegionYearCounts(mode=cfg.region_counting)
    n_year_filtered = 0
    with open(cfg.input, encoding="utf-8") as fh:
        for record in iter_accepted(fh, region_map, cfg.policy(), stats):
            if not cfg.year_min <= record.year <= cfg.year_max:
                n_year_filtered += 1
                continue
            ctype = classify(record, cfg.mega_threshold)
            accumulate(table, record, ctype)
            region_counts.add(record, ctype, region_map)
    reports = [five_indicators(table[c], region_map) for c in sorted(table)]
    baseline = world_baseline(reports, cfg.min_pubs)
    return PipelineResult(region_map, stats, n_year_filtered, table,
                          region_counts, reports, baseline)


def _fmt(value) -> str:
    if value is None:
        return ""
    return FLOAT_FORMAT.format(value)


def _fmt_count(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else _fmt(value)


def _csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


class OutputStager:
    """Write-all-then-rename output directory handling.

    Files are staged under temporary names; ``commit`` renames everything in
    one pass, so a failed run never leaves partial outputs in place.
    """

    def __init__(self, outdir: Path):
        self.outdir = Path(outdir)
        self.outdir.mkdir(parents=True, exist_ok=True)
        self._staged: list[tuple[Path, Path]] = []

    def stage_text(self, name: str, text: str) -> None:
        final = self.outdir / name
        temp = self.outdir / f".{name}.part"
        with open(temp, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        self._staged.append((temp, final))

    def stage_csv(self, name: str, header: list[str], rows) -> None:
        self.stage_text(name, _csv_text(header, rows))

    @property
    def staged_names(self) -> list[str]:
        return sorted(final.name for _, final in self._staged)

    def commit(self) -> None:
        for temp, final in self._staged:
            os.replace(temp, final)
        self._staged = []

    def abort(self) -> None:
        for temp, _ in self._staged:
            temp.unlink(missing_ok=True)
        self._staged = []


def _digest(path: Path) -> dict:
    sha = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            sha.update(chunk)
    return {"path": str(path), "sha256": sha.hexdigest()}


def countries_rows(reports, baseline):
    header = ["country", "region", "n_pub_total", "n_dom", "n_birc", "n_mirc",
              "sim_dom_int", "sim_dom_birc", "sim_dom_mirc",
              "sim_birc_mirc_disc", "sim_birc_mirc_partner",
              "label_dom_int", "label_birc_mirc_disc", "label_birc_mirc_partner"]
    rows = []
    for report in sorted(reports, key=lambda r: r.country):
        labels = deviation(report, baseline)
        rows.append([
            report.country, report.region, report.n_pub_total, report.n_dom,
            report.n_birc, report.n_mirc,
            _fmt(report.sim_dom_int), _fmt(report.sim_dom_birc),
            _fmt(report.sim_dom_mirc), _fmt(report.sim_birc_mirc_disc),
            _fmt(report.sim_birc_mirc_partner),
            labels["sim_dom_int"].label,
            labels["sim_birc_mirc_disc"].label,
            labels["sim_birc_mirc_partner"].label,
        ])
    return header, rows


def regions_rows(result: PipelineResult, cfg: RunConfig):
    header = ["region", "n_countries", "metric",
              "min", "q1", "median", "q3", "max", "n_outliers"]
    rows = []
    for metric in BOXPLOT_METRICS:
        if metric == "birc_share":
            values = birc_share_points(result.table, cfg.fig2_denominator)
        else:
            values = [(r.country, r.indicator(metric)) for r in result.reports]
        grouped = region_boxplot(values, result.region_map)
        for region in sorted(grouped.per_region):
            stats = grouped.per_region[region]
            rows.append([region, stats.n, metric,
                         _fmt(stats.minimum), _fmt(stats.q1), _fmt(stats.median),
                         _fmt(stats.q3), _fmt(stats.maximum), len(stats.outliers)])
    return header, rows


def growth_rows(result: PipelineResult, cfg: RunConfig):
    header = ["region", "collab_type", "method",
              "first_year", "last_year", "rate_pct"]
    rows = []
    for entry in growth_table(result.region_counts, cfg.growth_method):
        rows.append([entry.region, entry.collab_type, entry.method,
                     entry.year_span[0], entry.year_span[1],
                     _fmt(entry.rate_pct)])
    return header, rows


def flagged_rows(result: PipelineResult, cfg: RunConfig):
    header = ["metric", "country", "region", "value"]
    region_of = {r.country: r.region for r in result.reports}
    rows = []
    for metric in FLAG_METRICS:
        values = [(r.country, r.indicator(metric)) for r in result.reports]
        flags = threshold_flags(values, cfg.threshold)
        for country, value in flags.flagged:
            rows.append([metric, country, region_of[country], _fmt(value)])
    return header, rows


def scatter_files(result: PipelineResult, cfg: RunConfig):
    """Yield (file name, header, rows) per scatter preset."""
    header = ["country", "region", "x", "y", "size"]
    for name, selectors in SCATTER_PRESETS.items():
        points, _ = scatter_dataset(result.reports, region=cfg.scatter_region,
                                    **selectors)
        rows = [[p.country, p.region, _fmt(p.x), _fmt(p.y), _fmt_count(p.size)]
                for p in points]
        yield f"scatter_{name}.csv", header, rows


def profiles_rows(result: PipelineResult):
    header = ["country", "profile_family", "collab_type", "dimension", "count"]
    return header, [list(row) for row in dump_rows(result.table)]


def manifest_text(cfg: RunConfig, subcommand: str, result: PipelineResult,
                  outputs: list[str]) -> str:
    manifest = {
        "tool": "collabsim",
        "version": __version__,
        "subcommand": subcommand,
        "config": cfg.public_dict(),
        "inputs": {"corpus": _digest(cfg.input), "regions": _digest(cfg.regions)},
        "validation": result.stats.as_dict(),
        "n_year_filtered": result.n_year_filtered,
        "n_countries": len(result.table),
        "baseline": {
            "min_pubs": result.baseline.min_pubs,
            "means": result.baseline.means,
            "eligible": result.baseline.eligible,
        },
        "outputs": sorted(outputs),
    }
    return json.dumps(manifest, indent=2, sort_keys=True) + "\n"


_SUBCOMMAND_FILES = {
    "profile": (PROFILES_CSV,),
    "similarity": (COUNTRIES_CSV,),
    "growth": (GROWTH_CSV,),
    "aggregate": (REGIONS_CSV, FLAGGED_CSV, "scatter_*"),
    "report": (COUNTRIES_CSV, REGIONS_CSV, GROWTH_CSV, FLAGGED_CSV, "scatter_*"),
}


def run_outputs(subcommand: str, cfg: RunConfig) -> int:
    """Run the pipeline and write the files owned by ``subcommand``."""
    cfg.validate()
    if cfg.regions is None:
        raise UsageError(f"{subcommand} requires --regions")
    result = run_pipeline(cfg)
    wanted = _SUBCOMMAND_FILES[subcommand]
    stager = OutputStager(cfg.out)
    try:
        if PROFILES_CSV in wanted:
            stager.stage_csv(PROFILES_CSV, *profiles_rows(result))
        if COUNTRIES_CSV in wanted:
            stager.stage_csv(COUNTRIES_CSV,
                             *countries_rows(result.reports, result.baseline))
        if REGIONS_CSV in wanted:
            stager.stage_csv(REGIONS_CSV, *regions_rows(result, cfg))
        if GROWTH_CSV in wanted:
            stager.stage_csv(GROWTH_CSV, *growth_rows(result, cfg))
        if FLAGGED_CSV in wanted:
            stager.stage_csv(FLAGGED_CSV, *flagged_rows(result, cfg))
        if "scatter_*" in wanted:
            for name, header, rows in scatter_files(result, cfg):
                stager.stage_csv(name, header, rows)
        names = stager.staged_names
        stager.stage_text(MANIFEST_JSON,
                          manifest_text(cfg, subcommand, result, names))
        stager.commit()
    except BaseException:
        stager.abort()
        raise
    return 0


def run_validate(cfg: RunConfig, stream=None) -> int:
    """Validate the corpus and print the counters as one JSON line."""
    cfg.validate()
    region_map = load_region_map(cfg.regions) if cfg.regions else None
    with open(cfg.input, encoding="utf-8") as fh:
        stats = CorpusStats()
        for _ in iter_accepted(fh, region_map, cfg.policy(), stats):
            pass
    out = stream if stream is not None else sys.stdout
    json.dump(stats.as_dict(), out)
    out.write("\n")
    return 0


def run_synth(scenario_path, out_path, regions_out=None) -> int:
    """Generate a synthetic corpus (and optionally its region map)."""
    scenario = Scenario.load(scenario_path)
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    temp = out_path.with_name(f".{out_path.name}.part")
    try:
        with open(temp, "w", encoding="utf-8", newline="") as fh:
            write_jsonl(generate(scenario), fh)
        if regions_out is not None:
            region_map = region_map_for(scenario.countries)
            rows = [[c, region_map.entries[c]] for c in sorted(region_map.entries)]
            regions_out = Path(regions_out)
            regions_temp = regions_out.with_name(f".{regions_out.name}.part")
            with open(regions_temp, "w", encoding="utf-8", newline="") as fh:
                fh.write(_csv_text(["country", "region"], rows))
            os.replace(regions_temp, regions_out)
        os.replace(temp, out_path)
    except BaseException:
        temp.unlink(missing_ok=True)
        raise
    return 0
