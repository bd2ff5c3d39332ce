"""Command line entry point.

Subcommands: validate, profile, similarity, aggregate, growth, report
(all-in-one) and synth. Exit codes: 0 success, 1 usage error, 2 data error.
Failures print one machine-readable JSON line on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import CorpusError, RegionMapError
from .reporting import RunConfig, UsageError, run_outputs, run_synth, run_validate
from .synthgen import ScenarioError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; route through UsageError so
    # usage problems exit 1 and data problems keep 2.
    def error(self, message):
        raise UsageError(message)


def _years(text: str) -> tuple[int, int]:
    try:
        first, last = text.split(":")
        return int(first), int(last)
    except ValueError as exc:
        raise UsageError(f"--years expects A:B, got {text!r}") from exc


def _add_analysis_args(sub: argparse.ArgumentParser,
                       regions_required: bool = True) -> None:
    sub.add_argument("--input", required=True, type=Path,
                     help="corpus file, one JSON record per line")
    sub.add_argument("--regions", required=regions_required, type=Path,
                     default=None, help="country,region CSV")
    sub.add_argument("--out", type=Path, default=Path("out"),
                     help="output directory")
    sub.add_argument("--years", default="2008:2017", metavar="A:B",
                     help="analysis year window (default 2008:2017)")
    sub.add_argument("--mega-threshold", type=int, default=None, metavar="N",
                     help="enable the mega class at >= N countries")
    sub.add_argument("--min-pubs", type=int, default=1, metavar="N",
                     help="eligibility floor for world baselines")
    sub.add_argument("--threshold", type=float, default=0.5, metavar="T",
                     help="highlight countries with similarity below T")
    sub.add_argument("--growth-method", choices=["cagr", "loglinear"],
                     default="cagr")
    sub.add_argument("--fig2-denominator", choices=["international", "total"],
                     default="international",
                     help="denominator of the bilateral share")
    sub.add_argument("--region-counting", choices=["dedup", "country"],
                     default="dedup",
                     help="regional counts: once per region or per country")
    sub.add_argument("--scatter-region", default=None, metavar="REGION",
                     help="restrict scatter datasets to one region")
    sub.add_argument("--fail-fast", action="store_true",
                     help="stop on the first corpus defect")
    sub.add_argument("--unmapped-policy", choices=["skip", "keep", "fail"],
                     default="skip",
                     help="how to treat countries missing from the region map")


def _config(args: argparse.Namespace) -> RunConfig:
    year_min, year_max = _years(args.years)
    return RunConfig(
        input=args.input,
        regions=args.regions,
        out=args.out,
        year_min=year_min,
        year_max=year_max,
        mega_threshold=args.mega_threshold,
        min_pubs=args.min_pubs,
        threshold=args.threshold,
        growth_method=args.growth_method,
        fig2_denominator=args.fig2_denominator,
        region_counting=args.region_counting,
        scatter_region=args.scatter_region,
        fail_fast=args.fail_fast,
        unmapped_policy=args.unmapped_policy,
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="collabsim",
                     description="Collaboration-type profiles, similarity "
                                 "indicators and regional aggregates for "
                                 "publication corpora.")
    parser.add_argument("--version", action="version",
                        version=f"collabsim {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    descriptions = {
        "validate": "check the corpus and print validation counters",
        "profile": "write the per-country profile dump (profiles.csv)",
        "similarity": "write the per-country indicator report (countries.csv)",
        "aggregate": "write regional boxplots, flags and scatter datasets",
        "growth": "write regional growth rates (growth.csv)",
        "report": "write all outputs in one run",
    }
    for name, desc in descriptions.items():
        cmd = sub.add_parser(name, help=desc)
        _add_analysis_args(cmd, regions_required=(name != "validate"))
        if name == "validate":
            cmd.set_defaults(func=lambda args: run_validate(_config(args)))
        else:
            cmd.set_defaults(
                func=lambda args, name=name: run_outputs(name, _config(args)))

    synth = sub.add_parser("synth", help="generate a synthetic corpus")
    synth.add_argument("--scenario", required=True, type=Path,
                       help="scenario description (JSON)")
    synth.add_argument("--out", required=True, type=Path,
                       help="output corpus file (JSON lines)")
    synth.add_argument("--regions-out", type=Path, default=None,
                       help="also write a matching country,region CSV")
    synth.set_defaults(
        func=lambda args: run_synth(args.scenario, args.out, args.regions_out))
    return parser


def _fail(message: str, code: int) -> int:
    print(json.dumps({"error": message, "exit_code": code}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail(str(exc), EXIT_USAGE)
    except (CorpusError, RegionMapError, ScenarioError) as exc:
        return _fail(str(exc), EXIT_DATA)
    except OSError as exc:
        return _fail(str(exc), EXIT_DATA)


if __name__ == "__main__":
    sys.exit(main())
