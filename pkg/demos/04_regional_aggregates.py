"""Regional aggregates: share boxplots, growth rates, threshold highlights
and scatter datasets.

These are the plot-ready numbers behind regional comparisons; the library
emits statistics and CSV-friendly rows, never images.
"""

import random

from collabsim import (
    RegionMap,
    boxplot_stats,
    growth_rate,
    region_boxplot,
    scatter_dataset,
    threshold_flags,
)
from collabsim.aggregates import CAGR, LOGLINEAR
from collabsim.similarity import CountrySimilarityReport, INDICATORS

print("Boxplot statistics (type-7 quartiles, 1.5*IQR outlier fences):")
stats = boxplot_stats([("C0", 0.2), ("C1", 0.4), ("C2", 0.6), ("C3", 0.8)])
print(f"  [0.2 0.4 0.6 0.8] -> q1={stats.q1} median={stats.median} q3={stats.q3}")

rng = random.Random(8)
regions = RegionMap({f"C{i:02d}": ("North" if i < 10 else "South") for i in range(20)})
values = [(f"C{i:02d}", round(rng.uniform(0.3, 0.95), 3)) for i in range(20)]
values.append(("C99", None))  # a country with no defined value
grouped = region_boxplot(values, regions)
print("\nGrouped by region (undefined values dropped and counted):")
for region, box in sorted(grouped.per_region.items()):
    print(f"  {region}: n={box.n} median={box.median:.3f} "
          f"[{box.minimum:.3f}, {box.maximum:.3f}] outliers={len(box.outliers)}")
print(f"  undefined values: {grouped.n_undefined}")

print("\nGrowth rates from annual counts (zero years skipped):")
series = {year: 120 * 1.08 ** (year - 2008) for year in range(2008, 2018)}
for method in (CAGR, LOGLINEAR):
    result = growth_rate(series, method)
    print(f"  {method}: {result.rate_pct:.4f} %/year over {result.year_span}")

print("\nCountries under a similarity threshold get highlighted:")
flags = threshold_flags([("AA", 0.45), ("AB", 0.50), ("AC", 0.62), ("AD", None)], 0.5)
print(f"  flagged: {list(flags.flagged)} (0.50 boundary not flagged, "
      f"{flags.n_undefined} undefined)")


def report(country, region, n_dom, n_birc, n_mirc, **sims):
    values = {name: None for name in INDICATORS}
    values.update(sims)
    return CountrySimilarityReport(
        country=country, region=region, n_pub_total=n_dom + n_birc + n_mirc,
        n_dom=n_dom, n_birc=n_birc, n_mirc=n_mirc, n_mega=0, **values)


reports = [
    report("AA", "North", 60, 25, 15, sim_dom_int=0.91, sim_birc_mirc_disc=0.8,
           sim_birc_mirc_partner=0.7),
    report("AB", "North", 20, 30, 50, sim_dom_int=0.72, sim_birc_mirc_disc=0.6,
           sim_birc_mirc_partner=0.5),
    report("AC", "South", 90, 5, 5, sim_dom_int=0.97),
]

print("\nScatter dataset: international share vs domestic-international similarity")
points, dropped = scatter_dataset(reports, x="international_share",
                                  y="sim_dom_int", size="n_pub_total")
for p in points:
    print(f"  {p.country} ({p.region}): x={p.x:.3f} y={p.y:.2f} size={p.size:.0f}")

print("\nScatter dataset: birc-mirc disciplinary vs partner similarity")
points, dropped = scatter_dataset(reports, x="sim_birc_mirc_disc",
                                  y="sim_birc_mirc_partner", size="n_int")
print(f"  {len(points)} points, {dropped} countries dropped for undefined axes")
