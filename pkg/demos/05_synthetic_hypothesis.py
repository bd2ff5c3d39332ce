"""A desk-scale experiment with the synthetic generator.

Scenario: every country has its own skewed topic base; bilateral output
drifts mildly (0.2) toward a shared global agenda while multilateral output
drifts strongly (0.8). If the pipeline works, countries' multilateral
profiles should sit further from their domestic profiles than their
bilateral ones.
"""

import statistics

from collabsim import Scenario, build_profiles, five_indicators, generate

SPEC = {
    "seed": 2024,
    "n_countries": 20,
    "n_subjects": 40,
    "pubs_per_country_year": 200,
    "years": [2008, 2017],
    "type_mix": {"domestic": 0.6, "birc": 0.25, "mirc": 0.15},
    "drift_birc": 0.2,
    "drift_mirc": 0.8,
}

scenario = Scenario.from_dict(SPEC)
records = list(generate(scenario))
print(f"generated {len(records)} records for {len(scenario.countries)} countries")

table = build_profiles(records)
reports = [five_indicators(ps) for ps in table.values()]

med_birc = statistics.median(r.sim_dom_birc for r in reports)
med_mirc = statistics.median(r.sim_dom_mirc for r in reports)
print(f"median sim_dom_birc = {med_birc:.4f}  (drift 0.2)")
print(f"median sim_dom_mirc = {med_mirc:.4f}  (drift 0.8)")
print(f"multilateral output drifts further from the domestic profile: "
      f"{med_mirc < med_birc}")

print("\nSame seed, drift removed and one shared topic base -> profiles align:")
aligned = Scenario.from_dict({**SPEC, "drift_birc": 0.0, "drift_mirc": 0.0,
                              "shared_base": True})
reports = [five_indicators(ps)
           for ps in build_profiles(generate(aligned)).values()]
print(f"min sim_dom_birc = {min(r.sim_dom_birc for r in reports):.4f}")
print(f"min sim_dom_mirc = {min(r.sim_dom_mirc for r in reports):.4f}")

print("\nDeterminism: regenerating with the same seed gives identical records:")
again = list(generate(Scenario.from_dict(SPEC)))
print(f"byte-for-byte identical: {records == again}")
