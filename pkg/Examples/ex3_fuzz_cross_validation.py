# examples/ex3_fuzz_cross_validation.py


"""
Runs a seeded fuzz round over random sequents and summarizes how often
each calculus proves them.

Every random sequent is decided in ten (kind, calculus, cut policy)
configurations; proofs are re-checked, countermodels re-evaluated and the
verdicts compared across calculi. The per-configuration table is built
with pandas from the exported CSV.
"""

import pandas as pd
from provd import fuzz_round

SEED = 1
ITERATIONS = 500
SIZE = 12
N_VARS = 3

report = fuzz_round(SEED, iterations=ITERATIONS, size=SIZE, n_vars=N_VARS, verbose=1)

print("\n========== Round summary ==========")
for key, value in sorted(report.summary.items()):
    print(f"{key:18s} {value}")
for index, anomaly in report.anomalies:
    print(f"  case {index}: {anomaly}")

# One row per case and configuration
report.export_csv("fuzz_report.csv")
df = pd.read_csv("fuzz_report.csv")

table = (
    df.groupby(["kind", "calculus", "policy"])["provable"]
    .agg(["sum", "count"])
    .rename(columns={"sum": "provable", "count": "cases"})
)
table["share [%]"] = 100 * table["provable"] / table["cases"]

print("\n========== Provable sequents per configuration ==========")
print(table.to_string())
