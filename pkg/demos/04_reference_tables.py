"""Recomputing the bundled published reference tables from raw counts.

The package ships the country-level aggregates printed in a published
comparison of whole and fractional counting (see the README's data
section).  This script re-derives every published figure from the raw
wc/fc/icp columns and reports how closely the arithmetic lands.

Run:  python3 demos/04_reference_tables.py
"""

from bibrank import (
    load_fixtures,
    replicate_rank_correlations,
    replicate_table2,
    replicate_table4,
)

fixtures = load_fixtures()
print(f"fixtures: {len(fixtures.table1)} countries, {len(fixtures.groups)} subject groups")
print()

# Collaboration metrics per country, derived vs printed.
table2 = replicate_table2()
worst = max(table2.rows, key=lambda r: max(r.deltas))
print(f"collaboration metrics recomputed for {len(table2.rows)} countries")
print(f"  all within tolerance: {table2.passed}")
print(
    f"  largest deviation: {worst.printed.country}"
    f" (reduction {worst.deltas[0]:.4f}, icp {worst.deltas[1]:.4f},"
    f" ratio {worst.deltas[2]:.4f})"
)
print()

# Headline correlation coefficients.
correlations = replicate_rank_correlations()
print("headline coefficients")
for coeff in correlations.coefficients:
    status = "ok" if coeff.within_tolerance else "OUT OF TOLERANCE"
    print(
        f"  {coeff.name:<22} {coeff.computed:.4f}"
        f"  expected [{coeff.expected_low}, {coeff.expected_high}]  {status}"
    )
print()

# The 10x10 subject-group rank correlation matrix.  Every off-diagonal
# cell is recomputed from the published per-group rank columns and
# compared against the printed matrix.
table4 = replicate_table4()
deltas = [abs(c.delta) for c in table4.cells]
print(f"subject-group matrix: {len(table4.cells)} off-diagonal cells recomputed")
print(f"  max |computed - printed| = {max(deltas):.4f}")
print(f"  outliers beyond the cell tolerance: {len(table4.outliers)}")
print(f"  matrix accepted: {table4.passed}")
