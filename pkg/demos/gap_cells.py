"""
Cell partitions of a tuple and gap-compatible subsequences
==========================================================
"""

from sievelab import cells, primes, tuples

# Partition a dense 10-tuple into a*m + 1 contiguous cells with a = ceil(2/theta).
t = tuples.densest_tuple(10)
part = cells.partition_tuple(t, theta=0.5, m=1)
print("tuple", t.offsets)
print("theta=0.5 ->", part.n_cells, "cells:", [c for c in part.cells])

# Prime counts per cell at a shifted origin n: which cells hold primes at
# n + offset?  A cell holding exactly one is a singleton.
table = primes.sieve_range(0, 10**4)
for n in (5, 11, 17):
    counts = cells.cell_prime_counts(part, n, table)
    print(f"n={n}: per-cell prime counts {counts.counts} "
          f"(singletons: {counts.n_singleton})")

# Scan a range for origins with many singleton cells at once.
quad = cells.split_into_cells((0, 2, 6, 8), 4)
scan = cells.scan_singleton_cells(quad, 3, 2000, min_singletons=4)
print("\nquadruple origins with 4 singleton cells below 2000:",
      [int(v) for v in scan.ns])

# The cell statistic occupied - m - sum Y(Y-1) is positive only when at
# least m+1 cells hold exactly one prime; summing it relates singleton
# production to pair corrections.
stat = cells.cell_statistic_sum(part, 5, 5000)
print("\ncell statistic over [5, 5000]: total %.1f, positive at %d origins, "
      "best n = %d" % (stat.total, stat.n_positive, stat.best_n))
print("label:", stat.label)

# Gap-compatible subsequences: inside a wish list of normalized positions,
# find the longest subsequence whose consecutive differences all sit within
# tol of an allowed gap value.
gaps = primes.normalized_gaps(10**5)
gap_vals = sorted({round(float(g), 6) for g in gaps.normalized})
wish = (0.0, 0.25, 0.75, 1.5, 1.9)
res = cells.beta_subsequence_check(wish, gap_vals, tol=0.01, min_len=3)
print("\nwish list", wish)
print("longest compatible subsequence:", res.values,
      "(length", res.length, ")")
