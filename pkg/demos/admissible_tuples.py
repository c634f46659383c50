"""
Admissible tuples, mirrored unions, and residue-class surfing
=============================================================
"""

import random

from sievelab import tuples

# A tuple is admissible when no prime has all of its residue classes
# occupied.  (0, 2, 4) fails at 3; (0, 2, 6) passes everywhere.
for t in ((0, 2, 4), (0, 2, 6)):
    verdict = tuples.is_admissible(t)
    if verdict:
        print(t, "is admissible")
    else:
        print(t, "is blocked mod", verdict.prime, "classes", verdict.occupied)

# Greedy dense tuples for a few sizes.
for k in (3, 5, 10):
    t = tuples.densest_tuple(k)
    print(f"k={k}: span {t.span:3d} offsets {t.offsets}")

# Mirroring around a target n doubles a k-tuple into a 2k-tuple; offsets
# colliding with their own reflection are rejected with the exact pair.
base = tuples.as_tuple((0, 4, 6))
print("\nmirror of", base.offsets, "around 100:",
      tuples.mirror_union(base, 100).offsets)
try:
    tuples.mirror_union(base, 10)
except ValueError as e:
    print("around 10:", e)

# Surfing: start from two disjoint pools of random even numbers and delete
# the lightest residue class for each odd prime up to 2k.  What survives is
# an admissible k+k union regardless of the input.
rng = random.Random(7)
k = 3
size = tuples.surfing_start_size(k)
picks = rng.sample(range(1, 5001), 2 * size)
xs = [2 * v for v in picks[:size]]
ys = [2 * v for v in picks[size:]]
trace = tuples.surfing(xs, ys, k)
print(f"\nsurfing k={k}: pools of {size}, size schedule {trace.ell_sequence}")
for step in trace.steps:
    print(f"  p={step.prime}: dropped class {step.removed_class} "
          f"({step.removed_count} members), {step.size_before} -> {step.size_after}")
print("sides:", trace.x, trace.y)
print("union admissible?", bool(tuples.is_admissible(trace.union)))
