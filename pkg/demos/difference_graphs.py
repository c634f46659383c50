"""
Difference graphs, biclique search, and the prime-difference census
===================================================================

Vertices are the even numbers 2..2N; an edge joins x and y exactly when
their difference is not in an avoided set.  Edge counts per difference,
complete-bipartite subgraph search, and extremal bounds all live here,
next to an empirical census of prime differences.
"""

from sievelab import graphs

# Avoiding {4, 8} kills two difference diagonals; every other difference d
# contributes exactly N - d/2 edges.
g = graphs.build_graph(12, {4, 8})
counts = graphs.edge_count_by_difference(g)
print("N=12 avoiding {4, 8}:", g.edge_count(), "edges")
print("per difference:", {d: c for d, c in sorted(counts.items()) if d <= 12})

# K_{t,t} search: exact branch and prune for t <= 3, sampling above.
res = graphs.contains_ktt(g, 2)
print("\nK_22 found:", res.found, "sides", res.left, res.right,
      "(exact search:", res.exact, ")")
sparse = graphs.build_graph(30, lambda m: m > 8)  # only differences 2..8 survive
res4 = graphs.contains_ktt(sparse, 4)
print("banded graph, t=4:", res4.found, "(exact:", res4.exact, ")")

# The extremal bound: a K_{t,t}-free graph on n vertices has at most
# c * t^(1/t) * n^(2 - 1/t) edges.  Single-difference graphs sit far below.
n = 2 * sparse.N
print("\nbanded graph edges %d vs t=2 extremal bound %.0f"
      % (sparse.edge_count(), graphs.kst_bound(n, 2)))

# Inverting E = a(a+1)/2: any graph with E edges has a vertex meeting at
# least coverage_bound(E) distinct differences.
for e in (10, 100, 1000):
    print(f"E={e}: some vertex meets >= {graphs.coverage_bound(e)} differences")

# Census: which even differences occur as p - q below the limit, and how
# often.  threshold counts below the bar are exceptions; there are none at
# this scale.  The kappa curves show counts against d^kappa growth.
census = graphs.empirical_polignac_density(10**5, threshold=1, max_diff=1000)
print("\ncensus below 10^5: %d exceptions, twin pairs %d, count at 1000: %d"
      % (census.exception_count, census.counts[2], census.counts[1000]))
print("label:", census.label)
