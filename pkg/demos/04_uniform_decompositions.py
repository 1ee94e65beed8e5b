"""
Shortest uniform decompositions: n = u.dim(M/N) parts, each with a
uniform quotient.  Unlike the primary case they are far from unique.
"""

from modecomp import (
    brute_force_decompositions,
    enumerate_maximal_shortest_uniform,
    enumerate_shortest_uniform,
    fixture_D,
    maximal_shortest_uniform,
)

D = fixture_D()
N = D.zero()
print("greedy:", maximal_shortest_uniform(D, N))
every = enumerate_maximal_shortest_uniform(D, N)
for k, x in enumerate(every):
    print(f"  choice {k}: {x}")
oracle = brute_force_decompositions(D, N, "shortest_uniform")
print("all shortest uniform:", len(enumerate_shortest_uniform(D, N)), "brute force:", len(oracle))
