"""
Shortest primary decompositions N = N_1 ∩ ... ∩ N_s, s = |As(M/N)|.

The greedy construction groups the socle of M/N into isotypic blocks and
takes complements; the enumeration walks every choice and returns all
shortest decompositions, which we compare against brute force.
"""

from modecomp import (
    brute_force_decompositions,
    enumerate_shortest_primary,
    fixture_C,
    maximal_shortest_primary,
    polynomial_module,
)

C = fixture_C()
print("C, N=0:", maximal_shortest_primary(C, C.zero()))

# F_2[x]/(x^3+x), with x^3+x = x (x+1)^2 over F_2
M = polynomial_module(2, (0, 1, 0, 1))
N = M.zero()
D = maximal_shortest_primary(M, N)
print(f"{M.label}:", D, "primes", D.primes)
mine = enumerate_shortest_primary(M, N)
theirs = brute_force_decompositions(M, N, "shortest_primary")
print(f"{len(mine)} shortest primary decompositions; brute force agrees: {set(mine) == set(theirs)}")
for x in mine:
    print("  ", x, "maximal" if x.is_maximal else "")
