"""
Socles, uniform dimension and associated left primes.

For finite modules the socle is essential, so everything is read off a
decomposition of the socle into simple summands.  Different decompositions
give the same multiset of primes.
"""

from modecomp import (
    associated_left_primes,
    fixture_C,
    fixture_D,
    is_essential,
    socle,
    socle_decompositions,
    submodule,
    uniform_dimension,
)
from modecomp.corpus import upper_triangular_modules

D = fixture_D()
print("socle of D:", socle(D))
for k, summands in enumerate(socle_decompositions(D)):
    As = associated_left_primes(D, choice=k)
    print(f"  choice {k}: {list(summands)}  primes {list(As.primes)} multiplicities {As.counts}")
print("u.dim(D) =", uniform_dimension(D))

C = fixture_C()
print("C: u.dim", uniform_dimension(C), "primes", associated_left_primes(C).primes)
print("<e1> essential in C?", is_essential(submodule(C, [(1, 0)]), C))

# A noncommutative example: the regular module of upper triangular 2x2 matrices.
natural, regular = upper_triangular_modules(2)
As = associated_left_primes(regular)
print(f"{regular.label}: u.dim {As.total}, primes {list(As.primes)}, multiplicities {As.counts}")
