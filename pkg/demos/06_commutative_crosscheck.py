"""
Over F_p[x] the left primes of F_p[x]/(f) are the irreducible factors of f.
"""

import sympy

from modecomp import associated_left_primes, polynomial_module
from modecomp.corpus import COMMUTATIVE_CASES

x = sympy.Symbol("x")
for p, f in COMMUTATIVE_CASES:
    M = polynomial_module(p, f)
    As = associated_left_primes(M)
    poly = sympy.Poly(sum(c * x**k for k, c in enumerate(f)), x, modulus=p)
    factors = [str(q.as_expr()) for q, _ in poly.factor_list()[1]]
    print(f"{M.label:22s} primes {len(As)} (dims {[X.dim for X in As.primes]})  factors {factors}")
