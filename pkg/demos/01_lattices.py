"""
Submodule lattices of the three small fixtures.

A module here is F_p^m together with matrices acting on column vectors;
its submodules are the invariant subspaces.  We list them for the local
module F_2[x]/(x^2), the split module F_2 x F_2 and their mixture.
"""

from modecomp import enumerate_submodules, fixture_B, fixture_C, fixture_D, quotient, submodule

for M in (fixture_B(), fixture_C(), fixture_D()):
    lattice = enumerate_submodules(M)
    print(f"{M.label}: {len(lattice)} submodules")
    for S in lattice:
        print(f"   dim {S.dim}  {S!r}")

# Quotients carry induced actions; D/<e3> is F_2[x]/(x^2) again, a chain.
D = fixture_D()
pi = quotient(D, submodule(D, [(0, 0, 1)]))
print("D/<e3> lattice:", enumerate_submodules(pi.module))
print("preimages in D:", [pi.preimage(W) for W in enumerate_submodules(pi.module)])
