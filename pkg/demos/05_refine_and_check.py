"""
Refining a primary decomposition into a uniform one, and checking
decompositions given by hand.
"""

from modecomp import check_decomposition, fixture_D, maximal_shortest_primary, refine_to_uniform, submodule

D = fixture_D()
primary = maximal_shortest_primary(D, D.zero())
refined, blocks = refine_to_uniform(D, primary)
print("primary:", primary, "-> uniform:", refined, "blocks", blocks)

e3 = submodule(D, [(0, 0, 1)])
e12 = submodule(D, [(1, 0, 0), (0, 1, 0)])
for parts in ([e3, e12], [D.zero(), e3]):
    rep = check_decomposition(D, D.zero(), parts)
    print(parts, "irredundant" if rep.is_irredundant else "redundant",
          "| shortest uniform" if rep.is_shortest_uniform else "",
          "| cofactors", list(rep.cofactors))
